"""Weighted-shift construction and verification."""

from fractions import Fraction

import pytest

from misolab import (
    DenseOperator,
    FiniteVector,
    JordanSpec,
    Polynomial,
    PreconditionError,
    Scalar,
    build_shift_spec,
    detect_degree,
    jordan_matrix,
    localization_shift,
    newton_coefficients_nonnegative,
    shift_from_polynomial,
    shift_is_m_isometry,
    strict_order,
    vec_from_ints,
)
from misolab.scalars import EXACT, FLOAT


class TestShiftFromPolynomial:
    def test_linear_generator(self):
        W = shift_from_polynomial(Polynomial.from_ints([1, 1]), 32)
        # squared weights (n+2)/(n+1); orbit of e_0 is n+1
        for n in range(10):
            assert W.weight_sq(n) == Scalar.exact(Fraction(n + 2, n + 1))
            assert W.orbit_norm_sq(0, n) == Scalar.exact(n + 1)
        assert shift_is_m_isometry(W, 2)
        assert not shift_is_m_isometry(W, 1)

    def test_constant_generator_is_plain_shift(self):
        W = shift_from_polynomial(Polynomial.from_ints([1]), 16)
        assert all(W.weight_sq(n) == Scalar.exact(1) for n in range(10))
        assert shift_is_m_isometry(W, 1)

    def test_squared_linear_generator(self):
        W = shift_from_polynomial(Polynomial.from_ints([1, 2, 1]), 32)
        for n in range(10):
            assert W.orbit_norm_sq(0, n) == Scalar.exact((n + 1) ** 2)
        assert shift_is_m_isometry(W, 3)
        assert not shift_is_m_isometry(W, 2)

    def test_nonpositive_generator_rejected(self):
        with pytest.raises(PreconditionError):
            shift_from_polynomial(Polynomial.from_ints([0, 1]), 8)  # p(0) = 0

    def test_orbit_norm_factorization(self):
        p = Polynomial.from_ints([1, 0, 1])
        W = shift_from_polynomial(p, 32)
        for j in range(6):
            for n in range(12):
                assert W.orbit_norm_sq(j, n) == p(n + j) / p(j)


class TestPositivityCertification:
    def test_newton_condition_certifies(self):
        assert newton_coefficients_nonnegative(Polynomial.from_ints([1, 1]))
        assert newton_coefficients_nonnegative(Polynomial.from_ints([3, 2]))

    def test_oscillating_positive_not_certified(self):
        # x^2 - 3x + 3 > 0 on all integers but has a negative Newton coefficient
        p = Polynomial.from_ints([3, -3, 1])
        assert not newton_coefficients_nonnegative(p)
        spec = build_shift_spec(p, 24)
        assert not spec.positivity_certified

    def test_spec_records_certificate(self):
        spec = build_shift_spec(Polynomial.from_ints([1, 2, 1]), 24)
        assert spec.positivity_certified


class TestLocalizationShift:
    def test_unitary_gives_unit_weights(self):
        u = DenseOperator([
            [Scalar.exact(0, 1), Scalar.exact(0)],
            [Scalar.exact(0), Scalar.exact(-1)],
        ])
        W = localization_shift(u, vec_from_ints([1, 1]), prefix_len=12)
        assert all(W.weight_sq(n) == Scalar.exact(1) for n in range(10))

    def test_jordan_block_weights(self):
        T = jordan_matrix(JordanSpec(Scalar.exact(1), 2))
        W = localization_shift(T, vec_from_ints([0, 1]), prefix_len=12)
        for n in range(10):
            want = Scalar.exact(Fraction((n + 1) ** 2 + 1, n ** 2 + 1))
            assert W.weight_sq(n) == want

    def test_matches_operator_strict_order(self):
        T = jordan_matrix(JordanSpec(Scalar.exact(0, 1), 3))
        m = strict_order(T).m
        h = vec_from_ints([1, 2, 1])
        W = localization_shift(T, h, prefix_len=24)
        assert shift_is_m_isometry(W, m)
        deg = detect_degree(W.basis_orbit(0, 12)).degree
        assert not shift_is_m_isometry(W, deg)

    def test_zero_vector_rejected(self):
        T = DenseOperator.identity(2, EXACT)
        with pytest.raises(PreconditionError):
            localization_shift(T, vec_from_ints([0, 0]))

    def test_non_injective_orbit_rejected(self):
        N = DenseOperator.from_ints([[0, 1], [0, 0]])
        with pytest.raises(PreconditionError):
            localization_shift(N, vec_from_ints([0, 1]), prefix_len=8)


class TestShiftApplication:
    def test_basis_vector_chains_upward(self):
        W = shift_from_polynomial(Polynomial.from_ints([1, 2, 1], mode=FLOAT), 24)
        v = FiniteVector.basis(0, FLOAT)
        for n in range(1, 8):
            v = W.apply(v)
            assert v.support() == (n,)
            norm = float(v.norm_sq().re)
            assert abs(norm - (n + 1) ** 2) < 1e-9 * (n + 1) ** 2

    def test_exact_apply_needs_rational_square(self):
        # squared weight 2/1 has an irrational root: exact application refuses
        W = shift_from_polynomial(Polynomial.from_ints([1, 1]), 16)
        with pytest.raises(PreconditionError):
            W.apply(FiniteVector.basis(0, EXACT))

    def test_orthogonal_sum_formula(self):
        p = Polynomial.from_ints([1, 1], mode=FLOAT)
        W = shift_from_polynomial(p, 32)
        coeffs = {0: Scalar.flt(2.0), 1: Scalar.flt(0.0, 1.0), 2: Scalar.flt(-1.0)}
        v = FiniteVector(coeffs, mode=FLOAT)
        for n in range(10):
            want = sum(
                float((c.abs2() * W.orbit_norm_sq(j, n)).re)
                for j, c in coeffs.items()
            )
            got = float(v.norm_sq().re)
            assert abs(got - want) <= 1e-9 * max(1.0, want)
            v = W.apply(v)

    def test_weights_never_vanish(self):
        for ints in ((1,), (1, 1), (1, 2, 1), (1, 0, 1), (3, 2)):
            W = shift_from_polynomial(Polynomial.from_ints(ints), 24)
            assert all(not W.weight_sq(n).is_zero() for n in range(20))
