"""Core arithmetic: dual-mode scalars, matrices, vectors, polynomials."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from misolab import (
    DenseOperator,
    FiniteVector,
    ModeMismatchError,
    Polynomial,
    Scalar,
    falling_factorial,
    vec_add,
    vec_from_ints,
    vec_inner,
    vec_norm_sq,
    vec_scale,
)
from misolab.scalars import EXACT, FLOAT

exact_scalars = st.builds(
    lambda a, b, c, d: Scalar.exact(Fraction(a, c), Fraction(b, d)),
    st.integers(-9, 9), st.integers(-9, 9), st.integers(1, 4), st.integers(1, 4),
)


class TestScalar:
    def test_exact_arithmetic_is_rational(self):
        a = Scalar.exact(Fraction(1, 3), 2)
        b = Scalar.exact(Fraction(2, 3), -1)
        s = a + b
        assert s.re == 1 and s.im == 1
        p = a * b
        assert p.re == Fraction(1, 3) * Fraction(2, 3) + 2
        assert p.im == -Fraction(1, 3) + Fraction(4, 3)

    def test_division_and_conjugate(self):
        a = Scalar.exact(3, 4)
        assert (a / a) == Scalar.exact(1)
        assert a.conj().im == -4
        assert a.abs2() == Scalar.exact(25)

    def test_mode_mixing_raises(self):
        with pytest.raises(ModeMismatchError):
            Scalar.exact(1) + Scalar.flt(1.0)

    def test_zero_tests(self):
        assert Scalar.exact(0, 0).is_zero()
        assert not Scalar.exact(Fraction(1, 10**9)).is_zero(1.0)  # exact ignores tol
        assert Scalar.flt(1e-12).is_zero(1e-9)
        assert not Scalar.flt(1e-6).is_zero(1e-9)

    @given(exact_scalars, exact_scalars)
    @settings(max_examples=40)
    def test_multiplication_commutes_exactly(self, a, b):
        assert a * b == b * a


class TestFallingFactorial:
    def test_examples(self):
        assert falling_factorial(5, 2) == 20
        assert falling_factorial(3, 5) == 0
        assert falling_factorial(7, 0) == 1

    def test_matches_binomial_times_factorial(self):
        for n in range(21):
            for k in range(n + 1):
                assert falling_factorial(n, k) == math.comb(n, k) * math.factorial(k)


class TestDenseOperator:
    def test_matmul_examples(self):
        a = DenseOperator.from_ints([[1, 1], [0, 1]])
        ident = DenseOperator.identity(2, EXACT)
        assert ident @ a == a
        assert a @ a == DenseOperator.from_ints([[1, 2], [0, 1]])
        two = DenseOperator.from_ints([[2, 0], [0, 2]])
        half = two.scale(Scalar.exact(Fraction(1, 4)))
        assert two @ half == ident

    def test_adjoint_examples(self):
        t = DenseOperator([
            [Scalar.exact(0, 1), Scalar.exact(2)],
            [Scalar.exact(0), Scalar.exact(0, -1)],
        ])
        assert t.adjoint() == DenseOperator([
            [Scalar.exact(0, -1), Scalar.exact(0)],
            [Scalar.exact(2), Scalar.exact(0, 1)],
        ])
        herm = DenseOperator([
            [Scalar.exact(1), Scalar.exact(0, 1)],
            [Scalar.exact(0, -1), Scalar.exact(2)],
        ])
        assert herm.adjoint() == herm
        assert t.adjoint().adjoint() == t

    @given(st.integers(0, 10**6))
    @settings(max_examples=20)
    def test_product_adjoint_reverses(self, seed):
        import random

        rng = random.Random(seed)
        mk = lambda: DenseOperator(
            [[Scalar.exact(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(3)]
             for _ in range(3)]
        )
        a, b = mk(), mk()
        assert (a @ b).adjoint() == b.adjoint() @ a.adjoint()


class TestInner:
    def test_worked_example_pair(self):
        h1 = (Scalar.exact(1), Scalar.exact(0))
        h2 = (Scalar.exact(0, 1), Scalar.exact(1))
        assert vec_inner(h1, h2) == Scalar.exact(0, -1)

    def test_pythagorean(self):
        u = vec_from_ints([3, 4])
        assert vec_norm_sq(u) == Scalar.exact(25)

    def test_disjoint_support(self):
        e2 = FiniteVector.basis(2, EXACT)
        e5 = FiniteVector.basis(5, EXACT)
        assert e2.inner(e5).is_zero()

    @given(st.lists(exact_scalars, min_size=2, max_size=4),
           st.lists(exact_scalars, min_size=2, max_size=4))
    @settings(max_examples=40)
    def test_polarization_identity(self, us, vs):
        n = min(len(us), len(vs))
        u, v = tuple(us[:n]), tuple(vs[:n])
        i_unit = Scalar.i_unit(EXACT)
        quarter = Scalar.exact(Fraction(1, 4))
        acc = Scalar.exact(0)
        ik = Scalar.exact(1)
        for _ in range(4):
            w = vec_add(u, vec_scale(ik, v))
            acc = acc + ik * vec_norm_sq(w)
            ik = ik * i_unit
        assert quarter * acc == vec_inner(u, v)


class TestFiniteVector:
    def test_canonical_form_drops_exact_zeros(self):
        v = FiniteVector({0: Scalar.exact(0), 3: Scalar.exact(2)}, mode=EXACT)
        assert v.support() == (3,)

    def test_float_cleanup_is_explicit(self):
        v = FiniteVector({0: Scalar.flt(1e-12), 1: Scalar.flt(1.0)}, mode=FLOAT)
        assert v.support() == (0, 1)
        assert v.cleanup(1e-9).support() == (1,)

    def test_norm_real_nonnegative(self):
        v = FiniteVector({1: Scalar.exact(1, 2), 4: Scalar.exact(-3)}, mode=EXACT)
        n = v.norm_sq()
        assert n.is_real() and n.re == 14


class TestPolynomial:
    def test_star_conjugates_coefficients(self):
        p = Polynomial([Scalar.exact(1), Scalar.exact(0, 1)], mode=EXACT)
        assert p.star() == Polynomial([Scalar.exact(1), Scalar.exact(0, -1)], mode=EXACT)

    def test_re_part(self):
        p = Polynomial([Scalar.exact(0), Scalar.exact(0), Scalar.exact(2, 3)], mode=EXACT)
        assert p.re_part() == Polynomial.from_ints([0, 0, 2])

    def test_eval(self):
        p = Polynomial.from_ints([1, 0, 1])
        assert p(3) == Scalar.exact(10)

    def test_zero_degree_sentinel(self):
        assert Polynomial.zero(EXACT).degree is None
        assert Polynomial.from_ints([5]).degree == 0
