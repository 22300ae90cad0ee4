"""Unilateral weighted shifts and their construction.

Exact mode stores squared weights (rationals) and never takes square
roots: every m-isometry test here uses only squared orbit norms, so no
irrationals arise.  Applying the shift to a vector needs the weights
themselves and is available in float mode, or in exact mode when each
squared weight happens to be a rational square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .diffcalc import DEFAULT_FLOAT_TOL, OrbitSequence, detect_degree
from .errors import PreconditionError
from .matrices import FiniteVector, vec_norm_sq
from .polynomials import Polynomial
from .scalars import EXACT, FLOAT, Scalar


class WeightedShiftOperator:
    """W e_n = lambda_n e_{n+1}, with |lambda_n|^2 given by weight_sq."""

    __slots__ = ("mode", "prefix_len", "_weight_sq", "description")

    def __init__(self, weight_sq, prefix_len, mode, description=""):
        if prefix_len < 2:
            raise PreconditionError("shift prefix must cover at least 2 weights")
        self.mode = mode
        self.prefix_len = prefix_len
        self._weight_sq = weight_sq
        self.description = description

    def weight_sq(self, n):
        if n < 0:
            raise PreconditionError("weight index must be nonnegative")
        if n >= self.prefix_len:
            raise PreconditionError(
                f"weight index {n} beyond verified prefix {self.prefix_len}"
            )
        return self._weight_sq(n)

    def weight(self, n):
        """lambda_n with the positive-root sign convention."""
        w2 = self.weight_sq(n)
        if self.mode == FLOAT:
            return Scalar.flt(math.sqrt(w2.re))
        root = _rational_sqrt(w2.re)
        if root is None:
            raise PreconditionError(
                "exact shift weight is irrational; use squared norms instead"
            )
        return Scalar.exact(root)

    def apply(self, v):
        if not isinstance(v, FiniteVector):
            raise PreconditionError("weighted shifts act on FiniteVector")
        if v.mode != self.mode:
            raise PreconditionError("shift/vector mode mismatch")
        return FiniteVector(
            {i + 1: self.weight(i) * c for i, c in v.entries.items()}, mode=self.mode
        )

    def orbit_norm_sq(self, j, n):
        """||W^n e_j||^2 as a telescoping product of squared weights."""
        acc = Scalar.one(self.mode)
        for t in range(j, j + n):
            acc = acc * self.weight_sq(t)
        return acc

    def basis_orbit(self, j, window_len):
        vals = []
        acc = Scalar.one(self.mode)
        for n in range(window_len):
            vals.append(acc)
            acc = acc * self.weight_sq(j + n)
        return OrbitSequence(vals, source=f"shift orbit of e_{j}")


def _rational_sqrt(q):
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class ShiftSpec:
    generator: Polynomial
    prefix_len: int
    positivity_certified: bool   # True when the Newton-basis sufficient condition holds


def newton_coefficients_nonnegative(p):
    """Sufficient condition for p(n) > 0 on all nonnegative integers:
    p(0) > 0 and all iterated forward differences of p at 0 are >= 0."""
    if p.is_zero():
        return False
    vals = [p(n) for n in range(p.degree + 2)]
    if not (vals[0].is_real() and vals[0].re > 0):
        return False
    while len(vals) > 1:
        vals = [b - a for a, b in zip(vals, vals[1:])]
        if any((not v.is_real()) or v.re < 0 for v in vals):
            return False
    return True


def shift_from_polynomial(p, prefix_len=32):
    """Shift with squared weights p(n+1)/p(n) from a positive generator.

    Positivity of p is verified on the prefix; the Newton-coefficient
    sufficient condition, when it holds, certifies positivity for all n
    (recorded on the returned spec via build_shift_spec).
    """
    if not p.has_real_coeffs():
        raise PreconditionError("shift generator must have real coefficients")
    if p.is_zero():
        raise PreconditionError("shift generator must be nonzero")
    for n in range(prefix_len + 2):
        val = p(n)
        if not (val.is_real() and val.re > 0):
            raise PreconditionError(f"generator is not positive at n={n}")
    values = [p(n) for n in range(prefix_len + 2)]

    def weight_sq(n):
        return values[n + 1] / values[n]

    return WeightedShiftOperator(
        weight_sq, prefix_len + 1, p.mode,
        description=f"shift from generator of degree {p.degree}",
    )


def build_shift_spec(p, prefix_len=32):
    shift_from_polynomial(p, prefix_len)  # runs the positivity prefix check
    return ShiftSpec(
        generator=p,
        prefix_len=prefix_len,
        positivity_certified=newton_coefficients_nonnegative(p),
    )


def localization_shift(T, h, prefix_len=None):
    """The shift W_{T,h} with squared weights ||T^{n+1}h||^2 / ||T^n h||^2.

    A vanishing orbit norm signals non-injectivity and is rejected
    (m-isometries are injective)."""
    from .diffcalc import default_window_len

    if prefix_len is None:
        prefix_len = default_window_len(T.dim) + 4
    norms = []
    v = h
    for n in range(prefix_len + 1):
        ns = vec_norm_sq(v)
        if ns.is_zero(0.0):
            if n == 0:
                raise PreconditionError("localization shift needs a nonzero vector")
            raise PreconditionError(
                f"orbit norm vanishes at n={n}; operator not injective on the orbit"
            )
        norms.append(ns)
        v = T.apply(v)

    def weight_sq(n):
        return norms[n + 1] / norms[n]

    return WeightedShiftOperator(
        weight_sq, prefix_len, T.mode, description="localization shift"
    )


def shift_is_m_isometry(W, m, basis_count=3, tol=DEFAULT_FLOAT_TOL,
                        window_len=None):
    """True iff Delta^m annihilates the orbit of e_j for every j < basis_count.

    The orthogonal-basis reduction makes this equivalent to the definition
    restricted to vectors supported on 0..basis_count-1.  m = 0 is allowed
    as the degenerate query (only the zero orbit passes it)."""
    if m < 0 or basis_count < 1:
        raise PreconditionError("need m >= 0 and basis_count >= 1")
    if window_len is None:
        window_len = 2 * m + 6
    if window_len + basis_count - 1 > W.prefix_len:
        window_len = W.prefix_len - basis_count + 1
    if window_len < m + 2:
        raise PreconditionError("shift prefix too short for the requested order")
    for j in range(basis_count):
        gamma = W.basis_orbit(j, window_len)
        verdict = detect_degree(gamma, tol)
        if not verdict.polynomial:
            return False
        if not verdict.zero_sequence and verdict.degree > m - 1:
            return False
    return True
