"""Polynomials with dual-mode complex coefficients.

The degree of the zero polynomial is a distinguished sentinel (None), not
-1, so nobody can silently do arithmetic with it.
"""

from __future__ import annotations

from .errors import ModeMismatchError
from .scalars import EXACT, Scalar


class Polynomial:
    __slots__ = ("coeffs", "mode")

    def __init__(self, coeffs, mode=None):
        coeffs = list(coeffs)
        for c in coeffs:
            if mode is None:
                mode = c.mode
            elif c.mode != mode:
                raise ModeMismatchError("polynomial coefficient mode mismatch")
        if mode is None:
            raise ValueError("cannot infer mode of the zero polynomial; pass mode=")
        # canonical form: trailing coefficient nonzero (exact zeros stripped;
        # float coefficients are kept as given unless exactly 0.0)
        while coeffs and coeffs[-1].is_zero(0.0):
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.mode = mode

    @staticmethod
    def zero(mode):
        return Polynomial([], mode=mode)

    @staticmethod
    def from_ints(ints, mode=EXACT):
        return Polynomial([Scalar.from_int(c, mode) for c in ints], mode=mode)

    @property
    def degree(self):
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, k):
        return self.coeffs[k] if k < len(self.coeffs) else Scalar.zero(self.mode)

    def __call__(self, x):
        """Evaluate at a Scalar (or int, coerced to this polynomial's mode)."""
        if isinstance(x, int):
            x = Scalar.from_int(x, self.mode)
        acc = Scalar.zero(self.mode)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            [self.coefficient(k) + other.coefficient(k) for k in range(n)],
            mode=self.mode,
        )

    def __sub__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(
            [self.coefficient(k) - other.coefficient(k) for k in range(n)],
            mode=self.mode,
        )

    def __mul__(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Polynomial.zero(self.mode)
        out = [Scalar.zero(self.mode)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out, mode=self.mode)

    def scale(self, c):
        return Polynomial([c * a for a in self.coeffs], mode=self.mode)

    def star(self):
        """Coefficient-wise conjugate."""
        return Polynomial([a.conj() for a in self.coeffs], mode=self.mode)

    def re_part(self):
        return Polynomial(
            [Scalar(self.mode, a.re, a.re * 0) for a in self.coeffs], mode=self.mode
        )

    def im_part(self):
        return Polynomial(
            [Scalar(self.mode, a.im, a.im * 0) for a in self.coeffs], mode=self.mode
        )

    def has_real_coeffs(self):
        return all(a.is_real() for a in self.coeffs)

    def _check(self, other):
        if self.mode != other.mode:
            raise ModeMismatchError("polynomial mode mismatch")

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.mode == other.mode and self.coeffs == other.coeffs

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"


def falling_factorial_poly(k, mode):
    """The polynomial x(x-1)...(x-k+1); the constant 1 for k = 0."""
    p = Polynomial([Scalar.one(mode)], mode=mode)
    x = Polynomial([Scalar.zero(mode), Scalar.one(mode)], mode=mode)
    for j in range(k):
        p = p * (x - Polynomial([Scalar.from_int(j, mode)], mode=mode))
    return p
