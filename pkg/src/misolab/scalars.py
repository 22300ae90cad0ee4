"""Dual-mode complex scalars.

Exact mode stores a pair of arbitrary-precision rationals (Gaussian
rationals), so sums, products, conjugates and divisions carry no rounding
and zero tests are decidable.  Float mode stores a pair of 64-bit binary
floats; every zero test downstream takes an explicit tolerance.  Mixing
the two modes in one expression raises, it is never a silent promotion.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ModeMismatchError

EXACT = "exact"
FLOAT = "float"


class Scalar:
    __slots__ = ("mode", "re", "im")

    def __init__(self, mode, re, im):
        self.mode = mode
        self.re = re
        self.im = im

    # -- construction -------------------------------------------------

    @staticmethod
    def exact(re, im=0):
        return Scalar(EXACT, Fraction(re), Fraction(im))

    @staticmethod
    def flt(re, im=0.0):
        return Scalar(FLOAT, float(re), float(im))

    @staticmethod
    def zero(mode):
        return Scalar.exact(0) if mode == EXACT else Scalar.flt(0.0)

    @staticmethod
    def one(mode):
        return Scalar.exact(1) if mode == EXACT else Scalar.flt(1.0)

    @staticmethod
    def i_unit(mode):
        return Scalar.exact(0, 1) if mode == EXACT else Scalar.flt(0.0, 1.0)

    @staticmethod
    def from_int(n, mode):
        return Scalar.exact(n) if mode == EXACT else Scalar.flt(float(n))

    # -- coercion helpers ---------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.mode != self.mode:
                raise ModeMismatchError(
                    f"cannot mix {self.mode} and {other.mode} scalars"
                )
            return other
        if isinstance(other, int) or (self.mode == EXACT and isinstance(other, Fraction)):
            return Scalar.from_int(other, self.mode) if isinstance(other, int) else Scalar.exact(other)
        if self.mode == FLOAT and isinstance(other, float):
            return Scalar.flt(other)
        return None

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.mode, self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.mode, self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.mode, o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(
            self.mode,
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero scalar")
        return Scalar(
            self.mode,
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __neg__(self):
        return Scalar(self.mode, -self.re, -self.im)

    def conj(self):
        return Scalar(self.mode, self.re, -self.im)

    def abs2(self):
        """|z|^2 as a real scalar of the same mode."""
        return Scalar(self.mode, self.re * self.re + self.im * self.im,
                      self.re * 0 if self.mode == EXACT else 0.0)

    def modulus(self):
        """|z| as a Python float (for diagnostics and float-mode tests)."""
        return math.hypot(float(self.re), float(self.im))

    # -- predicates ---------------------------------------------------

    def is_zero(self, tol=0.0):
        if self.mode == EXACT:
            return self.re == 0 and self.im == 0
        return self.modulus() <= tol

    def is_real(self):
        return self.im == 0

    def as_complex(self):
        return complex(float(self.re), float(self.im))

    # -- comparisons, hashing, display --------------------------------

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            o = self._coerce(other) if isinstance(other, (int, float, Fraction)) else None
            if o is None:
                return NotImplemented
            other = o
        return (self.mode == other.mode and self.re == other.re
                and self.im == other.im)

    def __hash__(self):
        return hash((self.mode, self.re, self.im))

    def __repr__(self):
        return f"Scalar({self.mode}, {self.re!r}, {self.im!r})"


def same_mode(*scalars):
    """Return the common mode of the given scalars, raising on a mix."""
    modes = {s.mode for s in scalars}
    if len(modes) != 1:
        raise ModeMismatchError(f"mixed scalar modes: {sorted(modes)}")
    return modes.pop()


def falling_factorial(n, k):
    """(n)_k = n(n-1)...(n-k+1); empty product 1 for k = 0, zero for k > n."""
    if k < 0 or n < 0:
        raise ValueError("falling_factorial requires nonnegative arguments")
    out = 1
    for j in range(k):
        out *= n - j
    return out
