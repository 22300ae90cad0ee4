"""Dense square operators, plain dense vectors and finitely supported
sequence vectors over dual-mode scalars."""

from __future__ import annotations

from .errors import DimensionMismatchError, ModeMismatchError
from .scalars import EXACT, FLOAT, Scalar


class DenseOperator:
    """Immutable square matrix with all entries in one arithmetic mode."""

    __slots__ = ("dim", "mode", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        dim = len(rows)
        if dim == 0 or any(len(r) != dim for r in rows):
            raise DimensionMismatchError("operator matrix must be square and nonempty")
        modes = {s.mode for r in rows for s in r}
        if len(modes) != 1:
            raise ModeMismatchError("all matrix entries must share one mode")
        self.rows = rows
        self.dim = dim
        self.mode = modes.pop()

    # -- constructors -------------------------------------------------

    @staticmethod
    def identity(dim, mode):
        one, zero = Scalar.one(mode), Scalar.zero(mode)
        return DenseOperator(
            [[one if i == j else zero for j in range(dim)] for i in range(dim)]
        )

    @staticmethod
    def zeros(dim, mode):
        zero = Scalar.zero(mode)
        return DenseOperator([[zero] * dim for _ in range(dim)])

    @staticmethod
    def from_ints(rows, mode=EXACT):
        return DenseOperator([[Scalar.from_int(x, mode) for x in r] for r in rows])

    # -- algebra ------------------------------------------------------

    def _check(self, other):
        if self.mode != other.mode:
            raise ModeMismatchError("operator mode mismatch")
        if self.dim != other.dim:
            raise DimensionMismatchError("operator dimension mismatch")

    def __matmul__(self, other):
        self._check(other)
        n = self.dim
        cols = list(zip(*other.rows))
        out = []
        for i in range(n):
            row_i = self.rows[i]
            out_row = []
            for j in range(n):
                col_j = cols[j]
                acc = row_i[0] * col_j[0]
                for k in range(1, n):
                    acc = acc + row_i[k] * col_j[k]
                out_row.append(acc)
            out.append(out_row)
        return DenseOperator(out)

    def __add__(self, other):
        self._check(other)
        return DenseOperator(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other):
        self._check(other)
        return DenseOperator(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __neg__(self):
        return DenseOperator([[-a for a in r] for r in self.rows])

    def scale(self, c):
        return DenseOperator([[c * a for a in r] for r in self.rows])

    def adjoint(self):
        """Conjugate transpose."""
        return DenseOperator(
            [[self.rows[j][i].conj() for j in range(self.dim)] for i in range(self.dim)]
        )

    def power(self, k):
        if k < 0:
            raise ValueError("negative operator power")
        out = DenseOperator.identity(self.dim, self.mode)
        for _ in range(k):
            out = out @ self
        return out

    def apply(self, vec):
        if len(vec) != self.dim:
            raise DimensionMismatchError("vector length does not match operator")
        return tuple(
            _dot_row(row, vec) for row in self.rows
        )

    # -- queries ------------------------------------------------------

    def entry(self, i, j):
        return self.rows[i][j]

    def max_abs(self):
        return max(s.modulus() for r in self.rows for s in r)

    def is_zero(self, tol=0.0):
        return all(s.is_zero(tol) for r in self.rows for s in r)

    def __eq__(self, other):
        if not isinstance(other, DenseOperator):
            return NotImplemented
        return self.mode == other.mode and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"DenseOperator(dim={self.dim}, mode={self.mode})"


def _dot_row(row, vec):
    acc = row[0] * vec[0]
    for a, x in zip(row[1:], vec[1:]):
        acc = acc + a * x
    return acc


def direct_sum(*ops):
    """Block-diagonal direct sum of dense operators."""
    if not ops:
        raise ValueError("direct_sum of no operators")
    mode = ops[0].mode
    if any(op.mode != mode for op in ops):
        raise ModeMismatchError("direct_sum mode mismatch")
    dim = sum(op.dim for op in ops)
    zero = Scalar.zero(mode)
    rows = [[zero] * dim for _ in range(dim)]
    off = 0
    for op in ops:
        for i in range(op.dim):
            for j in range(op.dim):
                rows[off + i][off + j] = op.rows[i][j]
        off += op.dim
    return DenseOperator(rows)


# ---------------------------------------------------------------------------
# Dense vectors are plain tuples of scalars; the helpers below keep inner
# products and norms in one place.  inner() is conjugate-linear in the
# second argument.
# ---------------------------------------------------------------------------

def vec(entries):
    return tuple(entries)


def vec_from_ints(entries, mode=EXACT):
    return tuple(Scalar.from_int(x, mode) for x in entries)


def basis_vector(dim, j, mode):
    zero, one = Scalar.zero(mode), Scalar.one(mode)
    return tuple(one if k == j else zero for k in range(dim))


def vec_add(u, v):
    if len(u) != len(v):
        raise DimensionMismatchError("vector length mismatch")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    if len(u) != len(v):
        raise DimensionMismatchError("vector length mismatch")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    return tuple(c * a for a in u)


def vec_inner(u, v):
    """<u, v>, conjugate-linear in v."""
    if len(u) != len(v):
        raise DimensionMismatchError("vector length mismatch")
    acc = u[0] * v[0].conj()
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b.conj()
    return acc


def vec_norm_sq(u):
    return vec_inner(u, u)


def vec_is_zero(u, tol=0.0):
    return all(a.is_zero(tol) for a in u)


def vec_max_abs(u):
    return max(a.modulus() for a in u)


class FiniteVector:
    """Finitely supported sequence vector: sorted map index -> nonzero scalar.

    Exact zeros are dropped on construction.  Float-mode near-zeros are only
    dropped by an explicit cleanup() call, never implicitly.
    """

    __slots__ = ("entries", "mode")

    def __init__(self, entries, mode=None):
        items = {}
        for idx, val in dict(entries).items():
            if idx < 0:
                raise ValueError("FiniteVector indices must be nonnegative")
            if val.mode == EXACT and val.is_zero():
                continue
            if mode is None:
                mode = val.mode
            elif val.mode != mode:
                raise ModeMismatchError("FiniteVector entries mode mismatch")
            if not (val.mode == FLOAT and val.is_zero(0.0)):
                items[idx] = val
        if mode is None:
            raise ValueError("cannot infer mode of an empty FiniteVector; pass mode=")
        self.entries = dict(sorted(items.items()))
        self.mode = mode

    @staticmethod
    def basis(n, mode):
        return FiniteVector({n: Scalar.one(mode)}, mode=mode)

    def support(self):
        return tuple(self.entries)

    def is_zero(self):
        return not self.entries

    def cleanup(self, tol):
        """Drop float entries with modulus <= tol (no-op in exact mode)."""
        if self.mode == EXACT:
            return self
        return FiniteVector(
            {i: v for i, v in self.entries.items() if v.modulus() > tol},
            mode=self.mode,
        )

    def add(self, other):
        if self.mode != other.mode:
            raise ModeMismatchError("FiniteVector mode mismatch")
        out = dict(self.entries)
        for i, v in other.entries.items():
            out[i] = out[i] + v if i in out else v
        return FiniteVector(out, mode=self.mode)

    def scale(self, c):
        return FiniteVector({i: c * v for i, v in self.entries.items()}, mode=self.mode)

    def inner(self, other):
        """<self, other>, conjugate-linear in other."""
        if self.mode != other.mode:
            raise ModeMismatchError("FiniteVector mode mismatch")
        acc = Scalar.zero(self.mode)
        for i, v in self.entries.items():
            w = other.entries.get(i)
            if w is not None:
                acc = acc + v * w.conj()
        return acc

    def norm_sq(self):
        return self.inner(self)

    def __eq__(self, other):
        if not isinstance(other, FiniteVector):
            return NotImplemented
        return self.mode == other.mode and self.entries == other.entries

    def __repr__(self):
        return f"FiniteVector({self.entries!r})"
