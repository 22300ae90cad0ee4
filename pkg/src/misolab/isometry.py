"""Defect operators, m-isometry predicates and strict-order detection.

The defect of order m is the alternating binomial sum
beta_m(T) = sum_k (-1)^k C(m,k) T*^k T^k; its vanishing defines
m-isometricity.  Float-mode zero tests scale the tolerance by the actual
magnitude of the summed terms, which bounds the cancellation error of the
alternating sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .diffcalc import (
    DEFAULT_FLOAT_TOL,
    DegreeVerdict,
    OrbitSequence,
    default_window_len,
    detect_degree,
)
from .errors import InternalCheckError, PreconditionError
from .matrices import (
    DenseOperator,
    FiniteVector,
    basis_vector,
    vec_add,
    vec_inner,
    vec_norm_sq,
    vec_scale,
)
from .scalars import EXACT, FLOAT, Scalar, falling_factorial

DEFAULT_DEFECT_TOL = 1e-8


@dataclass(frozen=True)
class DefectOperator:
    m: int
    matrix: DenseOperator
    float_scale: float = 1.0   # magnitude of the summed terms; 1.0 in exact mode

    def threshold(self, tol):
        return tol * self.float_scale


@dataclass(frozen=True)
class OrderVerdict:
    strict: bool                      # True: StrictOrder(m); False: NotWithinBound(m_max)
    m: int                            # the order, or the exhausted bound
    witness: Optional[tuple] = None   # h with <beta_{m-1} h, h> != 0, for m >= 2
    residual: float = 0.0             # max |beta_m| entry (float diagnostics)

    def describe(self):
        if self.strict:
            return f"strict-order({self.m})"
        return f"not-within-bound({self.m})"


def _power_list(T, m):
    """[I, T, ..., T^m]."""
    powers = [DenseOperator.identity(T.dim, T.mode)]
    for _ in range(m):
        powers.append(powers[-1] @ T)
    return powers


def _gram_list(T, m):
    """[T*^k T^k for k = 0..m] via G_{k+1} = T* G_k T."""
    Tstar = T.adjoint()
    grams = [DenseOperator.identity(T.dim, T.mode)]
    for _ in range(m):
        grams.append(Tstar @ grams[-1] @ T)
    return grams


def _defect_from_grams(grams, m, mode):
    acc = DenseOperator.zeros(grams[0].dim, mode)
    scale = 0.0
    for k in range(m + 1):
        c = (-1) ** k * math.comb(m, k)
        scale += math.comb(m, k) * max(grams[k].max_abs(), 1.0)
        acc = acc + grams[k].scale(Scalar.from_int(c, mode))
    return DefectOperator(m=m, matrix=acc,
                          float_scale=scale if mode == FLOAT else 1.0)


def defect(T, m, _validate=True):
    """beta_m(T), computed by the definitional binomial sum.

    The recurrence beta_{m+1} = beta_m - T* beta_m T is an implementation
    device used elsewhere for speed; here the two routes are computed
    side by side and must agree.
    """
    if m < 0:
        raise PreconditionError("defect order must be nonnegative")
    d = _defect_from_grams(_gram_list(T, m), m, T.mode)
    if _validate:
        rec = _defect_by_recurrence(T, m)
        slack = 0.0 if T.mode == EXACT else 1e-12 * d.float_scale
        if not (d.matrix - rec).is_zero(slack):
            raise InternalCheckError(
                f"defect recurrence and binomial sum disagree at m={m}"
            )
    return d


def _defect_by_recurrence(T, m):
    beta = DenseOperator.identity(T.dim, T.mode)
    Tstar = T.adjoint()
    for _ in range(m):
        beta = beta - Tstar @ beta @ T
    return beta


def is_m_isometry(T, m, tol=DEFAULT_DEFECT_TOL):
    """True iff beta_m(T) = 0 (exactly, or within the scaled tolerance)."""
    if m < 1:
        raise PreconditionError("m-isometry requires m >= 1")
    d = defect(T, m)
    return d.matrix.is_zero(d.threshold(tol) if T.mode == FLOAT else 0.0)


def default_m_max(T):
    # algebraic strict orders cannot exceed 2*dim - 1; slack of 2
    return 2 * T.dim + 1


def strict_order(T, m_max=None, tol=DEFAULT_DEFECT_TOL):
    """Smallest m <= m_max with beta_m(T) = 0, with a nonzero witness for
    beta_{m-1}; NotWithinBound otherwise."""
    if m_max is None:
        m_max = default_m_max(T)
    if m_max < 1:
        raise PreconditionError("m_max must be at least 1")
    grams = _gram_list(T, m_max)
    prev = None
    for m in range(1, m_max + 1):
        d = _defect_from_grams(grams, m, T.mode)
        thr = d.threshold(tol) if T.mode == FLOAT else 0.0
        if d.matrix.is_zero(thr):
            witness = None
            if m >= 2:
                witness = _nonzero_form_witness(prev, tol)
                if witness is None:
                    raise InternalCheckError(
                        f"beta_{m - 1} reported nonzero but no witness found"
                    )
            return OrderVerdict(strict=True, m=m, witness=witness,
                                residual=d.matrix.max_abs())
        prev = d
    return OrderVerdict(strict=False, m=m_max,
                        residual=prev.matrix.max_abs() if prev else 0.0)


def _nonzero_form_witness(d, tol):
    """A vector h with <beta h, h> != 0 for a nonzero Hermitian beta.

    Searches the diagonal first; a Hermitian matrix with vanishing diagonal
    quadratic form on all e_j and on e_i + e_j, e_i + i e_j is zero, so the
    polarization pairs complete the search.
    """
    beta = d.matrix
    dim, mode = beta.dim, beta.mode
    # quadratic-form values can sit a factor ~2 below the largest entry,
    # hence the slack on the acceptance threshold
    thr = d.threshold(tol) * 0.25 if mode == FLOAT else 0.0
    best, best_val = None, thr
    candidates = [basis_vector(dim, j, mode) for j in range(dim)]
    i_unit = Scalar.i_unit(mode)
    for a in range(dim):
        for b in range(a + 1, dim):
            ea, eb = candidates[a], candidates[b]
            candidates.append(vec_add(ea, eb))
            candidates.append(vec_add(ea, vec_scale(i_unit, eb)))
    for h in candidates:
        val = vec_inner(beta.apply(h), h).modulus()
        if val > best_val:
            best, best_val = h, val
    return best


def orbit_sequence(T, h, window_len=None):
    """gamma_{T,h}: the window of squared orbit norms ||T^n h||^2."""
    if window_len is None:
        window_len = default_window_len(T.dim)
    vals = []
    v = h
    for _ in range(window_len):
        vals.append(vec_norm_sq(v))
        v = T.apply(v)
    return OrbitSequence(vals, source=f"dense orbit (dim={T.dim})")


def newton_expansion_check(T, m, n_max, tol=DEFAULT_DEFECT_TOL):
    """Verify T*^n T^n = sum_{k<m} (n)_k (-1)^k / k! beta_k(T) for n <= n_max.

    Precondition: T is an m-isometry (checked)."""
    if not is_m_isometry(T, m, tol):
        raise PreconditionError(f"operator is not an {m}-isometry")
    betas = [defect(T, k) for k in range(m)]
    scale = sum(b.float_scale for b in betas)
    ok = True
    Tn = DenseOperator.identity(T.dim, T.mode)
    for n in range(n_max + 1):
        lhs = Tn.adjoint() @ Tn
        rhs = DenseOperator.zeros(T.dim, T.mode)
        for k in range(m):
            c = falling_factorial(n, k) * (-1) ** k
            coeff = Scalar.from_int(c, T.mode) / Scalar.from_int(math.factorial(k), T.mode)
            rhs = rhs + betas[k].matrix.scale(coeff)
        slack = 0.0 if T.mode == EXACT else tol * scale * max(1.0, float(n) ** m)
        if not (lhs - rhs).is_zero(slack):
            ok = False
        Tn = Tn @ T
    return ok


class DefectForm:
    """The sesquilinear defect form F_{T;k}(f,g) = sum_j (-1)^j C(k,j) <T^j f, T^j g>.

    Uses only applications of T and inner products, so it is available on
    finitely supported sequence spaces where no adjoint exists.
    """

    def __init__(self, op, k):
        if k < 0:
            raise PreconditionError("form order must be nonnegative")
        self.op = op
        self.k = k

    def __call__(self, f, g):
        orbit_f, orbit_g = f, g
        acc = None
        for j in range(self.k + 1):
            c = (-1) ** j * math.comb(self.k, j)
            term = _generic_inner(orbit_f, orbit_g) * c
            acc = term if acc is None else acc + term
            if j < self.k:
                orbit_f = _generic_apply(self.op, orbit_f)
                orbit_g = _generic_apply(self.op, orbit_g)
        return acc


def defect_form(op, k):
    return DefectForm(op, k)


def _generic_apply(op, v):
    if isinstance(v, FiniteVector):
        return op.apply(v)
    return op.apply(v)


def _generic_inner(u, v):
    if isinstance(u, FiniteVector):
        return u.inner(v)
    return vec_inner(u, v)


def _generic_add(u, v):
    if isinstance(u, FiniteVector):
        return u.add(v)
    return vec_add(u, v)


def _generic_scale(c, u):
    if isinstance(u, FiniteVector):
        return u.scale(c)
    return vec_scale(c, u)


def polarization_reconstruct(quad, h, h0):
    """Recover phi(h, h) from the three samples phi(h0 + j h), j = 0, 1, 2.

    quad maps a vector to the diagonal value phi(v, v) of a form additive
    in each slot; the result is independent of h0 for such forms.
    """
    acc = None
    for j in range(3):
        c = (-1) ** j * math.comb(2, j)
        v = _generic_add(h0, _generic_scale(Scalar.from_int(j, _vec_mode(h)), h))
        term = quad(v) * c
        acc = term if acc is None else acc + term
    return acc / Scalar.from_int(2, _vec_mode(h))


def _vec_mode(v):
    if isinstance(v, FiniteVector):
        return v.mode
    return v[0].mode


@dataclass(frozen=True)
class SurveyResult:
    per_vector: tuple                     # DegreeVerdict per surveyed vector
    global_verdict: Optional[OrderVerdict]
    order_lower_bound: int
    consistent_with: Optional[int]        # m such that sampled orbits fit an m-isometry


def local_isometry_survey(op, vectors, tol=DEFAULT_FLOAT_TOL,
                          window_len=None, defect_tol=DEFAULT_DEFECT_TOL):
    """Per-vector orbit degree verdicts plus a global order verdict.

    For a dense operator the global verdict is strict_order; otherwise the
    max of (degree + 1) over the sampled vectors is reported as a lower
    bound.  Uniform polynomiality of the sampled orbits is reported as
    'consistent with m-isometry' for m = max degree + 1.
    """
    vectors = list(vectors)
    if not vectors:
        raise PreconditionError("survey needs at least one vector")
    verdicts = []
    for h in vectors:
        gamma = _generic_orbit(op, h, window_len)
        verdicts.append(detect_degree(gamma, tol))
    lower = 0
    all_poly = True
    for v in verdicts:
        if not v.polynomial:
            all_poly = False
        elif not v.zero_sequence:
            lower = max(lower, v.degree + 1)
    global_verdict = None
    if isinstance(op, DenseOperator):
        global_verdict = strict_order(op, tol=defect_tol)
    consistent = lower if all_poly else None
    if consistent == 0:
        consistent = 1
    return SurveyResult(
        per_vector=tuple(verdicts),
        global_verdict=global_verdict,
        order_lower_bound=max(lower, 1),
        consistent_with=consistent,
    )


def _generic_orbit(op, h, window_len):
    if isinstance(op, DenseOperator):
        return orbit_sequence(op, h, window_len)
    # weighted shift or anything exposing apply(); norms via generic inner
    if window_len is None:
        window_len = 16
    vals = []
    v = h
    for _ in range(window_len):
        vals.append(_generic_inner(v, v))
        v = _generic_apply(op, v)
    return OrbitSequence(vals, source="generic orbit")
