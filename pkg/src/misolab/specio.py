"""Operator specification files and report serialization.

Spec files are JSON with a "mode" and exactly one of "matrix",
"jordan_blocks" or "shift".  Exact-mode entries use the rational grammar
`[-]a[/b][(+|-)c[/d]i]` (whitespace-free, b, d > 0); float-mode entries
are numbers or [re, im] pairs.  Exact-mode reports render every scalar in
the same grammar, so they are byte-identical across runs.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import SpecFileError
from .matrices import DenseOperator, direct_sum
from .polynomials import Polynomial
from .scalars import EXACT, FLOAT, Scalar
from .shifts import WeightedShiftOperator, shift_from_polynomial
from .spectral import JordanSpec, jordan_matrix

_RATIONAL_RE = re.compile(
    r"^(?P<re>-?\d+(?:/\d+)?)(?:(?P<sign>[+-])(?P<im>\d+(?:/\d+)?)i)?$"
)


def parse_rational(text):
    """Parse the exact scalar grammar into an exact Scalar."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise SpecFileError(f"bad rational scalar {text!r}")
    re_part = Fraction(m.group("re"))
    im_part = Fraction(0)
    if m.group("im") is not None:
        im_part = Fraction(m.group("im"))
        if m.group("sign") == "-":
            im_part = -im_part
    return Scalar.exact(re_part, im_part)


def format_rational(s):
    """Render an exact Scalar in the spec-file grammar."""
    if s.mode != EXACT:
        raise SpecFileError("format_rational requires an exact scalar")
    out = _frac_str(s.re)
    if s.im != 0:
        sign = "+" if s.im > 0 else "-"
        out += f"{sign}{_frac_str(abs(s.im))}i"
    return out


def _frac_str(f):
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_entry(entry, mode):
    """One scalar entry: rational string, [re, im] pair, or bare number."""
    if isinstance(entry, str):
        if mode != EXACT:
            raise SpecFileError("string rational entries require exact mode")
        return parse_rational(entry)
    if isinstance(entry, (int, float)):
        entry = [entry, 0]
    if not (isinstance(entry, list) and len(entry) == 2):
        raise SpecFileError(f"bad scalar entry {entry!r}")
    re_part, im_part = entry
    if mode == EXACT:
        if not (isinstance(re_part, int) and isinstance(im_part, int)):
            raise SpecFileError(
                "exact-mode numeric entries must be integers; use the "
                "rational string grammar for fractions"
            )
        return Scalar.exact(re_part, im_part)
    if not all(isinstance(x, (int, float)) for x in (re_part, im_part)):
        raise SpecFileError(f"bad float entry {entry!r}")
    return Scalar.flt(float(re_part), float(im_part))


def format_entry(s):
    if s.mode == EXACT:
        return format_rational(s)
    return [float(s.re), float(s.im)]


@dataclass(frozen=True)
class OperatorSpec:
    mode: str
    kind: str                   # "matrix" | "jordan_blocks" | "shift"
    operator: object            # DenseOperator or WeightedShiftOperator
    eigen_hints: Optional[tuple]
    document: dict              # canonical JSON document


def parse_operator_spec(doc):
    if not isinstance(doc, dict):
        raise SpecFileError("spec document must be a JSON object")
    mode = doc.get("mode")
    if mode not in (EXACT, FLOAT):
        raise SpecFileError('spec "mode" must be "exact" or "float"')
    kinds = [k for k in ("matrix", "jordan_blocks", "shift") if k in doc]
    if len(kinds) != 1:
        raise SpecFileError(
            'spec must contain exactly one of "matrix", "jordan_blocks", "shift"'
        )
    kind = kinds[0]
    hints = None
    if "eigen_hints" in doc:
        hints = tuple(parse_entry(e, mode) for e in doc["eigen_hints"])
    if kind == "matrix":
        rows = doc["matrix"]
        if not rows or any(len(r) != len(rows) for r in rows):
            raise SpecFileError("matrix rows must form a nonempty square grid")
        op = DenseOperator([[parse_entry(e, mode) for e in r] for r in rows])
    elif kind == "jordan_blocks":
        blocks = doc["jordan_blocks"]
        if not blocks:
            raise SpecFileError("jordan_blocks must be nonempty")
        mats = []
        zs = []
        for b in blocks:
            size = b.get("size")
            if not isinstance(size, int) or size < 1:
                raise SpecFileError("jordan block size must be a positive integer")
            z = parse_entry(b["z"], mode)
            mats.append(jordan_matrix(JordanSpec(z=z, size=size)))
            if not any(z == w for w in zs):
                zs.append(z)
        op = direct_sum(*mats)
        if hints is None:
            hints = tuple(zs)
    else:
        body = doc["shift"]
        coeffs = body.get("polynomial")
        if not coeffs:
            raise SpecFileError("shift polynomial must be nonzero")
        prefix = body.get("prefix", 32)
        if not isinstance(prefix, int) or prefix < 2:
            raise SpecFileError("shift prefix must be an integer >= 2")
        p = Polynomial([parse_entry(c, mode) for c in coeffs], mode=mode)
        if p.is_zero():
            raise SpecFileError("shift polynomial must be nonzero")
        op = shift_from_polynomial(p, prefix)
    return OperatorSpec(
        mode=mode, kind=kind, operator=op, eigen_hints=hints,
        document=serialize_parsed(mode, kind, doc, op, hints),
    )


def serialize_parsed(mode, kind, doc, op, hints):
    """Canonical document for the parsed spec (round-trips to the same spec)."""
    out = {"mode": mode}
    if kind == "matrix":
        out["matrix"] = [[format_entry(e) for e in r] for r in op.rows]
    elif kind == "jordan_blocks":
        out["jordan_blocks"] = [
            {"z": format_entry(parse_entry(b["z"], mode)), "size": b["size"]}
            for b in doc["jordan_blocks"]
        ]
    else:
        body = doc["shift"]
        out["shift"] = {
            "polynomial": [format_entry(parse_entry(c, mode)) for c in body["polynomial"]],
            "prefix": body.get("prefix", 32),
        }
    if hints is not None and (kind != "jordan_blocks" or "eigen_hints" in doc):
        out["eigen_hints"] = [format_entry(h) for h in hints]
    return out


def serialize_operator_spec(spec):
    return dict(spec.document)


def load_spec_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecFileError(f"cannot read spec file {path}: {exc}") from exc
    return parse_operator_spec(doc)


def scalar_to_report(s):
    """Report rendering: rational strings in exact mode, numbers in float."""
    if s.mode == EXACT:
        return format_rational(s)
    return [float(s.re), float(s.im)]
