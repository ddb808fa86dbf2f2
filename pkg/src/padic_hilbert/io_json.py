"""JSON wire formats for every value the command line reads or writes.

Scalars travel as canonical strings, composites as small dicts:

* base-field scalar — ``"0"`` (exact zero), ``"O(p^k)"`` (zero at
  precision), ``"p^v*(d0,d1,…)"`` (valuation and digits), or a rational
  literal ``"num/den"``/``"-3"`` taken at working precision,
* extension scalar — ``{"a": scalar, "b": scalar}`` for a + b√μ, a bare
  scalar literal (b = 0), or ``"sqrt(num/den)"`` for the hermitian square
  root z with conj(z)·z = num/den,
* vector — ``{"dim": n, "coeffs": [ext, …]}`` (or a bare list),
* operator — ``{"rows": r, "cols": c, "entries": [[ext, …], …]}`` plus an
  optional ``"tail": {"alpha": frac, "beta": frac, "gamma": frac}``,
* tensor — ``{"dims": [dh, dk], "lambda": [[ext, …], …]}`` or
  ``{"dims": [dh, dk], "pairs": [[vector, vector], …]}``,
* subspace — ``{"ambient": n, "basis": [vector, …]}``.

Parsers raise InputFormatError carrying a JSON pointer to the offending
field.  Rendering is canonical: dict keys are emitted sorted and compact,
so equal values always serialize to identical bytes.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Optional, Sequence

from .errors import InputFormatError
from .extension import ExtScalar, hermitian_square_root
from .field import FieldConfig
from .normvalue import NormValue
from .operators import MatrixOperator, TailProfile
from .padic import PAdicScalar
from .subspaces import Subspace
from .tensors import Tensor
from .vectors import Vector

__all__ = [
    "parse_json_text",
    "parse_fraction",
    "parse_scalar",
    "parse_ext",
    "parse_vector",
    "parse_operator",
    "parse_tensor",
    "parse_subspace",
    "render_ext",
    "render_vector",
    "render_operator",
    "render_tensor",
    "render_subspace",
    "dump",
]

_FRACTION_RE = re.compile(r"^-?\d+(?:/\d+)?$")
_DIGITS_RE = re.compile(r"^p\^(-?\d+)\*\(([0-9,]+)\)$")
_ZERO_AT_RE = re.compile(r"^O\(p\^(-?\d+)\)$")
_SQRT_RE = re.compile(r"^sqrt\((-?\d+(?:/\d+)?)\)$")


def parse_json_text(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc.msg}", "") from exc


def parse_fraction(obj: Any, pointer: str) -> Fraction:
    if isinstance(obj, bool):
        raise InputFormatError("expected a rational literal", pointer)
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str) and _FRACTION_RE.match(obj.strip()):
        return Fraction(obj.strip())
    raise InputFormatError(
        "expected a rational literal like \"-3\" or \"7/4\"", pointer
    )


def parse_scalar(cfg: FieldConfig, obj: Any, pointer: str) -> PAdicScalar:
    p = cfg.p
    if isinstance(obj, bool):
        raise InputFormatError("expected a scalar literal", pointer)
    if isinstance(obj, int):
        return PAdicScalar.from_fraction(p, obj, cfg.precision)
    if not isinstance(obj, str):
        raise InputFormatError("expected a scalar literal string", pointer)
    text = obj.strip()
    if text == "0":
        return PAdicScalar.exact_zero(p)
    m = _ZERO_AT_RE.match(text)
    if m:
        return PAdicScalar.zero_at(p, int(m.group(1)))
    m = _DIGITS_RE.match(text)
    if m:
        v = int(m.group(1))
        parts = m.group(2).split(",")
        digits = []
        for d in parts:
            if not d:
                raise InputFormatError("empty digit", pointer)
            digits.append(int(d))
        if any(not 0 <= d < p for d in digits):
            raise InputFormatError(
                f"digits must lie in 0..{p - 1}", pointer
            )
        if digits[0] == 0:
            raise InputFormatError(
                "leading digit of a nonzero scalar cannot be 0", pointer
            )
        unit = sum(d * p**i for i, d in enumerate(digits))
        return PAdicScalar.make(p, v, unit, len(digits))
    if _FRACTION_RE.match(text):
        return PAdicScalar.from_fraction(p, Fraction(text), cfg.precision)
    raise InputFormatError(
        "expected \"0\", \"O(p^k)\", \"p^v*(d0,d1,…)\", or a rational",
        pointer,
    )


def parse_ext(cfg: FieldConfig, obj: Any, pointer: str) -> ExtScalar:
    if isinstance(obj, str):
        m = _SQRT_RE.match(obj.strip())
        if m:
            c = PAdicScalar.from_fraction(
                cfg.p, Fraction(m.group(1)), cfg.precision
            )
            z = hermitian_square_root(cfg, c)
            if z is None:
                raise InputFormatError(
                    f"sqrt({m.group(1)}): not a norm of the extension, "
                    "no hermitian square root exists",
                    pointer,
                )
            return z
    if isinstance(obj, (str, int)) and not isinstance(obj, bool):
        return ExtScalar.from_qp(cfg, parse_scalar(cfg, obj, pointer))
    if isinstance(obj, dict):
        extra = set(obj) - {"a", "b"}
        if extra:
            raise InputFormatError(
                f"unknown field {sorted(extra)[0]!r}", pointer
            )
        a = parse_scalar(cfg, obj.get("a", "0"), f"{pointer}/a")
        b = parse_scalar(cfg, obj.get("b", "0"), f"{pointer}/b")
        return ExtScalar(cfg, a, b)
    raise InputFormatError(
        "expected a scalar literal, \"sqrt(c)\", or {\"a\": …, \"b\": …}",
        pointer,
    )


def parse_vector(cfg: FieldConfig, obj: Any, pointer: str) -> Vector:
    if isinstance(obj, dict):
        extra = set(obj) - {"dim", "coeffs"}
        if extra:
            raise InputFormatError(
                f"unknown field {sorted(extra)[0]!r}", pointer
            )
        if "coeffs" not in obj:
            raise InputFormatError("missing \"coeffs\"", pointer)
        coeffs = obj["coeffs"]
        declared = obj.get("dim")
    else:
        coeffs = obj
        declared = None
    if not isinstance(coeffs, list) or not coeffs:
        raise InputFormatError(
            "expected a non-empty list of coefficients",
            f"{pointer}/coeffs" if isinstance(obj, dict) else pointer,
        )
    base = f"{pointer}/coeffs" if isinstance(obj, dict) else pointer
    coords = [
        parse_ext(cfg, c, f"{base}/{i}") for i, c in enumerate(coeffs)
    ]
    if declared is not None and declared != len(coords):
        raise InputFormatError(
            f"declared dim {declared} but {len(coords)} coefficients",
            f"{pointer}/dim",
        )
    return Vector(cfg, coords)


def _parse_entry_matrix(
    cfg: FieldConfig, obj: Any, pointer: str
) -> list[list[ExtScalar]]:
    if not isinstance(obj, list) or not obj:
        raise InputFormatError("expected a non-empty list of rows", pointer)
    out = []
    width = None
    for i, row in enumerate(obj):
        if not isinstance(row, list) or not row:
            raise InputFormatError(
                "expected a non-empty row", f"{pointer}/{i}"
            )
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InputFormatError(
                f"row has {len(row)} entries, expected {width}",
                f"{pointer}/{i}",
            )
        out.append(
            [
                parse_ext(cfg, x, f"{pointer}/{i}/{j}")
                for j, x in enumerate(row)
            ]
        )
    return out


def parse_operator(
    cfg: FieldConfig, obj: Any, pointer: str
) -> MatrixOperator:
    if not isinstance(obj, dict):
        raise InputFormatError("expected an operator object", pointer)
    extra = set(obj) - {"rows", "cols", "entries", "tail"}
    if extra:
        raise InputFormatError(f"unknown field {sorted(extra)[0]!r}", pointer)
    if "entries" not in obj:
        raise InputFormatError("missing \"entries\"", pointer)
    entries = _parse_entry_matrix(cfg, obj["entries"], f"{pointer}/entries")
    rows, cols = len(entries), len(entries[0])
    if "rows" in obj and obj["rows"] != rows:
        raise InputFormatError(
            f"declared rows {obj['rows']} but {rows} entry rows",
            f"{pointer}/rows",
        )
    if "cols" in obj and obj["cols"] != cols:
        raise InputFormatError(
            f"declared cols {obj['cols']} but entry rows of width {cols}",
            f"{pointer}/cols",
        )
    tail: Optional[TailProfile] = None
    if "tail" in obj and obj["tail"] is not None:
        t = obj["tail"]
        if not isinstance(t, dict):
            raise InputFormatError(
                "expected a tail object", f"{pointer}/tail"
            )
        extra = set(t) - {"alpha", "beta", "gamma"}
        if extra:
            raise InputFormatError(
                f"unknown field {sorted(extra)[0]!r}", f"{pointer}/tail"
            )
        tail = TailProfile(
            parse_fraction(t.get("alpha", 0), f"{pointer}/tail/alpha"),
            parse_fraction(t.get("beta", 0), f"{pointer}/tail/beta"),
            parse_fraction(t.get("gamma", 0), f"{pointer}/tail/gamma"),
        )
    return MatrixOperator(cfg, entries, tail)


def parse_tensor(cfg: FieldConfig, obj: Any, pointer: str) -> Tensor:
    if not isinstance(obj, dict):
        raise InputFormatError("expected a tensor object", pointer)
    extra = set(obj) - {"dims", "lambda", "pairs"}
    if extra:
        raise InputFormatError(f"unknown field {sorted(extra)[0]!r}", pointer)
    if ("lambda" in obj) == ("pairs" in obj):
        raise InputFormatError(
            "expected exactly one of \"lambda\" and \"pairs\"", pointer
        )
    dims = obj.get("dims")
    if dims is not None and (
        not isinstance(dims, list)
        or len(dims) != 2
        or not all(isinstance(d, int) and d > 0 for d in dims)
    ):
        raise InputFormatError(
            "\"dims\" must be two positive integers", f"{pointer}/dims"
        )
    if "lambda" in obj:
        lam = _parse_entry_matrix(cfg, obj["lambda"], f"{pointer}/lambda")
        if dims is not None and [len(lam), len(lam[0])] != dims:
            raise InputFormatError(
                f"declared dims {dims} but coefficient matrix is "
                f"{len(lam)}×{len(lam[0])}",
                f"{pointer}/dims",
            )
        return Tensor(cfg, lam)
    if dims is None:
        raise InputFormatError(
            "\"pairs\" requires explicit \"dims\"", pointer
        )
    pairs_obj = obj["pairs"]
    if not isinstance(pairs_obj, list):
        raise InputFormatError(
            "expected a list of [x, y] pairs", f"{pointer}/pairs"
        )
    pairs = []
    for k, pair in enumerate(pairs_obj):
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputFormatError(
                "expected an [x, y] pair", f"{pointer}/pairs/{k}"
            )
        x = parse_vector(cfg, pair[0], f"{pointer}/pairs/{k}/0")
        y = parse_vector(cfg, pair[1], f"{pointer}/pairs/{k}/1")
        pairs.append((x, y))
    return Tensor.from_pairs(cfg, pairs, dims[0], dims[1])


def parse_subspace(cfg: FieldConfig, obj: Any, pointer: str) -> Subspace:
    if not isinstance(obj, dict):
        raise InputFormatError("expected a subspace object", pointer)
    extra = set(obj) - {"ambient", "basis"}
    if extra:
        raise InputFormatError(f"unknown field {sorted(extra)[0]!r}", pointer)
    if "ambient" not in obj or "basis" not in obj:
        raise InputFormatError(
            "expected \"ambient\" and \"basis\"", pointer
        )
    ambient = obj["ambient"]
    if not isinstance(ambient, int) or ambient <= 0:
        raise InputFormatError(
            "\"ambient\" must be a positive integer", f"{pointer}/ambient"
        )
    basis_obj = obj["basis"]
    if not isinstance(basis_obj, list):
        raise InputFormatError(
            "expected a list of vectors", f"{pointer}/basis"
        )
    basis = [
        parse_vector(cfg, b, f"{pointer}/basis/{i}")
        for i, b in enumerate(basis_obj)
    ]
    return Subspace(cfg, ambient, basis)


# -- rendering ----------------------------------------------------------------


def render_ext(z: ExtScalar) -> dict:
    return {"a": str(z.a), "b": str(z.b)}


def render_vector(v: Vector) -> dict:
    return {"dim": v.dim, "coeffs": [render_ext(c) for c in v.coords]}


def render_operator(op: MatrixOperator) -> dict:
    out: dict[str, Any] = {
        "rows": op.rows,
        "cols": op.cols,
        "entries": [[render_ext(x) for x in row] for row in op.entries],
    }
    if op.tail is not None:
        out["tail"] = {
            "alpha": str(op.tail.alpha),
            "beta": str(op.tail.beta),
            "gamma": str(op.tail.gamma),
        }
    return out


def render_tensor(t: Tensor) -> dict:
    return {
        "dims": [t.dim_h, t.dim_k],
        "lambda": [[render_ext(x) for x in row] for row in t.lam],
    }


def render_subspace(s: Subspace) -> dict:
    return {
        "ambient": s.ambient,
        "basis": [render_vector(b) for b in s.basis],
    }


def dump(obj: Any) -> str:
    """Canonical serialization: sorted keys, no whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
