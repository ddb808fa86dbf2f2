"""Command-line surface: every library layer behind one executable.

Commands read a single JSON payload (inline argument, ``-`` for stdin, or
a file path), compute exactly at the configured precision, and write one
canonical JSON document to stdout, so identical (input, configuration,
seed) always produce identical bytes.  Exit codes: 0 success, 1 domain or
input error, 2 precision loss, 3 self-test failures.

Field configuration comes from ``--p``, ``--mu``, ``--precision``,
``--seed`` and ``--format``; each falls back to the environment variable
of the same name prefixed with ``PADIC_HILBERT_`` (e.g.
``PADIC_HILBERT_P``), then to the defaults p=5, mu=nonresidue,
precision=32, seed=0, format=json.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .conjugation import (
    AntiLinearMap,
    anti_unitary_report,
    conjugation_for_basis,
    dichotomy_construction,
    invariant_orthonormal_search,
    pairwise_swap_conjugation,
    standard_conjugation,
    z_invariant_decomposition,
)
from .errors import (
    DomainError,
    InputFormatError,
    PadicHilbertError,
    PrecisionLossError,
)
from .extension import ExtScalar, is_square_ext, sqrt_ext
from .field import FieldConfig, MuKind
from .io_json import (
    dump,
    parse_ext,
    parse_json_text,
    parse_operator,
    parse_subspace,
    parse_tensor,
    parse_vector,
    render_ext,
    render_operator,
    render_subspace,
    render_tensor,
    render_vector,
)
from .op_tensor import (
    hs_norm,
    operator_to_tensor,
    rank_one_operator,
    tensor_to_operator,
)
from .operators import hs_inner_product
from .selftest import SUITE_NAMES, run_suite
from .subspaces import (
    Subspace,
    change_tensor_basis,
    change_tensor_basis_inverse,
    perp,
    regularity,
    rows_to_tensor,
    tensor_subspace,
    tensor_to_rows,
)
from .vectors import (
    Vector,
    is_ip_orthonormal,
    is_norm_orthogonal_system,
    is_normal_system,
    is_orthonormal_basis,
    is_orthonormal_system,
)

_ENV_PREFIX = "PADIC_HILBERT_"
_MU_NAMES = tuple(kind.value for kind in MuKind)


@dataclass(frozen=True)
class RunConfig:
    """Validated run-wide settings: the field, the seed, the output form."""

    p: int
    mu: MuKind
    precision: int
    seed: int
    format: str

    def field(self) -> FieldConfig:
        return FieldConfig(p=self.p, mu_kind=self.mu, precision=self.precision)


def _env(name: str) -> Optional[str]:
    return os.environ.get(_ENV_PREFIX + name)


def _resolve_run_config(args: argparse.Namespace) -> RunConfig:
    p = args.p
    if p is None:
        p = int(_env("P") or 5)
    mu_name = args.mu
    if mu_name is None:
        mu_name = _env("MU") or MuKind.NON_RESIDUE.value
    if mu_name not in _MU_NAMES:
        raise DomainError(
            f"unknown mu kind {mu_name!r}; expected one of {', '.join(_MU_NAMES)}"
        )
    precision = args.precision
    if precision is None:
        precision = int(_env("PRECISION") or 32)
    seed = args.seed
    if seed is None:
        seed = int(_env("SEED") or 0)
    fmt = args.format
    if fmt is None:
        fmt = _env("FORMAT") or "json"
    if fmt not in ("json", "pretty"):
        raise DomainError(f"unknown format {fmt!r}; expected json or pretty")
    return RunConfig(p=p, mu=MuKind(mu_name), precision=precision, seed=seed, format=fmt)


def _read_payload(arg: str) -> Any:
    """Inline JSON, ``-`` for stdin, or a file path."""
    if arg == "-":
        return parse_json_text(sys.stdin.read())
    try:
        return json.loads(arg)
    except ValueError:
        pass
    try:
        with open(arg, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError:
        raise InputFormatError(
            "payload is neither valid JSON, '-', nor a readable file", ""
        ) from None
    return parse_json_text(text)


def _norm_str(compute) -> str:
    return str(compute())


# -- scalar ---------------------------------------------------------------------


def _cmd_scalar_eval(cfg: FieldConfig, run: RunConfig, args) -> dict:
    z = parse_ext(cfg, _read_payload(args.payload), "")
    return {"value": render_ext(z)}


def _cmd_scalar_abs(cfg: FieldConfig, run: RunConfig, args) -> dict:
    z = parse_ext(cfg, _read_payload(args.payload), "")
    return {"norm": _norm_str(z.norm)}


def _cmd_scalar_sqrt(cfg: FieldConfig, run: RunConfig, args) -> dict:
    z = parse_ext(cfg, _read_payload(args.payload), "")
    out: dict[str, Any] = {"is_square": is_square_ext(z)}
    if out["is_square"]:
        root = sqrt_ext(z)
        out["root"] = render_ext(root)
    else:
        out["root"] = None
    return out


# -- vec ------------------------------------------------------------------------


def _cmd_vec_norm(cfg: FieldConfig, run: RunConfig, args) -> dict:
    v = parse_vector(cfg, _read_payload(args.payload), "")
    return {"norm": _norm_str(v.sup_norm), "ip_self": render_ext(v.ip(v))}


def _cmd_vec_ip(cfg: FieldConfig, run: RunConfig, args) -> dict:
    obj = _read_payload(args.payload)
    if not isinstance(obj, dict) or set(obj) != {"x", "y"}:
        raise InputFormatError('expected an object with keys "x" and "y"', "")
    x = parse_vector(cfg, obj["x"], "/x")
    y = parse_vector(cfg, obj["y"], "/y")
    return {"ip": render_ext(x.ip(y))}


def _cmd_vec_orth(cfg: FieldConfig, run: RunConfig, args) -> dict:
    obj = _read_payload(args.payload)
    if isinstance(obj, dict):
        if set(obj) != {"vectors"}:
            raise InputFormatError('expected an object with key "vectors"', "")
        obj = obj["vectors"]
    if not isinstance(obj, list) or not obj:
        raise InputFormatError("expected a non-empty list of vectors", "")
    vs = [parse_vector(cfg, v, f"/{i}") for i, v in enumerate(obj)]
    return {
        "normal": is_normal_system(vs),
        "norm_orthogonal": is_norm_orthogonal_system(vs),
        "ip_orthonormal": is_ip_orthonormal(vs),
        "orthonormal_system": is_orthonormal_system(vs),
        "orthonormal_basis": is_orthonormal_basis(vs),
    }


# -- op -------------------------------------------------------------------------


def _cmd_op_classify(cfg: FieldConfig, run: RunConfig, args) -> dict:
    op = parse_operator(cfg, _read_payload(args.payload), "")
    out: dict[str, Any] = op.classify().as_dict()
    out["op_norm"] = _norm_str(op.op_norm)
    return out


def _cmd_op_adjoint(cfg: FieldConfig, run: RunConfig, args) -> dict:
    op = parse_operator(cfg, _read_payload(args.payload), "")
    return {"adjoint": render_operator(op.adjoint())}


def _cmd_op_trace(cfg: FieldConfig, run: RunConfig, args) -> dict:
    op = parse_operator(cfg, _read_payload(args.payload), "")
    return {"trace": render_ext(op.trace())}


def _cmd_op_hsip(cfg: FieldConfig, run: RunConfig, args) -> dict:
    obj = _read_payload(args.payload)
    if not isinstance(obj, dict) or set(obj) != {"s", "t"}:
        raise InputFormatError('expected an object with keys "s" and "t"', "")
    s = parse_operator(cfg, obj["s"], "/s")
    t = parse_operator(cfg, obj["t"], "/t")
    return {"hsip": render_ext(hs_inner_product(s, t))}


# -- tensor ----------------------------------------------------------------------


def _cmd_tensor_norm(cfg: FieldConfig, run: RunConfig, args) -> dict:
    t = parse_tensor(cfg, _read_payload(args.payload), "")
    return {"proj_norm": _norm_str(t.proj_norm)}


def _cmd_tensor_ip(cfg: FieldConfig, run: RunConfig, args) -> dict:
    obj = _read_payload(args.payload)
    if not isinstance(obj, dict) or set(obj) != {"s", "t"}:
        raise InputFormatError('expected an object with keys "s" and "t"', "")
    s = parse_tensor(cfg, obj["s"], "/s")
    t = parse_tensor(cfg, obj["t"], "/t")
    return {"ip": render_ext(s.ip(t))}


def _cmd_tensor_rank(cfg: FieldConfig, run: RunConfig, args) -> dict:
    t = parse_tensor(cfg, _read_payload(args.payload), "")
    return {"rank": t.rank()}


def _cmd_tensor_zero(cfg: FieldConfig, run: RunConfig, args) -> dict:
    t = parse_tensor(cfg, _read_payload(args.payload), "")
    return {
        "exact_zero": t.is_exact_zero,
        "zero_at_precision": t.is_zeroish and not t.is_exact_zero,
    }


# -- iso -------------------------------------------------------------------------


def _cmd_iso_forward(cfg: FieldConfig, run: RunConfig, args) -> dict:
    op = parse_operator(cfg, _read_payload(args.payload), "")
    t = operator_to_tensor(op)
    return {"tensor": render_tensor(t), "proj_norm": _norm_str(t.proj_norm)}


def _cmd_iso_backward(cfg: FieldConfig, run: RunConfig, args) -> dict:
    t = parse_tensor(cfg, _read_payload(args.payload), "")
    op = tensor_to_operator(t)
    return {"operator": render_operator(op), "hs_norm": _norm_str(lambda: hs_norm(op))}


def _cmd_iso_roundtrip(cfg: FieldConfig, run: RunConfig, args) -> dict:
    op = parse_operator(cfg, _read_payload(args.payload), "")
    t = operator_to_tensor(op)
    back = tensor_to_operator(t)
    hs = hs_norm(op)
    pn = t.proj_norm()
    return {
        "roundtrip_identity": back == op,
        "hs_norm": str(hs),
        "proj_norm": str(pn),
        "norms_agree": hs == pn,
    }


def _cmd_iso_rankone(cfg: FieldConfig, run: RunConfig, args) -> dict:
    obj = _read_payload(args.payload)
    if not isinstance(obj, dict) or set(obj) != {"v", "w"}:
        raise InputFormatError('expected an object with keys "v" and "w"', "")
    v = parse_vector(cfg, obj["v"], "/v")
    w = parse_vector(cfg, obj["w"], "/w")
    op = rank_one_operator(v, w)
    return {"operator": render_operator(op), "tensor": render_tensor(operator_to_tensor(op))}


# -- conj -------------------------------------------------------------------------


def _conjugation_from_spec(cfg: FieldConfig, obj: Any, pointer: str) -> AntiLinearMap:
    if isinstance(obj, dict) and "linear_part" in obj:
        extra = set(obj) - {"linear_part"}
        if extra:
            raise InputFormatError(
                f"unknown keys {sorted(extra)}", pointer
            )
        return AntiLinearMap(
            parse_operator(cfg, obj["linear_part"], f"{pointer}/linear_part")
        )
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputFormatError(
            'expected {"kind": standard|swap|basis, ...} or {"linear_part": ...}',
            pointer,
        )
    kind = obj["kind"]
    if kind == "standard":
        if set(obj) != {"kind", "dim"}:
            raise InputFormatError('expected keys "kind" and "dim"', pointer)
        return standard_conjugation(cfg, int(obj["dim"]))
    if kind == "swap":
        if set(obj) != {"kind", "dim"}:
            raise InputFormatError('expected keys "kind" and "dim"', pointer)
        return pairwise_swap_conjugation(cfg, int(obj["dim"]))
    if kind == "basis":
        if set(obj) != {"kind", "basis"}:
            raise InputFormatError('expected keys "kind" and "basis"', pointer)
        basis = [
            parse_vector(cfg, b, f"{pointer}/basis/{i}")
            for i, b in enumerate(obj["basis"])
        ]
        return conjugation_for_basis(basis)
    raise InputFormatError(
        f"unknown conjugation kind {kind!r}", f"{pointer}/kind"
    )


def _cmd_conj_build(cfg: FieldConfig, run: RunConfig, args) -> dict:
    z = _conjugation_from_spec(cfg, _read_payload(args.payload), "")
    return {
        "linear_part": render_operator(z.linear_part),
        "involutive": z.is_involutive,
    }


def _cmd_conj_zcheck(cfg: FieldConfig, run: RunConfig, args) -> dict:
    z = _conjugation_from_spec(cfg, _read_payload(args.payload), "")
    rep = anti_unitary_report(z, rng=random.Random(run.seed))
    out = rep.as_dict()
    out["all_true"] = rep.all_true
    if z.is_involutive and z.is_ip_conjugating:
        out["invariant_orthonormal_basis_exists"] = invariant_orthonormal_search(
            z
        ).exists
    return out


def _cmd_conj_dichotomy(cfg: FieldConfig, run: RunConfig, args) -> dict:
    z1 = parse_ext(cfg, args.z1, "/z1")
    z2 = parse_ext(cfg, args.z2, "/z2")
    rep = dichotomy_construction(cfg, z1, z2, base_dim=args.base_dim)
    return rep.as_dict()


def _cmd_conj_decompose(cfg: FieldConfig, run: RunConfig, args) -> dict:
    obj = _read_payload(args.payload)
    if not isinstance(obj, dict) or set(obj) != {"z", "chi"}:
        raise InputFormatError('expected an object with keys "z" and "chi"', "")
    z = _conjugation_from_spec(cfg, obj["z"], "/z")
    chi = parse_vector(cfg, obj["chi"], "/chi")
    chi1, chi2 = z_invariant_decomposition(z, chi)
    half = ExtScalar.from_fraction(cfg, Fraction(1, 2))
    recon = chi1.scale(half) + chi2.scale(half * ExtScalar.sqrt_mu(cfg))
    return {
        "chi1": render_vector(chi1),
        "chi2": render_vector(chi2),
        "invariant": z.apply(chi1) == chi1 and z.apply(chi2) == chi2,
        "reconstructed": recon == chi,
    }


# -- sub --------------------------------------------------------------------------


def _cmd_sub_perp(cfg: FieldConfig, run: RunConfig, args) -> dict:
    sub = parse_subspace(cfg, _read_payload(args.payload), "")
    comp = perp(sub)
    return {
        "perp": render_subspace(comp),
        "union_orthonormal_basis": is_orthonormal_basis(
            list(sub.basis) + list(comp.basis)
        ),
    }


def _cmd_sub_regular(cfg: FieldConfig, run: RunConfig, args) -> dict:
    sub = parse_subspace(cfg, _read_payload(args.payload), "")
    return {"verdict": regularity(sub).value}


def _cmd_sub_c0iso(cfg: FieldConfig, run: RunConfig, args) -> dict:
    obj = _read_payload(args.payload)
    basis_obj = None
    if isinstance(obj, dict) and "tensor" in obj:
        extra = set(obj) - {"tensor", "basis"}
        if extra:
            raise InputFormatError(f"unknown keys {sorted(extra)}", "")
        basis_obj = obj.get("basis")
        obj = obj["tensor"]
    t = parse_tensor(cfg, obj, "/tensor" if basis_obj is not None else "")
    rows = tensor_to_rows(t)
    sup_rows = max(r.norm_upper_bound() for r in rows)
    out: dict[str, Any] = {
        "rows": [render_vector(r) for r in rows],
        "sup_of_rows": str(sup_rows),
        "proj_norm": _norm_str(t.proj_norm),
        "roundtrip_identity": rows_to_tensor(cfg, rows) == t,
    }
    out["agree"] = out["sup_of_rows"] == out["proj_norm"]
    if basis_obj is not None:
        basis = [
            parse_vector(cfg, b, f"/basis/{i}") for i, b in enumerate(basis_obj)
        ]
        t2 = change_tensor_basis(t, basis)
        out["changed"] = render_tensor(t2)
        out["change_roundtrip_identity"] = (
            change_tensor_basis_inverse(t2, basis) == t
        )
        out["ip_preserved"] = t2.ip(t2) == t.ip(t)
    return out


def _cmd_sub_tensor(cfg: FieldConfig, run: RunConfig, args) -> dict:
    obj = _read_payload(args.payload)
    if not isinstance(obj, dict) or set(obj) != {"dim_h", "subspace"}:
        raise InputFormatError(
            'expected an object with keys "dim_h" and "subspace"', ""
        )
    sub = parse_subspace(cfg, obj["subspace"], "/subspace")
    dim_h = obj["dim_h"]
    if not isinstance(dim_h, int):
        raise InputFormatError("expected an integer", "/dim_h")
    out_sub = tensor_subspace(dim_h, sub)
    return {
        "subspace": render_subspace(out_sub),
        "regular": regularity(out_sub).value,
    }


# -- selftest ---------------------------------------------------------------------


def _cmd_selftest(cfg: FieldConfig, run: RunConfig, args) -> tuple[dict, int]:
    result = run_suite(
        args.suite,
        args.cases,
        run.seed,
        p=args.p,
        mu=None if args.mu is None else MuKind(args.mu),
        precision=run.precision,
    )
    return result.as_dict(), 3 if result.failed else 0


_HANDLERS = {
    ("scalar", "eval"): _cmd_scalar_eval,
    ("scalar", "abs"): _cmd_scalar_abs,
    ("scalar", "sqrt"): _cmd_scalar_sqrt,
    ("vec", "norm"): _cmd_vec_norm,
    ("vec", "ip"): _cmd_vec_ip,
    ("vec", "orth"): _cmd_vec_orth,
    ("op", "classify"): _cmd_op_classify,
    ("op", "adjoint"): _cmd_op_adjoint,
    ("op", "trace"): _cmd_op_trace,
    ("op", "hsip"): _cmd_op_hsip,
    ("tensor", "norm"): _cmd_tensor_norm,
    ("tensor", "ip"): _cmd_tensor_ip,
    ("tensor", "rank"): _cmd_tensor_rank,
    ("tensor", "zero"): _cmd_tensor_zero,
    ("iso", "forward"): _cmd_iso_forward,
    ("iso", "backward"): _cmd_iso_backward,
    ("iso", "roundtrip"): _cmd_iso_roundtrip,
    ("iso", "rankone"): _cmd_iso_rankone,
    ("conj", "build"): _cmd_conj_build,
    ("conj", "zcheck"): _cmd_conj_zcheck,
    ("conj", "dichotomy"): _cmd_conj_dichotomy,
    ("conj", "decompose"): _cmd_conj_decompose,
    ("sub", "perp"): _cmd_sub_perp,
    ("sub", "regular"): _cmd_sub_regular,
    ("sub", "c0iso"): _cmd_sub_c0iso,
    ("sub", "tensor"): _cmd_sub_tensor,
}


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, default=None, help="odd prime (default 5)")
    p.add_argument(
        "--mu",
        choices=_MU_NAMES,
        default=None,
        help="extension kind (default nonresidue)",
    )
    p.add_argument(
        "--precision", type=int, default=None, help="working digits (default 32)"
    )
    p.add_argument("--seed", type=int, default=None, help="run seed (default 0)")
    p.add_argument(
        "--format",
        choices=("json", "pretty"),
        default=None,
        help="output form (default json)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padic-hilbert",
        description=(
            "Exact arithmetic over quadratic extensions of the p-adic "
            "numbers: scalars, coordinate spaces, matrix operators, tensor "
            "products, conjugations, and certified subspaces."
        ),
    )
    sub = parser.add_subparsers(dest="group", required=True)

    groups: dict[str, argparse.ArgumentParser] = {}
    for group, actions in (
        ("scalar", ("eval", "abs", "sqrt")),
        ("vec", ("norm", "ip", "orth")),
        ("op", ("classify", "adjoint", "trace", "hsip")),
        ("tensor", ("norm", "ip", "rank", "zero")),
        ("iso", ("forward", "backward", "roundtrip", "rankone")),
        ("conj", ("build", "zcheck", "dichotomy", "decompose")),
        ("sub", ("perp", "regular", "c0iso", "tensor")),
    ):
        gp = sub.add_parser(group)
        groups[group] = gp
        gsub = gp.add_subparsers(dest="action", required=True)
        for action in actions:
            ap = gsub.add_parser(action)
            _add_common_flags(ap)
            if (group, action) == ("conj", "dichotomy"):
                ap.add_argument(
                    "--z1",
                    default="sqrt(1/2)",
                    help="plus-family coefficient (scalar literal)",
                )
                ap.add_argument(
                    "--z2",
                    default=None,
                    help="minus-family coefficient (default sqrt(-mu/2))",
                )
                ap.add_argument(
                    "--base-dim", type=int, default=1, dest="base_dim"
                )
            else:
                ap.add_argument(
                    "payload",
                    help="inline JSON, '-' for stdin, or a file path",
                )

    st = sub.add_parser("selftest")
    _add_common_flags(st)
    st.add_argument("--suite", required=True, choices=SUITE_NAMES)
    st.add_argument("--cases", type=int, default=100)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        run = _resolve_run_config(args)
        cfg = run.field()
        if args.group == "selftest":
            out, code = _cmd_selftest(cfg, run, args)
        else:
            if (args.group, args.action) == ("conj", "dichotomy") and args.z2 is None:
                args.z2 = f"sqrt({Fraction(-cfg.mu, 2)})"
            handler = _HANDLERS[(args.group, args.action)]
            out = handler(cfg, run, args)
            code = 0
    except InputFormatError as exc:
        pointer = exc.pointer or "/"
        print(f"error: {exc} (at {pointer})", file=sys.stderr)
        return 1
    except PrecisionLossError as exc:
        print(f"error: precision loss: {exc}", file=sys.stderr)
        return 2
    except PadicHilbertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if run.format == "pretty":
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        print(dump(out))
    return code
