"""Command line interface.

Exit codes: 0 success (Found, Witness, CertifiedRound, WallFound, ...),
1 contract violation, 2 malformed input, 3 search budget exhausted
(Unknown / Exhausted).
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import chambers, embedding, isotropy
from .catalog import catalog_get, catalog_list
from .errors import ContractViolation, InputFormatError
from .lattice import (
    GramLattice,
    discriminant,
    is_even,
    parse_lattice,
    quotient_isotropic,
    saturate,
    saturation_index,
    signature,
    value_divisor,
)

EXIT_OK = 0
EXIT_CONTRACT = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

DEFAULT_BOUND = 10
DEFAULT_MAX_CANDIDATES = 10**6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _fail("argument error", message, EXIT_INPUT)


class _Exit(Exception):
    def __init__(self, code):
        self.code = code


def _fail(kind: str, message: str, code: int):
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    raise _Exit(code)


def _default_max_candidates() -> int:
    raw = os.environ.get("HKLAT_MAX_CANDIDATES")
    if raw is None:
        return DEFAULT_MAX_CANDIDATES
    try:
        value = int(raw)
    except ValueError:
        raise InputFormatError(f"HKLAT_MAX_CANDIDATES={raw!r} is not an integer") from None
    if value <= 0:
        raise InputFormatError(f"HKLAT_MAX_CANDIDATES must be positive, got {value}")
    return value


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{what}: invalid JSON ({exc.msg} at line {exc.lineno} column {exc.colno})") from None


def _int_vector(obj, what: str) -> list[int]:
    if not isinstance(obj, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in obj):
        raise InputFormatError(f"{what} must be a JSON list of integers, got {obj!r}")
    return obj


def load_lattice(args) -> GramLattice:
    sources = [s for s in ("gram", "file", "catalog") if getattr(args, s, None) is not None]
    if len(sources) != 1:
        raise InputFormatError("give exactly one of --gram, --file, --catalog")
    if args.gram is not None:
        return parse_lattice(_json_arg(args.gram, "--gram"))
    if args.file is not None:
        try:
            with open(args.file) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputFormatError(f"cannot read {args.file}: {exc.strerror}") from None
        return parse_lattice(_json_arg(text, args.file))
    entry = catalog_get(args.catalog, args.n)
    return entry.lattice


def _budget(args) -> isotropy.SearchBudget:
    max_c = args.max_candidates if args.max_candidates is not None else _default_max_candidates()
    return isotropy.SearchBudget(args.bound, max_c)


def _mbm_spec(args) -> chambers.MbmSpec:
    if (args.mbm_squares is None) == (args.mbm_bound is None):
        raise InputFormatError("give exactly one of --mbm-squares, --mbm-bound")
    if args.mbm_bound is not None:
        return chambers.MbmSpec.of_bound(args.mbm_bound)
    try:
        squares = [int(s) for s in args.mbm_squares.split(",") if s.strip()]
    except ValueError:
        raise InputFormatError(f"--mbm-squares: expected comma separated integers, got {args.mbm_squares!r}") from None
    return chambers.MbmSpec.of_squares(squares)


def _lattice_header(L: GramLattice) -> dict:
    return {"name": L.name, "hash": L.digest(), "rank": L.rank}


def cmd_info(args):
    L = load_lattice(args)
    det = discriminant(L)
    return {
        "command": "info",
        "lattice": _lattice_header(L),
        "signature": list(signature(L)),
        "determinant": det,
        "abs_discriminant": abs(det),
        "value_divisor": value_divisor(L),
        "even": is_even(L),
    }, EXIT_OK


def cmd_isotropic(args):
    L = load_lattice(args)
    res = isotropy.find_isotropic(L, _budget(args))
    out = {"command": "isotropic", "lattice": _lattice_header(L), "status": res.status.value,
           "candidates_tried": res.candidates_tried}
    if res.ray is not None:
        out["ray"] = list(res.ray.rep)
        out["strategy"] = res.strategy
    if args.enumerate:
        out["rays"] = [list(r.rep) for r in isotropy.enumerate_primitive_isotropic(L, args.bound)]
    code = EXIT_BUDGET if res.status is isotropy.SearchStatus.UNKNOWN else EXIT_OK
    return out, code


def cmd_pairs(args):
    L = load_lattice(args)
    pairs = isotropy.enumerate_isotropic_pairs(L, args.bound)
    return {
        "command": "pairs",
        "lattice": _lattice_header(L),
        "bound": args.bound,
        "count": len(pairs),
        "pairs": [{"first": list(p.first.rep), "second": list(p.second.rep), "n": p.invariant_n}
                  for p in pairs],
    }, EXIT_OK


def cmd_invariants(args):
    L = load_lattice(args)
    inv = isotropy.distinct_invariants(L, args.bound)
    return {"command": "invariants", "lattice": _lattice_header(L), "bound": args.bound,
            "count": len(inv), "invariants": inv}, EXIT_OK


def cmd_embed_un(args):
    L = load_lattice(args)
    res = embedding.embed_un(L, args.min_n, _budget(args))
    out = {"command": "embed-un", "lattice": _lattice_header(L), "a_bound": args.min_n}
    out.update(res.to_json())
    return out, EXIT_OK if res.witness is not None else EXIT_BUDGET


def cmd_round(args):
    L = load_lattice(args)
    spec = _mbm_spec(args)
    out = {"command": "round", "lattice": _lattice_header(L), "mbm": spec.to_json()}
    if L.rank == 2:
        verdict = chambers.is_round(L, spec, args.bound)
        out.update(verdict.to_json())
        code = EXIT_BUDGET if verdict.status is chambers.RoundStatus.UNKNOWN else EXIT_OK
        return out, code
    res = embedding.round_picard_witness(L, spec.max_abs, _budget(args))
    out.update(res.to_json())
    return out, EXIT_OK if res.witness is not None else EXIT_BUDGET


def cmd_chambers(args):
    L = load_lattice(args)
    spec = _mbm_spec(args)
    dec = chambers.chambers_rank2(L, spec, args.bound)
    out = {"command": "chambers", "lattice": _lattice_header(L), "mbm": spec.to_json(), "bound": args.bound}
    out.update(dec.to_json())
    return out, EXIT_OK


def cmd_quotient(args):
    L = load_lattice(args)
    u = _int_vector(_json_arg(args.vector, "--vector"), "--vector")
    W = quotient_isotropic(L, u)
    return {"command": "quotient", "lattice": _lattice_header(L), "vector": u,
            "quotient": W.to_json(), "signature": list(signature(W))}, EXIT_OK


def cmd_saturate(args):
    L = load_lattice(args)
    vecs = _json_arg(args.vectors, "--vectors")
    if not isinstance(vecs, list):
        raise InputFormatError("--vectors must be a JSON list of vectors")
    vecs = [_int_vector(v, "--vectors entry") for v in vecs]
    emb = saturate(L, vecs)
    return {"command": "saturate", "lattice": _lattice_header(L), "vectors": vecs,
            "basis": [list(r) for r in emb.basis], "induced_gram": [list(r) for r in emb.induced_gram],
            "index": saturation_index(L, vecs) if vecs else 1}, EXIT_OK


def cmd_catalog(args):
    if args.action == "list":
        return {"command": "catalog", "keys": catalog_list()}, EXIT_OK
    if args.key is None:
        raise InputFormatError("catalog show needs a key")
    entry = catalog_get(args.key, args.n)
    out = {"command": "catalog"}
    out.update(entry.to_json())
    return out, EXIT_OK


def _add_input(p):
    p.add_argument("--gram", help="inline lattice JSON: {\"gram\": [[...]]} or [[...]]")
    p.add_argument("--file", help="path to a lattice JSON file")
    p.add_argument("--catalog", help="catalog key (see `hklat catalog list`)")
    p.add_argument("--n", type=int, help="parameter of a parametrized catalog entry")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="coefficient bound (default 10)")
    p.add_argument("--max-candidates", type=int, default=None,
                   help="candidate budget (default 10^6 or $HKLAT_MAX_CANDIDATES)")
    p.add_argument("--format", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hklat", description="Exact integer lattice tools for hyperbolic planes, "
                                                "isotropic vectors and positive-cone chambers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    simple = {
        "info": (cmd_info, "rank, signature, discriminant, value divisor"),
        "isotropic": (cmd_isotropic, "find a primitive isotropic vector"),
        "pairs": (cmd_pairs, "enumerate non-orthogonal isotropic pairs in the box"),
        "invariants": (cmd_invariants, "distinct pair invariants N in the box"),
    }
    for name, (fn, help_) in simple.items():
        p = sub.add_parser(name, help=help_)
        _add_input(p)
        p.set_defaults(func=fn)
        if name == "isotropic":
            p.add_argument("--enumerate", action="store_true", help="also list every ray in the box")

    p = sub.add_parser("embed-un", help="find a primitive U(N) with N > --min-n")
    _add_input(p)
    p.add_argument("--min-n", type=int, required=True)
    p.set_defaults(func=cmd_embed_un)

    for name, fn, help_ in (("round", cmd_round, "roundness verdict or round Picard witness"),
                            ("chambers", cmd_chambers, "rank-2 wall and chamber decomposition")):
        p = sub.add_parser(name, help=help_)
        _add_input(p)
        p.add_argument("--mbm-squares", help="comma separated negative squares, e.g. -2,-10")
        p.add_argument("--mbm-bound", type=int, help="MBM bound C (squares in [-C, -1])")
        p.set_defaults(func=fn)

    p = sub.add_parser("quotient", help="u^perp / <u> for a primitive isotropic u")
    _add_input(p)
    p.add_argument("--vector", required=True, help="JSON list of integers")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("saturate", help="primitive closure of the span of vectors")
    _add_input(p)
    p.add_argument("--vectors", required=True, help="JSON list of integer vectors")
    p.set_defaults(func=cmd_saturate)

    p = sub.add_parser("catalog", help="list or show built-in lattices")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("key", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_catalog)
    return parser


def _render_text(obj, prefix="") -> str:
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{prefix}{k}:")
            lines.append(_render_text(v, prefix + "  "))
        else:
            lines.append(f"{prefix}{k}: {json.dumps(v) if isinstance(v, (list, bool)) or v is None else v}")
    return "\n".join(lines)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        try:
            out, code = args.func(args)
        except InputFormatError as exc:
            _fail("input error", f"{args.command}: {exc}", EXIT_INPUT)
        except ContractViolation as exc:
            _fail(type(exc).__name__, f"{args.command}: {exc}", EXIT_CONTRACT)
    except _Exit as e:
        return e.code
    if args.format == "text":
        sys.stdout.write(_render_text(out) + "\n")
    else:
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
