"""Command line: ``check``, ``spaces``, ``construct`` and ``verify``.

Exit status 0 means everything requested passed or was skipped, 1 means a
check failed, 2 means bad usage or bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import io
from .algebra import BinaryAlgebra, TernaryAlgebra, direct_sum, quotient, validate_binary, \
    validate_ternary
from .constructions import hom_binary, j_alpha, tensor_ternary, ternary_slice, tilde
from .errors import TernaryJordanError
from .linalg import Subspace
from .spaces import all_spaces
from .theorems import CheckId, Options, verify

RECIPES = ("j-alpha", "slice", "hom-binary", "tensor", "tilde", "direct-sum", "quotient")


class UsageError(Exception):
    pass


def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=("json", "text"), default=d("text"))
    p.add_argument("--allow-char-3", action="store_true", default=d(False))
    p.add_argument("--allow-invalid", action="store_true", default=d(False),
                   help="compute on inputs that fail validation")
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--max-enum", type=int, default=d(10 ** 6),
                   help="bound for exhaustive searches over finite fields")
    p.add_argument("--jobs", type=int, default=d(1))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ternary-jordan",
                                description="Exact structure computations for ternary Jordan algebras.")
    _global_flags(p, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="validate an algebra document")
    c.add_argument("file")

    s = sub.add_parser("spaces", parents=[common], help="dimensions and bases of all spaces")
    s.add_argument("file")

    k = sub.add_parser("construct", parents=[common], help="build an algebra from others")
    k.add_argument("recipe", choices=RECIPES)
    k.add_argument("inputs", nargs="+", help="input algebra documents")
    k.add_argument("--alpha", help="covector for j-alpha, JSON list")
    k.add_argument("--z0", help="vector for slice, JSON list")
    k.add_argument("--map", dest="map_", help="matrix for hom-binary, JSON")
    k.add_argument("--mode", choices=("delta", "omega"), help="hom-binary condition")
    k.add_argument("--ideal", help="spanning vectors of the ideal for quotient, JSON")
    k.add_argument("-o", "--output", help="write the document here instead of stdout")

    v = sub.add_parser("verify", parents=[common], help="run the theorem checks")
    v.add_argument("file")
    v.add_argument("--checks", help="comma separated check ids (default: all)")
    v.add_argument("--extras", help="extras document")
    return p


def _json_arg(text, name):
    if text is None:
        raise UsageError(f"--{name} is required for this recipe")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--{name}: {exc.msg}") from None


def _ternary(A, what="input"):
    if not isinstance(A, TernaryAlgebra):
        raise UsageError(f"{what} must be a ternary algebra")
    return A


def _binary(A, what="input"):
    if not isinstance(A, BinaryAlgebra):
        raise UsageError(f"{what} must be a binary algebra")
    return A


def _arity(args, n):
    if len(args.inputs) != n:
        raise UsageError(f"recipe {args.recipe} takes {n} input file(s)")
    return [io.load_algebra(f) for f in args.inputs]


def _construct(args):
    strict = not args.allow_invalid
    r = args.recipe
    if r == "j-alpha":
        (J,) = _arity(args, 1)
        return j_alpha(_binary(J), _json_arg(args.alpha, "alpha"), strict=strict)
    if r == "slice":
        (A,) = _arity(args, 1)
        return ternary_slice(_ternary(A), _json_arg(args.z0, "z0"), strict=strict)
    if r == "hom-binary":
        (C,) = _arity(args, 1)
        if args.mode is None:
            raise UsageError("--mode is required for hom-binary")
        res = hom_binary(_binary(C), _json_arg(args.map_, "map"), args.mode, strict=strict,
                         max_enum=args.max_enum)
        if strict and not res.condition:
            raise UsageError(f"condition for mode {args.mode} fails: {res.witness}")
        return res.algebra
    if r == "tensor":
        A, C = _arity(args, 2)
        return tensor_ternary(_ternary(A, "first input"), _binary(C, "second input"), strict=strict)
    if r == "tilde":
        (A,) = _arity(args, 1)
        return tilde(_ternary(A)).algebra
    if r == "direct-sum":
        A, B = _arity(args, 2)
        return direct_sum(_ternary(A, "first input"), _ternary(B, "second input"))[0]
    (A,) = _arity(args, 1)
    A = _ternary(A)
    vecs = _json_arg(args.ideal, "ideal")
    I = Subspace.span(A.field, A.dim, [A.field.array(v) for v in vecs])
    return quotient(A, I)[0]


def _validate(A):
    return validate_ternary(A) if isinstance(A, TernaryAlgebra) else validate_binary(A)


def _run_one(payload):
    A, cid, extras, opts = payload
    return verify(A, cid, extras, opts)


def _text_verify(reports):
    lines = []
    for r in reports:
        lines.append(f"{r.id.value:<22} {r.status}")
        for why in r.reasons:
            lines.append(f"    {why}")
        for s in r.subchecks:
            extra = f" ({s['detail']})" if "detail" in s and s["status"] == "skipped" else ""
            lines.append(f"    [{s['status']}] {s['name']}{extra}")
        if r.dimensions:
            dims = ", ".join(f"{k}={v}" for k, v in sorted(r.dimensions.items()))
            lines.append(f"    dims: {dims}")
    return "\n".join(lines) + "\n"


def run(args, out) -> int:
    opts = Options(allow_char_3=args.allow_char_3, allow_invalid=args.allow_invalid,
                   seed=args.seed, max_enum=args.max_enum)
    if args.command == "check":
        A = io.load_algebra(args.file)
        rep = _validate(A)
        if args.format == "json":
            out.write(io.dumps(io.validation_document(A, rep)))
        else:
            out.write(f"{'valid' if rep.valid else 'invalid'}: symmetric={rep.symmetric} "
                      f"jordan={rep.jordan}\n")
            for w in rep.witnesses:
                out.write(f"    witness {json.dumps(w, sort_keys=True)}\n")
        return 0 if rep.valid else 1
    if args.command == "spaces":
        A = _ternary(io.load_algebra(args.file))
        res = all_spaces(A, allow_char_3=args.allow_char_3, require_valid=not args.allow_invalid)
        doc = io.spaces_document(A, res)
        if args.format == "json":
            out.write(io.dumps(doc))
        else:
            for k in res:
                out.write(f"{k.value:<10} {doc[k.value]}\n")
        return 0
    if args.command == "construct":
        B = _construct(args)
        text = io.emit_algebra(B)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            out.write(text)
        return 0
    A = _ternary(io.load_algebra(args.file))
    extras = {}
    if args.extras:
        with open(args.extras, "rb") as fh:
            extras = io.parse_extras(fh.read(), A)
    if args.checks:
        try:
            ids = [CheckId(c.strip()) for c in args.checks.split(",") if c.strip()]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        ids = list(CheckId)
    payloads = [(A, c, extras, opts) for c in ids]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            reports = list(ex.map(_run_one, payloads))
    else:
        reports = [_run_one(p) for p in payloads]
    if args.format == "json":
        out.write(io.dumps(io.verify_document(A, reports, opts)))
    else:
        out.write(_text_verify(reports))
    return 1 if any(r.status == "fail" for r in reports) else 0


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(args, out)
    except (TernaryJordanError, UsageError, OSError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2
