"""JSON documents: algebras, extras for the theorem suite, and reports.

An algebra document looks like::

    {"field": "Q", "kind": "ternary", "dim": 1, "basis": ["e"],
     "products": [{"args": [0, 0, 0], "value": [[0, "1"]]}],
     "symmetrize": true}

Unlisted products are zero.  With ``symmetrize`` (the default) each entry
fills its whole permutation orbit.  Without it the document must list the
orbit itself: an entry whose permutation is missing or different raises
``SymmetryConflict``.  For binary documents ``symmetrize`` makes the product
commutative; otherwise the table is taken as written.
"""
from __future__ import annotations

import hashlib
import itertools
import json

import numpy as np

from .algebra import BinaryAlgebra, TernaryAlgebra, multisets
from .errors import BadField, IndexOutOfRange, MissingExtras, ParseError, SymmetryConflict
from .linalg import FieldSpec, Subspace

KINDS = {"ternary": 3, "binary": 2}


def _fail(msg, where):
    raise ParseError(msg, where)


def _load(text):
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None


def _scalar(F: FieldSpec, raw, where):
    if isinstance(raw, bool) or isinstance(raw, float):
        _fail("coefficients must be integers or 'num/den' strings", where)
    try:
        return F(raw)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        _fail(f"bad coefficient {raw!r}: {exc}", where)


def _field(raw):
    if not isinstance(raw, str):
        raise BadField(f"field must be a string, got {raw!r}")
    return FieldSpec.parse(raw)


def algebra_from_dict(doc, where: str = "$"):
    if not isinstance(doc, dict):
        _fail("algebra document must be an object", where)
    for key in ("field", "kind", "dim"):
        if key not in doc:
            _fail(f"missing key {key!r}", where)
    F = _field(doc["field"])
    kind = doc["kind"]
    if kind not in KINDS:
        _fail(f"kind must be 'ternary' or 'binary', not {kind!r}", f"{where}.kind")
    arity = KINDS[kind]
    n = doc["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        _fail("dim must be a non-negative integer", f"{where}.dim")
    basis = doc.get("basis")
    if basis is not None and (not isinstance(basis, list) or len(basis) != n
                              or not all(isinstance(b, str) for b in basis)):
        _fail(f"basis must list {n} names", f"{where}.basis")
    sym = doc.get("symmetrize", True)
    if not isinstance(sym, bool):
        _fail("symmetrize must be a boolean", f"{where}.symmetrize")
    products = doc.get("products", [])
    if not isinstance(products, list):
        _fail("products must be a list", f"{where}.products")
    table = {}
    for t, entry in enumerate(products):
        at = f"{where}.products[{t}]"
        if not isinstance(entry, dict) or "args" not in entry or "value" not in entry:
            _fail("product entry needs 'args' and 'value'", at)
        args = entry["args"]
        if (not isinstance(args, list) or len(args) != arity
                or not all(isinstance(a, int) and not isinstance(a, bool) for a in args)):
            _fail(f"args must be {arity} integers", f"{at}.args")
        for a in args:
            if not 0 <= a < n:
                raise IndexOutOfRange(f"basis index {a} outside 0..{n - 1} at {at}.args")
        args = tuple(args)
        if args in table:
            _fail(f"duplicate args {list(args)}", f"{at}.args")
        vec = [F.zero] * n
        value = entry["value"]
        if not isinstance(value, list):
            _fail("value must be a list of [index, coefficient] pairs", f"{at}.value")
        seen = set()
        for s, pair in enumerate(value):
            pw = f"{at}.value[{s}]"
            if not isinstance(pair, list) or len(pair) != 2 or not isinstance(pair[0], int) \
                    or isinstance(pair[0], bool):
                _fail("value entries are [index, coefficient]", pw)
            l = pair[0]
            if not 0 <= l < n:
                raise IndexOutOfRange(f"basis index {l} outside 0..{n - 1} at {pw}")
            if l in seen:
                _fail(f"index {l} repeated", pw)
            seen.add(l)
            vec[l] = _scalar(F, pair[1], pw)
        table[args] = tuple(vec)
    if arity == 2:
        return BinaryAlgebra.from_products(F, n, table, commutative=sym, labels=basis)
    if not sym:
        zero = (F.zero,) * n
        for args, vec in table.items():
            for perm in set(itertools.permutations(args)):
                if table.get(perm, zero) != vec:
                    raise SymmetryConflict(
                        f"args {list(args)} and {list(perm)} disagree (symmetrize is false)")
    return TernaryAlgebra.from_products(F, n, table, labels=basis)


def parse_algebra(text):
    return algebra_from_dict(_load(text))


def load_algebra(path):
    with open(path, "rb") as fh:
        return parse_algebra(fh.read())


def algebra_to_dict(A) -> dict:
    F = A.field
    doc = {"field": str(F), "dim": A.dim}
    if isinstance(A, TernaryAlgebra):
        doc["kind"] = "ternary"
        keys = [(k, A.tensor[k]) for k in multisets(A.dim)]
        doc["symmetrize"] = True
    else:
        doc["kind"] = "binary"
        B = A.tensor
        comm = A.is_commutative
        doc["symmetrize"] = comm
        pairs = multisets(A.dim, 2) if comm else itertools.product(range(A.dim), repeat=2)
        keys = [(k, B[k]) for k in pairs]
    prods = []
    for k, vec in keys:
        value = [[l, F.format(c)] for l, c in enumerate(vec) if c != 0]
        if value:
            prods.append({"args": list(k), "value": value})
    doc["products"] = prods
    if A.labels is not None:
        doc["basis"] = list(A.labels)
    return doc


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit_algebra(A) -> str:
    return dumps(algebra_to_dict(A))


def digest(A) -> str:
    return hashlib.sha256(emit_algebra(A).encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# extras
# ---------------------------------------------------------------------------

def _matrix(F, raw, n, where):
    if not isinstance(raw, list) or len(raw) != n or \
            not all(isinstance(r, list) for r in raw):
        _fail(f"expected a {n}-row matrix", where)
    return np.array([[_scalar(F, x, f"{where}[{i}]") for x in row]
                     for i, row in enumerate(raw)], dtype=object).reshape(n, -1)


def _subspace(F, raw, n, where):
    if not isinstance(raw, list):
        _fail("expected a list of spanning vectors", where)
    vecs = []
    for t, v in enumerate(raw):
        if not isinstance(v, list) or len(v) != n:
            _fail(f"vector of length {n} expected", f"{where}[{t}]")
        vecs.append([_scalar(F, x, f"{where}[{t}]") for x in v])
    return Subspace.span(F, n, vecs)


def extras_from_dict(doc, A: TernaryAlgebra) -> dict:
    """Keys: B, A2 (algebra documents), pi, psi (matrices), f, forms (lists
    of matrices), ideals (two spanning lists), I, perfect_ideals (lists of
    spanning lists), indecomposable (boolean)."""
    if not isinstance(doc, dict):
        _fail("extras document must be an object", "$")
    F, n = A.field, A.dim
    out = {}
    for key in ("B", "A2"):
        if key in doc:
            out[key] = algebra_from_dict(doc[key], f"$.{key}")
            if not isinstance(out[key], TernaryAlgebra):
                _fail("expected a ternary algebra", f"$.{key}")
    if "pi" in doc:
        if "A2" not in out:
            raise MissingExtras("'pi' needs 'A2'")
        m = out["A2"].dim
        out["pi"] = _matrix(F, doc["pi"], m, "$.pi")
    if "psi" in doc:
        out["psi"] = _matrix(F, doc["psi"], n, "$.psi")
    for key in ("f", "forms"):
        if key in doc:
            out[key] = [_matrix(F, m, n, f"$.{key}[{t}]") for t, m in enumerate(doc[key])]
    if "ideals" in doc:
        raw = doc["ideals"]
        if not isinstance(raw, list) or len(raw) != 2:
            _fail("ideals must be a pair", "$.ideals")
        out["ideals"] = tuple(_subspace(F, r, n, f"$.ideals[{t}]") for t, r in enumerate(raw))
    for key in ("I", "perfect_ideals"):
        if key in doc:
            out[key] = [_subspace(F, r, n, f"$.{key}[{t}]") for t, r in enumerate(doc[key])]
    if "indecomposable" in doc:
        if not isinstance(doc["indecomposable"], bool):
            _fail("indecomposable must be a boolean", "$.indecomposable")
        out["indecomposable"] = doc["indecomposable"]
    unknown = set(doc) - {"B", "A2", "pi", "psi", "f", "forms", "ideals", "I",
                          "perfect_ideals", "indecomposable"}
    if unknown:
        _fail(f"unknown extras keys {sorted(unknown)}", "$")
    return out


def parse_extras(text, A: TernaryAlgebra) -> dict:
    return extras_from_dict(_load(text), A)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def tool_version() -> str:
    from . import __version__
    return __version__


def _header(A) -> dict:
    return {"tool": "ternary-jordan", "version": tool_version(),
            "algebra": {"digest": digest(A), "field": str(A.field), "dim": A.dim}}


def validation_document(A, report) -> dict:
    doc = _header(A)
    doc["validation"] = report.as_dict()
    return doc


def spaces_document(A, results: dict) -> dict:
    """Top-level dimension per space kind plus canonical bases under ``bases``.

    Delta is reported as the space of quadruples; every other kind by its
    projection onto the first map.
    """
    F = A.field
    pick = {k: (r.space if k.value == "Delta" else r.projected) for k, r in results.items()}
    doc = {k.value: S.dim for k, S in pick.items()}
    doc["bases"] = {k.value: [[F.format(x) for x in v] for v in S.basis] for k, S in pick.items()}
    return doc


def verify_document(A, reports, options) -> dict:
    doc = _header(A)
    doc["options"] = {"allow_char_3": options.allow_char_3,
                      "allow_invalid": options.allow_invalid,
                      "max_enum": options.max_enum, "seed": options.seed}
    doc["checks"] = [r.as_dict() for r in reports]
    st = [r.status for r in reports]
    doc["summary"] = {s: st.count(s) for s in ("pass", "fail", "skipped")}
    return doc
