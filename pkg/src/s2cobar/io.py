"""JSON structure-constant files.

A file is one JSON object::

    {
      "kind": "hopf" | "algebra" | "coalgebra" | "s2" | "lie",
      "ring": "z" | "q" | "zmod:m",
      "unit": "1",                        # not for "lie"
      "basis": {"1": 0, "v": 2, ...},     # label -> degree, in basis order
      "differential": {"e": {"a": 1}},    # d(e) = a
      "products": [["a", "b", {"ab": 1}]],
      "coproducts": {"c": [["a", "b", 1]]},   # reduced diagonal
      "braces": [["x", ["y"], {"x": -1}]],    # x{y} = -x
      "bracket": [["x", "y", {"z": 1}]]       # "lie" only
    }

Coefficients are integers or strings "p/q". Every constructed object is
checked against its axioms on the whole basis before it is returned.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .errors import AxiomViolation, SchemaError
from .hopf import PresentedBialgebra, check_bialgebra
from .lie import GradedLieAlgebra
from .rings import parse_ring
from .s2algebra import PresentedS2Algebra, check_identity_diff, check_identity_mult

KINDS = ("hopf", "algebra", "coalgebra", "s2", "lie")
_ALLOWED = {
    "hopf": {"kind", "ring", "unit", "basis", "differential", "products", "coproducts", "name"},
    "algebra": {"kind", "ring", "unit", "basis", "differential", "products", "name"},
    "coalgebra": {"kind", "ring", "unit", "basis", "differential", "coproducts", "name"},
    "s2": {"kind", "ring", "unit", "basis", "differential", "products", "braces", "name"},
    "lie": {"kind", "ring", "basis", "differential", "bracket", "name"},
}


class _Locator:
    """Approximate source positions for a JSON path by scanning for its string keys."""

    def __init__(self, text):
        self.text = text

    def position(self, path):
        pos = 0
        for key in path:
            if isinstance(key, str):
                i = self.text.find(json.dumps(key), pos)
                if i >= 0:
                    pos = i
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, message, path):
        line, col = self.position(path)
        return SchemaError(f"{'/'.join(map(str, path))}: {message}", line, col)


def _coeff(x, ring, loc, path):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise loc.error(f"coefficient must be an integer or 'p/q' string, got {x!r}", path)
    try:
        q = Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise loc.error(f"bad coefficient {x!r}", path) from None
    if q.denominator != 1 and not ring.is_field:
        raise loc.error(f"non-integral coefficient {x} over {ring}", path)
    try:
        return ring(q)
    except (ValueError, ZeroDivisionError):
        raise loc.error(f"{x} is not defined over {ring}", path) from None


def _vector(obj, ring, labels, loc, path):
    if not isinstance(obj, dict):
        raise loc.error("expected an object {label: coefficient}", path)
    out = {}
    for k, c in obj.items():
        if k not in labels:
            raise loc.error(f"unknown basis label {k!r}", path + [k])
        out[k] = _coeff(c, ring, loc, path + [k])
    return out


def _triples(obj, loc, path, n=3):
    if not isinstance(obj, list):
        raise loc.error("expected a list", path)
    for i, t in enumerate(obj):
        if not isinstance(t, list) or len(t) != n:
            raise loc.error(f"entry {i} must be a list of length {n}", path)
        yield i, t


def parse_text(text: str):
    """Parse a structure-constant document; returns the constructed object."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(e.msg, e.lineno, e.colno) from None
    loc = _Locator(text)
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object", 1, 1)
    kind = data.get("kind")
    if kind not in KINDS:
        raise loc.error(f"kind must be one of {KINDS}", ["kind"])
    for key in data:
        if key not in _ALLOWED[kind]:
            raise loc.error(f"unexpected key for kind {kind!r}", [key])
    try:
        ring = parse_ring(str(data.get("ring", "")))
    except Exception as e:
        raise loc.error(str(e), ["ring"]) from None
    basis = data.get("basis")
    if not isinstance(basis, dict) or not basis:
        raise loc.error("basis must be a nonempty object {label: degree}", ["basis"])
    for k, v in basis.items():
        if isinstance(v, bool) or not isinstance(v, int):
            raise loc.error("degree must be an integer", ["basis", k])
    labels = set(basis)
    name = data.get("name", kind)

    diff = {}
    for k, v in (data.get("differential") or {}).items():
        if k not in labels:
            raise loc.error(f"unknown basis label {k!r}", ["differential", k])
        diff[k] = _vector(v, ring, labels, loc, ["differential", k])
        for t in diff[k]:
            if basis[t] != basis[k] - 1:
                raise loc.error(f"d({k}) has a term {t!r} of the wrong degree", ["differential", k, t])

    if kind == "lie":
        bracket = {}
        for i, (a, b, v) in _triples(data.get("bracket") or [], loc, ["bracket"]):
            for x in (a, b):
                if x not in labels:
                    raise loc.error(f"unknown basis label {x!r}", ["bracket", x])
            bracket[(a, b)] = _vector(v, ring, labels, loc, ["bracket", a])
        return GradedLieAlgebra(ring, basis, bracket, diff, name=name)

    unit = data.get("unit")
    if unit not in labels or basis[unit] != 0:
        raise loc.error("unit must be a basis label of degree 0", ["unit"])
    products = {}
    for i, (a, b, v) in _triples(data.get("products") or [], loc, ["products"]):
        for x in (a, b):
            if x not in labels:
                raise loc.error(f"unknown basis label {x!r}", ["products", x])
        products[(a, b)] = _vector(v, ring, labels, loc, ["products", a])
        for t in products[(a, b)]:
            if basis[t] != basis[a] + basis[b]:
                raise loc.error(f"{a}*{b} has a term {t!r} of the wrong degree", ["products", a])

    if kind == "s2":
        braces = {}
        for i, (x, ys, v) in _triples(data.get("braces") or [], loc, ["braces"]):
            if not isinstance(ys, list) or any(y not in labels for y in ys) or x not in labels:
                raise loc.error(f"bad brace entry {i}", ["braces"])
            braces[(x, tuple(ys))] = _vector(v, ring, labels, loc, ["braces", x])
        A = PresentedS2Algebra(ring, basis, unit, diff, products, braces, name=name)
        _check_s2(A)
        return A

    coproducts = {}
    for c, entries in (data.get("coproducts") or {}).items():
        if c not in labels:
            raise loc.error(f"unknown basis label {c!r}", ["coproducts", c])
        acc = {}
        for i, (a, b, k) in _triples(entries, loc, ["coproducts", c]):
            if a not in labels or b not in labels:
                raise loc.error(f"unknown basis label in entry {i}", ["coproducts", c])
            if basis[a] + basis[b] != basis[c]:
                raise loc.error(f"entry {i} has the wrong degree", ["coproducts", c])
            acc[(a, b)] = acc.get((a, b), 0) + _coeff(k, ring, loc, ["coproducts", c])
        coproducts[c] = acc
    C = PresentedBialgebra(ring, basis, unit, diff, products, coproducts, name=name,
                           is_algebra=kind != "coalgebra", is_coalgebra=kind != "algebra")
    degs = list(basis.values())
    check_bialgebra(C, min(degs), max(degs), hopf=kind == "hopf", raise_on_failure=True)
    return C


def _check_s2(A):
    """d^2 = 0, associativity, and the two brace identities on all basis tuples of length <= 3."""
    labels = list(A.degrees)
    for x in labels:
        if A.dv(A.d(x)):
            raise AxiomViolation("d o d = 0", x)
    for a in labels:
        for b in labels:
            for c in labels:
                va, vb, vc = A.vec(a), A.vec(b), A.vec(c)
                if A.mulv(A.mulv(va, vb), vc) != A.mulv(va, A.mulv(vb, vc)):
                    raise AxiomViolation("associativity", (a, b, c))
    nonunit = [x for x in labels if x != A.unit]
    for x in nonunit:
        for y in nonunit:
            if not check_identity_diff(A, A.vec(x), [A.vec(y)]).ok:
                raise AxiomViolation("brace differential identity", (x, y))
            for z in nonunit:
                if not check_identity_mult(A, A.vec(x), A.vec(y), [A.vec(z)]).ok:
                    raise AxiomViolation("brace product identity", (x, y, z))


def load(path):
    """Read and validate a structure-constant file."""
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())
