"""Symbolic backend: signed sums of generator-labelled planar trees.

A basis tree is either the leaf sentinel (the unit, degree 1) or a node
(name, children) whose children are trees; its degree is its leaf count.
Elements are finite sums coeff * tree with coefficients in a ring, kept
canonical (zero terms dropped, coefficients reduced).

Composition grafts the right operand onto the i-th leaf of the left one and
multiplies by the global sign (-1)^(i * |y|), the same twist the dense
backend carries, so both backends satisfy the identical relation laws and
table substitution is a morphism between them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    BackendMismatch,
    DegreeMismatch,
    IndexOutOfScope,
    InvalidDegree,
    MissingAssignment,
    RingMismatch,
    ShapeMismatch,
    UnknownGenerator,
)
from . import endo
from .endo import MultilinearMap, ksign
from .rings import Coefficient, CoefficientRing

LEAF = "_"


def tree_degree(tree) -> int:
    """Leaf count."""
    if tree == LEAF:
        return 1
    _, children = tree
    return sum(tree_degree(c) for c in children)


def graft(tree, i: int, sub):
    """Replace the i-th leaf (left to right, 0-based) of tree by sub."""
    if tree == LEAF:
        if i != 0:
            raise IndexOutOfScope(f"leaf index {i} on a bare leaf")
        return sub
    name, children = tree
    out = []
    offset = i
    done = False
    for c in children:
        width = tree_degree(c)
        if not done and 0 <= offset < width:
            out.append(graft(c, offset, sub))
            done = True
        else:
            out.append(c)
        offset -= width
    if not done:
        raise IndexOutOfScope(f"leaf index {i} outside tree of degree {tree_degree(tree)}")
    return (name, tuple(out))


def tree_to_sexpr(tree) -> str:
    if tree == LEAF:
        return LEAF
    name, children = tree
    return "(" + " ".join([name] + [tree_to_sexpr(c) for c in children]) + ")"


@dataclass(frozen=True)
class Signature:
    """Named generators with fixed degrees >= 1."""

    generators: tuple[tuple[str, int], ...]

    def __post_init__(self):
        seen = set()
        for name, deg in self.generators:
            if name in seen:
                raise UnknownGenerator(f"duplicate generator {name!r}")
            if name == LEAF:
                raise UnknownGenerator("the leaf sentinel cannot name a generator")
            if deg < 1:
                raise InvalidDegree(f"generator {name!r} needs degree >= 1, got {deg}")
            seen.add(name)

    def degree_of(self, name: str) -> int:
        for n, d in self.generators:
            if n == name:
                return d
        raise UnknownGenerator(f"no generator named {name!r}")

    def has(self, name: str) -> bool:
        return any(n == name for n, _ in self.generators)


def generator_tree(sig: Signature, name: str):
    return (name, (LEAF,) * sig.degree_of(name))


@dataclass(frozen=True)
class FreeElement:
    """Canonical signed tree sum of a single degree."""

    ring: CoefficientRing
    signature: Signature
    degree: int
    terms: tuple  # sorted tuple of (tree, coeff), coeff nonzero canonical

    @property
    def shifted_degree(self) -> int:
        return self.degree - 1

    def term_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeElement):
            return NotImplemented
        return (self.ring == other.ring and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ring, self.degree, self.terms))


def _canonical_terms(ring: CoefficientRing, raw: dict) -> tuple:
    cleaned = {}
    for tree, c in raw.items():
        c = ring.reduce(c)
        if c:
            cleaned[tree] = c
    return tuple(sorted(cleaned.items(), key=lambda kv: tree_to_sexpr(kv[0])))


def canonicalize(x: FreeElement) -> FreeElement:
    """Re-normalize; idempotent on anything this module produces."""
    return FreeElement(x.ring, x.signature, x.degree,
                       _canonical_terms(x.ring, dict(x.terms)))


def _element(ring, sig, degree, raw_terms) -> FreeElement:
    for tree in raw_terms:
        d = tree_degree(tree)
        if d != degree:
            raise DegreeMismatch(f"term of degree {d} in an element of degree {degree}")
    return FreeElement(ring, sig, degree, _canonical_terms(ring, raw_terms))


def generator_element(sig: Signature, ring: CoefficientRing, name: str) -> FreeElement:
    tree = generator_tree(sig, name)
    return _element(ring, sig, sig.degree_of(name), {tree: 1})


def unit_element(sig: Signature, ring: CoefficientRing) -> FreeElement:
    return _element(ring, sig, 1, {LEAF: 1})


def zero_element(sig: Signature, ring: CoefficientRing, degree: int) -> FreeElement:
    if degree < 0:
        raise InvalidDegree(f"degree must be >= 0, got {degree}")
    return FreeElement(ring, sig, degree, ())


def _check_pair(x: FreeElement, y: FreeElement):
    if x.ring != y.ring:
        raise RingMismatch(f"{x.ring.label()} vs {y.ring.label()}")
    if x.signature != y.signature:
        raise BackendMismatch("elements over different signatures")


def free_partial_compose(x: FreeElement, y: FreeElement, i: int) -> FreeElement:
    """x comp_i y: leaf grafting times (-1)^(i * |y|), bilinear in both."""
    _check_pair(x, y)
    if x.degree < 1:
        raise InvalidDegree("left operand of a composition needs degree >= 1")
    if not 0 <= i <= x.shifted_degree:
        raise IndexOutOfScope(
            f"slot {i} outside 0..{x.shifted_degree} for degree {x.degree}"
        )
    sign = ksign(i * y.shifted_degree)
    raw: dict = {}
    for t, a in x.terms:
        for u, b in y.terms:
            z = graft(t, i, u)
            raw[z] = raw.get(z, 0) + sign * a * b
    return _element(x.ring, x.signature, x.degree + y.degree - 1, raw)


def free_linear_combine(coeffs, elems) -> FreeElement:
    elems = list(elems)
    coeffs = [c.value if isinstance(c, Coefficient) else int(c) for c in coeffs]
    if not elems:
        raise DegreeMismatch("free_linear_combine needs at least one element")
    if len(coeffs) != len(elems):
        raise ShapeMismatch(f"{len(coeffs)} coefficients for {len(elems)} elements")
    first = elems[0]
    raw: dict = {}
    for c, e in zip(coeffs, elems):
        _check_pair(first, e)
        if e.degree != first.degree:
            raise DegreeMismatch(f"degree {e.degree} vs {first.degree}")
        for tree, a in e.terms:
            raw[tree] = raw.get(tree, 0) + c * a
    return _element(first.ring, first.signature, first.degree, raw)


def element_to_payload(x: FreeElement) -> dict:
    return {
        "ring": x.ring.to_payload(),
        "signature": [[n, d] for n, d in x.signature.generators],
        "degree": x.degree,
        "terms": [[tree_to_sexpr(t), int(c)] for t, c in x.terms],
    }


def _tree_from_sexpr(text: str, sig: Signature):
    """Parse the output of tree_to_sexpr back into a tree."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        if tok == LEAF:
            return LEAF
        if tok != "(":
            raise ShapeMismatch(f"bad tree token {tok!r}")
        name = tokens[pos]
        pos += 1
        children = []
        while tokens[pos] != ")":
            children.append(parse())
        pos += 1
        if not sig.has(name):
            raise UnknownGenerator(f"no generator named {name!r}")
        return (name, tuple(children))

    tree = parse()
    if pos != len(tokens):
        raise ShapeMismatch("trailing tree tokens")
    return tree


def element_from_payload(payload: dict) -> FreeElement:
    ring = CoefficientRing.from_payload(payload["ring"])
    sig = Signature(tuple((str(n), int(d)) for n, d in payload["signature"]))
    raw = {}
    for sexpr, c in payload["terms"]:
        raw[_tree_from_sexpr(sexpr, sig)] = int(c)
    return _element(ring, sig, int(payload["degree"]), raw)


def _eval_tree(tree, assignment: dict, ring: CoefficientRing, dim: int) -> MultilinearMap:
    if tree == LEAF:
        return endo.unit_map(ring, dim)
    name, children = tree
    if name not in assignment:
        raise MissingAssignment(f"no table assigned to generator {name!r}")
    base = assignment[name]
    if base.ring != ring or base.dim != dim:
        raise BackendMismatch("assigned table over a different ring or dimension")
    # Substitute children right to left so earlier slot positions stay put.
    acc = base
    for s in reversed(range(len(children))):
        child = children[s]
        if child == LEAF:
            continue
        sub = _eval_tree(child, assignment, ring, dim)
        raw = endo._insert(acc, sub, s)
        acc = MultilinearMap(ring, dim, acc.degree + sub.degree - 1,
                             endo._canonical_table(ring, raw))
    return acc


def evaluate_hom(x: FreeElement, assignment: dict, ring: CoefficientRing,
                 dim: int) -> MultilinearMap:
    """Substitute tables for generators; a pre-operad morphism to the dense side.

    assignment maps generator names to MultilinearMap values of matching
    degree. Substitution itself is unsigned; the composition twist on both
    sides is what makes the map commute with comp_i, unit and sums.
    """
    for name, deg in x.signature.generators:
        if name in assignment and assignment[name].degree != deg:
            raise DegreeMismatch(
                f"generator {name!r} has degree {deg}, "
                f"table has degree {assignment[name].degree}"
            )
    acc = endo.zero_map(ring, dim, x.degree)
    for tree, c in x.terms:
        val = _eval_tree(tree, assignment, ring, dim)
        acc = endo.linear_combine([1, c], [acc, val])
    return acc
