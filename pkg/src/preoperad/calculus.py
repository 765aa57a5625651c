"""Derived operations over any backend: cup, total composition, bracket,
coboundary, brace sums and their derivation deviations.

Sign conventions, with |x| = deg(x) - 1:

    cup(f, g)        = (-1)^deg(f) * (mu comp_0 f) comp_deg(f) g
    bullet(f, g)     = sum of f comp_i g over 0 <= i <= |f|
    bracket(f, g)    = bullet(f, g) - (-1)^(|f||g|) bullet(g, f)
    delta(f)         = (-1)^|f| bullet(mu, f) - bullet(f, mu)

so that -delta(f) = bracket(f, mu). Brace sums run over the lattice regions
from the domains module: tribraces over the scope-right region of (h, f),
tetrabraces over the ground tetrahedron of (h, f, g).
"""

from __future__ import annotations

from dataclasses import dataclass

from .backends import GradedElement
from .domains import ground_tetrahedron, scope_regions
from .endo import ksign
from .errors import BackendMismatch, DegreeMismatch, InvalidDegree

MUTATION_CUP_SIGN = "cup-sign-flip"
MUTATION_LEFT_RELATION_SIGN = "b-relation-sign-drop"
MUTATION_RIGHT_RANGE = "g-range-off-by-one"

KNOWN_MUTATIONS = (MUTATION_CUP_SIGN, MUTATION_LEFT_RELATION_SIGN,
                   MUTATION_RIGHT_RANGE)


@dataclass(frozen=True)
class PreOperadContext:
    """A backend together with a chosen degree-2 product mu."""

    backend: object
    mu: GradedElement

    def __post_init__(self):
        if self.mu.backend != self.backend:
            raise BackendMismatch("mu must live in the context backend")
        if self.mu.degree != 2:
            raise DegreeMismatch(f"mu needs degree 2, got {self.mu.degree}")

    @property
    def unit(self) -> GradedElement:
        return self.backend.unit()


def compose(f: GradedElement, g: GradedElement, i: int) -> GradedElement:
    return f.compose(g, i)


def cup(ctx: PreOperadContext, f: GradedElement, g: GradedElement) -> GradedElement:
    """Product of degree deg(f) + deg(g) induced by mu."""
    sign = ksign(f.degree)
    if MUTATION_CUP_SIGN in ctx.backend.mutations:
        sign = -sign
    return sign * ctx.mu.compose(f, 0).compose(g, f.degree)


def bullet(f: GradedElement, g: GradedElement) -> GradedElement:
    """Total composition: g inserted into every slot of f, signs included."""
    if f.degree < 1:
        raise InvalidDegree("bullet needs a left operand of degree >= 1")
    acc = f.compose(g, 0)
    for i in range(1, f.degree):
        acc = acc + f.compose(g, i)
    return acc


def bracket(f: GradedElement, g: GradedElement) -> GradedElement:
    if f.degree < 1 or g.degree < 1:
        raise InvalidDegree("bracket needs operands of degree >= 1")
    sign = ksign(f.shifted_degree * g.shifted_degree)
    return bullet(f, g) - sign * bullet(g, f)


def delta(ctx: PreOperadContext, f: GradedElement) -> GradedElement:
    """Coboundary induced by mu; squares to zero exactly when mu is associative."""
    if f.degree < 1:
        raise InvalidDegree("delta needs degree >= 1")
    return ksign(f.shifted_degree) * bullet(ctx.mu, f) - bullet(f, ctx.mu)


def associator(h: GradedElement, f: GradedElement, g: GradedElement) -> GradedElement:
    """bullet(bullet(h, f), g) - bullet(h, bullet(f, g))."""
    return bullet(bullet(h, f), g) - bullet(h, bullet(f, g))


def _right_region(h: GradedElement, f: GradedElement):
    points = scope_regions(h.degree, f.degree)[2].points
    if MUTATION_RIGHT_RANGE in h.backend.mutations:
        # canary: shift the row start by one slot
        points = tuple((i, j) for (i, j) in points if j > i + f.degree)
    return points


def tribraces(h: GradedElement, f: GradedElement, g: GradedElement) -> GradedElement:
    """Sum of (h comp_i f) comp_j g over the scope-right region of (h, f)."""
    for x in (h, f, g):
        if x.degree < 1:
            raise InvalidDegree("tribraces need degrees >= 1")
    out_degree = h.degree + f.degree + g.degree - 2
    acc = h.backend.zero(out_degree)
    for i, j in _right_region(h, f):
        acc = acc + h.compose(f, i).compose(g, j)
    return acc


def tetrabraces(h: GradedElement, f: GradedElement, g: GradedElement,
                b: GradedElement) -> GradedElement:
    """Sum of ((h comp_i f) comp_j g) comp_k b over the ground tetrahedron."""
    for x in (h, f, g, b):
        if x.degree < 1:
            raise InvalidDegree("tetrabraces need degrees >= 1")
    out_degree = h.degree + f.degree + g.degree + b.degree - 3
    acc = h.backend.zero(out_degree)
    for i, j, k in ground_tetrahedron(h.degree, f.degree, g.degree):
        acc = acc + h.compose(f, i).compose(g, j).compose(b, k)
    return acc


def dev_bullet(ctx: PreOperadContext, f: GradedElement,
               g: GradedElement) -> GradedElement:
    """How far delta is from a derivation of the total composition."""
    return (delta(ctx, bullet(f, g))
            - bullet(f, delta(ctx, g))
            - ksign(g.shifted_degree) * bullet(delta(ctx, f), g))


def dev_tribraces(ctx: PreOperadContext, h: GradedElement, f: GradedElement,
                  g: GradedElement) -> GradedElement:
    """Deviation of delta from a derivation of the triple brace sum."""
    sg, sf = g.shifted_degree, f.shifted_degree
    return (delta(ctx, tribraces(h, f, g))
            - tribraces(h, f, delta(ctx, g))
            - ksign(sg) * tribraces(h, delta(ctx, f), g)
            - ksign(sg + sf) * tribraces(delta(ctx, h), f, g))


def dev_tetrabraces(ctx: PreOperadContext, h: GradedElement, f: GradedElement,
                    g: GradedElement, b: GradedElement) -> GradedElement:
    """Deviation of delta from a derivation of the quadruple brace sum."""
    sb, sg, sf = b.shifted_degree, g.shifted_degree, f.shifted_degree
    return (delta(ctx, tetrabraces(h, f, g, b))
            - tetrabraces(h, f, g, delta(ctx, b))
            - ksign(sb) * tetrabraces(h, f, delta(ctx, g), b)
            - ksign(sb + sg) * tetrabraces(h, delta(ctx, f), g, b)
            - ksign(sb + sg + sf) * tetrabraces(delta(ctx, h), f, g, b))
