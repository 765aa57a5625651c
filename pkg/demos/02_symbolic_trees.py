"""Symbolic tree sums: the generic backend.

Elements are formal sums of planar trees over named generators. The same
composition signs apply, so any identity checked here holds in every
pre-operad with elements of those degrees. A generator assignment then maps
tree sums onto dense tables, and the map respects composition on the nose.
"""
import numpy as np

from preoperad import (
    CoefficientRing,
    EndoBackend,
    FreeBackend,
    GradedElement,
    Signature,
    evaluate_hom,
)

F97 = CoefficientRing.prime_field(97)


def show(name, el):
    terms = el.serialize()["terms"]
    body = " + ".join(f"{c} * {s}" for s, c in terms) if terms else "0"
    print(f"{name} = {body}")


def main():
    sig = Signature((("h", 3), ("f", 2), ("g", 1), ("mu", 2)))
    backend = FreeBackend(F97, sig)
    h, f, g = (backend.generator(n) for n in ("h", "f", "g"))

    word = h.compose(f, 0)
    show("h comp_0 f", word)
    show("(h comp_0 f) comp_3 g", word.compose(g, 3))

    # signs live in the coefficients: odd twists flip them
    show("h comp_2 f", h.compose(f, 2))

    # formal sums cancel exactly
    zero = word - word
    assert zero.is_zero()
    show("word - word", zero)

    # the nesting relation holds symbolically, hence in every pre-operad
    lhs = h.compose(f, 1).compose(g, 2)
    rhs = h.compose(f.compose(g, 1), 1)
    assert lhs == rhs
    print("nesting relation: (h comp_1 f) comp_2 g == h comp_1 (f comp_1 g)")

    # assign a random table to each generator; evaluation is a morphism
    endo = EndoBackend(F97, 2)
    rng = np.random.default_rng(7)
    tables = {name: endo.random(deg, rng) for name, deg in sig.generators}
    assignment = {name: el.payload for name, el in tables.items()}
    value = evaluate_hom(lhs.payload, assignment, F97, endo.dim)
    expected = tables["h"].compose(tables["f"], 1).compose(tables["g"], 2)
    assert GradedElement(endo, value) == expected
    print("generator assignment maps the word to the composed tables exactly")


if __name__ == "__main__":
    main()
