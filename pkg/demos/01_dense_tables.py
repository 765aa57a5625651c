"""Dense multilinear tables: the concrete backend.

A degree-n element is a table for a map V^n -> V over a prime field or the
integers. Partial composition inserts one table into one input slot of
another, with a sign that depends on the slot and the shifted degrees.
"""
import numpy as np

from preoperad import (
    CoefficientRing,
    EndoBackend,
    GradedElement,
    full_scope,
    ksign,
    make_map,
    scope_regions,
)

F97 = CoefficientRing.prime_field(97)


def element(backend, degree, entries):
    return GradedElement(backend, make_map(backend.ring, backend.dim,
                                           degree, entries))


def main():
    backend = EndoBackend(F97, 2)
    rng = np.random.default_rng(1)

    f = backend.random(2, rng)
    g = backend.random(1, rng)
    print(f"f: degree {f.degree}, shifted degree {f.shifted_degree}")
    print(f"g: degree {g.degree}, shifted degree {g.shifted_degree}")

    fg = f.compose(g, 0)
    print(f"f comp_0 g has degree {fg.degree} "
          f"(= {f.degree} + {g.degree} - 1)")

    # one-dimensional tables multiply with a pure sign
    line = EndoBackend(F97, 1)
    a = element(line, 3, [5])
    b = element(line, 2, [7])
    for i in range(a.degree):
        value = a.compose(b, i).serialize()["entries"][0]
        expected = ksign(i * b.shifted_degree) * 5 * 7 % 97
        assert value == expected
        print(f"  [5] comp_{i} [7] = [{value}]  (sign {ksign(i)})")

    # the unit absorbs from both sides
    unit = backend.unit()
    assert f.compose(unit, 1) == f
    assert unit.compose(f, 0) == f
    print("unit absorption holds on random tables")

    # the scope of a double composition splits exactly three ways
    h = backend.random(3, rng)
    left, nested, right = scope_regions(h.degree, f.degree)
    whole = set(full_scope(h.degree, f.degree))
    assert set(left.points) | set(nested.points) | set(right.points) == whole
    assert len(left) + len(nested) + len(right) == len(whole)
    print(f"scope of (h comp f) comp g: {len(left)} left, "
          f"{len(nested)} nested, {len(right)} right")

    # left region: exchanging the two compositions costs a sign
    for (i, j) in left.points:
        lhs = h.compose(f, i).compose(g, j)
        rhs = ksign(f.shifted_degree * g.shifted_degree) * (
            h.compose(g, j).compose(f, i + g.shifted_degree))
        assert lhs == rhs
    print("left-region exchange relation verified on every pair")

    # integer tables work too, with exact arithmetic
    grid = EndoBackend(CoefficientRing.integers(), 1)
    p = element(grid, 1, [12])
    q = element(grid, 1, [-5])
    print(f"integer composition: [12] comp_0 [-5] = "
          f"{p.compose(q, 0).serialize()['entries']}")


if __name__ == "__main__":
    main()
