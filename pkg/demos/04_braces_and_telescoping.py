"""Brace sums, their coboundary deviations, and the telescoping variables.

The triple brace tri(h, f, g) sums (h comp_i f) comp_j g over the right
region of the scope; the quadruple brace adds a third insertion over a
lattice tetrahedron. The headline identity says the coboundary deviation of
the quadruple brace collapses to four cup-and-brace terms. The proof device
is four families of auxiliary lattice elements whose sum telescopes, and
every step of that device is checkable here on random tables.
"""
import numpy as np

from preoperad import (
    CoefficientRing,
    EndoBackend,
    GAMMA_KINDS,
    PreOperadContext,
    aux_gamma,
    boundary_faces,
    cup,
    delta,
    dev_tetrabraces,
    ground_tetrahedron,
    ksign,
    tetrabraces,
    tribraces,
)

F97 = CoefficientRing.prime_field(97)


def main():
    backend = EndoBackend(F97, 2)
    rng = np.random.default_rng(12)
    ctx = PreOperadContext(backend, backend.random(2, rng))
    h = backend.random(4, rng)
    f, g, b = (backend.random(1, rng) for _ in range(3))

    tri = tribraces(h, f, g)
    tetra = tetrabraces(h, f, g, b)
    print(f"tri(h, f, g) degree {tri.degree}, "
          f"tetra(h, f, g, b) degree {tetra.degree}")
    pts = ground_tetrahedron(h.degree, f.degree, g.degree).points
    print(f"tetra sums over {len(pts)} lattice points: {list(pts)}")

    # the headline identity, exactly
    sh, sg, sb = h.shifted_degree, g.shifted_degree, b.shifted_degree
    lhs = ksign(sb) * dev_tetrabraces(ctx, h, f, g, b)
    rhs = (cup(ctx, tribraces(h, f, g), b)
           - tribraces(h, f, cup(ctx, g, b))
           - ksign(sg) * tribraces(h, cup(ctx, f, g), b)
           + ksign(sh * f.degree + sg) * cup(ctx, f, tribraces(h, g, b)))
    assert lhs == rhs
    print("quadruple brace deviation == four cup-and-brace terms")

    # the proof device: per-point telescoping of the inner coboundaries
    for (i, j, k) in pts:
        core = h.compose(f, i).compose(g, j).compose(b, k)
        inner = (delta(ctx, core)
                 - h.compose(f, i).compose(g, j).compose(delta(ctx, b), k)
                 - ksign(sb) * h.compose(f, i).compose(delta(ctx, g), j)
                                .compose(b, k + 1)
                 - ksign(sb + sg) * h.compose(delta(ctx, f), i)
                                     .compose(g, j + 1).compose(b, k + 1))
        total = backend.zero(inner.degree)
        for kind in GAMMA_KINDS:
            total = total + aux_gamma(ctx, kind, h, f, g, b,
                                      i + 1, j + 1, k + 1)
        assert inner == total
    print(f"telescoping verified pointwise on all {len(pts)} points")

    # on the boundary walls each family collapses to a closed cup form
    faces = boundary_faces(h.degree, f.degree, g.degree)
    (i, j, k) = faces["gamma3"][0]
    closed = ksign(b.degree) * cup(
        ctx, h.compose(f, i - 1).compose(g, j - 1), b)
    assert aux_gamma(ctx, "gamma3", h, f, g, b, i, j, k) == closed
    sizes = {kind: len(faces[kind]) for kind in GAMMA_KINDS}
    print(f"boundary faces carry closed cup forms; face sizes {sizes}")


if __name__ == "__main__":
    main()
