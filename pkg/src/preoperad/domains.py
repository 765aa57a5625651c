"""Integer lattice domains that index composition double and triple sums.

Everything here is a finite set of tuples cut out of Z^2 or Z^3 by explicit
inequalities in the degrees of the participating elements. Shifted degrees
|x| = deg(x) - 1 appear so often that the formulas below abbreviate
sh = deg_h - 1, sf = deg_f - 1, sg = deg_g - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidDegree


@dataclass(frozen=True)
class LatticeDomain:
    """A finite kind-tagged point set satisfying its defining inequalities."""

    kind: str
    params: tuple[int, ...]
    points: tuple[tuple[int, ...], ...]

    def __contains__(self, point) -> bool:
        return tuple(point) in set(self.points)

    def __iter__(self):
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)


def full_scope(deg_h: int, deg_f: int) -> tuple:
    """All pairs (i, j) with 0 <= i <= |h| and 0 <= j <= |f| + |h|."""
    if deg_h < 1:
        raise InvalidDegree("outer degree must be >= 1")
    sh, sf = deg_h - 1, deg_f - 1
    return tuple((i, j) for i in range(sh + 1) for j in range(sf + sh + 1))


def scope_regions(deg_h: int, deg_f: int):
    """Partition of the scope of (h comp_i f) comp_j g into three regions.

    left:   1 <= i <= |h|, 0 <= j <= i - 1      (g lands left of f)
    nested: 0 <= i <= |h|, i <= j <= i + |f|    (g lands inside f)
    right:  0 <= i <= |h| - 1, i + deg_f <= j <= |f| + |h|   (g lands right)
    """
    if deg_h < 1:
        raise InvalidDegree("outer degree must be >= 1")
    sh, sf = deg_h - 1, deg_f - 1
    left = tuple((i, j) for i in range(1, sh + 1) for j in range(i))
    nested = tuple((i, j) for i in range(sh + 1)
                   for j in range(i, i + sf + 1))
    right = tuple((i, j) for i in range(sh)
                  for j in range(i + deg_f, sf + sh + 1))
    params = (deg_h, deg_f)
    return (
        LatticeDomain("scope-left", params, left),
        LatticeDomain("scope-nested", params, nested),
        LatticeDomain("scope-right", params, right),
    )


def ground_tetrahedron(deg_h: int, deg_f: int, deg_g: int) -> LatticeDomain:
    """Points 0 <= i <= j - deg_f <= k - deg_f - deg_g <= deg_h - 3.

    Empty when any degree is < 1 or deg_h < 3; an empty domain is not an
    error, it just indexes an empty sum.
    """
    params = (deg_h, deg_f, deg_g)
    if deg_h < 1 or deg_f < 1 or deg_g < 1:
        return LatticeDomain("ground-tetra", params, ())
    pts = []
    for i in range(0, deg_h - 2):
        for j in range(i + deg_f, deg_h + deg_f - 2):
            for k in range(j + deg_g, deg_h + deg_f + deg_g - 2):
                pts.append((i, j, k))
    return LatticeDomain("ground-tetra", params, tuple(pts))


def shifted_tetrahedron(deg_h: int, deg_f: int, deg_g: int) -> LatticeDomain:
    """The ground tetrahedron moved by (+1, +1, +1):
    1 <= i <= j - deg_f <= k - deg_f - deg_g <= deg_h - 2."""
    ground = ground_tetrahedron(deg_h, deg_f, deg_g)
    pts = tuple((i + 1, j + 1, k + 1) for (i, j, k) in ground)
    return LatticeDomain("shifted-tetra", (deg_h, deg_f, deg_g), pts)


def _envelope_points(deg_h: int, deg_f: int, deg_g: int) -> tuple:
    # 0 <= i <= j - |f| <= k - |f| - |g| <= deg_h + 1
    sf, sg = deg_f - 1, deg_g - 1
    pts = []
    for i in range(0, deg_h + 2):
        for j in range(i + sf, deg_h + 1 + sf + 1):
            for k in range(j + sg, deg_h + 1 + sf + sg + 1):
                pts.append((i, j, k))
    return tuple(pts)


def _hyperplane_count(point, deg_h, deg_f, deg_g) -> int:
    """How many of the four envelope walls the point lies on."""
    i, j, k = point
    sh, sf, sg = deg_h - 1, deg_f - 1, deg_g - 1
    walls = (
        i == 0,
        j == i + sf,
        k == j + sg,
        k == sh + deg_f + deg_g,
    )
    return sum(walls)


def removed_edges(deg_h: int, deg_f: int, deg_g: int) -> tuple:
    """The six edge families cut off the envelope, as one merged point set.

    Each family is the pairwise intersection of two of the four envelope
    walls, listed here explicitly so tests can compare this reading with the
    wall-counting one.
    """
    sh, sf, sg = deg_h - 1, deg_f - 1, deg_g - 1
    env = set(_envelope_points(deg_h, deg_f, deg_g))
    kmax = sh + deg_f + deg_g
    edges = set()
    for i in range(0, deg_h + 2):
        edges.add((i, i + sf, kmax))            # wall 2 and wall 4
        edges.add((i, i + sf, i + sf + sg))     # wall 2 and wall 3
        edges.add((i, deg_h + deg_f, kmax))     # wall 3 and wall 4
    for j in range(sf, deg_h + deg_f + 1):
        edges.add((0, j, kmax))                 # wall 1 and wall 4
        edges.add((0, j, j + sg))               # wall 1 and wall 3
    for k in range(sf + sg, kmax + 1):
        edges.add((0, sf, k))                   # wall 1 and wall 2
    return tuple(sorted(edges & env))


def boundary_faces(deg_h: int, deg_f: int, deg_g: int) -> dict:
    """The four open face families of the truncated envelope, keyed by the
    auxiliary family that lives on them.

    gamma:  i = 0,            deg_f <= j <= k - deg_g <= |h| + |f|
    gamma1: j = i + |f|,      1 <= i <= k - |f| - deg_g <= |h|
    gamma2: k = j + |g|,      1 <= i <= j - deg_f <= |h|
    gamma3: k = |h| + deg_f + deg_g, 1 <= i <= j - deg_f <= |h|
    """
    sh, sf, sg = deg_h - 1, deg_f - 1, deg_g - 1
    kmax = sh + deg_f + deg_g
    gamma = tuple((0, j, k)
                  for j in range(deg_f, sh + sf + 1)
                  for k in range(j + deg_g, sh + sf + deg_g + 1))
    gamma1 = tuple((i, i + sf, k)
                   for i in range(1, sh + 1)
                   for k in range(i + sf + deg_g, sh + sf + deg_g + 1))
    gamma2 = tuple((i, j, j + sg)
                   for i in range(1, sh + 1)
                   for j in range(i + deg_f, sh + deg_f + 1))
    gamma3 = tuple((i, j, kmax)
                   for i in range(1, sh + 1)
                   for j in range(i + deg_f, sh + deg_f + 1))
    return {"gamma": gamma, "gamma1": gamma1, "gamma2": gamma2, "gamma3": gamma3}


def envelope_domains(deg_h: int, deg_f: int, deg_g: int, deg_b: int):
    """(interior, envelope, truncated, boundary) for the triple-sum lattice.

    The point sets depend only on the first three degrees; deg_b tags along
    because the values indexed by these points involve a fourth element.
    Postcondition (enforced by the law suite): truncated is the disjoint
    union of the interior and the boundary, and the boundary is the disjoint
    union of the four faces.
    """
    for d in (deg_h, deg_f, deg_g, deg_b):
        if d < 1:
            raise InvalidDegree("all four degrees must be >= 1")
    params = (deg_h, deg_f, deg_g, deg_b)
    interior = shifted_tetrahedron(deg_h, deg_f, deg_g)
    env_pts = _envelope_points(deg_h, deg_f, deg_g)
    envelope = LatticeDomain("envelope", params, env_pts)
    trunc_pts = tuple(p for p in env_pts
                      if _hyperplane_count(p, deg_h, deg_f, deg_g) <= 1)
    truncated = LatticeDomain("truncated-envelope", params, trunc_pts)
    interior_set = set(interior.points)
    boundary_pts = tuple(p for p in trunc_pts if p not in interior_set)
    boundary = LatticeDomain("envelope-boundary", params, boundary_pts)
    return interior, envelope, truncated, boundary
