"""Dense multilinear maps on R^d, the concrete backend for the calculus.

A degree-n element is a map (R^d)^n -> R^d stored as a coefficient table of
shape (d,) * (n + 1), axis 0 the output index, axis 1 + t the t-th input
(row-major flat layout, output index slowest). Degree 0 elements are plain
vectors. Throughout, |f| denotes the shifted degree deg(f) - 1; it drives
every sign below.

Composition convention: plugging g into input slot i of f costs the sign
(-1)^(i * |g|), so

    f comp_i g  =  (-1)^(i|g|) * f(x_1 .. x_i, g(..), x_(i+2) ..),

with 0 <= i <= |f|. The unit is the identity matrix in degree 1 and is
absorbed with sign +1 from either side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ArityMismatch,
    BackendMismatch,
    DegreeMismatch,
    IndexOutOfScope,
    InvalidDegree,
    RingMismatch,
    ShapeMismatch,
    UnsupportedRing,
)
from .rings import Coefficient, CoefficientRing


def ksign(exponent: int) -> int:
    """(-1)^exponent for possibly negative exponents."""
    return -1 if exponent % 2 else 1


def _dtype_for(ring: CoefficientRing):
    # int64 is safe: entries < p <= 2^17 and contractions sum at most
    # d <= 2^17 products, far below 2^63.
    return np.int64 if ring.is_field else object


@dataclass(frozen=True)
class MultilinearMap:
    """A degree-n multilinear map on R^d as a canonical coefficient table."""

    ring: CoefficientRing
    dim: int
    degree: int
    table: np.ndarray

    @property
    def shifted_degree(self) -> int:
        return self.degree - 1

    def entry(self, out_index: int, *in_indices: int) -> int:
        return int(self.table[(out_index, *in_indices)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultilinearMap):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.dim == other.dim
            and self.degree == other.degree
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.ring, self.dim, self.degree, self.table.tobytes()
                     if self.table.dtype != object else tuple(self.table.flat)))

    def is_zero(self) -> bool:
        return not np.any(self.table)


def _canonical_table(ring: CoefficientRing, arr: np.ndarray) -> np.ndarray:
    if ring.is_field:
        arr = np.asarray(arr, dtype=np.int64) % ring.modulus
    else:
        arr = np.asarray(arr, dtype=object)
    arr.setflags(write=False)
    return arr


def make_map(ring: CoefficientRing, dim: int, degree: int, entries) -> MultilinearMap:
    """Build a map from flat entries, length dim^(degree + 1), row-major."""
    if dim < 1:
        raise ShapeMismatch(f"dimension must be >= 1, got {dim}")
    if degree < 0:
        raise InvalidDegree(f"degree must be >= 0, got {degree}")
    flat = np.asarray(list(entries) if not isinstance(entries, np.ndarray) else entries)
    want = dim ** (degree + 1)
    if flat.size != want:
        raise ShapeMismatch(
            f"degree {degree} over dim {dim} needs {want} entries, got {flat.size}"
        )
    table = _canonical_table(ring, flat.reshape((dim,) * (degree + 1)))
    return MultilinearMap(ring, dim, degree, table)


def zero_map(ring: CoefficientRing, dim: int, degree: int) -> MultilinearMap:
    if degree < 0:
        raise InvalidDegree(f"degree must be >= 0, got {degree}")
    table = _canonical_table(ring, np.zeros((dim,) * (degree + 1), dtype=np.int64))
    return MultilinearMap(ring, dim, degree, table)


def unit_map(ring: CoefficientRing, dim: int) -> MultilinearMap:
    """The degree-1 identity, neutral for composition from both sides."""
    table = _canonical_table(ring, np.eye(dim, dtype=np.int64))
    return MultilinearMap(ring, dim, 1, table)


def _check_pair(f: MultilinearMap, g: MultilinearMap):
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring.label()} vs {g.ring.label()}")
    if f.dim != g.dim:
        raise BackendMismatch(f"dim {f.dim} vs {g.dim}")


def _insert(f: MultilinearMap, g: MultilinearMap, i: int) -> np.ndarray:
    """Unsigned substitution of g into input slot i of f; returns a raw table."""
    m, n = f.degree, g.degree
    raw = np.tensordot(f.table, g.table, axes=(i + 1, 0))
    # tensordot leaves [out, f-slots except i, g-slots]; put the g block at i.
    raw = np.moveaxis(raw, list(range(m, m + n)), list(range(i + 1, i + 1 + n)))
    if f.ring.is_field:
        raw = raw % f.ring.modulus
    return raw


def partial_compose(f: MultilinearMap, g: MultilinearMap, i: int) -> MultilinearMap:
    """f comp_i g with the Koszul twist (-1)^(i * |g|)."""
    _check_pair(f, g)
    if f.degree < 1:
        raise InvalidDegree("left operand of a composition needs degree >= 1")
    if not 0 <= i <= f.shifted_degree:
        raise IndexOutOfScope(
            f"slot {i} outside 0..{f.shifted_degree} for degree {f.degree}"
        )
    raw = _insert(f, g, i)
    if ksign(i * g.shifted_degree) < 0:
        raw = -raw
        if f.ring.is_field:
            raw = raw % f.ring.modulus
    table = _canonical_table(f.ring, raw)
    return MultilinearMap(f.ring, f.dim, f.degree + g.degree - 1, table)


def linear_combine(coeffs, maps) -> MultilinearMap:
    """Sum of c_k * m_k; all maps must share ring, dim and degree."""
    maps = list(maps)
    coeffs = [c.value if isinstance(c, Coefficient) else int(c) for c in coeffs]
    if not maps:
        raise DegreeMismatch("linear_combine needs at least one map")
    if len(coeffs) != len(maps):
        raise ShapeMismatch(f"{len(coeffs)} coefficients for {len(maps)} maps")
    first = maps[0]
    for m in maps[1:]:
        _check_pair(first, m)
        if m.degree != first.degree:
            raise DegreeMismatch(f"degree {m.degree} vs {first.degree}")
    acc = np.zeros_like(np.asarray(first.table))
    for c, m in zip(coeffs, maps):
        acc = acc + first.ring.reduce(c) * m.table
        if first.ring.is_field:
            acc = acc % first.ring.modulus
    return MultilinearMap(first.ring, first.dim, first.degree,
                          _canonical_table(first.ring, acc))


def random_map(ring: CoefficientRing, dim: int, degree: int, rng) -> MultilinearMap:
    """Uniform table over F_p from a numpy Generator."""
    if not ring.is_field:
        raise UnsupportedRing("random tables need a finite field")
    if degree < 0:
        raise InvalidDegree(f"degree must be >= 0, got {degree}")
    table = rng.integers(0, ring.modulus, size=(dim,) * (degree + 1), dtype=np.int64)
    return MultilinearMap(ring, dim, degree, _canonical_table(ring, table))


def evaluate(f: MultilinearMap, inputs) -> MultilinearMap:
    """Apply f to degree-0 vectors; the result is a degree-0 vector."""
    inputs = list(inputs)
    if len(inputs) != f.degree:
        raise ArityMismatch(f"degree {f.degree} map applied to {len(inputs)} inputs")
    acc = np.asarray(f.table)
    for t in reversed(range(f.degree)):
        v = inputs[t]
        if v.degree != 0:
            raise DegreeMismatch("evaluation inputs must have degree 0")
        _check_pair(f, v)
        acc = np.tensordot(acc, v.table, axes=(t + 1, 0))
        if f.ring.is_field:
            acc = acc % f.ring.modulus
    return MultilinearMap(f.ring, f.dim, 0, _canonical_table(f.ring, acc))


def map_to_payload(f: MultilinearMap) -> dict:
    return {
        "ring": f.ring.to_payload(),
        "dim": f.dim,
        "degree": f.degree,
        "entries": [int(v) for v in np.asarray(f.table).reshape(-1)],
    }


def map_from_payload(payload: dict) -> MultilinearMap:
    ring = CoefficientRing.from_payload(payload["ring"])
    return make_map(ring, int(payload["dim"]), int(payload["degree"]),
                    payload["entries"])


def componentwise_product(ring: CoefficientRing, dim: int) -> MultilinearMap:
    """The associative product (x * y)_a = x_a y_a on R^d."""
    table = np.zeros((dim, dim, dim), dtype=np.int64)
    for a in range(dim):
        table[a, a, a] = 1
    return MultilinearMap(ring, dim, 2, _canonical_table(ring, table))


def matrix_algebra_product(ring: CoefficientRing) -> MultilinearMap:
    """2x2 matrix multiplication on basis e_rc, flattened to dim 4.

    Basis index 2r + c stands for the matrix unit e_rc; the product is
    associative but not commutative, so it exercises order-sensitive signs.
    """
    table = np.zeros((4, 4, 4), dtype=np.int64)
    for r1 in range(2):
        for c1 in range(2):
            for r2 in range(2):
                for c2 in range(2):
                    if c1 == r2:
                        table[2 * r1 + c2, 2 * r1 + c1, 2 * r2 + c2] = 1
    return MultilinearMap(ring, 4, 2, _canonical_table(ring, table))
