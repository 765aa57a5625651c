import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preoperad.endo import (
    MultilinearMap,
    componentwise_product,
    evaluate,
    ksign,
    linear_combine,
    make_map,
    map_from_payload,
    map_to_payload,
    matrix_algebra_product,
    partial_compose,
    random_map,
    unit_map,
    zero_map,
)
from preoperad.errors import (
    BackendMismatch,
    RingMismatch,
    DegreeMismatch,
    IndexOutOfScope,
    ShapeMismatch,
    UnsupportedRing,
)
from preoperad.rings import CoefficientRing

F97 = CoefficientRing.prime_field(97)
F101 = CoefficientRing.prime_field(101)
ZZ = CoefficientRing.integers()


def scalar(ring, degree, value):
    # dim-1 maps are single scalars
    return make_map(ring, 1, degree, [value])


def test_ksign():
    assert ksign(0) == 1
    assert ksign(1) == -1
    assert ksign(2) == 1
    assert ksign(-1) == -1


def test_make_map_shape_check():
    make_map(F97, 2, 2, range(8))
    with pytest.raises(ShapeMismatch):
        make_map(F97, 2, 2, range(7))


def test_make_map_canonicalizes_entries():
    m = make_map(F97, 1, 1, [-1])
    assert m.entry(0, 0) == 96


def test_unit_map_is_identity_table():
    u = unit_map(F97, 3)
    assert np.array_equal(np.asarray(u.table), np.eye(3, dtype=np.int64))
    assert u.degree == 1


def test_zero_map():
    z = zero_map(F97, 2, 3)
    assert z.is_zero()
    assert z.degree == 3


def test_compose_scalar_examples():
    # dim 1: composition multiplies scalars and applies the twist
    f = scalar(F97, 3, 2)
    g = scalar(F97, 2, 3)
    assert partial_compose(f, g, 2).entry(*(0,) * 5) == 6

    f = scalar(F97, 2, 3)
    g = scalar(F97, 2, 5)
    assert partial_compose(f, g, 1).entry(*(0,) * 4) == 82


def test_compose_dim1_closed_form_200_triples():
    # oracle: f compose_i g = (-1)^(i * (deg g - 1)) * f * g, all in F_97
    rng = np.random.default_rng(7)
    for _ in range(200):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(1, 5))
        a = int(rng.integers(0, 97))
        b = int(rng.integers(0, 97))
        i = int(rng.integers(0, m))
        got = partial_compose(scalar(F97, m, a), scalar(F97, n, b), i)
        want = ksign(i * (n - 1)) * a * b % 97
        assert got.entry(*(0,) * (m + n)) == want
        assert got.degree == m + n - 1


def _slow_insert(f, g, i):
    # independent loop evaluation of the unsigned insertion, dim 2
    d = 2
    m, n = f.degree, g.degree
    out = np.zeros((d,) * (m + n), dtype=np.int64)
    for idx in np.ndindex(*out.shape):
        out_idx, args = idx[0], idx[1:]
        total = 0
        for middle in range(d):
            f_args = args[:i] + (middle,) + args[i + n:]
            g_args = args[i:i + n]
            total += f.entry(out_idx, *f_args) * g.entry(middle, *g_args)
        out[idx] = total % 97
    return out * ksign(i * (n - 1)) % 97


def test_compose_matches_loop_oracle_dim2():
    rng = np.random.default_rng(3)
    for _ in range(20):
        m = int(rng.integers(1, 3))
        n = int(rng.integers(1, 3))
        i = int(rng.integers(0, m))
        f = random_map(F97, 2, m, rng)
        g = random_map(F97, 2, n, rng)
        got = np.asarray(partial_compose(f, g, i).table) % 97
        assert np.array_equal(got, _slow_insert(f, g, i) % 97)


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_unit_absorption(dim):
    rng = np.random.default_rng(dim)
    u = unit_map(F97, dim)
    for degree in (1, 2, 3):
        f = random_map(F97, dim, degree, rng)
        assert partial_compose(u, f, 0) == f
        for i in range(degree):
            assert partial_compose(f, u, i) == f


def test_compose_index_bounds():
    rng = np.random.default_rng(0)
    f = random_map(F97, 2, 2, rng)
    g = random_map(F97, 2, 1, rng)
    with pytest.raises(IndexOutOfScope):
        partial_compose(f, g, 2)
    with pytest.raises(IndexOutOfScope):
        partial_compose(f, g, -1)


def test_compose_ring_and_dim_must_agree():
    rng = np.random.default_rng(0)
    f = random_map(F97, 2, 2, rng)
    with pytest.raises(RingMismatch):
        partial_compose(f, random_map(F101, 2, 1, rng), 0)
    with pytest.raises(BackendMismatch):
        partial_compose(f, random_map(F97, 3, 1, rng), 0)


def test_linear_combine():
    rng = np.random.default_rng(1)
    f = random_map(F97, 2, 2, rng)
    g = random_map(F97, 2, 2, rng)
    assert linear_combine([1], [f]) == f
    assert linear_combine([1, -1], [f, f]).is_zero()
    combo = linear_combine([2, 3], [f, g])
    e = (1, 0, 1)
    assert combo.entry(*e) == (2 * f.entry(*e) + 3 * g.entry(*e)) % 97
    with pytest.raises(DegreeMismatch):
        linear_combine([1, 1], [f, random_map(F97, 2, 1, rng)])


def test_random_map_deterministic_and_field_only():
    a = random_map(F97, 2, 2, np.random.default_rng(42))
    b = random_map(F97, 2, 2, np.random.default_rng(42))
    assert a == b
    with pytest.raises(UnsupportedRing):
        random_map(ZZ, 2, 2, np.random.default_rng(0))


def vec(ring, entries):
    return make_map(ring, len(entries), 0, entries)


def test_evaluate_componentwise():
    mu = componentwise_product(F97, 3)
    x = vec(F97, [1, 2, 3])
    y = vec(F97, [4, 5, 6])
    out = evaluate(mu, [x, y])
    assert list(np.asarray(out.table)) == [4, 10, 18]


def test_matrix_algebra_product_matches_matmul():
    mu = matrix_algebra_product(F97)
    rng = np.random.default_rng(8)
    # vectors encode 2x2 matrices row-major
    a = rng.integers(0, 97, size=4)
    b = rng.integers(0, 97, size=4)
    out = evaluate(mu, [vec(F97, a), vec(F97, b)])
    got = np.asarray(out.table).reshape(2, 2)
    want = (a.reshape(2, 2) @ b.reshape(2, 2)) % 97
    assert np.array_equal(got % 97, want)


def test_integer_ring_tables():
    f = make_map(ZZ, 1, 2, [12])
    g = make_map(ZZ, 1, 1, [-5])
    assert partial_compose(f, g, 1).entry(0, 0, 0) == -60


def test_no_overflow_at_large_prime():
    # worst-case products stay within int64 through p = 65537
    big = CoefficientRing.prime_field(65537)
    rng = np.random.default_rng(11)
    f = random_map(big, 4, 2, rng)
    g = random_map(big, 4, 2, rng)
    fast = partial_compose(f, g, 1)
    slow_f = make_map(ZZ, 4, 2, np.asarray(f.table).reshape(-1))
    slow_g = make_map(ZZ, 4, 2, np.asarray(g.table).reshape(-1))
    slow = np.asarray(partial_compose(slow_f, slow_g, 1).table) % 65537
    assert np.array_equal(np.asarray(fast.table), slow)


def test_payload_round_trip():
    rng = np.random.default_rng(2)
    for ring in (F97, ZZ):
        f = (random_map(ring, 2, 2, rng) if ring.is_field
             else make_map(ring, 2, 2, range(-4, 4)))
        assert map_from_payload(map_to_payload(f)) == f


def test_tables_are_read_only():
    f = random_map(F97, 2, 2, np.random.default_rng(0))
    with pytest.raises(ValueError):
        np.asarray(f.table)[0, 0, 0] = 5


@given(st.integers(min_value=1, max_value=3), st.integers(min_value=1, max_value=3),
       st.integers(min_value=0, max_value=2), st.integers(min_value=0, max_value=10**6))
@settings(max_examples=60, deadline=None)
def test_degree_arithmetic_property(m, n, i, seed):
    if i >= m:
        i = i % m
    rng = np.random.default_rng(seed)
    f = random_map(F97, 2, m, rng)
    g = random_map(F97, 2, n, rng)
    out = partial_compose(f, g, i)
    assert out.degree == m + n - 1
    assert out.shifted_degree == f.shifted_degree + g.shifted_degree
