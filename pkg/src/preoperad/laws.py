"""Registry of verifiable identities plus a deterministic trial engine.

Every law is a named, seeded, replayable check: the engine draws degrees and
elements from per-trial RNG streams, runs the law's checker, and collects
serialized failure witnesses. Identical (law, config) pairs produce identical
reports apart from the timing field. A witness can be replayed and shrunk.

Vacuity: a trial whose index domains are empty on both sides of the identity
proves nothing; such draws are retried a few times and then counted in the
report. A law with fewer than half of its trials non-vacuous is flagged
underpowered.

Canary mutations (documented harness hooks, see calculus.KNOWN_MUTATIONS):
"cup-sign-flip" negates the cup product, "g-range-off-by-one" shifts the
tribrace summation range, "b-relation-sign-drop" removes the exchange sign
from the left-relation checker. Each one must make at least one law fail;
the test suite relies on that to prove the laws are sensitive to every sign
family.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field

import numpy as np

from . import endo, free
from .backends import EndoBackend, FreeBackend, GradedElement
from .calculus import (
    KNOWN_MUTATIONS,
    MUTATION_LEFT_RELATION_SIGN,
    PreOperadContext,
    associator,
    bracket,
    bullet,
    cup,
    delta,
    dev_bullet,
    dev_tetrabraces,
    dev_tribraces,
    tetrabraces,
    tribraces,
)
from .domains import (
    boundary_faces,
    envelope_domains,
    full_scope,
    ground_tetrahedron,
    removed_edges,
    scope_regions,
    shifted_tetrahedron,
)
from .endo import ksign
from .errors import BadConfig, PreOperadError, UnknownLaw
from .gamma import GAMMA_KINDS, aux_gamma, aux_gamma_shifted
from .rings import CoefficientRing

_RETRIES = 5
_SHRINK_ZERO_CAP = 2048


@dataclass(frozen=True)
class TrialConfig:
    """Everything a reproducible law run depends on."""

    backend: str = "endo"
    prime: int = 97
    dim: int = 1
    trials: int = 200
    seed: int = 0
    degree_min: int = 1
    degree_max: int = 4
    mutations: tuple = ()

    @property
    def degree_budget(self) -> int:
        # total degree cap keeps dense tables below ~10^5 entries
        return 12 if self.dim <= 2 else 9

    def validate(self):
        if self.backend not in ("endo", "free"):
            raise BadConfig(f"unknown backend {self.backend!r}")
        if self.dim < 1:
            raise BadConfig(f"dimension must be >= 1, got {self.dim}")
        if self.trials < 1:
            raise BadConfig(f"trials must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise BadConfig(f"seed must be >= 0, got {self.seed}")
        if self.degree_min < 1 or self.degree_max < self.degree_min:
            raise BadConfig("need 1 <= degree_min <= degree_max")
        for m in self.mutations:
            if m not in KNOWN_MUTATIONS:
                raise BadConfig(f"unknown mutation {m!r}")
        try:
            CoefficientRing.prime_field(self.prime)
        except PreOperadError as exc:
            raise BadConfig(str(exc)) from exc

    def describe(self) -> dict:
        return {
            "backend": self.backend, "prime": self.prime, "dim": self.dim,
            "trials": self.trials, "seed": self.seed,
            "degree_min": self.degree_min, "degree_max": self.degree_max,
            "mutations": sorted(self.mutations),
        }


@dataclass
class TrialSample:
    ctx: PreOperadContext | None
    elements: dict
    degrees: dict
    extra: dict


@dataclass
class FailDetail:
    identity: str
    point: tuple | None
    lhs: GradedElement | None
    rhs: GradedElement | None


@dataclass(frozen=True)
class Law:
    law_id: str
    description: str
    anchor: str
    slots: tuple
    checker: object
    backends: tuple = ("endo", "free")
    force_first: int | None = None
    vacuous_when: object = None
    element_free: bool = False
    fixture_mu: bool = False
    fixed_backend: str | None = None
    extra_sampler: object = None


@dataclass
class Report:
    law_id: str
    status: str
    trials: int
    vacuous: int
    underpowered: bool
    failures: list
    millis: int

    def to_dict(self) -> dict:
        return {
            "law_id": self.law_id, "status": self.status,
            "trials": self.trials, "vacuous": self.vacuous,
            "underpowered": self.underpowered,
            "failures": self.failures, "millis": self.millis,
        }


REPORT_SCHEMA = {
    "type": "object",
    "required": ["law_id", "status", "trials", "vacuous", "underpowered",
                 "failures", "millis"],
    "properties": {
        "law_id": {"type": "string"},
        "status": {"enum": ["pass", "fail"]},
        "trials": {"type": "integer", "minimum": 0},
        "vacuous": {"type": "integer", "minimum": 0},
        "underpowered": {"type": "boolean"},
        "millis": {"type": "integer", "minimum": 0},
        "failures": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["law_id", "seed", "backend", "degrees",
                             "elements", "identity", "lhs", "rhs"],
                "properties": {
                    "law_id": {"type": "string"},
                    "seed": {"type": "array", "items": {"type": "integer"}},
                    "backend": {"enum": ["endo", "free"]},
                    "prime": {"type": "integer"},
                    "dim": {"type": "integer"},
                    "mutations": {"type": "array", "items": {"type": "string"}},
                    "degrees": {"type": "object"},
                    "elements": {"type": "object"},
                    "extra": {"type": "object"},
                    "identity": {"type": "string"},
                    "domain_point": {"type": ["array", "null"]},
                    "lhs": {}, "rhs": {},
                },
            },
        },
    },
}

SUITE_SCHEMA = {
    "type": "object",
    "required": ["config", "laws", "status"],
    "properties": {
        "config": {"type": "object"},
        "laws": {"type": "array", "items": REPORT_SCHEMA},
        "status": {"enum": ["pass", "fail"]},
    },
}


# ---------------------------------------------------------------------------
# sampling

def _law_salt(law_id: str) -> int:
    return int.from_bytes(hashlib.sha256(law_id.encode()).digest()[:8], "big")


def _trial_rng(law_id: str, seed: int, trial: int, attempt: int):
    return np.random.default_rng((_law_salt(law_id), seed, trial, attempt))


def _sample_degrees(rng, slots, cfg: TrialConfig, force_first: int | None) -> dict:
    degrees = {}
    remaining = cfg.degree_budget
    for idx, name in enumerate(slots):
        after = len(slots) - idx - 1
        lo = cfg.degree_min
        hi = min(cfg.degree_max, remaining - after * cfg.degree_min)
        if idx == 0 and force_first is not None:
            lo = max(lo, force_first)
        hi = max(hi, lo)
        degrees[name] = int(rng.integers(lo, hi + 1))
        remaining -= degrees[name]
    return degrees


def _fixture_mu(ring: CoefficientRing, dim: int) -> endo.MultilinearMap:
    if dim == 4:
        return endo.matrix_algebra_product(ring)
    return endo.componentwise_product(ring, dim)


def _build_sample(law: Law, cfg: TrialConfig, rng, force_first) -> TrialSample:
    degrees = _sample_degrees(rng, law.slots, cfg, force_first)
    if law.element_free:
        extra = law.extra_sampler(rng, degrees, cfg) if law.extra_sampler else {}
        return TrialSample(None, {}, degrees, extra)
    ring = CoefficientRing.prime_field(cfg.prime)
    muts = frozenset(cfg.mutations)
    backend_kind = law.fixed_backend or cfg.backend
    if backend_kind == "endo":
        be = EndoBackend(ring, cfg.dim, muts)
        elements = {name: be.random(degrees[name], rng) for name in law.slots}
        if law.fixture_mu:
            mu = GradedElement(be, _fixture_mu(ring, cfg.dim))
        else:
            mu = be.random(2, rng)
    else:
        gens = tuple((name, degrees[name]) for name in law.slots) + (("mu", 2),)
        be = FreeBackend(ring, free.Signature(gens), muts)
        elements = {name: ring.sample_nonzero(rng) * be.generator(name)
                    for name in law.slots}
        mu = be.generator("mu")
    elements["mu"] = mu
    ctx = PreOperadContext(be, mu)
    extra = law.extra_sampler(rng, degrees, cfg) if law.extra_sampler else {}
    return TrialSample(ctx, elements, degrees, extra)


# ---------------------------------------------------------------------------
# checkers

def _mismatch(identity, point, lhs, rhs):
    if lhs != rhs:
        return FailDetail(identity, point, lhs, rhs)
    return None


def _check_scope_partition(s: TrialSample):
    dh, df, dg = s.degrees["h"], s.degrees["f"], s.degrees["g"]
    left, nested, right = scope_regions(dh, df)
    ls, ns, rs = set(left.points), set(nested.points), set(right.points)
    if ls & ns or ls & rs or ns & rs:
        return FailDetail("scope regions overlap", None, None, None)
    if ls | ns | rs != set(full_scope(dh, df)):
        return FailDetail("scope regions miss the full scope", None, None, None)
    mirror = {(j, i + dg - 1) for (i, j) in ls}
    right_g = set(scope_regions(dh, dg)[2].points)
    if len(mirror) != len(ls) or not mirror <= right_g or len(ls) != len(right_g):
        return FailDetail("left and right regions fail to mirror", None, None, None)
    return None


def _check_relation_left(s: TrialSample):
    h, f, g = s.elements["h"], s.elements["f"], s.elements["g"]
    sign = ksign(f.shifted_degree * g.shifted_degree)
    if MUTATION_LEFT_RELATION_SIGN in s.ctx.backend.mutations:
        sign = 1
    for (i, j) in scope_regions(h.degree, f.degree)[0].points:
        lhs = h.compose(f, i).compose(g, j)
        rhs = sign * h.compose(g, j).compose(f, i + g.shifted_degree)
        got = _mismatch("exchange with the second factor left", (i, j), lhs, rhs)
        if got:
            return got
    return None


def _check_relation_nested(s: TrialSample):
    h, f, g = s.elements["h"], s.elements["f"], s.elements["g"]
    for (i, j) in scope_regions(h.degree, f.degree)[1].points:
        lhs = h.compose(f, i).compose(g, j)
        rhs = h.compose(f.compose(g, j - i), i)
        got = _mismatch("sequential nesting", (i, j), lhs, rhs)
        if got:
            return got
    return None


def _check_relation_right(s: TrialSample):
    h, f, g = s.elements["h"], s.elements["f"], s.elements["g"]
    sign = ksign(f.shifted_degree * g.shifted_degree)
    for (i, j) in scope_regions(h.degree, f.degree)[2].points:
        lhs = h.compose(f, i).compose(g, j)
        rhs = sign * h.compose(g, j - f.shifted_degree).compose(f, i)
        got = _mismatch("exchange with the second factor right", (i, j), lhs, rhs)
        if got:
            return got
    return None


def _check_units(s: TrialSample):
    f = s.elements["f"]
    unit = s.ctx.unit
    got = _mismatch("unit absorbed from the left", None, unit.compose(f, 0), f)
    if got:
        return got
    for i in range(f.degree):
        got = _mismatch("unit absorbed from the right", (i,), f.compose(unit, i), f)
        if got:
            return got
    return _mismatch("total composition with the unit", None,
                     bullet(f, unit), f.degree * f)


def _check_cup_props(s: TrialSample):
    ctx = s.ctx
    f, g = s.elements["f"], s.elements["g"]
    mu, unit = ctx.mu, ctx.unit
    got = _mismatch("cup against the first product slot", None,
                    mu.compose(f, 0), ksign(f.degree) * cup(ctx, f, unit))
    if got:
        return got
    got = _mismatch("cup against the second product slot", None,
                    mu.compose(f, 1), -1 * cup(ctx, unit, f))
    if got:
        return got
    rhs = -1 * ksign(f.shifted_degree * g.degree) * mu.compose(g, 1).compose(f, 0)
    return _mismatch("cup as a double composition", None, cup(ctx, f, g), rhs)


def _check_cup_compose(s: TrialSample):
    ctx = s.ctx
    f, g, h = s.elements["f"], s.elements["g"], s.elements["h"]
    for j in range(f.degree + g.degree - 1):
        lhs = cup(ctx, f, g).compose(h, j)
        if j <= f.degree - 1:
            rhs = ksign(g.degree * h.shifted_degree) * cup(ctx, f.compose(h, j), g)
        else:
            rhs = cup(ctx, f, g.compose(h, j - f.degree))
        got = _mismatch("composing into a cup product", (j,), lhs, rhs)
        if got:
            return got
    return None


def _check_main_theorem(s: TrialSample):
    ctx = s.ctx
    h, f, g, b = (s.elements[n] for n in ("h", "f", "g", "b"))
    sh, sg, sb = h.shifted_degree, g.shifted_degree, b.shifted_degree
    lhs = ksign(sb) * dev_tetrabraces(ctx, h, f, g, b)
    rhs = (cup(ctx, tribraces(h, f, g), b)
           - tribraces(h, f, cup(ctx, g, b))
           - ksign(sg) * tribraces(h, cup(ctx, f, g), b)
           + ksign(sh * f.degree + sg) * cup(ctx, f, tribraces(h, g, b)))
    return _mismatch("quadruple brace deviation closed form", None, lhs, rhs)


def _check_right_derivation(s: TrialSample):
    ctx = s.ctx
    f, g, h = s.elements["f"], s.elements["g"], s.elements["h"]
    lhs = bullet(cup(ctx, f, g), h)
    rhs = (cup(ctx, f, bullet(g, h))
           + ksign(h.shifted_degree * g.degree) * cup(ctx, bullet(f, h), g))
    return _mismatch("total composition is a two-sided cup derivation", None,
                     lhs, rhs)


def _check_delta_expansion(s: TrialSample):
    ctx = s.ctx
    f = s.elements["f"]
    lhs = -1 * delta(ctx, f)
    rhs = (cup(ctx, f, ctx.unit) + bullet(f, ctx.mu)
           + ksign(f.shifted_degree) * cup(ctx, ctx.unit, f))
    return _mismatch("coboundary as cup and total composition", None, lhs, rhs)


def _check_bullet_deviation(s: TrialSample):
    ctx = s.ctx
    f, g = s.elements["f"], s.elements["g"]
    lhs = ksign(g.shifted_degree) * dev_bullet(ctx, f, g)
    rhs = cup(ctx, f, g) - ksign(f.degree * g.degree) * cup(ctx, g, f)
    return _mismatch("total composition deviation measures commutativity",
                     None, lhs, rhs)


def _check_delta_squared(s: TrialSample):
    ctx = s.ctx
    f = s.elements["f"]
    square = bullet(ctx.mu, ctx.mu)
    if not square.is_zero():
        return FailDetail("fixture product is associative", None, square, None)
    dd = delta(ctx, delta(ctx, f))
    if not dd.is_zero():
        return FailDetail("coboundary squares to zero", None, dd, None)
    return None


def _check_getzler(s: TrialSample):
    h, f, g = s.elements["h"], s.elements["f"], s.elements["g"]
    lhs = associator(h, f, g)
    rhs = (tribraces(h, f, g)
           + ksign(f.shifted_degree * g.shifted_degree) * tribraces(h, g, f))
    return _mismatch("associator splits into brace sums", None, lhs, rhs)


def _check_gerstenhaber(s: TrialSample):
    h, f, g = s.elements["h"], s.elements["f"], s.elements["g"]
    lhs = associator(h, f, g)
    rhs = ksign(f.shifted_degree * g.shifted_degree) * associator(h, g, f)
    return _mismatch("associator symmetry in the last two slots", None, lhs, rhs)


def _check_tri_deviation(s: TrialSample):
    ctx = s.ctx
    h, f, g = s.elements["h"], s.elements["f"], s.elements["g"]
    lhs = ksign(g.shifted_degree) * dev_tribraces(ctx, h, f, g)
    rhs = (cup(ctx, bullet(h, f), g)
           + ksign(h.shifted_degree * f.degree) * cup(ctx, f, bullet(h, g))
           - bullet(h, cup(ctx, f, g)))
    return _mismatch("triple brace deviation closed form", None, lhs, rhs)


def _check_tri_deviation_bracket(s: TrialSample):
    ctx = s.ctx
    h, f, g = s.elements["h"], s.elements["f"], s.elements["g"]
    lhs = ksign(g.shifted_degree) * dev_tribraces(ctx, h, f, g)
    rhs = (cup(ctx, bracket(h, f), g)
           + ksign(h.shifted_degree * f.degree) * cup(ctx, f, bracket(h, g))
           - bracket(h, cup(ctx, f, g)))
    return _mismatch("triple brace deviation via brackets", None, lhs, rhs)


def _check_bracket(s: TrialSample):
    ctx = s.ctx
    f, g = s.elements["f"], s.elements["g"]
    anti = (bracket(f, g)
            + ksign(f.shifted_degree * g.shifted_degree) * bracket(g, f))
    if not anti.is_zero():
        return FailDetail("bracket antisymmetry", None, anti, None)
    return _mismatch("bracket with the product gives the coboundary", None,
                     bracket(f, ctx.mu), -1 * delta(ctx, f))


def _lemma_second_range(dh, df, dg):
    return [(i, j, k)
            for i in range(0, dh - 1)
            for j in range(i + df, dh + df - 1)
            for k in range(j + dg, dh + df + dg - 1)]


def _check_lemma_first(s: TrialSample):
    ctx = s.ctx
    h, f, g, b = (s.elements[n] for n in ("h", "f", "g", "b"))
    sg, sb = g.shifted_degree, b.shifted_degree
    for (i, j, k) in ground_tetrahedron(h.degree, f.degree, g.degree).points:
        core = h.compose(f, i).compose(g, j).compose(b, k)
        lhs = (delta(ctx, core)
               - h.compose(f, i).compose(g, j).compose(delta(ctx, b), k)
               - ksign(sb) * h.compose(f, i).compose(delta(ctx, g), j)
                              .compose(b, k + 1)
               - ksign(sb + sg) * h.compose(delta(ctx, f), i).compose(g, j + 1)
                                   .compose(b, k + 1))
        rhs = ctx.backend.zero(lhs.degree)
        for kind in GAMMA_KINDS:
            rhs = rhs + aux_gamma(ctx, kind, h, f, g, b, i + 1, j + 1, k + 1)
        got = _mismatch("pointwise coboundary telescoping", (i, j, k), lhs, rhs)
        if got:
            return got
    return None


def _check_lemma_second(s: TrialSample):
    ctx = s.ctx
    h, f, g, b = (s.elements[n] for n in ("h", "f", "g", "b"))
    sf, sg, sb = f.shifted_degree, g.shifted_degree, b.shifted_degree
    for (i, j, k) in _lemma_second_range(h.degree, f.degree, g.degree):
        lhs = ksign(sf + sg + sb) * (delta(ctx, h).compose(f, i)
                                     .compose(g, j).compose(b, k))
        rhs = (aux_gamma(ctx, "gamma", h, f, g, b, i, j, k)
               + aux_gamma(ctx, "gamma1", h, f, g, b, i + 1, j, k)
               + aux_gamma(ctx, "gamma2", h, f, g, b, i + 1, j + 1, k)
               + aux_gamma(ctx, "gamma3", h, f, g, b, i + 1, j + 1, k + 1))
        got = _mismatch("coboundary of the outer slot telescopes", (i, j, k),
                        lhs, rhs)
        if got:
            return got
    return None


def _face_checker(kind):
    def check(s: TrialSample):
        ctx = s.ctx
        h, f, g, b = (s.elements[n] for n in ("h", "f", "g", "b"))
        sh, sg, sb = h.shifted_degree, g.shifted_degree, b.shifted_degree
        db, df = b.degree, f.degree
        for (i, j, k) in boundary_faces(h.degree, f.degree, g.degree)[kind]:
            lhs = aux_gamma(ctx, kind, h, f, g, b, i, j, k)
            if kind == "gamma":
                rhs = ksign(sg + db + sh * df) * cup(
                    ctx, f, h.compose(g, j - df).compose(b, k - df))
            elif kind == "gamma1":
                rhs = ksign(sb + sg) * h.compose(cup(ctx, f, g), i - 1).compose(b, k)
            elif kind == "gamma2":
                rhs = ksign(sb) * h.compose(f, i - 1).compose(cup(ctx, g, b), j - 1)
            else:
                rhs = ksign(db) * cup(ctx, h.compose(f, i - 1).compose(g, j - 1), b)
            got = _mismatch(f"{kind} face collapses to a cup product",
                            (i, j, k), lhs, rhs)
            if got:
                return got
        return None
    return check


def _check_recap_vs_shifted(s: TrialSample):
    ctx = s.ctx
    h, f, g, b = (s.elements[n] for n in ("h", "f", "g", "b"))
    for (i, j, k) in ground_tetrahedron(h.degree, f.degree, g.degree).points:
        for kind in GAMMA_KINDS:
            lhs = aux_gamma_shifted(ctx, kind, h, f, g, b, i, j, k)
            rhs = aux_gamma(ctx, kind, h, f, g, b, i + 1, j + 1, k + 1)
            got = _mismatch(f"total {kind} matches its raw shifted form",
                            (i, j, k), lhs, rhs)
            if got:
                return got
    return None


def _check_envelope_partition(s: TrialSample):
    dh, df, dg, db = (s.degrees[n] for n in ("h", "f", "g", "b"))
    interior, env, trunc, bound = envelope_domains(dh, df, dg, db)
    faces = boundary_faces(dh, df, dg)
    face_sets = [set(faces[k]) for k in GAMMA_KINDS]
    union = set()
    for fs in face_sets:
        if union & fs:
            return FailDetail("boundary faces overlap", None, None, None)
        union |= fs
    if set(bound.points) != union:
        return FailDetail("boundary differs from the face union", None, None, None)
    if set(trunc.points) != set(interior.points) | set(bound.points):
        return FailDetail("truncated envelope fails to split", None, None, None)
    if set(interior.points) & set(bound.points):
        return FailDetail("interior meets the boundary", None, None, None)
    if set(env.points) - set(trunc.points) != set(removed_edges(dh, df, dg)):
        return FailDetail("removed edges differ from the wall count", None,
                          None, None)
    if set(shifted_tetrahedron(dh, df, dg).points) != set(interior.points):
        return FailDetail("interior differs from the shifted tetrahedron",
                          None, None, None)
    return None


def _check_degree_bookkeeping(s: TrialSample):
    ctx = s.ctx
    h, f, g, b = (s.elements[n] for n in ("h", "f", "g", "b"))
    dh, df, dg, db = h.degree, f.degree, g.degree, b.degree
    attempts = (
        ("cup", cup(ctx, f, g).degree, df + dg),
        ("bullet", bullet(f, g).degree, df + dg - 1),
        ("bracket", bracket(f, g).degree, df + dg - 1),
        ("delta", delta(ctx, f).degree, df + 1),
        ("tribraces", tribraces(h, f, g).degree, dh + df + dg - 2),
        ("tetrabraces", tetrabraces(h, f, g, b).degree, dh + df + dg + db - 3),
        ("dev_bullet", dev_bullet(ctx, f, g).degree, df + dg),
        ("dev_tribraces", dev_tribraces(ctx, h, f, g).degree, dh + df + dg - 1),
        ("dev_tetrabraces", dev_tetrabraces(ctx, h, f, g, b).degree,
         dh + df + dg + db - 2),
    )
    for name, got, want in attempts:
        if got != want:
            return FailDetail(f"{name} lands in the wrong degree", None,
                              None, None)
    return None


def _word_sampler(rng, degrees, cfg):
    word = []
    current = degrees["a"]
    for name in ("b", "c", "d")[: int(rng.integers(0, 4))]:
        slot = int(rng.integers(0, current))
        word.append([name, slot])
        current += degrees[name] - 1
    return {"word": word}


def _check_cross_backend(s: TrialSample):
    degrees = s.degrees
    ring = s.ctx.backend.ring
    dim = s.ctx.backend.dim
    gens = tuple((name, degrees[name]) for name in ("a", "b", "c", "d"))
    fb = FreeBackend(ring, free.Signature(gens))
    symbolic = fb.generator("a")
    concrete = s.elements["a"]
    for name, slot in s.extra["word"]:
        if not 0 <= slot < symbolic.degree:
            return None
        symbolic = symbolic.compose(fb.generator(name), slot)
        concrete = concrete.compose(s.elements[name], slot)
    assignment = {name: s.elements[name].payload for name, _ in gens}
    image = free.evaluate_hom(symbolic.payload, assignment, ring, dim)
    if image != concrete.payload:
        return FailDetail("table substitution commutes with the word",
                          tuple(tuple(w) for w in s.extra["word"]),
                          GradedElement(s.ctx.backend, image), concrete)
    return None


def _vac_h_below(n):
    return lambda degrees: degrees["h"] < n


_LAWS = [
    Law("L01-scope-partition",
        "The scope of a double composition splits into the left, nested and "
        "right regions, and left mirrors right.",
        "scope partition of double compositions",
        ("h", "f", "g"), _check_scope_partition, element_free=True),
    Law("L02-relation-left",
        "Exchanging two compositions when the second factor lands strictly "
        "left of the first costs the product of shifted degrees.",
        "composition exchange relation, left case",
        ("h", "f", "g"), _check_relation_left, vacuous_when=_vac_h_below(2)),
    Law("L03-relation-nested",
        "A composition landing inside the inner factor is the same as "
        "composing the inner factors first.",
        "composition nesting relation",
        ("h", "f", "g"), _check_relation_nested),
    Law("L04-relation-right",
        "Exchanging two compositions when the second factor lands strictly "
        "right of the first costs the product of shifted degrees.",
        "composition exchange relation, right case",
        ("h", "f", "g"), _check_relation_right, vacuous_when=_vac_h_below(2)),
    Law("L05-unit-laws",
        "The unit is absorbed from either side and totals to deg(f) copies.",
        "unit absorption",
        ("f",), _check_units),
    Law("L06-cup-product",
        "Cup against either slot of the product, and cup as a double "
        "composition.",
        "cup product characterizations",
        ("f", "g"), _check_cup_props),
    Law("L07-cup-compose",
        "Composing into a cup product acts on exactly one factor, with a "
        "sign when it acts on the first.",
        "cup distributes over composition",
        ("f", "g", "h"), _check_cup_compose),
    Law("L08-main-theorem",
        "The coboundary deviation of the quadruple brace sum collapses to "
        "four cup and brace terms.",
        "quadruple brace deviation theorem",
        ("h", "f", "g", "b"), _check_main_theorem, force_first=3,
        vacuous_when=_vac_h_below(2)),
    Law("L09-right-derivation",
        "Total composition by a fixed element is a derivation of the cup "
        "product up to one sign.",
        "cup right-derivation rule",
        ("f", "g", "h"), _check_right_derivation),
    Law("L10-delta-expansion",
        "Minus the coboundary equals the two unit cups plus the total "
        "composition with the product.",
        "coboundary expansion",
        ("f",), _check_delta_expansion),
    Law("L11-bullet-deviation",
        "The coboundary deviation of the total composition measures cup "
        "commutativity.",
        "total composition deviation",
        ("f", "g"), _check_bullet_deviation),
    Law("L12-delta-squared",
        "Over an associative fixture product the coboundary squares to zero.",
        "coboundary squares to zero for associative products",
        ("f",), _check_delta_squared, backends=("endo",), fixture_mu=True),
    Law("L13-getzler",
        "The associator of the total composition is the symmetrized triple "
        "brace sum.",
        "Getzler brace identity",
        ("h", "f", "g"), _check_getzler),
    Law("L14-gerstenhaber-symmetry",
        "The associator is symmetric in its last two slots up to the product "
        "of shifted degrees.",
        "Gerstenhaber symmetry",
        ("h", "f", "g"), _check_gerstenhaber),
    Law("L15-tri-deviation",
        "The coboundary deviation of the triple brace sum collapses to three "
        "cup terms.",
        "triple brace deviation theorem",
        ("h", "f", "g"), _check_tri_deviation),
    Law("L16-tri-deviation-bracket",
        "The triple brace deviation rewrites with brackets in place of total "
        "compositions.",
        "triple brace deviation, bracket form",
        ("h", "f", "g"), _check_tri_deviation_bracket),
    Law("L17-bracket-laws",
        "The bracket is graded antisymmetric and bracketing with the product "
        "gives minus the coboundary.",
        "graded bracket laws",
        ("f", "g"), _check_bracket),
    Law("L18-lemma-first",
        "Pointwise over the ground tetrahedron, the coboundary of a triple "
        "composite telescopes into the four auxiliary families.",
        "first telescoping lemma",
        ("h", "f", "g", "b"), _check_lemma_first, force_first=3,
        vacuous_when=_vac_h_below(3)),
    Law("L19-lemma-second",
        "The coboundary applied to the outer slot equals a staggered sum of "
        "the four auxiliary families.",
        "second telescoping lemma",
        ("h", "f", "g", "b"), _check_lemma_second, force_first=3,
        vacuous_when=_vac_h_below(2)),
    Law("L20-boundary-gamma",
        "On the wall i = 0 the first auxiliary family is a left cup factor.",
        "boundary closed form, first family",
        ("h", "f", "g", "b"), _face_checker("gamma"), force_first=3,
        vacuous_when=_vac_h_below(2)),
    Law("L21-boundary-gamma1",
        "On its wall the second auxiliary family composes a cup of the two "
        "middle inputs.",
        "boundary closed form, second family",
        ("h", "f", "g", "b"), _face_checker("gamma1"), force_first=3,
        vacuous_when=_vac_h_below(2)),
    Law("L22-boundary-gamma2",
        "On its wall the third auxiliary family composes a cup of the two "
        "last inputs.",
        "boundary closed form, third family",
        ("h", "f", "g", "b"), _face_checker("gamma2"), force_first=3,
        vacuous_when=_vac_h_below(2)),
    Law("L23-boundary-gamma3",
        "On the far wall the fourth auxiliary family is a right cup factor.",
        "boundary closed form, fourth family",
        ("h", "f", "g", "b"), _face_checker("gamma3"), force_first=3,
        vacuous_when=_vac_h_below(2)),
    Law("L24-gamma-recap",
        "The unit-absorbed auxiliary definitions match the raw shifted-index "
        "expressions on the shifted interior.",
        "auxiliary recapitulation consistency",
        ("h", "f", "g", "b"), _check_recap_vs_shifted, force_first=3,
        vacuous_when=_vac_h_below(3)),
    Law("L25-envelope-partition",
        "Truncated envelope = shifted interior + four disjoint faces, and "
        "the removed points are exactly the six wall-pair edges.",
        "envelope partition",
        ("h", "f", "g", "b"), _check_envelope_partition, element_free=True),
    Law("L26-degree-bookkeeping",
        "Every derived operation lands in its stated degree.",
        "degree bookkeeping",
        ("h", "f", "g", "b"), _check_degree_bookkeeping),
    Law("L27-cross-backend",
        "Random symbolic composition words map to the same dense table as "
        "the word evaluated directly.",
        "table substitution is a morphism",
        ("a", "b", "c", "d"), _check_cross_backend, fixed_backend="endo",
        extra_sampler=_word_sampler),
]

_REGISTRY = {law.law_id: law for law in _LAWS}


def list_laws():
    return list(_LAWS)


def get_law(law_id: str) -> Law:
    try:
        return _REGISTRY[law_id]
    except KeyError:
        raise UnknownLaw(f"no law with id {law_id!r}") from None


def laws_for_backend(backend: str):
    return [law for law in _LAWS if backend in law.backends]


# ---------------------------------------------------------------------------
# engine

def _serialize_element(el: GradedElement) -> dict:
    return el.serialize()


def _witness(law: Law, cfg: TrialConfig, trial: int, attempt: int,
             sample: TrialSample, detail: FailDetail) -> dict:
    elements = {name: _serialize_element(el)
                for name, el in sorted(sample.elements.items())}
    return {
        "law_id": law.law_id,
        "seed": [cfg.seed, trial, attempt],
        "backend": law.fixed_backend or cfg.backend,
        "prime": cfg.prime,
        "dim": cfg.dim,
        "mutations": sorted(cfg.mutations),
        "degrees": dict(sorted(sample.degrees.items())),
        "elements": elements,
        "extra": sample.extra,
        "identity": detail.identity,
        "domain_point": list(detail.point) if detail.point is not None else None,
        "lhs": _serialize_element(detail.lhs) if detail.lhs is not None else None,
        "rhs": _serialize_element(detail.rhs) if detail.rhs is not None else None,
    }


def run_law(law_id: str, cfg: TrialConfig) -> Report:
    law = get_law(law_id)
    cfg.validate()
    if cfg.backend not in law.backends:
        raise BadConfig(f"{law.law_id} does not run on the {cfg.backend} backend")
    if len(law.slots) * cfg.degree_min > cfg.degree_budget:
        raise BadConfig(f"degree_min {cfg.degree_min} cannot fit "
                        f"{len(law.slots)} inputs under the degree budget "
                        f"{cfg.degree_budget}")
    start = time.perf_counter()
    failures = []
    vacuous = 0
    for trial in range(cfg.trials):
        force = law.force_first if (law.force_first and trial % 2 == 0) else None
        sample = None
        attempt_used = 0
        for attempt in range(_RETRIES):
            rng = _trial_rng(law_id, cfg.seed, trial, attempt)
            candidate = _build_sample(law, cfg, rng, force)
            if law.vacuous_when and law.vacuous_when(candidate.degrees):
                continue
            sample = candidate
            attempt_used = attempt
            break
        if sample is None:
            vacuous += 1
            continue
        detail = law.checker(sample)
        if detail is not None:
            failures.append(_witness(law, cfg, trial, attempt_used, sample, detail))
    millis = int(round((time.perf_counter() - start) * 1000))
    non_vacuous = cfg.trials - vacuous
    return Report(
        law_id=law_id,
        status="fail" if failures else "pass",
        trials=cfg.trials,
        vacuous=vacuous,
        underpowered=non_vacuous * 2 < cfg.trials,
        failures=failures,
        millis=millis,
    )


def run_suite(cfg: TrialConfig, law_ids=None) -> dict:
    cfg.validate()
    if law_ids is None:
        chosen = laws_for_backend(cfg.backend)
    else:
        chosen = [get_law(i) for i in law_ids]
        for law in chosen:
            if cfg.backend not in law.backends:
                raise BadConfig(f"{law.law_id} does not run on the "
                                f"{cfg.backend} backend")
    reports = [run_law(law.law_id, cfg) for law in chosen]
    ok = all(r.status == "pass" and not r.underpowered for r in reports)
    return {
        "config": cfg.describe(),
        "laws": [r.to_dict() for r in reports],
        "status": "pass" if ok else "fail",
    }


# ---------------------------------------------------------------------------
# replay and shrink

def _rebuild_sample(witness: dict) -> TrialSample:
    law = get_law(witness["law_id"])
    if law.element_free:
        return TrialSample(None, {}, dict(witness["degrees"]),
                           dict(witness.get("extra", {})))
    ring = CoefficientRing.prime_field(witness["prime"])
    muts = frozenset(witness.get("mutations", ()))
    if witness["backend"] == "endo":
        backend = EndoBackend(ring, witness["dim"], muts)
    else:
        sig = free.Signature(tuple(
            (str(n), int(d))
            for n, d in witness["elements"]["mu"]["signature"]))
        backend = FreeBackend(ring, sig, muts)
    elements = {name: backend.deserialize(data)
                for name, data in witness["elements"].items()}
    ctx = PreOperadContext(backend, elements["mu"])
    degrees = {name: el.degree for name, el in elements.items() if name != "mu"}
    return TrialSample(ctx, elements, degrees, dict(witness.get("extra", {})))


def replay(witness: dict) -> FailDetail | None:
    """Re-run the failed check on the stored elements."""
    law = get_law(witness["law_id"])
    sample = _rebuild_sample(witness)
    return law.checker(sample)


def _witness_from_sample(witness: dict, sample: TrialSample,
                         detail: FailDetail) -> dict:
    out = dict(witness)
    out["degrees"] = {name: el.degree
                     for name, el in sorted(sample.elements.items())
                     if name != "mu"}
    out["elements"] = {name: _serialize_element(el)
                       for name, el in sorted(sample.elements.items())}
    out["identity"] = detail.identity
    out["domain_point"] = list(detail.point) if detail.point is not None else None
    out["lhs"] = _serialize_element(detail.lhs) if detail.lhs is not None else None
    out["rhs"] = _serialize_element(detail.rhs) if detail.rhs is not None else None
    return out


def _lowered(el: GradedElement, steps: int = 1) -> GradedElement | None:
    payload = el.payload
    if not isinstance(payload, endo.MultilinearMap) or payload.degree - steps < 1:
        return None
    table = np.asarray(payload.table)
    for _ in range(steps):
        table = table[..., 0]
    lowered = endo.make_map(payload.ring, payload.dim, payload.degree - steps,
                            table.reshape(-1))
    return GradedElement(el.backend, lowered)


def _zeroed(el: GradedElement, flat_index: int) -> GradedElement | None:
    payload = el.payload
    if isinstance(payload, endo.MultilinearMap):
        flat = np.asarray(payload.table).reshape(-1).copy()
        if flat_index >= flat.size or flat[flat_index] == 0:
            return None
        flat[flat_index] = 0
        return GradedElement(el.backend,
                             endo.make_map(payload.ring, payload.dim,
                                           payload.degree, flat))
    if flat_index >= len(payload.terms):
        return None
    terms = dict(payload.terms)
    del terms[payload.terms[flat_index][0]]
    reduced = free.FreeElement(payload.ring, payload.signature, payload.degree,
                               tuple(sorted(terms.items(),
                                            key=lambda kv: free.tree_to_sexpr(kv[0]))))
    return GradedElement(el.backend, reduced)


def _still_fails(law: Law, sample: TrialSample) -> FailDetail | None:
    try:
        return law.checker(sample)
    except PreOperadError:
        return None


def _replace_element(sample: TrialSample, name: str,
                     el: GradedElement) -> TrialSample:
    elements = {**sample.elements, name: el}
    ctx = sample.ctx
    if name == "mu":
        ctx = PreOperadContext(ctx.backend, el)
    return TrialSample(ctx, elements, dict(sample.degrees), dict(sample.extra))


def shrink(witness: dict) -> dict:
    """Greedy witness reduction: lower degrees, then zero out entries.

    The result still fails and running shrink on it again is a no-op.
    """
    law = get_law(witness["law_id"])
    if law.element_free:
        return dict(witness)
    current_sample = _rebuild_sample(witness)
    detail = _still_fails(law, current_sample)
    if detail is None:
        return dict(witness)
    current = _witness_from_sample(witness, current_sample, detail)
    improved = True
    while improved:
        improved = False
        names = sorted(current_sample.elements)
        for name in names:
            if name == "mu":
                continue
            # lowering by two preserves shifted-degree parity, so a sign
            # sensitive failure can still step down past a parity barrier
            for steps in (1, 2):
                cand_el = _lowered(current_sample.elements[name], steps)
                if cand_el is None:
                    continue
                cand = _replace_element(current_sample, name, cand_el)
                got = _still_fails(law, cand)
                if got is not None:
                    current_sample = cand
                    current = _witness_from_sample(current, cand, got)
                    improved = True
                    break
            if improved:
                break
        if improved:
            continue
        for name in names:
            el = current_sample.elements[name]
            size = (np.asarray(el.payload.table).size
                    if isinstance(el.payload, endo.MultilinearMap)
                    else len(el.payload.terms))
            for idx in range(min(size, _SHRINK_ZERO_CAP)):
                cand_el = _zeroed(el, idx)
                if cand_el is None:
                    continue
                cand = _replace_element(current_sample, name, cand_el)
                got = _still_fails(law, cand)
                if got is not None:
                    current_sample = cand
                    current = _witness_from_sample(current, cand, got)
                    improved = True
                    break
            if improved:
                break
    return current
