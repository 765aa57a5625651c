"""Uniform element wrapper over the dense and symbolic backends.

A GradedElement is a backend-tagged payload; the calculus layer only ever
talks to this interface, so every derived operation runs unchanged over
tables on R^d and over tree sums. Backends also carry the opt-in mutation
switches used by the law suite's canary checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import endo, free
from .errors import BackendMismatch, UnsupportedRing
from .rings import CoefficientRing


@dataclass(frozen=True)
class EndoBackend:
    """Multilinear maps on R^dim over a fixed ring."""

    ring: CoefficientRing
    dim: int
    mutations: frozenset = field(default_factory=frozenset)

    kind = "endo"

    def unit(self) -> "GradedElement":
        return GradedElement(self, endo.unit_map(self.ring, self.dim))

    def zero(self, degree: int) -> "GradedElement":
        return GradedElement(self, endo.zero_map(self.ring, self.dim, degree))

    def compose_payload(self, f, g, i):
        return endo.partial_compose(f, g, i)

    def combine_payload(self, coeffs, payloads):
        return endo.linear_combine(coeffs, payloads)

    def random(self, degree: int, rng) -> "GradedElement":
        return GradedElement(self, endo.random_map(self.ring, self.dim, degree, rng))

    def serialize(self, payload) -> dict:
        return endo.map_to_payload(payload)

    def deserialize(self, data) -> "GradedElement":
        return GradedElement(self, endo.map_from_payload(data))

    def describe(self) -> dict:
        return {"kind": self.kind, "ring": self.ring.to_payload(), "dim": self.dim,
                "mutations": sorted(self.mutations)}


@dataclass(frozen=True)
class FreeBackend:
    """Tree sums over a fixed generator signature."""

    ring: CoefficientRing
    signature: free.Signature
    mutations: frozenset = field(default_factory=frozenset)

    kind = "free"

    def unit(self) -> "GradedElement":
        return GradedElement(self, free.unit_element(self.signature, self.ring))

    def zero(self, degree: int) -> "GradedElement":
        return GradedElement(self, free.zero_element(self.signature, self.ring, degree))

    def compose_payload(self, f, g, i):
        return free.free_partial_compose(f, g, i)

    def combine_payload(self, coeffs, payloads):
        return free.free_linear_combine(coeffs, payloads)

    def generator(self, name: str) -> "GradedElement":
        return GradedElement(self, free.generator_element(self.signature, self.ring, name))

    def random(self, degree, rng) -> "GradedElement":
        raise UnsupportedRing("the symbolic backend has no random elements; "
                              "use generators")

    def serialize(self, payload) -> dict:
        return free.element_to_payload(payload)

    def deserialize(self, data) -> "GradedElement":
        return GradedElement(self, free.element_from_payload(data))

    def describe(self) -> dict:
        return {"kind": self.kind, "ring": self.ring.to_payload(),
                "signature": [[n, d] for n, d in self.signature.generators],
                "mutations": sorted(self.mutations)}


@dataclass(frozen=True)
class GradedElement:
    """A payload (table or tree sum) tagged with the backend it lives in."""

    backend: object
    payload: object

    @property
    def degree(self) -> int:
        return self.payload.degree

    @property
    def shifted_degree(self) -> int:
        return self.payload.degree - 1

    def _join(self, other: "GradedElement"):
        if self.backend != other.backend:
            raise BackendMismatch("elements from different backends")

    def compose(self, other: "GradedElement", i: int) -> "GradedElement":
        self._join(other)
        return GradedElement(self.backend,
                             self.backend.compose_payload(self.payload, other.payload, i))

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._join(other)
        return GradedElement(self.backend,
                             self.backend.combine_payload([1, 1], [self.payload, other.payload]))

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        self._join(other)
        return GradedElement(self.backend,
                             self.backend.combine_payload([1, -1], [self.payload, other.payload]))

    def __neg__(self) -> "GradedElement":
        return GradedElement(self.backend,
                             self.backend.combine_payload([-1], [self.payload]))

    def __rmul__(self, c: int) -> "GradedElement":
        return GradedElement(self.backend,
                             self.backend.combine_payload([c], [self.payload]))

    def is_zero(self) -> bool:
        return self.payload.is_zero()

    def serialize(self) -> dict:
        return self.backend.serialize(self.payload)
