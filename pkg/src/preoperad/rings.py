"""Exact coefficient arithmetic: prime fields F_p and the integers.

Every value is a plain Python int in canonical form (reduced representative
in [0, p) for F_p, arbitrary precision for Z). The dense backends keep whole
tables of such values; this module owns the scalar rules.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DivisionByZero,
    InverseUnavailable,
    RingMismatch,
    UnsupportedRing,
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class CoefficientRing:
    """F_p when modulus is a prime, the integers when modulus is None."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and not _is_prime(self.modulus):
            raise UnsupportedRing(f"modulus {self.modulus} is not prime")

    @classmethod
    def prime_field(cls, p: int) -> "CoefficientRing":
        return cls(p)

    @classmethod
    def integers(cls) -> "CoefficientRing":
        return cls(None)

    @property
    def is_field(self) -> bool:
        return self.modulus is not None

    def reduce(self, v: int) -> int:
        """Canonical representative of v."""
        v = int(v)
        return v % self.modulus if self.modulus is not None else v

    def add(self, a: int, b: int) -> int:
        return self.reduce(a + b)

    def sub(self, a: int, b: int) -> int:
        return self.reduce(a - b)

    def mul(self, a: int, b: int) -> int:
        return self.reduce(a * b)

    def neg(self, a: int) -> int:
        return self.reduce(-a)

    def inv(self, a: int) -> int:
        if self.modulus is None:
            if a in (1, -1):
                return a
            raise InverseUnavailable(f"{a} is not a unit in the integers")
        a = a % self.modulus
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, self.modulus - 2, self.modulus)

    def sample(self, rng) -> int:
        """Uniform element drawn from a numpy Generator. Fields only."""
        if self.modulus is None:
            raise UnsupportedRing("uniform sampling needs a finite field")
        return int(rng.integers(0, self.modulus))

    def sample_nonzero(self, rng) -> int:
        if self.modulus is None:
            raise UnsupportedRing("uniform sampling needs a finite field")
        return int(rng.integers(1, self.modulus))

    def label(self) -> str:
        return "Z" if self.modulus is None else f"F_{self.modulus}"

    def to_payload(self) -> dict:
        if self.modulus is None:
            return {"kind": "integers"}
        return {"kind": "prime_field", "p": self.modulus}

    @classmethod
    def from_payload(cls, payload: dict) -> "CoefficientRing":
        if payload.get("kind") == "integers":
            return cls.integers()
        if payload.get("kind") == "prime_field":
            return cls.prime_field(int(payload["p"]))
        raise UnsupportedRing(f"unknown ring payload {payload!r}")


@dataclass(frozen=True)
class Coefficient:
    """A single canonical scalar tagged with its ring."""

    ring: CoefficientRing
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.ring.reduce(self.value))

    def _check(self, other: "Coefficient"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring.label()} vs {other.ring.label()}")

    def __add__(self, other: "Coefficient") -> "Coefficient":
        self._check(other)
        return Coefficient(self.ring, self.value + other.value)

    def __sub__(self, other: "Coefficient") -> "Coefficient":
        self._check(other)
        return Coefficient(self.ring, self.value - other.value)

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        self._check(other)
        return Coefficient(self.ring, self.value * other.value)

    def __neg__(self) -> "Coefficient":
        return Coefficient(self.ring, -self.value)

    def inverse(self) -> "Coefficient":
        return Coefficient(self.ring, self.ring.inv(self.value))


def ring_ops(a: Coefficient, b: Coefficient | None, op: str) -> Coefficient:
    """Apply a named ring operation; b is ignored for the unary ops."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown ring op {op!r}")
