"""Invariants of the simple infinite-dimensional quotients of C*(D_n).

Circle values are exponents a + b*theta taken mod 1, with a, b rational and
theta a single formal irrational; e^{2 pi i (a + b theta)} is a root of unity
exactly when b == 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from toruskt.combinatorics import extbinom


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise ValueError("use exact rationals (strings like '1/3'), not floats")
    return Fraction(x)


@dataclass(frozen=True)
class CircleElement:
    """exp(2 pi i (rat + irr*theta)), with rat kept in [0, 1)."""

    rat: Fraction = Fraction(0)
    irr: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "rat", _frac(self.rat) % 1)
        object.__setattr__(self, "irr", _frac(self.irr))

    @property
    def is_root_of_unity(self) -> bool:
        return self.irr == 0

    @property
    def order(self) -> int | None:
        """Multiplicative order, or None when not a root of unity."""
        return self.rat.denominator if self.irr == 0 else None

    def is_one(self) -> bool:
        return self.rat == 0 and self.irr == 0

    def __mul__(self, other: "CircleElement") -> "CircleElement":
        return CircleElement(self.rat + other.rat, self.irr + other.irr)

    def __pow__(self, k: int) -> "CircleElement":
        return CircleElement(self.rat * k, self.irr * k)

    def inverse(self) -> "CircleElement":
        return CircleElement(-self.rat, -self.irr)

    def to_json_obj(self) -> dict:
        return {"rat": str(self.rat), "irr": str(self.irr)}

    @classmethod
    def from_json_obj(cls, obj) -> "CircleElement":
        return cls(_frac(obj.get("rat", 0)), _frac(obj.get("irr", 0)))

    def __str__(self):
        if self.irr == 0:
            return f"e(2pi i {self.rat})"
        return f"e(2pi i ({self.rat} + {self.irr} theta))"


ONE = CircleElement()


def circle_pow_mul(factors) -> CircleElement:
    """Product of c**e over the (CircleElement, exponent) pairs."""
    out = ONE
    for c, e in factors:
        out = out * c ** e
    return out


@dataclass(frozen=True)
class QuotientSpec:
    """Parameters of one quotient: level i, lambda, and mu_1..mu_i."""

    n: int
    i: int
    lam: CircleElement
    mu: tuple[CircleElement, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(self.mu))
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 <= self.i <= self.n - 1:
            raise ValueError("level i must lie in 0..n-1")
        if len(self.mu) != self.i:
            raise ValueError("need exactly i values of mu")
        if self.i == 0:
            if self.lam.is_root_of_unity:
                raise ValueError("level 0 needs lambda not a root of unity")
            return
        if not self.lam.is_root_of_unity:
            raise ValueError("lambda must be a root of unity for i >= 1")
        if any(not m.is_root_of_unity for m in self.mu[:-1]):
            raise ValueError("mu_1..mu_{i-1} must be roots of unity")
        if self.mu[-1].is_root_of_unity:
            raise ValueError("mu_i must not be a root of unity")

    @property
    def constants(self) -> tuple[CircleElement, ...]:
        """lambda, mu_1, ..., mu_i."""
        return (self.lam,) + self.mu

    def to_json_obj(self) -> dict:
        return {"n": self.n, "i": self.i, "lambda": self.lam.to_json_obj(),
                "mu": [m.to_json_obj() for m in self.mu]}

    @classmethod
    def from_json_obj(cls, obj) -> "QuotientSpec":
        try:
            return cls(int(obj["n"]), int(obj["i"]),
                       CircleElement.from_json_obj(obj["lambda"]),
                       tuple(CircleElement.from_json_obj(m) for m in obj.get("mu", [])))
        except (KeyError, TypeError, ZeroDivisionError) as exc:
            raise ValueError(f"bad quotient spec: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "QuotientSpec":
        return cls.from_json_obj(json.loads(text))


def _condition(consts, r: int, j: int) -> CircleElement:
    # lambda^{C(r,j)} mu_1^{C(r,j-1)} ... mu_{j-1}^{C(r,1)}
    return circle_pow_mul((consts[t], extbinom(r, j - t)) for t in range(j))


def orbit_bound(spec: QuotientSpec) -> int:
    """A multiple of every admissible period.

    With L the lcm of the orders of lambda, mu_1..mu_{i-1}, the integer
    r = prod over p | L of p^(v_p(L) + ceil(log_p i)) has L | C(r, k) for all
    1 <= k <= i, so every condition holds at r. This is at most L^i.
    """
    L = 1
    for c in spec.constants[: spec.i]:
        L = lcm(L, c.order)
    bound, m, p = 1, L, 2
    while m > 1:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            extra, q = 0, 1
            while q < spec.i:
                q *= p
                extra += 1
            bound *= p ** (e + extra)
        p += 1
    return bound


def orbit_cardinality(spec: QuotientSpec) -> int:
    """Least r >= 1 at which all i conditions are trivial (1 at level 0)."""
    if spec.i == 0:
        return 1
    consts = spec.constants
    bound = orbit_bound(spec)
    for r in range(1, bound + 1):
        if all(_condition(consts, r, j).is_one() for j in range(1, spec.i + 1)):
            return r
    raise ArithmeticError("no period found below the proved bound")


def zeta_invariant(spec: QuotientSpec) -> CircleElement:
    """lambda^{C(C,i+1)} mu_1^{C(C,i)} ... mu_i^{C}, with C the orbit cardinality."""
    if spec.i == 0:
        return spec.lam
    C = orbit_cardinality(spec)
    return _condition(spec.constants, C, spec.i + 1)


@dataclass(frozen=True)
class TraceRange:
    """(1/denominator)(Z + Z*vartheta), vartheta = rat + irr*theta."""

    denominator: int
    rat: Fraction
    irr: Fraction

    def to_dict(self) -> dict:
        return {"denominator": self.denominator, "generator": {"rat": str(self.rat), "irr": str(self.irr)}}


def trace_range(spec: QuotientSpec) -> TraceRange:
    z = zeta_invariant(spec)
    return TraceRange(orbit_cardinality(spec), z.rat, z.irr)


def quotients_isomorphic(s: QuotientSpec, t: QuotientSpec) -> bool:
    if s.n - s.i != t.n - t.i:
        return False
    if orbit_cardinality(s) != orbit_cardinality(t):
        return False
    zs, zt = zeta_invariant(s), zeta_invariant(t)
    return zs == zt or zs == zt.inverse()
