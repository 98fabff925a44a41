"""Affine maps of the torus with translations in Q + Q*theta.

A pair (t, A) with A = [b_ij] moves the point with exponent vector x to
t + A^T x (coordinate j picks up v_i^{b_ij}), and moves the character with
frequency k to A k. Composition is computed for the maps themselves:
(t, A) after (t', A') is (t + A^T t', A'A).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from toruskt.exactmat import ZMatrix, as_zmatrix, kernel_basis
from toruskt.exterior import anzai_matrix, unipotent_degree
from toruskt.quotients import CircleElement, QuotientSpec


@dataclass(frozen=True)
class AffineMap:
    t: tuple[CircleElement, ...]
    A: ZMatrix

    def __post_init__(self):
        A = as_zmatrix(self.A)
        t = tuple(x if isinstance(x, CircleElement) else CircleElement(*x) for x in self.t)
        if not A.is_square or len(t) != A.rows:
            raise ValueError("translation length must match the matrix size")
        if abs(A.det()) != 1:
            raise ValueError("linear part must have determinant +-1")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "t", t)

    @property
    def n(self) -> int:
        return self.A.rows

    def __call__(self, x) -> tuple[CircleElement, ...]:
        """Image of the point with exponent vector x."""
        return tuple(self.t[j] * _combine(x, self.A.col(j)) for j in range(self.n))

    def __matmul__(self, other: "AffineMap") -> "AffineMap":
        return compose(self, other)

    def to_json_obj(self) -> dict:
        return {"t": [c.to_json_obj() for c in self.t], "matrix": self.A.to_json_obj()}

    @classmethod
    def from_json_obj(cls, obj) -> "AffineMap":
        return cls(tuple(CircleElement.from_json_obj(c) for c in obj["t"]),
                   ZMatrix.from_json_obj(obj["matrix"]))


def _combine(x, coeffs) -> CircleElement:
    out = CircleElement()
    for c, k in zip(x, coeffs):
        if k:
            out = out * c ** k
    return out


def identity_map(n: int) -> AffineMap:
    return AffineMap((CircleElement(),) * n, ZMatrix.identity(n))


def compose(a: AffineMap, b: AffineMap) -> AffineMap:
    """The map x -> a(b(x))."""
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    return AffineMap(a(b.t), b.A @ a.A)


def inverse(a: AffineMap) -> AffineMap:
    Ainv = a.A.inverse()
    # solve t + A^T y = 0 for the translation y of the inverse
    y = tuple(_combine([c.inverse() for c in a.t], Ainv.col(j)) for j in range(a.n))
    return AffineMap(y, Ainv)


def anzai_map(n: int, lam: CircleElement) -> AffineMap:
    """Rotation by lambda in the first coordinate, then v_j -> v_{j-1} v_j."""
    return AffineMap((lam,) + (CircleElement(),) * (n - 1), anzai_matrix(n))


def quotient_flow(spec: QuotientSpec) -> AffineMap:
    """Anzai-type map with translation (lambda, mu_1, ..., mu_i, 0, ..., 0)."""
    consts = spec.constants if spec.i else (spec.lam,)
    t = consts + (CircleElement(),) * (spec.n - len(consts))
    return AffineMap(t, anzai_matrix(spec.n))


def orbit_points(a: AffineMap, m: int) -> list[tuple[CircleElement, ...]]:
    """a^k applied to the origin for k = 0..m."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    x = (CircleElement(),) * a.n
    out = [x]
    for _ in range(m):
        x = a(x)
        out.append(x)
    return out


def _totient(m: int) -> int:
    out, k, p = m, m, 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            out -= out // p
        p += 1
    if k > 1:
        out -= out // k
    return out


def root_order_bound(n: int) -> int:
    """Largest m with phi(m) <= n; orders of root-of-unity eigenvalues are at most this."""
    # phi(m) >= sqrt(m/2), so nothing past 2n^2 qualifies
    return max(m for m in range(1, 2 * n * n + 3) if _totient(m) <= n)


@dataclass(frozen=True)
class HahnReport:
    c1: bool
    c2: bool
    c3: bool
    c4: bool

    @property
    def all(self) -> bool:
        return self.c1 and self.c2 and self.c3 and self.c4

    def to_dict(self) -> dict:
        return {"c1": self.c1, "c2": self.c2, "c3": self.c3, "c4": self.c4}


def hahn_conditions(a: AffineMap) -> HahnReport:
    """The four conditions: stable fixed lattice, independent translation,
    nonzero fixed lattice, unipotent linear part."""
    A = a.A
    n = a.n
    fixed = kernel_basis(A.minus_identity())
    d = len(fixed)
    c1 = all((A ** p).minus_identity().rank() == n - d for p in range(2, root_order_bound(n) + 1))
    # <t, k> is rational exactly when its theta part vanishes
    values = [sum((c.irr * k for c, k in zip(a.t, v)), Fraction(0)) for v in fixed]
    c2 = d == 0 or (d == 1 and values[0] != 0)
    c3 = d > 0
    c4 = unipotent_degree(A) is not None
    return HahnReport(c1, c2, c3, c4)
