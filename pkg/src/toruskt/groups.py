"""Semidirect products Z^m x| Z and the embedding of Gamma_alpha into D_n.

An element is a pair (v, k) with v in Z^m and k in Z, multiplied by
(v, k)(v', k') = (v + G^k v', k + k').
"""

from __future__ import annotations

from dataclasses import dataclass, field

from toruskt.exactmat import FGAbelianGroup, ZMatrix, as_zmatrix, cokernel, direct_sum
from toruskt.exterior import LinearizationSpec, dn_matrix


@dataclass(frozen=True, eq=False)
class GroupPresentation:
    """Z^m x| Z where the generator of Z acts by the unimodular matrix G."""

    G: ZMatrix
    name: str = ""
    _powers: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        G = as_zmatrix(self.G)
        if not G.is_square or abs(G.det()) != 1:
            raise ValueError("acting matrix must be square with determinant +-1")
        object.__setattr__(self, "G", G)

    @property
    def m(self) -> int:
        return self.G.rows

    def power(self, k: int) -> ZMatrix:
        if k not in self._powers:
            self._powers[k] = self.G ** k
        return self._powers[k]

    def element(self, vector, shift: int = 0) -> "SemidirectElement":
        return SemidirectElement(tuple(int(x) for x in vector), int(shift), self)

    def identity(self) -> "SemidirectElement":
        return self.element((0,) * self.m, 0)

    def lattice_generator(self, j: int) -> "SemidirectElement":
        return self.element(tuple(int(i == j) for i in range(self.m)), 0)

    def shift_generator(self) -> "SemidirectElement":
        return self.element((0,) * self.m, 1)

    def generators(self) -> list["SemidirectElement"]:
        """The shift generator followed by the lattice basis."""
        return [self.shift_generator()] + [self.lattice_generator(j) for j in range(self.m)]


@dataclass(frozen=True)
class SemidirectElement:
    vector: tuple[int, ...]
    shift: int
    parent: GroupPresentation

    def __post_init__(self):
        if len(self.vector) != self.parent.m:
            raise ValueError("vector length does not match the lattice rank")

    def __mul__(self, other: "SemidirectElement") -> "SemidirectElement":
        return multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, SemidirectElement):
            return NotImplemented
        return (self.parent is other.parent and self.vector == other.vector
                and self.shift == other.shift)

    def __hash__(self):
        return hash((id(self.parent), self.vector, self.shift))


def _same_parent(a: SemidirectElement, b: SemidirectElement):
    if a.parent is not b.parent:
        raise ValueError("elements belong to different groups")


def multiply(a: SemidirectElement, b: SemidirectElement) -> SemidirectElement:
    _same_parent(a, b)
    moved = a.parent.power(a.shift).apply(b.vector)
    return SemidirectElement(tuple(x + y for x, y in zip(a.vector, moved)),
                             a.shift + b.shift, a.parent)


def inverse(a: SemidirectElement) -> SemidirectElement:
    back = a.parent.power(-a.shift).apply(a.vector)
    return SemidirectElement(tuple(-x for x in back), -a.shift, a.parent)


def commutator(a: SemidirectElement, b: SemidirectElement) -> SemidirectElement:
    """a b a^-1 b^-1."""
    _same_parent(a, b)
    return a * b * inverse(a) * inverse(b)


def commutator_closed_form(a: SemidirectElement, b: SemidirectElement) -> SemidirectElement:
    """((G^k1 - I) x2 - (G^k2 - I) x1, 0), computed without group products."""
    _same_parent(a, b)
    p = a.parent
    u = p.power(a.shift).minus_identity().apply(b.vector)
    w = p.power(b.shift).minus_identity().apply(a.vector)
    return SemidirectElement(tuple(x - y for x, y in zip(u, w)), 0, p)


def abelianization(p: GroupPresentation) -> FGAbelianGroup:
    """coker(G - I) plus one free summand for the shift."""
    return direct_sum([cokernel(p.G.minus_identity()), FGAbelianGroup(1)])


def dn_presentation(n: int) -> GroupPresentation:
    """D_n: lattice Z^(n+1) with coordinates over y_0..y_n, acted on by M_n."""
    return GroupPresentation(dn_matrix(n), name=f"D_{n}")


def _exponents(b, n: int) -> dict[tuple[int, int], int]:
    return LinearizationSpec("furstenberg", n=n, b=b).b


def g_alpha(b, n: int) -> ZMatrix:
    """Acting matrix of Gamma_alpha: first row (1, 1, 0, ...), then b_{s,k} in row s, column k."""
    bb = _exponents(b, n)
    rows = ZMatrix.identity(n + 1).to_lists()
    if n >= 1:
        rows[0][1] = 1
    for (s, k), v in bb.items():
        rows[s][k] = v
    return ZMatrix(n + 1, n + 1, rows)


def gamma_presentation(b, n: int) -> GroupPresentation:
    return GroupPresentation(g_alpha(b, n), name="Gamma_alpha")


def embed_gamma_exponents(b, n: int) -> ZMatrix:
    """Columns c_0..c_n giving iota(y'_k) in the coordinates y_0..y_n of D_n.

    c_0 = y_0, c_1 = y_1, and c_k is the solution of
    (M_n - I) c_k = sum_{s<k} b_{sk} c_s with zero y_0 coordinate. Since
    M_n - I sends y_j to y_{j-1}, solving is an index shift.
    """
    bb = _exponents(b, n)
    cols: list[list[int]] = []
    for k in range(n + 1):
        if k <= 1:
            cols.append([int(i == k) for i in range(n + 1)])
            continue
        rhs = [0] * (n + 1)
        for s in range(1, k):
            v = bb.get((s, k), 0)
            if v:
                for i, x in enumerate(cols[s]):
                    rhs[i] += v * x
        if rhs[n]:
            raise ArithmeticError("embedding system has no solution")
        cols.append([0] + rhs[:n])
    C = ZMatrix(n + 1, n + 1, [list(r) for r in zip(*cols)])
    for k in range(2, n + 1):
        expect = 1
        for i in range(1, k):
            expect *= bb[(i, i + 1)]
        if C[k, k] != expect:
            raise ArithmeticError("embedding lost its triangular diagonal")
    return C


def embed(element: SemidirectElement, C: ZMatrix, target: GroupPresentation) -> SemidirectElement:
    """Image of (v, k) under iota: (C v, k)."""
    return target.element(C.apply(element.vector), element.shift)
