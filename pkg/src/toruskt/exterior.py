"""Exterior powers over the lexicographic wedge basis, and the named matrices.

Convention: column j of A holds the coordinates of the image of e_j, and the
(I, J) entry of the r-th exterior power is the minor of A on rows I and
columns J, with r-subsets ordered lexicographically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from toruskt.exactmat import ZMatrix, as_zmatrix
from toruskt.combinatorics import extbinom


def wedge_basis(n: int, r: int) -> list[tuple[int, ...]]:
    """The r-subsets of 1..n in lexicographic order."""
    if not 0 <= r <= n:
        raise ValueError(f"r={r} out of range for n={n}")
    return list(combinations(range(1, n + 1), r))


def _sparse_rows(A: ZMatrix) -> list[dict[int, int]]:
    return [{j: v for j, v in enumerate(row) if v} for row in A]


def _wedge_step(A_rows, prev, prev_index, subsets, index):
    """Rows of the r-th power from those of the (r-1)-th.

    Laplace expansion along the first row index i of I:
    minor(I, J) = sum over c in J of (-1)^pos(c in J) A[i][c] minor(I - i, J - c).
    """
    out = []
    for I in subsets:
        row: dict[int, int] = {}
        rest = prev[prev_index[I[1:]]]
        for c, a in A_rows[I[0]].items():
            for Jp, v in rest.items():
                if c in Jp:
                    continue
                pos = sum(1 for x in Jp if x < c)
                J = Jp[:pos] + (c,) + Jp[pos:]
                t = -a * v if pos & 1 else a * v
                k = index[J]
                s = row.get(k, 0) + t
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
        out.append(row)
    return out


def wedge_powers(A, upto: int | None = None) -> list[ZMatrix]:
    """All exterior powers of A from r = 0 through ``upto`` (default n)."""
    A = as_zmatrix(A)
    if not A.is_square:
        raise ValueError("exterior powers need a square matrix")
    n = A.rows
    upto = n if upto is None else upto
    if not 0 <= upto <= n:
        raise ValueError(f"r={upto} out of range for n={n}")
    A_rows = _sparse_rows(A)
    result = [ZMatrix.identity(1)]
    # prev rows are keyed by column subsets (0-based tuples)
    prev = [{(): 1}]
    prev_index = {(): 0}
    for r in range(1, upto + 1):
        subsets = list(combinations(range(n), r))
        index = {S: k for k, S in enumerate(subsets)}
        rows = _wedge_step(A_rows, prev, prev_index, subsets, index)
        N = len(subsets)
        dense = []
        keyed = []
        for row in rows:
            line = [0] * N
            for k, v in row.items():
                line[k] = v
            dense.append(line)
            keyed.append({subsets[k]: v for k, v in row.items()})
        result.append(ZMatrix(N, N, dense))
        prev, prev_index = keyed, index
    return result


def wedge_power(A, r: int) -> ZMatrix:
    """The r-th exterior power of A."""
    A = as_zmatrix(A)
    if not A.is_square:
        raise ValueError("exterior powers need a square matrix")
    if not 0 <= r <= A.rows:
        raise ValueError(f"r={r} out of range for n={A.rows}")
    return wedge_powers(A, r)[r]


def anzai_matrix(n: int) -> ZMatrix:
    """Upper bidiagonal matrix of ones (the linear part of the Anzai map)."""
    if n < 1:
        raise ValueError("n must be positive")
    return ZMatrix(n, n, [[int(j in (i, i + 1)) for j in range(n)] for i in range(n)])


def dn_power(n: int, k: int) -> ZMatrix:
    """k-th power of the (n+1)x(n+1) action matrix of the lattice group D_n.

    Entry (i, j) is extbinom(k, j - i), which also covers negative k.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return ZMatrix(n + 1, n + 1, [[extbinom(k, j - i) for j in range(n + 1)] for i in range(n + 1)])


def dn_matrix(n: int) -> ZMatrix:
    return dn_power(n, 1)


@dataclass(frozen=True)
class LinearizationSpec:
    """Homotopy data of a torus homeomorphism.

    ``kind`` is one of anzai, ascending, furstenberg, general. Ascending specs
    carry the superdiagonal ``k``; Furstenberg specs carry exponents ``b``
    keyed by 1-based pairs (i, j) with i < j; general specs carry ``matrix``.
    """

    kind: str
    n: int = 0
    k: tuple[int, ...] = ()
    b: dict = field(default_factory=dict)
    matrix: ZMatrix | None = None

    def __post_init__(self):
        kind = self.kind
        if kind == "anzai":
            if self.n < 1:
                raise ValueError("anzai needs n >= 1")
        elif kind == "ascending":
            k = tuple(int(x) for x in self.k)
            object.__setattr__(self, "k", k)
            if self.n and self.n != len(k) + 1:
                raise ValueError("ascending: n must equal len(k) + 1")
            object.__setattr__(self, "n", len(k) + 1)
            if any(x == 0 for x in k):
                raise ValueError("ascending: exponents must be nonzero")
            if any(k[i + 1] % k[i] for i in range(len(k) - 1)):
                raise ValueError("ascending: each exponent must divide the next")
        elif kind == "furstenberg":
            b = {}
            for key, v in dict(self.b).items():
                i, j = _pair(key)
                if not 1 <= i < j:
                    raise ValueError(f"furstenberg: bad index pair {key!r}")
                b[(i, j)] = int(v)
            top = max((j for _, j in b), default=1)
            n = self.n or top
            if top > n:
                raise ValueError("furstenberg: index exceeds n")
            if n < 1:
                raise ValueError("furstenberg needs n >= 1")
            for i in range(1, n):
                if not b.get((i, i + 1)):
                    raise ValueError(f"furstenberg: b[{i},{i + 1}] must be nonzero")
            object.__setattr__(self, "b", b)
            object.__setattr__(self, "n", n)
        elif kind == "general":
            if self.matrix is None:
                raise ValueError("general spec needs a matrix")
            m = as_zmatrix(self.matrix)
            if not m.is_square or abs(m.det()) != 1:
                raise ValueError("general: matrix must be square with determinant +-1")
            object.__setattr__(self, "matrix", m)
            object.__setattr__(self, "n", m.rows)
        else:
            raise ValueError(f"unknown kind {kind!r}")

    def to_json_obj(self) -> dict:
        if self.kind == "anzai":
            return {"kind": "anzai", "n": self.n}
        if self.kind == "ascending":
            return {"kind": "ascending", "k": list(self.k)}
        if self.kind == "furstenberg":
            return {"kind": "furstenberg", "n": self.n,
                    "b": {f"{i},{j}": v for (i, j), v in sorted(self.b.items())}}
        return {"kind": "general", "matrix": self.matrix.to_json_obj()}

    @classmethod
    def from_json_obj(cls, obj) -> "LinearizationSpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError("spec must be an object with a 'kind'")
        kind = obj["kind"]
        if kind == "anzai":
            return cls("anzai", n=int(obj["n"]))
        if kind == "ascending":
            return cls("ascending", k=tuple(obj["k"]), n=int(obj.get("n", 0)))
        if kind == "furstenberg":
            return cls("furstenberg", b=dict(obj["b"]), n=int(obj.get("n", 0)))
        if kind == "general":
            return cls("general", matrix=ZMatrix.from_json_obj(obj["matrix"]))
        raise ValueError(f"unknown kind {kind!r}")

    @classmethod
    def from_json(cls, text: str) -> "LinearizationSpec":
        return cls.from_json_obj(json.loads(text))


def _pair(key) -> tuple[int, int]:
    if isinstance(key, str):
        parts = key.split(",")
        if len(parts) != 2:
            raise ValueError(f"bad index pair {key!r}")
        return int(parts[0]), int(parts[1])
    i, j = key
    return int(i), int(j)


def linearization(spec: LinearizationSpec) -> ZMatrix:
    """The integer matrix of the induced map on the first homology of the torus."""
    n = spec.n
    if spec.kind == "anzai":
        return anzai_matrix(n)
    if spec.kind == "general":
        return spec.matrix
    rows = ZMatrix.identity(n).to_lists()
    if spec.kind == "ascending":
        for i, k in enumerate(spec.k):
            rows[i][i + 1] = k
    else:
        for (i, j), v in spec.b.items():
            rows[i - 1][j - 1] = v
    return ZMatrix(n, n, rows)


def unipotent_degree(A) -> int | None:
    """Least k with (A - I)^k = 0, or None when A is not unipotent."""
    A = as_zmatrix(A)
    if not A.is_square:
        raise ValueError("matrix is not square")
    n = A.rows
    N = A.minus_identity()
    P = N
    for k in range(1, n + 1):
        if P.is_zero():
            return k
        P = P @ N
    # nilpotent n x n matrices satisfy N^n = 0
    return None


def has_maximal_degree(A) -> bool:
    return unipotent_degree(A) == as_zmatrix(A).rows


def sylvester_exponent(n: int, r: int) -> int:
    """det of the r-th exterior power equals det(A) to this power."""
    return comb(n - 1, r - 1) if r >= 1 else 0
