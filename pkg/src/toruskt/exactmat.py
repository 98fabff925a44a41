"""Exact integer matrices, Smith normal form, and finitely generated abelian groups."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from toruskt import kernels
from toruskt._kernel_py import nearest_quotient

_I64 = 2**63


class ZMatrix:
    """Immutable dense matrix of Python integers."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data):
        data = tuple(tuple(int(x) for x in row) for row in data)
        if len(data) != rows or any(len(row) != cols for row in data):
            raise ValueError(f"data does not have shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._data = data

    # construction

    @classmethod
    def from_rows(cls, rows) -> "ZMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def identity(cls, n: int) -> "ZMatrix":
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ZMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, ZMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        return f"ZMatrix({self.rows}, {self.cols}, {[list(r) for r in self._data]})"

    # arithmetic

    def _check_same(self, other: "ZMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ZMatrix") -> "ZMatrix":
        self._check_same(other)
        return ZMatrix(self.rows, self.cols,
                       [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other: "ZMatrix") -> "ZMatrix":
        self._check_same(other)
        return ZMatrix(self.rows, self.cols,
                       [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self) -> "ZMatrix":
        return ZMatrix(self.rows, self.cols, [[-a for a in r] for r in self._data])

    def scale(self, c: int) -> "ZMatrix":
        return ZMatrix(self.rows, self.cols, [[c * a for a in r] for r in self._data])

    def __matmul__(self, other: "ZMatrix") -> "ZMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols_b = [other.col(j) for j in range(other.cols)]
        out = []
        for r in self._data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum(a * c[k] for k, a in nz) for c in cols_b])
        return ZMatrix(self.rows, other.cols, out)

    def apply(self, v) -> tuple[int, ...]:
        """Matrix times a column vector."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * x for a, x in zip(r, v)) for r in self._data)

    def transpose(self) -> "ZMatrix":
        return ZMatrix(self.cols, self.rows, [list(c) for c in zip(*self._data)] if self.rows else [[] for _ in range(self.cols)])

    @property
    def T(self) -> "ZMatrix":
        return self.transpose()

    def minus_identity(self) -> "ZMatrix":
        if not self.is_square:
            raise ValueError("matrix is not square")
        return ZMatrix(self.rows, self.cols,
                       [[a - (i == j) for j, a in enumerate(r)] for i, r in enumerate(self._data)])

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        m = self.to_lists()
        n = self.rows
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1] if n else 1

    def rank(self) -> int:
        """Rank over Q, by fraction-free elimination."""
        m = self.to_lists()
        rank, prev = 0, 1
        for c in range(self.cols):
            piv = next((i for i in range(rank, self.rows) if m[i][c]), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            p = m[rank][c]
            for i in range(rank + 1, self.rows):
                a = m[i][c]
                m[i] = [(x * p - a * y) // prev for x, y in zip(m[i], m[rank])]
            prev = p
            rank += 1
            if rank == self.rows:
                break
        return rank

    def inverse(self) -> "ZMatrix":
        """Inverse of a unimodular matrix."""
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
             for i, r in enumerate(self._data)]
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c]), None)
            if piv is None:
                raise ValueError("matrix is singular")
            m[c], m[piv] = m[piv], m[c]
            p = m[c][c]
            m[c] = [x / p for x in m[c]]
            for i in range(n):
                if i != c and m[i][c]:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        out = [r[n:] for r in m]
        if any(x.denominator != 1 for r in out for x in r):
            raise ValueError("matrix is not invertible over the integers")
        return ZMatrix(n, n, [[int(x) for x in r] for r in out])

    def __pow__(self, k: int) -> "ZMatrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = ZMatrix.identity(self.rows)
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return all(a == 0 for r in self._data for a in r)

    # serialization

    def to_json_obj(self) -> dict:
        def enc(x):
            return str(x) if not -_I64 <= x < _I64 else x
        return {"rows": self.rows, "cols": self.cols,
                "data": [[enc(x) for x in r] for r in self._data]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "ZMatrix":
        try:
            rows, cols, data = obj["rows"], obj["cols"], obj["data"]
        except (KeyError, TypeError) as exc:
            raise ValueError("matrix JSON needs rows, cols and data") from exc
        if any(isinstance(x, (float, bool)) for r in data for x in r):
            raise ValueError("matrix entries must be integers")
        return cls(int(rows), int(cols), [[int(x) for x in r] for r in data])

    @classmethod
    def from_json(cls, text: str) -> "ZMatrix":
        return cls.from_json_obj(json.loads(text))


def as_zmatrix(a) -> ZMatrix:
    return a if isinstance(a, ZMatrix) else ZMatrix.from_rows(a)


# Smith normal form ----------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    U: ZMatrix
    S: ZMatrix
    V: ZMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i, i] for i in range(min(self.S.rows, self.S.cols))]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def snf(A) -> SmithForm:
    """Smith normal form with transforms: U·A·V == S.

    Dense and meant for moderate sizes; large blocks only need
    ``smith_diagonal``.
    """
    A = as_zmatrix(A)
    m, n = A.shape
    S = A.to_lists()
    U = ZMatrix.identity(m).to_lists()
    V = ZMatrix.identity(n).to_lists()

    def row_op(k, i, q):  # row_k -= q row_i
        S[k] = [a - q * b for a, b in zip(S[k], S[i])]
        U[k] = [a - q * b for a, b in zip(U[k], U[i])]

    def col_op(k, j, q):  # col_k -= q col_j
        for r in S:
            r[k] -= q * r[j]
        for r in V:
            r[k] -= q * r[j]

    def swap_rows(i, k):
        S[i], S[k] = S[k], S[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in S:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    t = 0
    while t < min(m, n):
        cand = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not cand:
            break
        _, i, j = min(cand)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = S[t][t]
            for k in range(t + 1, m):
                if S[k][t]:
                    row_op(k, t, nearest_quotient(S[k][t], p))
            for k in range(t + 1, n):
                if S[t][k]:
                    col_op(k, t, nearest_quotient(S[t][k], p))
            rest = [(abs(S[k][t]), k, t) for k in range(t + 1, m) if S[k][t]]
            rest += [(abs(S[t][k]), t, k) for k in range(t + 1, n) if S[t][k]]
            if not rest:
                break
            _, i, j = min(rest)
            swap_rows(t, i)
            swap_cols(t, j)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
        t += 1

    # enforce divisibility on the diagonal with 2x2 unimodular fixes
    k = t
    for i in range(k):
        for j in range(i + 1, k):
            a, b = S[i][i], S[j][j]
            if b % a == 0:
                continue
            g, x, y = _xgcd(a, b)
            ri, rj = U[i], U[j]
            U[i] = [x * u + y * w for u, w in zip(ri, rj)]
            U[j] = [-(b // g) * u + (a // g) * w for u, w in zip(ri, rj)]
            for r in V:
                vi, vj = r[i], r[j]
                r[i] = vi + vj
                r[j] = -y * (b // g) * vi + x * (a // g) * vj
            S[i][i], S[j][j] = g, a * b // g
    return SmithForm(ZMatrix(m, m, U), ZMatrix(m, n, S), ZMatrix(n, n, V))


def invariant_chain(values) -> list[int]:
    """Turn a multiset of positive diagonal entries into a divisibility chain.

    Works by repeated (gcd, lcm) replacement; entries equal to 1 are dropped.
    """
    vals = sorted(v for v in (abs(int(x)) for x in values) if v > 1)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            a, b = vals[i], vals[j]
            g = gcd(a, b)
            vals[i], vals[j] = g, a // g * b
    return [v for v in vals if v > 1]


def smith_diagonal(A, budget: int | None = None, backend: str | None = None) -> list[int]:
    """Invariant factors of A (ones included), zeros trailing, length min(rows, cols)."""
    A = as_zmatrix(A)
    pivots, _ = kernels.diagonal_entries(A.to_lists(), budget, backend)
    chain = invariant_chain(pivots)
    ones = sum(1 for p in pivots if p) - len(chain)
    nonzero = [1] * ones + chain
    return nonzero + [0] * (min(A.rows, A.cols) - len(nonzero))


# abelian groups ------------------------------------------------------------


@dataclass(frozen=True)
class FGAbelianGroup:
    """Z^free_rank plus the cyclic groups listed in ``torsion`` (a divisibility chain)."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d < 2 for d in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not an invariant-factor chain")

    @classmethod
    def from_summands(cls, free_rank: int = 0, cyclic=()) -> "FGAbelianGroup":
        """Canonical form of Z^free_rank plus arbitrary finite cyclic summands."""
        return cls(free_rank, tuple(invariant_chain(cyclic)))

    @property
    def order_of_torsion(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_dict(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, d) -> "FGAbelianGroup":
        return cls(int(d["rank"]), tuple(d.get("torsion", ())))

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        i = 0
        while i < len(self.torsion):
            d = self.torsion[i]
            j = i
            while j < len(self.torsion) and self.torsion[j] == d:
                j += 1
            parts.append(f"Z_{d}" if j - i == 1 else f"Z_{d}^({j - i})")
            i = j
        return " + ".join(parts) if parts else "0"


def direct_sum(groups) -> FGAbelianGroup:
    groups = list(groups)
    rank = sum(g.free_rank for g in groups)
    cyclic = [d for g in groups for d in g.torsion]
    return FGAbelianGroup.from_summands(rank, cyclic)


def groups_isomorphic(g: FGAbelianGroup, h: FGAbelianGroup) -> bool:
    # re-canonicalize so hand-built values compare safely too
    return direct_sum([g]) == direct_sum([h])


def cokernel(A, budget: int | None = None, backend: str | None = None) -> FGAbelianGroup:
    """Z^rows modulo the span of the columns of A."""
    A = as_zmatrix(A)
    diag = smith_diagonal(A, budget, backend)
    nonzero = sum(1 for d in diag if d)
    return FGAbelianGroup(A.rows - nonzero, tuple(d for d in diag if d > 1))


def kernel(A, budget: int | None = None, backend: str | None = None) -> FGAbelianGroup:
    """Kernel of A acting on Z^cols; always free."""
    A = as_zmatrix(A)
    diag = smith_diagonal(A, budget, backend)
    return FGAbelianGroup(A.cols - sum(1 for d in diag if d))


def kernel_basis(A) -> list[tuple[int, ...]]:
    """A Z-basis of {x : A x = 0}, read off the column transform of the SNF."""
    A = as_zmatrix(A)
    sf = snf(A)
    r = sum(1 for d in sf.diagonal if d)
    return [sf.V.col(j) for j in range(r, A.cols)]


# brute-force oracle ----------------------------------------------------------


def _adjugate(A: ZMatrix) -> ZMatrix:
    n = A.rows
    if n == 1:
        return ZMatrix.identity(1)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = ZMatrix.from_rows(
                [[A[r, c] for c in range(n) if c != j] for r in range(n) if r != i])
            out[j][i] = (-1) ** (i + j) * minor.det()
    return ZMatrix(n, n, out)


def _prime_factors(d: int) -> list[int]:
    out, p = [], 2
    while p * p <= d:
        if d % p == 0:
            out.append(p)
            while d % p == 0:
                d //= p
        p += 1
    if d > 1:
        out.append(d)
    return out


def cokernel_oracle(A) -> FGAbelianGroup:
    """Z^n / A Z^n by explicit enumeration, for n <= 3 and 0 < |det A| <= 200.

    x -> adj(A) x (mod d) has kernel exactly A Z^n, so the cokernel is the
    subgroup of (Z/d)^n generated by the columns of adj(A). That subgroup is
    enumerated breadth-first and its invariant factors are read off from how
    many elements each prime power kills.
    """
    A = as_zmatrix(A)
    if not A.is_square or A.rows > 3 or A.rows == 0:
        raise ValueError("oracle accepts square matrices of size 1..3 only")
    det = A.det()
    d = abs(det)
    if d == 0 or d > 200:
        raise ValueError("oracle needs 0 < |det| <= 200")
    n = A.rows
    adj = _adjugate(A)
    gens = [tuple(x % d for x in adj.col(j)) for j in range(n)]
    zero = (0,) * n
    seen = {zero}
    queue = deque([zero])
    while queue:
        v = queue.popleft()
        for g in gens:
            w = tuple((a + b) % d for a, b in zip(v, g))
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != d:
        raise AssertionError("enumerated group has the wrong order")

    def killed_by(m: int) -> int:
        return sum(1 for v in seen if all((m * x) % d == 0 for x in v))

    factors = [1] * n
    for p in _prime_factors(d):
        counts = [1]
        k = 1
        while True:
            c = killed_by(p**k)
            if c == counts[-1]:
                break
            counts.append(c)
            k += 1
        # at_least[k-1] = number of cyclic factors with p-exponent >= k
        at_least = []
        for k in range(1, len(counts)):
            ratio, e = counts[k] // counts[k - 1], 0
            while ratio > 1:
                ratio //= p
                e += 1
            at_least.append(e)
        for slot in range(n):
            e = sum(1 for c in at_least if c > slot)
            factors[n - 1 - slot] *= p**e
    return FGAbelianGroup(0, tuple(f for f in factors if f > 1))
