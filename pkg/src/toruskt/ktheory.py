"""K-groups of C(T^n) x| Z from the linear part of the homeomorphism.

The Pimsner-Voiculescu sequence splits into short exact sequences, giving

    K0 = sum over even r of coker(W_r - I)  +  sum over odd r of ker(W_r - I)
    K1 = sum over odd r of coker(W_r - I)   +  sum over even r of ker(W_r - I)

where W_r is the r-th exterior power of the matrix.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from toruskt.exactmat import FGAbelianGroup, ZMatrix, as_zmatrix, direct_sum, smith_diagonal
from toruskt.exterior import anzai_matrix, wedge_powers
from toruskt.kernels import BudgetExhausted


@dataclass(frozen=True)
class BlockResult:
    r: int
    coker: FGAbelianGroup
    ker: FGAbelianGroup
    seconds: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        return {"r": self.r, "coker": self.coker.to_dict(), "ker": self.ker.to_dict()}


@dataclass(frozen=True)
class KGroups:
    n: int
    k0: FGAbelianGroup
    k1: FGAbelianGroup
    per_block: tuple[BlockResult, ...]

    @property
    def rank(self) -> int:
        return self.k0.free_rank

    def to_dict(self) -> dict:
        return {"n": self.n, "K0": self.k0.to_dict(), "K1": self.k1.to_dict(),
                "blocks": [b.to_dict() for b in self.per_block]}


class BudgetExceeded(Exception):
    """A block needed more elimination work than allowed.

    ``block`` is the exterior degree that ran out; ``completed`` holds the
    blocks finished before it.
    """

    def __init__(self, n: int, block: int, completed, work: int):
        super().__init__(f"budget exceeded in block r={block} (n={n})")
        self.n = n
        self.block = block
        self.completed = tuple(completed)
        self.work = work


def assemble(n: int, blocks) -> KGroups:
    """Fold per-block kernels and cokernels into K0 and K1 by parity."""
    blocks = tuple(blocks)
    even = [b for b in blocks if b.r % 2 == 0]
    odd = [b for b in blocks if b.r % 2 == 1]
    k0 = direct_sum([b.coker for b in even] + [b.ker for b in odd])
    k1 = direct_sum([b.coker for b in odd] + [b.ker for b in even])
    return KGroups(n, k0, k1, blocks)


def _check_unimodular(A: ZMatrix):
    if not A.is_square:
        raise ValueError("matrix is not square")
    if abs(A.det()) != 1:
        raise ValueError("matrix is not in GL(n, Z)")


def block_groups(W: ZMatrix, r: int, budget=None, backend=None, n: int = 0, done=()) -> BlockResult:
    B = W.minus_identity()
    t0 = time.perf_counter()
    try:
        diag = smith_diagonal(B, budget, backend)
    except BudgetExhausted as exc:
        raise BudgetExceeded(n, r, done, exc.work) from None
    nonzero = sum(1 for d in diag if d)
    coker = FGAbelianGroup(B.rows - nonzero, tuple(d for d in diag if d > 1))
    # subgroups of a free group are free
    ker = FGAbelianGroup(B.cols - nonzero)
    return BlockResult(r, coker, ker, time.perf_counter() - t0)


def pv_kgroups(A, budget: int | None = None, backend: str | None = None) -> KGroups:
    """K0 and K1 of the crossed product for A in GL(n, Z).

    ``budget`` caps the elimination work (entry updates) per block.
    """
    A = as_zmatrix(A)
    _check_unimodular(A)
    n = A.rows
    blocks: list[BlockResult] = []
    for r, W in enumerate(wedge_powers(A)):
        blocks.append(block_groups(W, r, budget, backend, n, blocks))
    return assemble(n, blocks)


def kgroups_of_anzai(n: int, budget: int | None = None, backend: str | None = None) -> KGroups:
    return pv_kgroups(anzai_matrix(n), budget, backend)


def kgroups_of_group_algebra_Dn(n: int, budget: int | None = None, backend: str | None = None) -> KGroups:
    """K-groups of the group C*-algebra of D_n, which match the Anzai case in dimension n+1."""
    if n < 1:
        raise ValueError("n must be positive")
    return kgroups_of_anzai(n + 1, budget, backend)


def block_cokernels(A, budget=None, backend=None) -> list[FGAbelianGroup]:
    return [b.coker for b in pv_kgroups(A, budget, backend).per_block]


def duality_check(A, budget: int | None = None) -> bool:
    """coker(W_r - I) matches coker(W_{n-r} - I) for every r (needs det A == 1)."""
    A = as_zmatrix(A)
    if not A.is_square or A.det() != 1:
        raise ValueError("duality needs a square matrix with determinant 1")
    cok = block_cokernels(A, budget)
    n = A.rows
    return all(cok[r] == cok[n - r] for r in range(n + 1))


def rank_kgroups(A, budget: int | None = None) -> int:
    """Common rank of K0 and K1: the sum of the block kernel ranks."""
    A = as_zmatrix(A)
    _check_unimodular(A)
    total = 0
    for r, W in enumerate(wedge_powers(A)):
        try:
            diag = smith_diagonal(W.minus_identity(), budget)
        except BudgetExhausted as exc:
            raise BudgetExceeded(A.rows, r, (), exc.work) from None
        total += W.cols - sum(1 for d in diag if d)
    return total
