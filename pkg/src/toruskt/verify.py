"""Seeded property sweeps shared by the CLI and the test suite."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from toruskt.combinatorics import (
    check_binom_identity,
    check_delta_identity,
    rank_by_genfun,
)
from toruskt.exactmat import FGAbelianGroup, ZMatrix, cokernel, cokernel_oracle
from toruskt.groups import (
    abelianization,
    commutator,
    commutator_closed_form,
    dn_presentation,
    embed,
    embed_gamma_exponents,
    gamma_presentation,
)
from toruskt.ktheory import duality_check, kgroups_of_anzai, pv_kgroups, rank_kgroups

DEFAULT_SEED = 20240607


@dataclass
class Check:
    name: str
    passed: bool
    cases: int
    failures: list = field(default_factory=list)
    seed: int | None = None

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "cases": self.cases,
                "failures": [str(f) for f in self.failures[:5]], "seed": self.seed}


# random inputs ---------------------------------------------------------------


def random_sl(rng: random.Random, n: int, steps: int | None = None, spread: int = 2) -> ZMatrix:
    """Determinant-one matrix built from random elementary row operations."""
    rows = ZMatrix.identity(n).to_lists()
    if n == 1:
        return ZMatrix(1, 1, rows)
    for _ in range(steps if steps is not None else 3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([x for x in range(-spread, spread + 1) if x])
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return ZMatrix(n, n, rows)


def random_unipotent_maximal(rng: random.Random, n: int, spread: int = 5) -> ZMatrix:
    """Upper unitriangular, nonzero superdiagonal, other entries in [-spread, spread]."""
    rows = ZMatrix.identity(n).to_lists()
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1:
                rows[i][j] = rng.choice([x for x in range(-spread, spread + 1) if x])
            else:
                rows[i][j] = rng.randint(-spread, spread)
    return ZMatrix(n, n, rows)


def random_oracle_matrix(rng: random.Random, max_det: int = 200, spread: int = 10) -> ZMatrix:
    """2x2 or 3x3 matrix with 1 <= |det| <= max_det."""
    while True:
        n = rng.choice([2, 3])
        A = ZMatrix(n, n, [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)])
        if 1 <= abs(A.det()) <= max_det:
            return A


# suites ----------------------------------------------------------------------


def check_identities() -> list[Check]:
    bad, cases = [], 0
    for m in range(-10, 11):
        for k in range(-10, 11):
            for q in range(1, 9):
                cases += 1
                if not check_binom_identity(m, k, q):
                    bad.append((m, k, q))
    out = [Check("binomial identity", not bad, cases, bad)]
    bad, cases = [], 0
    for m in range(2, 11):
        for q in range(1, 11):
            for s in range(1, m):
                cases += 1
                if not check_delta_identity(m, q, s):
                    bad.append((m, q, s))
    out.append(Check("delta identity", not bad, cases, bad))
    return out


def check_duality(seed: int = DEFAULT_SEED, count: int = 100, max_n: int = 5) -> list[Check]:
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        A = random_sl(rng, rng.randint(1, max_n))
        if not duality_check(A):
            bad.append(A)
    return [Check("cokernel duality r <-> n-r", not bad, count, bad, seed)]


def check_oracle(seed: int = DEFAULT_SEED, count: int = 1000) -> list[Check]:
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        A = random_oracle_matrix(rng)
        if cokernel(A) != cokernel_oracle(A):
            bad.append(A)
    return [Check("cokernel vs enumeration oracle", not bad, count, bad, seed)]


def check_unipotent_rank(seed: int = DEFAULT_SEED, count: int = 200, max_n: int = 8) -> list[Check]:
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        A = random_unipotent_maximal(rng, n)
        if rank_kgroups(A) != rank_by_genfun(n):
            bad.append(A)
    return [Check("maximal-degree unipotent rank equals a_n", not bad, count, bad, seed)]


def check_odd_symmetry(seed: int = DEFAULT_SEED, count: int = 50, max_anzai: int = 11) -> list[Check]:
    odd = range(1, max_anzai + 1, 2)
    bad = []
    for n in odd:
        K = kgroups_of_anzai(n)
        if K.k0 != K.k1:
            bad.append(n)
    out = [Check("K0 == K1 for odd Anzai", not bad, len(odd), bad)]
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        A = random_sl(rng, rng.choice([1, 3, 5]))
        K = pv_kgroups(A)
        if K.k0 != K.k1:
            bad.append(A)
    out.append(Check("K0 == K1 for random odd det-1", not bad, count, bad, seed))
    return out


def check_group_layer(max_n: int = 8, seed: int = DEFAULT_SEED) -> list[Check]:
    out = []
    bad, cases = [], 0
    for n in range(1, max_n + 1):
        D = dn_presentation(n)
        x = D.shift_generator()
        y = [D.lattice_generator(j) for j in range(n + 1)]
        cases += 1
        if commutator(x, y[0]) != D.identity():
            bad.append((n, "x y0"))
        for j in range(1, n + 1):
            cases += 1
            if commutator(x, y[j]) != y[j - 1]:
                bad.append((n, f"x y{j}"))
        for i in range(n + 1):
            for j in range(n + 1):
                cases += 1
                if commutator(y[i], y[j]) != D.identity():
                    bad.append((n, f"y{i} y{j}"))
    out.append(Check("D_n commutator relations", not bad, cases, bad))

    bad = [n for n in range(1, max_n + 1) if abelianization(dn_presentation(n)) != FGAbelianGroup(2)]
    out.append(Check("abelianization of D_n is Z^2", not bad, max_n, bad))

    rng = random.Random(seed)
    bad, cases = [], 0
    for n in range(2, min(max_n, 6) + 1):
        for _ in range(5):
            b = {}
            for i in range(1, n):
                for j in range(i + 1, n + 1):
                    b[(i, j)] = (rng.choice([-3, -2, -1, 1, 2, 3]) if j == i + 1
                                 else rng.randint(-3, 3))
            C = embed_gamma_exponents(b, n)
            G, D = gamma_presentation(b, n), dn_presentation(n)
            gens = G.generators()
            for g in gens:
                for h in gens:
                    cases += 1
                    lhs = embed(commutator(g, h), C, D)
                    rhs = commutator(embed(g, C, D), embed(h, C, D))
                    if lhs != rhs or commutator(g, h) != commutator_closed_form(g, h):
                        bad.append((b, g, h))
    out.append(Check("embedding preserves commutators", not bad, cases, bad, seed))
    return out


SUITES = {
    "identities": lambda seed: check_identities(),
    "duality": lambda seed: check_duality(seed),
    "oracle": lambda seed: check_oracle(seed),
    "unipotent": lambda seed: check_unipotent_rank(seed),
    "symmetry": lambda seed: check_odd_symmetry(seed),
    "groups": lambda seed: check_group_layer(seed=seed),
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> list[Check]:
    if name == "all":
        return [c for key in SUITES for c in SUITES[key](seed)]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](seed)

