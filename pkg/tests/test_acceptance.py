"""The twelve acceptance criteria, one test each.

Every test records a line "criterion N: PASS|FAIL  detail"; the lines are
printed in the pytest terminal summary, and running this file directly
prints them without pytest.
"""

import io
import json
import random
import time
from decimal import Decimal

import pytest

from toruskt.cli import main as cli_main
from toruskt.combinatorics import (
    asymptotic_constant,
    asymptotic_ratio,
    check_binom_identity,
    check_delta_identity,
    rank_by_genfun,
    rank_by_partitions,
)
from toruskt.exactmat import FGAbelianGroup, cokernel, cokernel_oracle
from toruskt.exterior import anzai_matrix, wedge_power
from toruskt.golden import COUNTEREXAMPLE_BLOCK, RANKS, SIZE3_BLOCKS, parse_group
from toruskt.groups import embed_gamma_exponents
from toruskt.ktheory import duality_check, kgroups_of_anzai, pv_kgroups, rank_kgroups
from toruskt.verify import (
    DEFAULT_SEED,
    check_group_layer,
    random_oracle_matrix,
    random_sl,
    random_unipotent_maximal,
)

RESULTS: dict[int, tuple[bool, str]] = {}


def _record(n: int, ok: bool, detail: str) -> bool:
    RESULTS[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


def criterion_1():
    out = io.StringIO()
    t0 = time.perf_counter()
    code = cli_main(["table", "--max-n", "11", "--format", "json"], out=out)
    secs = time.perf_counter() - t0
    rows = json.loads(out.getvalue())["results"]
    bad = [r["n"] for r in rows if not r.get("matches_golden")]
    ok = code == 0 and len(rows) == 11 and not bad
    return _record(1, ok, f"table n=1..11 vs golden, mismatches={bad}, {secs:.1f}s")


def criterion_2():
    n, r, text = COUNTEREXAMPLE_BLOCK
    block = cokernel(wedge_power(anzai_matrix(n), r).minus_identity())
    K = kgroups_of_anzai(n)
    ok = block == parse_group(text) == FGAbelianGroup(3, (2,)) and K.k1.torsion == (2,)
    # the Z_2 must come from that block alone
    others = [b.r for b in K.per_block if b.r != r and (b.coker.torsion or b.ker.torsion)]
    ok = ok and not others
    return _record(2, ok, f"coker(W_3 - I) for n=6 is {block}; K1 = {K.k1}")


def criterion_3():
    K = kgroups_of_anzai(3)
    got = {b.r: (str(b.coker), str(b.ker)) for b in K.per_block}
    ok = got == SIZE3_BLOCKS and K.k0 == K.k1 == FGAbelianGroup(4)
    return _record(3, ok, f"blocks {got}; K0={K.k0}, K1={K.k1}")


def criterion_4():
    bad = []
    for n in range(1, 13):
        snf_rank = rank_kgroups(anzai_matrix(n))
        vals = (snf_rank, rank_by_partitions(n), rank_by_genfun(n))
        if len(set(vals)) != 1 or (n in RANKS and vals[0] != RANKS[n]):
            bad.append((n, vals))
    return _record(4, not bad, f"three routes agree for n=1..12 and match printed a_n; bad={bad}")


def criterion_5():
    rng = random.Random(DEFAULT_SEED)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(200):
        n = rng.randint(1, 8)
        A = random_unipotent_maximal(rng, n, spread=5)
        if rank_kgroups(A) != rank_by_genfun(n):
            bad += 1
    secs = time.perf_counter() - t0
    return _record(5, bad == 0 and secs < 60, f"200 matrices, failures={bad}, {secs:.1f}s")


def criterion_6():
    rng = random.Random(DEFAULT_SEED)
    bad = sum(1 for _ in range(100) if not duality_check(random_sl(rng, rng.randint(1, 5))))
    return _record(6, bad == 0, f"100 det-1 matrices n<=5, failures={bad}")


def criterion_7():
    odd_bad = []
    for n in range(1, 12, 2):
        K = kgroups_of_anzai(n)
        if K.k0 != K.k1:
            odd_bad.append(n)
    rng = random.Random(DEFAULT_SEED)
    rand_bad = 0
    for _ in range(50):
        K = pv_kgroups(random_sl(rng, rng.choice([1, 3, 5])))
        rand_bad += K.k0 != K.k1
    ok = not odd_bad and rand_bad == 0
    return _record(7, ok, f"odd Anzai failures={odd_bad}, random odd failures={rand_bad}/50")


def criterion_8():
    b1 = [(m, k, q) for m in range(-10, 11) for k in range(-10, 11) for q in range(1, 9)
          if not check_binom_identity(m, k, q)]
    b2 = [(m, q, s) for m in range(2, 11) for q in range(1, 11) for s in range(1, m)
          if not check_delta_identity(m, q, s)]
    return _record(8, not b1 and not b2, f"binomial failures={len(b1)}, delta failures={len(b2)}")


def criterion_9():
    rng = random.Random(DEFAULT_SEED)
    bad = 0
    for _ in range(1000):
        A = random_oracle_matrix(rng)
        bad += cokernel(A) != cokernel_oracle(A)
    return _record(9, bad == 0, f"1000 matrices, disagreements={bad}")


def criterion_10():
    checks = check_group_layer(max_n=8)
    b12, b13, b23 = 3, -2, 5
    C = embed_gamma_exponents({(1, 2): b12, (1, 3): b13, (2, 3): b23}, 3)
    examples = C.col(2) == (0, 0, b12, 0) and C.col(3) == (0, 0, b13, b12 * b23)
    ok = examples and all(c.passed for c in checks)
    names = ", ".join(f"{c.name}={'ok' if c.passed else 'FAIL'}" for c in checks)
    return _record(10, ok, f"{names}, embedding examples={'ok' if examples else 'FAIL'}")


def criterion_11():
    ratios = {n: Decimal(asymptotic_ratio(n, 6)) for n in range(11, 41)}
    limit = Decimal(asymptotic_constant(6))
    drops = [n for n in range(12, 40) if not ratios[n + 1] > ratios[n]]
    below = all(ratios[n] < limit for n in range(12, 41))
    beats = ratios[40] > Decimal("2.708")
    ok = not drops and below and beats
    detail = (f"ratio drops after n={drops}; below {limit} on 12..40: {below}; "
              f"ratio(40)={ratios[40]} > 2.708: {beats}")
    return _record(11, ok, detail)


def criterion_12():
    a = [rank_by_genfun(n) for n in range(1, 42)]
    bad = [n for n in range(1, 41) if not a[n] > a[n - 1]]
    return _record(12, not bad, f"a_(n+1) > a_n for n=1..40, violations={bad}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]


@pytest.mark.parametrize("check", [c for c in CRITERIA if c is not criterion_11],
                         ids=lambda c: c.__name__)
def test_criterion(check):
    assert check()


@pytest.mark.xfail(strict=True, reason=(
    "the ratio a_n n^1.5 / 2^n is not monotone on 12..40: it falls at 12->13, 14->15 "
    "and 16->17 and only increases from n=17 on; the bound and the n=40 comparison hold"))
def test_criterion_11():
    assert criterion_11()


def test_criterion_11_weaker_trend():
    """What does hold: the ratio stays below the limit, rises from n=17 on, and ends above 2.708."""
    ratios = {n: Decimal(asymptotic_ratio(n, 6)) for n in range(12, 41)}
    limit = Decimal(asymptotic_constant(6))
    assert all(r < limit for r in ratios.values())
    assert all(ratios[n + 1] > ratios[n] for n in range(17, 40))
    assert ratios[40] > Decimal("2.708")
    assert [n for n in range(12, 40) if ratios[n + 1] <= ratios[n]] == [12, 14, 16]


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")
