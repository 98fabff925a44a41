"""Pure-Python elimination kernel used when the compiled core is unavailable.

The matrix is held sparsely (row dicts plus column index sets) so the large,
mostly-zero exterior-power blocks stay cheap. Entries are Python ints, so this
path never overflows.
"""

from __future__ import annotations


class BudgetExhausted(Exception):
    """Raised by a kernel when its work counter passes the budget."""

    def __init__(self, work: int):
        super().__init__(work)
        self.work = work


def nearest_quotient(a: int, p: int) -> int:
    # truncating quotient nudged toward the nearest integer; ties stay truncated
    q = abs(a) // abs(p)
    if (a < 0) != (p < 0):
        q = -q
    r = a - q * p
    if r and 2 * abs(r) > abs(p):
        q += 1 if (a < 0) == (p < 0) else -1
    return q


def diagonal_entries(rows: list[list[int]], budget: int | None = None) -> tuple[list[int], int]:
    """Diagonalize ``rows`` by unimodular row/column operations.

    Returns the absolute values of the pivots in elimination order (not yet a
    divisibility chain) and the number of entry updates performed. Pivots are
    chosen as the entry of least absolute value, ties broken by Markowitz cost
    and then row-major position.
    """
    sparse: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for i, row in enumerate(rows):
        d = {j: v for j, v in enumerate(row) if v}
        if d:
            sparse[i] = d
            for j in d:
                cols.setdefault(j, set()).add(i)

    work = 0
    limit = budget if budget is not None else -1

    def put(i: int, j: int, v: int) -> None:
        r = sparse[i]
        if v:
            if j not in r:
                cols.setdefault(j, set()).add(i)
            r[j] = v
        elif j in r:
            del r[j]
            cols[j].discard(i)

    def row_sub(k: int, i: int, q: int) -> None:
        nonlocal work
        rk = sparse[k]
        src = list(sparse[i].items())
        for j, v in src:
            put(k, j, rk.get(j, 0) - q * v)
        work += len(src)

    def col_sub(k: int, j: int, q: int) -> None:
        nonlocal work
        src = list(cols[j])
        for i in src:
            r = sparse[i]
            put(i, k, r.get(k, 0) - q * r[j])
        work += len(src)

    pivots: list[int] = []
    while sparse:
        best = None
        for i in sorted(sparse):
            r = sparse[i]
            lr = len(r) - 1
            for j in sorted(r):
                key = (abs(r[j]), lr * (len(cols[j]) - 1), i, j)
                if best is None or key < best:
                    best = key
                    if key[0] == 1 and key[1] == 0:
                        break
            if best[0] == 1 and best[1] == 0:
                break
        _, _, i, j = best

        while True:
            p = sparse[i][j]
            for k in sorted(cols[j]):
                if k != i:
                    row_sub(k, i, nearest_quotient(sparse[k][j], p))
            for k in sorted(sparse[i]):
                if k != j:
                    col_sub(k, j, nearest_quotient(sparse[i][k], p))
            if 0 <= limit < work:
                raise BudgetExhausted(work)
            if len(cols[j]) == 1 and len(sparse[i]) == 1:
                break
            # remainders are smaller than |p|: continue from the least of them
            cand = [(abs(sparse[k][j]), k, j) for k in cols[j] if k != i]
            cand += [(abs(sparse[i][k]), i, k) for k in sparse[i] if k != j]
            _, i, j = min(cand)

        pivots.append(abs(sparse[i][j]))
        cols[j].discard(i)
        del sparse[i]
        for k in [k for k, r in sparse.items() if not r]:
            del sparse[k]
    return pivots, work
