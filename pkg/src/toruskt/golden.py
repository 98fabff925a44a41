"""Reference values for the Anzai K-groups, as printed and in canonical form.

Printed presentations use ``Z^r`` for a free part, ``Z_k`` for a cyclic
group, and ``Z_k^(m)`` for m copies of it, joined by ``+``.
"""

from __future__ import annotations

import re

from toruskt.exactmat import FGAbelianGroup

# n: (K0 as printed, K1 as printed, rank)
TABLE_PRINTED = {
    1: ("Z^2", "Z^2", 2),
    2: ("Z^3", "Z^3", 3),
    3: ("Z^4", "Z^4", 4),
    4: ("Z^6", "Z^6", 6),
    5: ("Z^8", "Z^8", 8),
    6: ("Z^13", "Z^13 + Z_2", 13),
    7: ("Z^20", "Z^20", 20),
    8: ("Z^32 + Z_8^(2)", "Z^32 + Z_18^(2)", 32),
    9: ("Z^52 + Z_3^(2) + Z_9^(2)", "Z^52 + Z_3^(2) + Z_9^(2)", 52),
    10: ("Z^90 + Z_55^(4)", "Z^90 + Z_11^(2) + Z_99 + Z_198 + Z_2574", 90),
    11: ("Z^152 + Z_11^(12) + Z_143^(4) + Z_286^(2)",
         "Z^152 + Z_11^(12) + Z_143^(4) + Z_286^(2)", 152),
}

RANKS = {n: row[2] for n, row in TABLE_PRINTED.items()}

# the torsion in K1 for n = 6 comes from this single block
COUNTEREXAMPLE_BLOCK = (6, 3, "Z^3 + Z_2")

# size-3 worked example: every kernel and cokernel of W_r - I is Z
SIZE3_BLOCKS = {r: ("Z", "Z") for r in range(4)}

_TERM = re.compile(r"^Z(?:\^(\d+)|_(\d+)(?:\^\((\d+)\))?)?$")


def parse_group(text: str) -> FGAbelianGroup:
    """Canonical group from a printed direct sum such as 'Z^3 + Z_2^(2)'."""
    free, cyclic = 0, []
    text = text.strip()
    if text == "0":
        return FGAbelianGroup()
    for term in text.split("+"):
        m = _TERM.match(term.strip())
        if not m:
            raise ValueError(f"cannot parse summand {term.strip()!r}")
        power, order, copies = m.groups()
        if order is None:
            free += int(power) if power else 1
        else:
            cyclic += [int(order)] * (int(copies) if copies else 1)
    return FGAbelianGroup.from_summands(free, cyclic)


def table_canonical() -> dict[int, tuple[FGAbelianGroup, FGAbelianGroup, int]]:
    return {n: (parse_group(k0), parse_group(k1), a) for n, (k0, k1, a) in TABLE_PRINTED.items()}
