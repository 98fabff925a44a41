"""Extended binomials, distinct-part partition counts and the rank formulas."""

from __future__ import annotations

from decimal import Decimal, localcontext
from math import factorial


def extbinom(k: int, r: int) -> int:
    """Binomial coefficient extended to all integers k, r.

    Falling factorial k(k-1)...(k-r+1)/r! when 0 <= r < k or when k < 0 < r;
    1 when r == (k + |k|)/2 (so r == k for k >= 0, r == 0 for k < 0);
    0 otherwise.
    """
    if 0 <= r < k or (k < 0 < r):
        num = 1
        for i in range(r):
            num *= k - i
        return num // factorial(r)
    if 2 * r == k + abs(k):
        return 1
    return 0


def partition_count(n: int, r: int, k: int) -> int:
    """Number of ways to write k as a sum of r distinct integers in 1..n."""
    if r < 0 or k < 0 or n < 0:
        return 0
    if r == 0:
        return int(k == 0)
    if r > n or k < r * (r + 1) // 2 or k > r * (2 * n - r + 1) // 2:
        return 0
    # table[j][s]: ways to pick j distinct parts from those seen so far with sum s
    table = [[0] * (k + 1) for _ in range(r + 1)]
    table[0][0] = 1
    for part in range(1, n + 1):
        for j in range(min(part, r), 0, -1):
            prev, cur = table[j - 1], table[j]
            for s in range(k, part - 1, -1):
                if prev[s - part]:
                    cur[s] += prev[s - part]
    return table[r][k]


def a_nr(n: int, r: int) -> int:
    """Rank contributed by the r-th exterior block for the Anzai matrix of size n."""
    if not 0 <= r <= n:
        raise ValueError(f"r={r} out of range for n={n}")
    return partition_count(n, r, r * (n + 1) // 2)


def rank_by_partitions(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return sum(a_nr(n, r) for r in range(n + 1))


class LaurentPoly:
    """Sparse polynomial with integer coefficients and possibly negative exponents.

    Exponents are ints, or tuples of ints for several variables (added
    componentwise). Zero coefficients are never stored.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        self._c = {e: int(v) for e, v in dict(coeffs or {}).items() if v}

    @classmethod
    def monomial(cls, exp, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    def __getitem__(self, exp) -> int:
        return self._c.get(exp, 0)

    def items(self):
        return sorted(self._c.items())

    def __len__(self):
        return len(self._c)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return LaurentPoly(out)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + v1 * v2
        return LaurentPoly(out)

    def constant_term(self) -> int:
        for e, v in self._c.items():
            if e == 0 or (isinstance(e, tuple) and not any(e)):
                return v
        return 0

    def __repr__(self):
        return f"LaurentPoly({dict(self.items())})"


def _add_exp(a, b):
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


def _binomial_factor(e) -> LaurentPoly:
    # 1 + x^e, which is the constant 2 when e == 0
    return LaurentPoly({0: 1}) + LaurentPoly({e: 1})


def _genfun_product(n: int) -> LaurentPoly:
    # substitute t = z^2 so every exponent is an integer
    poly = LaurentPoly({0: 1})
    for i in range(1, n + 1):
        poly = poly * _binomial_factor(2 * i - (n + 1))
    if n % 2 == 0:
        poly = poly * _binomial_factor(1)
    return poly


def rank_by_genfun(n: int) -> int:
    """Constant term of the product generating function for the rank."""
    if n < 1:
        raise ValueError("n must be positive")
    return _genfun_product(n).constant_term()


def genfun_coeffs(n: int) -> LaurentPoly:
    """Expansion of prod_{i=1..n} (1 + u t^i), keyed by exponent pairs (r, k)."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = LaurentPoly({(0, 0): 1})
    for i in range(1, n + 1):
        poly = poly * LaurentPoly({(0, 0): 1, (1, i): 1})
    return poly


def _decimal_pi() -> Decimal:
    # series from the decimal module documentation
    with localcontext() as ctx:
        ctx.prec += 2
        three = Decimal(3)
        lasts, t, s, n, na, d, da = 0, three, 3, 1, 0, 0, 24
        while s != lasts:
            lasts = s
            n, na = n + na, na + 8
            d, da = d + da, da + 32
            t = (t * n) / d
            s += t
    return +s


def asymptotic_constant(digits: int = 30) -> str:
    """sqrt(24/pi) as a decimal string."""
    with localcontext() as ctx:
        ctx.prec = digits + 10
        val = (Decimal(24) / _decimal_pi()).sqrt()
        return str(val.quantize(Decimal(1).scaleb(-digits)))


def asymptotic_ratio(n: int, digits: int = 30) -> str:
    """a_n * n^(3/2) / 2^n as a decimal string with ``digits`` places."""
    a = rank_by_genfun(n)
    with localcontext() as ctx:
        ctx.prec = digits + 20 + len(str(a))
        val = Decimal(a) * Decimal(n) * Decimal(n).sqrt() / Decimal(2) ** n
        return str(val.quantize(Decimal(1).scaleb(-digits)))


def binom_identity_sides(m: int, k: int, q: int) -> tuple[int, int]:
    lhs = extbinom(m - q, k)
    rhs = sum((-1) ** j * extbinom(m - j, k - j) * extbinom(q, j) for j in range(q + 1))
    return lhs, rhs


def check_binom_identity(m: int, k: int, q: int) -> bool:
    """extbinom(m-q, k) == sum_j (-1)^j extbinom(m-j, k-j) extbinom(q, j)."""
    if q < 1:
        raise ValueError("q must be positive")
    lhs, rhs = binom_identity_sides(m, k, q)
    return lhs == rhs


def delta_sum(m: int, q: int, s: int) -> int:
    return sum((-1) ** (m - r) * extbinom(q + m - r - 2, m - r) * extbinom(q, r - s)
               for r in range(1, m + 1))


def check_delta_identity(m: int, q: int, s: int) -> bool:
    """The alternating sum over r equals 1 when s == m-1 and 0 otherwise."""
    if q < 1 or not 1 <= s <= m - 1:
        raise ValueError("need q >= 1 and 1 <= s <= m-1")
    return delta_sum(m, q, s) == int(s == m - 1)
