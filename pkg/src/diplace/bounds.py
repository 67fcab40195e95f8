"""Counting digraph classes and bounding F(4), F(5).

F(b) is the largest number of vertices needed to realise a value born by
day b, g(b) the number of values born by day b and a(b) the size of a largest
antichain among them.  Quantities too large to hold exactly are carried as
base-2 logarithms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

LOG_DIGITS = 60

# Cited inputs (not computed here): 2^94 < g(4) <= 4 * 10^184 and a(4) <= 10^184.
G4_LOWER_EXCLUSIVE = 2**94
G4_UPPER = 4 * 10**184
A4_UPPER = 10**184
F3 = 8

KNOWN_DN = (
    1,
    2,
    10,
    104,
    3044,
    291968,
    96928992,
    112282908928,
    458297100061728,
    6666621572153927936,
    349390545493499839161856,
    66603421985078180758538636288,
    46557456482586989066031126651104256,
    120168591267113007604119117625289606148096,
    1152050155760474157553893461743236772303142428672,
)


def _partitions(n: int, largest: int | None = None) -> Iterator[list[int]]:
    if largest is None:
        largest = n
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield [k] + rest


@lru_cache(maxsize=None)
def count_digraphs(n: int) -> int:
    """D(n): 2-coloured loopless digraphs on n unlabelled vertices.

    Burnside over cycle types: a permutation with cycle lengths l_1..l_r has
    sum gcd(l_i, l_j) orbits on the n^2 ordered pairs (diagonal included,
    which carries the colour), and there are n!/z(lambda) such permutations.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    total = 0
    n_fact = math.factorial(n)
    for part in _partitions(n):
        z = 1
        for length in set(part):
            m = part.count(length)
            z *= length**m * math.factorial(m)
        orbits = sum(math.gcd(a, b) for a in part for b in part)
        total += (n_fact // z) << orbits
    assert total % n_fact == 0
    return total // n_fact


def d_upper(n: int) -> int:
    """Labelled count 2^(n^2), an upper bound on D(n)."""
    return 1 << (n * n)


@dataclass(frozen=True)
class LogQuantity:
    """A non-negative quantity stored as its base-2 logarithm.

    ``log2`` is None for the quantity 0.
    """

    log2: Decimal | None

    @classmethod
    def of(cls, value: int | Fraction) -> "LogQuantity":
        if value < 0:
            raise ValueError("LogQuantity holds non-negative values only")
        if value == 0:
            return cls(None)
        with localcontext() as ctx:
            ctx.prec = LOG_DIGITS
            if isinstance(value, Fraction):
                d = Decimal(value.numerator) / Decimal(value.denominator)
            else:
                d = Decimal(value)
            return cls(d.ln() / Decimal(2).ln())

    @property
    def is_zero(self) -> bool:
        return self.log2 is None

    def log10(self) -> Decimal | None:
        if self.log2 is None:
            return None
        with localcontext() as ctx:
            ctx.prec = LOG_DIGITS
            return self.log2 * Decimal(2).ln() / Decimal(10).ln()

    def __lt__(self, other: "LogQuantity") -> bool:
        if self.log2 is None:
            return other.log2 is not None
        return other.log2 is not None and self.log2 < other.log2

    def __le__(self, other: "LogQuantity") -> bool:
        return self == other or self < other


def g_lower_next(g_prev: int, g_prevprev: int) -> LogQuantity:
    """Wolfe-Fraser style lower bound on g(b+1) from g(b) and g(b-1).

    (8 g(b-1) - 4) * (2^((g(b) - 2) / (2 g(b-1) - 1) - 1) - 1), clamped at 0.
    """
    if g_prev < 1 or g_prevprev < 1:
        raise ValueError("inputs must be at least 1")
    factor = 8 * g_prevprev - 4
    exponent = Fraction(g_prev - 2, 2 * g_prevprev - 1) - 1
    if exponent <= 0 or factor <= 0:
        # 2^e - 1 <= 0, so the bound says nothing
        return LogQuantity(None)
    if exponent < 4096:
        with localcontext() as ctx:
            ctx.prec = LOG_DIGITS
            power = (Decimal(exponent.numerator) / Decimal(exponent.denominator) * Decimal(2).ln()).exp()
            value = Decimal(factor) * (power - 1)
            return LogQuantity(value.ln() / Decimal(2).ln())
    with localcontext() as ctx:
        ctx.prec = LOG_DIGITS
        # log2(2^e - 1) = e + log2(1 - 2^-e); the correction is below 2^-4000
        e = Decimal(exponent.numerator) / Decimal(exponent.denominator)
        return LogQuantity(Decimal(factor).ln() / Decimal(2).ln() + e)


def wolfe_fraser_exponent(g_prev: int, g_prevprev: int) -> Fraction:
    return Fraction(g_prev - 2, 2 * g_prevprev - 1) - 1


def f_upper_next(f_b: int, b: int, a_b: int) -> int:
    """F(b+1) <= 2 a(b) (F(b) + b + 1) + 5b + 8."""
    if min(f_b, b, a_b) < 0:
        raise ValueError("inputs must be non-negative")
    return 2 * a_b * (f_b + b + 1) + 5 * b + 8


def f_lower_from_census(g_target: int | LogQuantity, exact_log2_limit: int = 4096) -> int:
    """Smallest m consistent with sum_{n<=m} D(n) >= g_target.

    Integer targets (and small logarithmic ones) use the exact D(n).  Huge
    logarithmic targets use D(n) <= 2^(n^2): since sum_{n<=m} 2^(n^2) is
    below 2^(m^2 + 1), any admissible m satisfies m^2 + 1 > log2(target).
    """
    if isinstance(g_target, LogQuantity):
        if g_target.log2 is None or g_target.log2 <= 0:
            return 0
        if g_target.log2 < exact_log2_limit:
            with localcontext() as ctx:
                ctx.prec = LOG_DIGITS
                target = int((g_target.log2 * Decimal(2).ln()).exp().to_integral_value(rounding="ROUND_CEILING"))
            return f_lower_from_census(target)
        c = int(g_target.log2 - 1)  # floor, since log2 > 1 here
        return math.isqrt(c) + 1
    if g_target <= 0:
        return 0
    total = 0
    m = 0
    while True:
        total += count_digraphs(m)
        if total >= g_target:
            return m
        m += 1


def log10_of(value: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = LOG_DIGITS
        return Decimal(value).log10()


@dataclass
class BoundsSummary:
    g3: int
    a3: int
    g5_log2_lower: Decimal
    f4_lower: int
    f4_upper: int
    f5_lower: int
    f5_upper: int
    f5_upper_log10: Decimal


def compute_bounds(g3: int | None = None, a3: int | None = None) -> BoundsSummary:
    """Every constant of the F(4)/F(5) argument; g(3) and a(3) are recomputed unless given."""
    if g3 is None or a3 is None:
        from diplace import days

        day3 = days.enumerate_day(3)
        g3 = len(day3) if g3 is None else g3
        a3 = days.max_antichain(day3) if a3 is None else a3
    g5 = g_lower_next(G4_LOWER_EXCLUSIVE, g3)
    assert g5.log2 is not None
    f4_lower = f_lower_from_census(G4_LOWER_EXCLUSIVE + 1)
    f4_upper = f_upper_next(F3, 3, a3)
    f5_lower = f_lower_from_census(g5)
    f5_upper = f_upper_next(f4_upper, 4, A4_UPPER)
    return BoundsSummary(g3, a3, g5.log2, f4_lower, f4_upper, f5_lower, f5_upper, log10_of(f5_upper))


def _sci(x: Decimal | int, digits: int = 4) -> str:
    return f"{Decimal(x):.{digits}E}"


def _ok(flag: bool) -> str:
    return "ok" if flag else "FAILS"


def bounds_report(day: int | None = None, table_dn: int | None = None, summary: BoundsSummary | None = None) -> str:
    """Human-readable derivation of the F(4) and F(5) bounds."""
    s = summary or compute_bounds()
    lines: list[str] = []
    lines.append(f"g(3) = {s.g3}  (values born by day 3, enumerated)")
    lines.append(f"a(3) = {s.a3}  (largest antichain of day-3 values, Dilworth)")
    lines.append(f"F(3) = {F3}  (cited)")
    lines.append(f"g(4) > 2^94 = {G4_LOWER_EXCLUSIVE}  (cited; log10 2^94 = {log10_of(G4_LOWER_EXCLUSIVE):.3f}, quoted as 10^28.2)")
    lines.append("a(4) <= 10^184  (cited)")
    if day in (None, 4):
        lines.append("")
        lines.append("-- day 4 --")
        partial = sum(count_digraphs(n) for n in range(s.f4_lower + 1))
        before = partial - count_digraphs(s.f4_lower)
        lines.append(f"sum_{{n<={s.f4_lower - 1}}} D(n) = {before} <= 2^94")
        lines.append(f"sum_{{n<={s.f4_lower}}} D(n) = {partial} > 2^94")
        lines.append(f"F(4) upper = 2*{s.a3}*({F3}+3+1) + 5*3 + 8 = {s.f4_upper}")
        lines.append(f"F(4) in [{s.f4_lower}, {s.f4_upper}]")
    if day in (None, 5):
        exponent = wolfe_fraser_exponent(G4_LOWER_EXCLUSIVE, s.g3)
        lines.append("")
        lines.append("-- day 5 --")
        lines.append(f"exponent (2^94 - 2)/(2*{s.g3} - 1) - 1 = {_sci(Decimal(exponent.numerator) / exponent.denominator)}")
        lines.append(f"g(5) > {8 * s.g3 - 4} * (2^exponent - 1): log2 g(5) >= {_sci(s.g5_log2_lower)}")
        lines.append(f"F(5)^2 + 1 > log2 g(5) gives F(5) >= {s.f5_lower} = {_sci(s.f5_lower, 3)}")
        lines.append(f"F(5) lower >= {_sci(s.f5_lower, 2)}")
        lines.append(f"F(5) upper = 2*10^184*({s.f4_upper}+4+1) + 5*4 + 8 = {(s.f5_upper - 28) // 10**184}*10^184 + 28")
        lines.append(f"log10 F(5) upper = {s.f5_upper_log10:.5f}")
        lines.append(f"check log2 g(5) >= 6.7*10^24: {_ok(s.g5_log2_lower >= Decimal('6.7E24'))}")
        lines.append(f"check F(5) >= 2.58*10^12: {_ok(s.f5_lower >= 2_580_000_000_000)}")
        lines.append(f"check F(5) upper < 10^187.63: {_ok(s.f5_upper_log10 < Decimal('187.63'))}")
    if table_dn is not None:
        lines.append("")
        lines.append("n  D(n)")
        for n in range(table_dn + 1):
            lines.append(f"{n}  {count_digraphs(n)}")
    return "\n".join(lines)
