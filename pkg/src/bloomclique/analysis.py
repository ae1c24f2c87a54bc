"""Probability bounds for spurious cliques, evaluated exactly in log2.

Probabilities here span hundreds to thousands of binary orders of
magnitude, so every quantity is carried as a log2 value.  Binomials are
exact big integers; a log2 of a big integer costs one shift and one float
log, with error far below the 0.1 tolerance any consumer needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, OutOfRange


def log2_int(v: int) -> float:
    """log2 of a positive integer of any size."""
    if v <= 0:
        raise OutOfRange(f"log2 of non-positive {v}")
    bl = v.bit_length()
    if bl <= 53:
        return math.log2(v)
    shift = bl - 53
    return math.log2(v >> shift) + shift


def log2_fraction(fr: Fraction) -> float:
    return log2_int(fr.numerator) - log2_int(fr.denominator)


@dataclass(frozen=True)
class LogProb:
    """A probability (or probability bound) as log2.

    flag "exact" means log2_value is the formula's exact value; flag
    "upper_bound" means the true probability is at most 2**log2_value
    (such bounds may exceed 1 and are then vacuous but still reported).
    """

    log2_value: float
    flag: str = "exact"

    def __post_init__(self):
        if self.flag not in ("exact", "upper_bound"):
            raise OutOfRange(f"unknown flag {self.flag!r}")

    def probability(self) -> float:
        """Plain float value; underflows to 0.0 below about 2**-1074."""
        try:
            return 2.0 ** self.log2_value
        except OverflowError:
            return math.inf


def log2_add(a: float, b: float) -> float:
    """log2(2**a + 2**b) without leaving the log domain."""
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + math.log2(1.0 + 2.0 ** (lo - hi))


def _as_fraction(alpha) -> Fraction:
    fr = Fraction(alpha)
    if not 0 < fr < 1:
        raise OutOfRange(f"alpha={alpha} outside (0, 1)")
    return fr


def _spurious_exponent(c: int, k: int) -> int:
    """Edges a spurious clique with k new vertices must find present:
    k(c-k) cross edges plus C(k,2) internal ones."""
    return k * (c - k) + k * (k - 1) // 2


def term_exact(c: int, k: int, alpha, n: int | None = None) -> LogProb:
    """Exact k-th union term: C(n-c,k) * C(c,k) * alpha^(k(c-k)+C(k,2))."""
    if n is None:
        n = 2**c
    if not 1 <= k <= c:
        raise OutOfRange(f"k={k} outside [1, {c}]")
    fr = _as_fraction(alpha)
    val = (
        Fraction(math.comb(n - c, k) * math.comb(c, k))
        * fr ** _spurious_exponent(c, k)
    )
    return LogProb(log2_fraction(val), "exact")


def spurious_sum(c: int, alpha, n: int | None = None) -> LogProb:
    """Union bound over k=1..c spurious-clique overlap classes, summed exactly.

    With alpha the per-pair edge probability, this bounds the chance any
    clique other than the planted one exists.  Values above 1 are possible
    for large alpha and simply mean the bound is vacuous.
    """
    if n is None:
        n = 2**c
    fr = _as_fraction(alpha)
    total = Fraction(0)
    for k in range(1, c + 1):
        total += (
            Fraction(math.comb(n - c, k) * math.comb(c, k))
            * fr ** _spurious_exponent(c, k)
        )
    return LogProb(log2_fraction(total), "upper_bound")


def term_simplified(c: int, k: int) -> LogProb:
    """Closed-form over-estimate of the k-th term at alpha = 1/(2c), n = 2^c:
    (c * 2^c)^k / (2c)^(k(c-(k+1)/2))."""
    if not 1 <= k <= c:
        raise OutOfRange(f"k={k} outside [1, {c}]")
    lc = math.log2(c)
    exponent = k * c - k * (k + 1) // 2  # k(c-(k+1)/2), always an integer
    return LogProb(k * (lc + c) - exponent * (1 + lc), "upper_bound")


def term_ratio(c: int, k: int) -> LogProb:
    """Ratio of consecutive simplified terms: (c*2^c) / (2c)^(c-(k+2)/2)."""
    if not 1 <= k <= c - 1:
        raise OutOfRange(f"k={k} outside [1, {c - 1}]")
    lc = math.log2(c)
    return LogProb((lc + c) - (c - (k + 2) / 2) * (1 + lc), "exact")


def last_ratio_restated(c: int) -> LogProb:
    """The k=c-1 ratio with its exponent rendered as c/2 - 1 instead of
    (c-1)/2; both forms are emitted because sources state both."""
    lc = math.log2(c)
    return LogProb((lc + c) - (c / 2 - 1) * (1 + lc), "exact")


def total_bound(c: int) -> LogProb:
    """Geometric-series cap on the whole union: 2(c*2^c)/(2c)^(c-1).

    Needs every term ratio below 1/2, which holds only for c > 8; smaller
    c raises DomainError rather than reporting a number the derivation
    does not support.
    """
    if c <= 8:
        raise DomainError(f"geometric cap needs c > 8, got {c}")
    lc = math.log2(c)
    return LogProb(1 + lc + c - (c - 1) * (1 + lc), "upper_bound")


def derived_params_extra(c: int) -> LogProb:
    """Extra spurious-match factor when filter parameters are re-derived
    from the clique itself: 2^((c^2+c)/2) * c^(-(c^2-c)/2)."""
    if c < 1:
        raise OutOfRange(f"c={c}")
    return LogProb(
        (c * c + c) / 2 - ((c * c - c) / 2) * math.log2(c), "upper_bound"
    )


def _masked_exponent(c: int) -> float:
    """log2 of the number of reachable folded arrays: (c^2-c)/ln 2."""
    return (c * c - c) / math.log(2)


def masked_map_probability(c: int) -> LogProb:
    """Chance a uniformly random folded array is hit by some clique:
    C(2^c, c) / 2^((c^2-c)/ln 2), exactly in log2."""
    if c < 2:
        raise OutOfRange(f"c={c}")
    return LogProb(
        log2_int(math.comb(2**c, c)) - _masked_exponent(c), "upper_bound"
    )


BIRTHDAY_POPULATIONS = ("literal_pairs", "clique_count")


def birthday_collision(c: int, population: str) -> LogProb:
    """Collision probability 1 - e^(-M(M-1)/(2 * 2^((c^2-c)/ln 2))).

    population picks M: "literal_pairs" uses (n^2-n)/2 with n=2^c (the
    count as stated in the source formula), "clique_count" uses C(n, c)
    (the population that actually collides).  The exponent lives in log2;
    1 - e^-x is taken as x below 2^-10 and as 1 above 2^10, exact float
    evaluation between.
    """
    n = 2**c
    if population == "literal_pairs":
        M = (n * n - n) // 2
    elif population == "clique_count":
        M = math.comb(n, c)
    else:
        raise OutOfRange(f"unknown population {population!r}")
    if M <= 1:
        return LogProb(-math.inf, "exact")
    lx = log2_int(M) + log2_int(M - 1) - 1 - _masked_exponent(c)
    if lx < -10:
        return LogProb(lx, "exact")
    if lx > 10:
        return LogProb(0.0, "exact")
    p = -math.expm1(-(2.0**lx))
    return LogProb(math.log2(p), "exact")


@dataclass(frozen=True)
class ConstantRow:
    ident: str
    inputs: str
    value: LogProb
    note: str = ""


def constants_table(c: int = 64) -> list[ConstantRow]:
    """Every named constant the calculators reproduce, one row each."""
    rows = [
        ConstantRow("term_simplified", f"c={c} k=1", term_simplified(c, 1)),
        ConstantRow("term_simplified", f"c={c} k=2", term_simplified(c, 2)),
        ConstantRow("term_simplified", f"c={c} k=3", term_simplified(c, 3)),
        ConstantRow(
            "term_simplified", f"c={c} k={c}", term_simplified(c, c),
            "quoted elsewhere with the looser estimate -9512",
        ),
        ConstantRow(
            "spurious_sum", f"c={c} alpha=1/{2 * c}",
            spurious_sum(c, Fraction(1, 2 * c)),
        ),
        ConstantRow(
            "total_bound", f"c={c}", total_bound(c),
            "inversion succeeds with probability above 1 minus this",
        ),
        ConstantRow("term_ratio", f"c={c} k={c - 1}", term_ratio(c, c - 1)),
        ConstantRow(
            "last_ratio_restated", f"c={c}", last_ratio_restated(c),
            "same ratio with the exponent written as c/2-1",
        ),
        ConstantRow("derived_params_extra", f"c={c}", derived_params_extra(c)),
        ConstantRow(
            "masked_map_probability", f"c={c}", masked_map_probability(c),
            "often quoted as -2044; exact evaluation lands near -2017",
        ),
        ConstantRow(
            "birthday_collision", f"c={c} literal_pairs",
            birthday_collision(c, "literal_pairs"),
        ),
        ConstantRow(
            "birthday_collision", f"c={c} clique_count",
            birthday_collision(c, "clique_count"),
            "the colliding population makes a collision near certain",
        ),
    ]
    return rows
