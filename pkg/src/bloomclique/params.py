"""Derived size parameters for all construction variants.

Everything is a function of n (a power of two, n >= 16): the clique has
c = log2(n) vertices, the filters are sized off the clique's edge count,
and the moduli are the smallest primes above the filter lengths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotPowerOfTwo, TooSmall

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(v: int) -> bool:
    """Deterministic primality by trial division; inputs here stay well under 2**40."""
    if v < 2:
        return False
    for q in _SMALL_PRIMES:
        if v == q:
            return True
        if v % q == 0:
            return False
    d = 41
    while d * d <= v:
        if v % d == 0:
            return False
        d += 2
    return True


def smallest_prime_greater(v: int) -> int:
    """Smallest prime strictly greater than v."""
    cand = v + 1
    while not is_prime(cand):
        cand += 1
    return cand


def round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


@dataclass(frozen=True)
class ParamSet:
    """All derived sizes for one n.

    c        clique size (= log2 n)
    ec       clique edge count c(c-1)/2
    m_basic  single-array length, 2*k0*c^2 bits (2c^3 at the default k0=c)
    m_def1   the 2c^2 length used by the bare succinct-graph definition
    m_filter per-filter length for the multi-filter variants, ceil(ec/ln 2)
    f_multi  filter count when parameters are drawn from the input
    f_derived filter count when parameters are derived from the clique
    p_basic  smallest prime > m_basic
    p_filter smallest prime > m_filter
    k0       density tuning constant (default c)
    """

    n: int
    c: int
    ec: int
    m_basic: int
    m_def1: int
    m_filter: int
    f_multi: int
    f_derived: int
    p_basic: int
    p_filter: int
    k0: int


def derive_params(n: int, k0: int | None = None) -> ParamSet:
    """Compute the full ParamSet for n.

    Raises NotPowerOfTwo unless n is a power of two, and TooSmall for
    c < 4 (the derived variants need at least two disjoint edge triples).
    """
    if n < 2 or (n & (n - 1)) != 0:
        raise NotPowerOfTwo(f"n={n} is not a power of two")
    c = n.bit_length() - 1
    if c < 4:
        raise TooSmall(f"n={n} gives clique size {c}; need at least 4")
    if k0 is None:
        k0 = c
    if k0 < 1:
        raise TooSmall(f"k0={k0}; need at least 1")
    ec = c * (c - 1) // 2
    m_basic = 2 * k0 * c * c
    m_filter = math.ceil(ec / math.log(2))
    f_multi = round_half_up(2 + math.log2(c))
    f_derived = round_half_up(1 + math.log2(c) / 2)
    return ParamSet(
        n=n,
        c=c,
        ec=ec,
        m_basic=m_basic,
        m_def1=2 * c * c,
        m_filter=m_filter,
        f_multi=f_multi,
        f_derived=f_derived,
        p_basic=smallest_prime_greater(m_basic),
        p_filter=smallest_prime_greater(m_filter),
        k0=k0,
    )


def falling_factorial(n: int, c: int) -> int:
    """n * (n-1) * ... * (n-c+1), the number of ordered c-vertex choices."""
    out = 1
    for i in range(c):
        out *= n - i
    return out
