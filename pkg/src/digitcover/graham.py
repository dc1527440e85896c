"""Fibonacci-like recurrences whose every term is divisible by a prime from
a fixed finite set.

The sequence u(0) = a, u(1) = b, u(n+1) = u(n) + u(n-1) reduced mod a prime
p is purely periodic, because the state map (x, y) -> (y, x + y) is
invertible mod p.  Collecting, per prime, the period and the indices where
the term vanishes turns "every term is divisible by some prime in the set"
into a finite covering check over one lcm of periods.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .arith import is_prime

__all__ = [
    "GrahamInstance",
    "RecurrencePeriod",
    "CoverReport",
    "SeedReduction",
    "recurrence_period",
    "verify_cover",
    "reduce_seeds",
]


@dataclass(frozen=True)
class GrahamInstance:
    """Seeds and prime set for a compositeness cover of the recurrence."""

    a: int
    b: int
    primes: tuple[int, ...]

    @property
    def product(self) -> int:
        """Product of the prime set; seeds may be shifted by any multiple."""
        return math.prod(self.primes)

    def term(self, n: int) -> int:
        x, y = self.a, self.b
        for _ in range(n):
            x, y = y, x + y
        return x


@dataclass(frozen=True)
class RecurrencePeriod:
    """period: least T >= 1 returning the state (u(n), u(n+1)) mod p to its
    start; zero_indices: residues j mod period with u(j) = 0 (mod p)."""

    prime: int
    period: int
    zero_indices: frozenset[int]


def recurrence_period(p: int, a: int, b: int) -> RecurrencePeriod:
    """Walk the state orbit of (a, b) mod p until it closes."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    start = (a % p, b % p)
    zeros = set()
    state = start
    index = 0
    while True:
        if state[0] == 0:
            zeros.add(index)
        state = (state[1], (state[0] + state[1]) % p)
        index += 1
        if state == start:
            break
    return RecurrencePeriod(prime=p, period=index, zero_indices=frozenset(zeros))


@dataclass
class CoverReport:
    instance: GrahamInstance
    covered: bool
    period_lcm: int
    periods: dict[int, RecurrencePeriod] = field(default_factory=dict)
    coverage_counts: dict[int, int] = field(default_factory=dict)
    uncovered_index: int | None = None
    terms_exceed_primes: bool = True

    def __bool__(self) -> bool:
        return self.covered


def verify_cover(instance: GrahamInstance, explicit_terms: int = 50) -> CoverReport:
    """Check that every recurrence index is covered by some prime's zero set.

    Works mod the lcm L of the per-prime periods: index j is covered iff
    u(j) = 0 mod p for some p, which only depends on j mod period(p).  Also
    checks the first `explicit_terms` terms exceed max(primes), so the
    divisibility actually proves them composite.
    """
    if not instance.primes:
        raise ValueError("prime set must be nonempty")
    periods = {
        p: recurrence_period(p, instance.a, instance.b) for p in instance.primes
    }
    big_l = reduce(math.lcm, (rp.period for rp in periods.values()))
    covered = np.zeros(big_l, dtype=bool)
    counts = {}
    for p, rp in periods.items():
        for z in sorted(rp.zero_indices):
            covered[z :: rp.period] = True
        counts[p] = big_l // rp.period * len(rp.zero_indices)
    all_covered = bool(covered.all())
    uncovered = None if all_covered else int(np.argmin(covered))

    max_p = max(instance.primes)
    terms_ok = True
    x, y = instance.a, instance.b
    for j in range(2, explicit_terms):
        x, y = y, x + y
        if y <= max_p:
            terms_ok = False
            break

    return CoverReport(
        instance=instance,
        covered=all_covered,
        period_lcm=big_l,
        periods=periods,
        coverage_counts=counts,
        uncovered_index=uncovered,
        terms_exceed_primes=terms_ok,
    )


@dataclass(frozen=True)
class SeedReduction:
    """Seed congruences mod the prime-set product N, with common factors
    pulled out: a = gcd_a * a_reduced with a_reduced free mod N / gcd_a,
    and likewise for b."""

    gcd_a: int
    gcd_b: int
    a_reduced: int
    a_modulus: int
    b_reduced: int
    b_modulus: int


def reduce_seeds(instance: GrahamInstance) -> SeedReduction:
    """Split each seed congruence mod N into gcd * (reduced congruence)."""
    if instance.a == 0 or instance.b == 0:
        raise ValueError("seeds must be nonzero")
    n = instance.product
    g_a = math.gcd(instance.a, n)
    g_b = math.gcd(instance.b, n)
    return SeedReduction(
        gcd_a=g_a,
        gcd_b=g_b,
        a_reduced=instance.a // g_a % (n // g_a),
        a_modulus=n // g_a,
        b_reduced=instance.b // g_b % (n // g_b),
        b_modulus=n // g_b,
    )
