"""Cyclotomic values at 10 and the order-m prime tables.

The primes p (coprime to 10) for which 10 has multiplicative order m are
exactly the primes dividing the m-th cyclotomic polynomial evaluated at 10,
excluding primes dividing m.  This module evaluates those values exactly,
extracts ordered prime lists within a factoring budget, and validates
externally supplied order tables, where an unfactored composite placeholder
may stand in for up to two unknown primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Optional, Union

from .arith import (
    DEFAULT_BUDGET,
    FactorBudget,
    _miller_rabin_witness,
    factor,
    has_order,
    is_perfect_power,
    is_prime,
)

__all__ = [
    "cyclotomic_value",
    "primes_of_order",
    "OrderPrimes",
    "OrderTableEntry",
    "OrderTable",
    "load_order_table",
    "write_order_table",
    "load_order_counts",
    "validate_order_table",
    "OrderTableReport",
]


def divisors(n: int) -> list[int]:
    """Divisors of n >= 1, ascending (trial division; n is a modulus-sized int)."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mobius(n: int) -> int:
    """Moebius function of n >= 1 by trial division."""
    if n < 1:
        raise ValueError("mobius requires n >= 1")
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def cyclotomic_value(m: int, x: int) -> int:
    """Exact value of the m-th cyclotomic polynomial at integer x >= 2.

    Uses the Moebius product over divisors d of m of (x**d - 1) raised to
    mobius(m/d), with the division performed exactly.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if x < 2:
        raise ValueError("x must be >= 2")
    if m == 1:
        return x - 1
    numerator = 1
    denominator = 1
    for d in divisors(m):
        mu = mobius(m // d)
        if mu == 1:
            numerator *= x ** d - 1
        elif mu == -1:
            denominator *= x ** d - 1
    value, rem = divmod(numerator, denominator)
    assert rem == 0
    return value


@dataclass(frozen=True)
class OrderPrimes:
    """Primes with 10 of order `modulus`, ascending, possibly incomplete.

    complete is True iff the factorization of the cyclotomic value left no
    unresolved cofactor; `remainder` holds that cofactor otherwise.
    """

    modulus: int
    primes: tuple[int, ...]
    complete: bool
    remainder: Optional[int] = None


@lru_cache(maxsize=None)
def _primes_of_order_cached(m: int, budget: FactorBudget) -> OrderPrimes:
    value = cyclotomic_value(m, 10)
    fac = factor(value, budget)
    primes = sorted(p for p in fac.primes() if m % p != 0)
    for p in primes:
        if not has_order(10, m, p):
            raise AssertionError(
                f"prime {p} divides the order-{m} cyclotomic value at 10 "
                f"but 10 does not have order {m} mod {p}"
            )
    return OrderPrimes(
        modulus=m,
        primes=tuple(primes),
        complete=fac.complete,
        remainder=fac.remainder,
    )


# Pollard rho is pointless past this operand size; trial division still runs.
_RHO_BIT_LIMIT = 512


def primes_of_order(m: int, budget: FactorBudget = DEFAULT_BUDGET) -> OrderPrimes:
    """Primes p with multiplicative order of 10 mod p equal to m.

    Factors the cyclotomic value at 10 within budget; the result is flagged
    complete only when no unresolved cofactor remains.  Every returned prime
    is re-verified to have order exactly m.  Values for m > 4000 are still
    computed but no factoring is attempted (divisibility checks against a
    supplied list remain cheap at any size); between that and a 512-bit
    value, trial division runs but rho is not attempted.
    """
    if m > 4000:
        budget = FactorBudget.off()
    elif cyclotomic_value(m, 10).bit_length() > _RHO_BIT_LIMIT:
        budget = FactorBudget(
            trial_bound=budget.trial_bound, rho_iterations=0, rho_restarts=0
        )
    return _primes_of_order_cached(m, budget)


@dataclass(frozen=True)
class OrderTableEntry:
    """One modulus row: the ordered entry list (primes, or a composite
    placeholder standing for unknown prime factors, repeated if used twice).
    """

    modulus: int
    entries: tuple[int, ...]

    @property
    def count(self) -> int:
        """L value of the row: plain entry count, placeholder multiplicity
        included."""
        return len(self.entries)


@dataclass
class OrderTable:
    """Ordered prime lists keyed by modulus; immutable after load."""

    rows: dict[int, OrderTableEntry] = field(default_factory=dict)

    def __iter__(self):
        return iter(sorted(self.rows))

    def __getitem__(self, m: int) -> OrderTableEntry:
        return self.rows[m]

    def __len__(self) -> int:
        return len(self.rows)


def load_order_table(path: Union[str, Path]) -> OrderTable:
    """Parse an order-table file.

    One record per line, `m: e1, e2, ..., eL`, each e a decimal integer; a
    trailing `*2` repeats that entry (a placeholder used twice).  Lines
    starting with `#` are comments.
    """
    rows: dict[int, OrderTableEntry] = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise ValueError(f"{path}:{lineno}: expected 'm: entries', got {raw!r}")
        try:
            m = int(head)
        except ValueError:
            raise ValueError(f"{path}:{lineno}: bad modulus {head!r}") from None
        entries: list[int] = []
        for token in tail.split(","):
            token = token.strip()
            if not token:
                continue
            twice = token.endswith("*2")
            if twice:
                token = token[:-2].strip()
            try:
                value = int(token)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: bad entry {token!r}") from None
            entries.extend([value, value] if twice else [value])
        if m in rows:
            raise ValueError(f"{path}:{lineno}: duplicate modulus {m}")
        rows[m] = OrderTableEntry(modulus=m, entries=tuple(entries))
    return OrderTable(rows=rows)


def write_order_table(table: OrderTable, path: Union[str, Path]) -> None:
    """Serialize in the same format load_order_table reads."""
    lines = []
    for m in table:
        entries = table[m].entries
        parts = []
        i = 0
        while i < len(entries):
            if i + 1 < len(entries) and entries[i + 1] == entries[i]:
                parts.append(f"{entries[i]}*2")
                i += 2
            else:
                parts.append(str(entries[i]))
                i += 1
        lines.append(f"{m}: {', '.join(parts)}")
    Path(path).write_text("\n".join(lines) + "\n")


def load_order_counts(path: Union[str, Path]) -> dict[int, int]:
    """Parse a `m count` per line file of expected entry counts."""
    counts: dict[int, int] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            m_str, count_str = line.split()
            counts[int(m_str)] = int(count_str)
        except ValueError:
            raise ValueError(f"{path}:{lineno}: expected 'm count', got {raw!r}") from None
    return counts


def _entry_is_prime(e: int) -> bool:
    """Primality for provenance flags.

    Entries can run to thousands of digits (the largest shipped-format
    placeholder is 17234 digits); classification there only needs to
    separate composites from primes, so past 4096 bits a two-base
    Miller-Rabin probe replaces the full verdict machinery.
    """
    if e.bit_length() <= 4096:
        return bool(is_prime(e))
    if e % 2 == 0 or e % 3 == 0:
        return False
    return not any(_miller_rabin_witness(e, a) for a in (2, 3))


@dataclass
class RowReport:
    """Validation outcome for one modulus row."""

    modulus: int
    violations: list[str] = field(default_factory=list)
    provenance: dict[int, str] = field(default_factory=dict)  # entry -> flag
    computed_count: Optional[int] = None  # when primes_of_order completed

    @property
    def valid(self) -> bool:
        return not self.violations


@dataclass
class OrderTableReport:
    rows: dict[int, RowReport] = field(default_factory=dict)
    global_violations: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.global_violations and all(
            r.valid for r in self.rows.values()
        )

    def all_violations(self) -> list[str]:
        out = list(self.global_violations)
        for m in sorted(self.rows):
            out.extend(f"m={m}: {v}" for v in self.rows[m].violations)
        return out


def validate_order_table(
    table: OrderTable,
    budget: FactorBudget = DEFAULT_BUDGET,
    cross_check: bool = True,
) -> OrderTableReport:
    """Run the data-validation checklist on every row of an order table.

    Per row with modulus m and entries [e1..eL]:
      1. every entry divides the order-m cyclotomic value at 10;
      2. every entry is coprime to m;
      3. at most one composite value Q, appearing at most twice; all other
         entries are distinct primes;
      4. gcd(Q, product of the prime entries) = 1;
      5. if Q appears twice, Q is not a perfect power.
    A composite appearing once or twice is accepted as a placeholder for
    that many unknown prime factors; anything else is a violation.

    Globally, a prime may appear under at most one modulus.  When
    cross_check is set and primes_of_order(m) completes within budget, the
    row's prime entries must be among the computed primes.
    """
    report = OrderTableReport()
    seen_prime_rows: dict[int, int] = {}

    for m in table:
        entry = table[m]
        row = RowReport(modulus=m)
        report.rows[m] = row
        value = cyclotomic_value(m, 10)

        primes: list[int] = []
        composites: list[int] = []
        for e in entry.entries:
            if e < 2:
                row.violations.append(f"entry {e} is not a positive integer > 1")
                continue
            if value % e != 0:
                row.violations.append(
                    f"entry {e} does not divide the cyclotomic value"
                )
            if math.gcd(e, m) != 1:
                row.violations.append(f"entry {e} shares a factor with {m}")
            if _entry_is_prime(e):
                primes.append(e)
                row.provenance[e] = "verified-prime"
            else:
                composites.append(e)
                row.provenance[e] = "placeholder-composite"

        if len(set(primes)) != len(primes):
            row.violations.append("repeated prime entry")
        distinct_q = set(composites)
        if len(distinct_q) > 1:
            row.violations.append(
                f"more than one composite placeholder: {sorted(distinct_q)}"
            )
        elif composites:
            q = composites[0]
            if len(composites) > 2:
                row.violations.append(
                    f"composite placeholder {q} appears {len(composites)} times"
                )
            prime_product = math.prod(primes) if primes else 1
            if math.gcd(q, prime_product) != 1:
                row.violations.append(
                    f"placeholder {q} shares a factor with the prime entries"
                )
            if len(composites) == 2 and is_perfect_power(q) is not None:
                base, exp = is_perfect_power(q)
                row.violations.append(
                    f"placeholder {q} = {base}**{exp} cannot hold two distinct primes"
                )

        for p in primes:
            if p in seen_prime_rows and seen_prime_rows[p] != m:
                report.global_violations.append(
                    f"prime {p} listed under both m={seen_prime_rows[p]} and m={m}"
                )
            seen_prime_rows[p] = m

        if cross_check:
            known = primes_of_order(m, budget)
            if known.complete:
                row.computed_count = len(known.primes)
                stray = [p for p in primes if p not in known.primes]
                if stray:
                    row.violations.append(
                        f"entries {stray} are not order-{m} primes"
                    )
                if entry.count > len(known.primes):
                    row.violations.append(
                        f"row lists {entry.count} entries but only "
                        f"{len(known.primes)} primes have order {m}"
                    )
    return report
