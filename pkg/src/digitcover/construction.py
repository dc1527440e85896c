"""Binding covering systems to prime assignments, per substituted digit,
and assembling the arithmetic progression whose every element stays
composite under each substitution.

For a digit offset d and a congruence k = a (mod m) assigned a prime p
with 10 of order m mod p, forcing the progression offset into the residue
-d * 10**a mod p makes p divide n + d * 10**k for every progression
element n and every exponent k in the congruence class.  A covering system
per digit extends this to every k, and the CRT glues all the per-prime
residues into a single progression.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .arith import crt_combine, has_order, is_prime
from .covering import Congruence, CoveringSystem, is_covering_fast, is_covering_naive

__all__ = [
    "Assignment",
    "DigitCovering",
    "Construction",
    "DivisorCertificate",
    "SampleReport",
    "derive_b_residue",
    "cross_digit_consistency",
    "assemble",
    "substitution_divisor",
    "verify_property_star_sample",
    "write_construction",
    "load_construction",
]

DIGIT_OFFSETS = tuple(d for d in range(-9, 10) if d != 0)


def derive_b_residue(d: int, a: int, p: int) -> int:
    """Residue class of the progression offset mod p that forces p to divide
    n + d * 10**k whenever k = a (mod order of 10 mod p): (-d * 10**a) mod p."""
    return -d * pow(10, a, p) % p


def cross_digit_consistency(p: int, uses: Iterable[tuple[int, int]]) -> bool:
    """Whether one prime can serve several digits: all (d, a) pairs must
    pin the same offset residue mod p."""
    residues = {derive_b_residue(d, a, p) for d, a in uses}
    return len(residues) <= 1


@dataclass(frozen=True)
class Assignment:
    """One covering congruence with its assigned prime (and, when the
    assignment came from an ordered table, the prime's index there)."""

    congruence: Congruence
    prime: int
    rho: Optional[int] = None


@dataclass(frozen=True)
class DigitCovering:
    """A covering system for one digit offset with a prime per congruence."""

    digit: int
    entries: tuple[Assignment, ...]

    def __post_init__(self):
        if self.digit not in DIGIT_OFFSETS:
            raise ValueError(f"digit offset must be in [-9..-1, 1..9], got {self.digit}")
        if not self.entries:
            raise ValueError(f"digit {self.digit}: no assignments")

    @property
    def system(self) -> CoveringSystem:
        return CoveringSystem(tuple(e.congruence for e in self.entries))

    def validate(self, check_orders: bool = True) -> None:
        """Raise ValueError unless primes are distinct, each prime's order
        equals its congruence modulus, and the congruences form a covering."""
        primes = [e.prime for e in self.entries]
        if len(set(primes)) != len(primes):
            raise ValueError(f"digit {self.digit}: repeated prime assignment")
        if check_orders:
            for e in self.entries:
                if not has_order(10, e.congruence.modulus, e.prime):
                    raise ValueError(
                        f"digit {self.digit}: 10 does not have order "
                        f"{e.congruence.modulus} mod the assigned prime {e.prime}"
                    )
        system = self.system
        verdict = (
            is_covering_naive(system)
            if system.lcm <= 10 ** 6
            else is_covering_fast(system)
        )
        if not verdict:
            raise ValueError(
                f"digit {self.digit}: congruences do not cover "
                f"(witness {verdict.witness})"
            )


@dataclass(frozen=True)
class Construction:
    """An assembled progression: every element n = offset (mod modulus) has
    n + d * 10**k divisible by an assigned prime, for every covered digit d
    and every k >= 0.

    modulus is the squarefree product of the assigned primes; offset is the
    least CRT solution exceeding every assigned prime, coprime to modulus.
    """

    digits: dict[int, DigitCovering]
    modulus: int  # the A of the progression A*n + B
    offset: int   # the B
    residue_constraints: tuple[tuple[int, int], ...]  # (prime, offset mod prime)
    prime_uses: dict[int, tuple[tuple[int, int], ...]]  # prime -> ((d, a), ...)
    probable_primes: frozenset[int] = frozenset()

    def element(self, index: int) -> int:
        """The index-th progression element modulus*index + offset."""
        return self.modulus * index + self.offset


def assemble(
    coverings: Sequence[DigitCovering],
    check_orders: bool = True,
) -> Construction:
    """Glue per-digit coverings into one Construction.

    Validates every covering, checks that any prime shared between digits
    pins a single offset residue, solves the CRT system, and picks the
    least offset exceeding the largest assigned prime.  Raises ValueError
    on an empty digit set, inconsistent sharing, wrong prime orders, or a
    residue that would make a prime divide the offset.
    """
    if not coverings:
        raise ValueError("nothing to cover: empty digit set")
    by_digit: dict[int, DigitCovering] = {}
    for cov in coverings:
        if cov.digit in by_digit:
            raise ValueError(f"digit {cov.digit} supplied twice")
        cov.validate(check_orders=check_orders)
        by_digit[cov.digit] = cov

    uses: dict[int, list[tuple[int, int]]] = {}
    for cov in by_digit.values():
        for e in cov.entries:
            uses.setdefault(e.prime, []).append((cov.digit, e.congruence.residue))

    probable: set[int] = set()
    constraints: list[tuple[int, int]] = []
    for p in sorted(uses):
        verdict = is_prime(p)
        if not verdict:
            raise ValueError(f"assigned value {p} is composite")
        if not verdict.proven:
            probable.add(p)
        if not cross_digit_consistency(p, uses[p]):
            raise ValueError(
                f"prime {p} is shared with inconsistent offset residues: "
                + ", ".join(
                    f"(d={d}, a={a}) -> {derive_b_residue(d, a, p)}"
                    for d, a in uses[p]
                )
            )
        d0, a0 = uses[p][0]
        r = derive_b_residue(d0, a0, p)
        if r == 0:
            raise ValueError(
                f"prime {p} would divide the offset (d={d0}, a={a0}); "
                "the progression could contain no primes"
            )
        constraints.append((p, r))

    modulus = math.prod(p for p, _ in constraints)
    residue, crt_mod = crt_combine([(r, p) for p, r in constraints])
    assert crt_mod == modulus
    max_prime = max(p for p, _ in constraints)
    offset = residue if residue > max_prime else residue + modulus * (
        (max_prime - residue) // modulus + 1
    )
    assert math.gcd(modulus, offset) == 1
    return Construction(
        digits=by_digit,
        modulus=modulus,
        offset=offset,
        residue_constraints=tuple(constraints),
        prime_uses={p: tuple(v) for p, v in uses.items()},
        probable_primes=frozenset(probable),
    )


@dataclass(frozen=True)
class DivisorCertificate:
    """Why n + d * 10**k is composite: the assigned prime divides it."""

    prime: int
    congruence: Congruence
    digit: int
    exponent: int
    value: int

    def check(self) -> bool:
        return (
            self.value % self.prime == 0
            and abs(self.value) > self.prime
            and self.congruence.matches(self.exponent)
        )


def substitution_divisor(
    construction: Construction, n: int, d: int, k: int
) -> DivisorCertificate:
    """Certificate that n + d * 10**k is divisible by an assigned prime.

    Requires n in the progression (n = offset mod modulus), d among the
    construction's digits, and k >= 0.  The covering property guarantees a
    matching congruence exists; the certificate re-checks the division.
    """
    if d not in construction.digits:
        raise ValueError(f"digit {d} is not covered by this construction")
    if k < 0:
        raise ValueError("exponent k must be >= 0")
    if (n - construction.offset) % construction.modulus != 0:
        raise ValueError("n is not an element of the progression")
    for entry in construction.digits[d].entries:
        if entry.congruence.matches(k):
            value = n + d * 10 ** k
            cert = DivisorCertificate(
                prime=entry.prime,
                congruence=entry.congruence,
                digit=d,
                exponent=k,
                value=value,
            )
            if value % entry.prime != 0:
                raise AssertionError(
                    f"internal inconsistency: {entry.prime} does not divide "
                    f"n + {d}*10^{k}"
                )
            return cert
    raise AssertionError(
        f"no congruence matches k={k} for digit {d}; covering verification "
        "should have made this impossible"
    )


@dataclass
class SampleReport:
    samples: int
    k_max: int
    checked: int
    digits: tuple[int, ...]
    failures: list[str] = field(default_factory=list)
    spot_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_property_star_sample(
    construction: Construction,
    samples: int = 100,
    k_max: int = 200,
    seed: int = 0,
    spot_checks: int = 24,
) -> SampleReport:
    """Randomized check of the composite-substitution property.

    Draws `samples` progression elements, and for every covered digit d and
    exponent k <= k_max verifies that the certificate prime divides
    n + d * 10**k and the magnitude exceeds the prime (so divisibility
    proves compositeness).  A few values are additionally spot-checked to
    be composite with the primality test.  Stops at the first failure.
    """
    rng = random.Random(seed)
    digits = tuple(sorted(construction.digits))
    report = SampleReport(samples=samples, k_max=k_max, checked=0, digits=digits)
    pow10 = [10 ** k for k in range(k_max + 1)]
    spot_budget = spot_checks
    for _ in range(samples):
        n = construction.element(rng.randrange(1, 10 ** 18))
        for d in digits:
            for k in range(k_max + 1):
                cert = substitution_divisor(construction, n, d, k)
                value = n + d * pow10[k]
                report.checked += 1
                if value % cert.prime != 0 or abs(value) <= cert.prime:
                    report.failures.append(
                        f"n={n} d={d} k={k}: prime {cert.prime} does not "
                        f"certify {value}"
                    )
                    return report
                if spot_budget and rng.random() < 1e-4:
                    spot_budget -= 1
                    report.spot_checked += 1
                    if is_prime(abs(value)):
                        report.failures.append(
                            f"n={n} d={d} k={k}: value is prime despite "
                            f"certificate {cert.prime}"
                        )
                        return report
    return report


def write_construction(construction: Construction, path: Union[str, Path]) -> None:
    """Text export: A= and B= lines, then one `p a m d rho` line per
    constraint."""
    lines = [f"A={construction.modulus}", f"B={construction.offset}"]
    for d in sorted(construction.digits):
        for e in construction.digits[d].entries:
            rho = e.rho if e.rho is not None else 0
            lines.append(
                f"{e.prime} {e.congruence.residue} {e.congruence.modulus} {d} {rho}"
            )
    Path(path).write_text("\n".join(lines) + "\n")


def load_construction(path: Union[str, Path]) -> Construction:
    """Parse the write_construction format and re-assemble, verifying the
    stored A and B against the recomputed ones."""
    a_value = b_value = None
    per_digit: dict[int, list[Assignment]] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("A="):
            a_value = int(line[2:])
            continue
        if line.startswith("B="):
            b_value = int(line[2:])
            continue
        parts = line.split()
        if len(parts) != 5:
            raise ValueError(f"{path}:{lineno}: expected 'p a m d rho', got {raw!r}")
        p, a, m, d, rho = map(int, parts)
        per_digit.setdefault(d, []).append(
            Assignment(
                congruence=Congruence.reduced(a, m),
                prime=p,
                rho=rho or None,
            )
        )
    coverings = [
        DigitCovering(digit=d, entries=tuple(entries))
        for d, entries in sorted(per_digit.items())
    ]
    construction = assemble(coverings)
    if a_value is not None and construction.modulus != a_value:
        raise ValueError(
            f"stored A={a_value} disagrees with recomputed {construction.modulus}"
        )
    if b_value is not None and construction.offset != b_value:
        raise ValueError(
            f"stored B={b_value} disagrees with recomputed {construction.offset}"
        )
    return construction
