"""Exact integer primitives: multiplicative orders, CRT, primality, factoring.

Everything here is plain Python int arithmetic (arbitrary precision, exact).
All functions are pure and safe to call from multiple threads.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Optional

__all__ = [
    "PrimalityVerdict",
    "FactorBudget",
    "Factorization",
    "is_prime",
    "factor",
    "multiplicative_order",
    "has_order",
    "crt_combine",
    "is_perfect_power",
    "iroot",
    "primes_up_to",
]

# Miller-Rabin with these bases is a proven primality test below this bound
# (Sorenson-Webster: first 13 prime bases).
_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

# Smaller proven base sets for smaller inputs (Jaeschke; Sinclair).
_BASE_TIERS = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (9_080_191, (31, 73)),
    (25_326_001, (2, 3, 5)),
    (3_215_031_751, (2, 3, 5, 7)),
    (4_759_123_141, (2, 7, 61)),
    (1_122_004_669_633, (2, 13, 23, 1662803)),
    (2_152_302_898_747, (2, 3, 5, 7, 11)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (_DETERMINISTIC_BOUND, _DETERMINISTIC_BASES),
)


def _proven_bases(n: int) -> tuple[int, ...]:
    for bound, bases in _BASE_TIERS:
        if n < bound:
            return bases
    return _DETERMINISTIC_BASES


_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
    71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149,
    151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229,
    233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293,
)

COMPOSITE = "composite"
PROBABLE_PRIME = "probable-prime"
PROVEN_PRIME = "proven-prime"


@dataclass(frozen=True)
class PrimalityVerdict:
    """Outcome of a primality test.

    kind is one of "composite", "probable-prime", "proven-prime".  A
    composite verdict carries an independently checkable witness when one
    exists: a nontrivial divisor, or a Miller-Rabin base that exposes n
    (witness_kind tells which).  n < 2 yields a composite verdict with no
    witness.  rounds counts the random Miller-Rabin rounds behind a
    probable-prime verdict.
    """

    kind: str
    witness: Optional[int] = None
    witness_kind: Optional[str] = None  # "divisor" | "mr-base"
    rounds: int = 0

    def __bool__(self) -> bool:
        return self.kind != COMPOSITE

    @property
    def proven(self) -> bool:
        return self.kind == PROVEN_PRIME


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, by sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, b in enumerate(sieve) if b]


def _miller_rabin_witness(n: int, a: int) -> bool:
    """True if base a proves n composite (n odd, n > 2, 1 < a < n)."""
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def _jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_prp(n: int) -> bool:
    """Strong Lucas probable-prime test, Selfridge parameter choice.

    Assumes n odd, n > 2, not a perfect square, with no small prime factors.
    """
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == 0:
            return False  # gcd(n, d) nontrivial
        if j == -1:
            break
        d = -(d + 2) if d > 0 else -(d - 2)
    p, q = 1, (1 - d) // 4

    k = n + 1
    s = 0
    while k % 2 == 0:
        k //= 2
        s += 1

    # Lucas sequences U_k, V_k by binary ladder.
    u, v, qk = 1, p, q % n
    for bit in bin(k)[3:]:
        u = u * v % n
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) % n, (d * u + p * v) % n
            if u % 2:
                u += n
            if v % 2:
                v += n
            u, v = u // 2 % n, v // 2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        if v == 0:
            return True
        qk = qk * qk % n
    return False


def is_prime(n: int, rounds: int = 64) -> PrimalityVerdict:
    """Decide primality of n >= 0.

    Deterministic (kind "proven-prime"/"composite") for n below a fixed
    Miller-Rabin bound near 3.3e24.  Above it, a probable-prime verdict is
    backed by `rounds` Miller-Rabin rounds with deterministically derived
    bases plus a strong Lucas double check; such verdicts are labeled, never
    silently treated as proven.

    The verdict is truthy exactly when n is (probably) prime.
    """
    if n < 2:
        return PrimalityVerdict(COMPOSITE)
    for p in _SMALL_PRIMES:
        if n == p:
            return PrimalityVerdict(PROVEN_PRIME)
        if n % p == 0:
            return PrimalityVerdict(COMPOSITE, witness=p, witness_kind="divisor")
    if n < _SMALL_PRIMES[-1] ** 2:
        return PrimalityVerdict(PROVEN_PRIME)

    for a in _proven_bases(n):
        if _miller_rabin_witness(n, a):
            return PrimalityVerdict(COMPOSITE, witness=a, witness_kind="mr-base")
    if n < _DETERMINISTIC_BOUND:
        return PrimalityVerdict(PROVEN_PRIME)

    root = math.isqrt(n)
    if root * root == n:
        return PrimalityVerdict(COMPOSITE, witness=root, witness_kind="divisor")
    if not _strong_lucas_prp(n):
        # No Miller-Rabin witness found above, so there is no simple
        # certificate to attach; the verdict is still composite.
        return PrimalityVerdict(COMPOSITE)
    rng = random.Random(n)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        if _miller_rabin_witness(n, a):
            return PrimalityVerdict(COMPOSITE, witness=a, witness_kind="mr-base")
    return PrimalityVerdict(PROBABLE_PRIME, rounds=rounds)


@dataclass(frozen=True)
class FactorBudget:
    """Effort bounds for `factor`.

    trial_bound: trial-divide by primes up to this bound first.
    rho_iterations: Pollard-rho (Brent) iterations per attempt.
    rho_restarts: attempts with distinct polynomial constants per cofactor.
    """

    trial_bound: int = 100_000
    rho_iterations: int = 1_000_000
    rho_restarts: int = 4

    @classmethod
    def off(cls) -> "FactorBudget":
        """No splitting effort at all (useful when only trial division by a
        supplied list is wanted)."""
        return cls(trial_bound=2, rho_iterations=0, rho_restarts=0)


DEFAULT_BUDGET = FactorBudget()


@dataclass
class Factorization:
    """Partial factorization: n = prod(p**e) * remainder.

    Every p in `factors` passed is_prime (probable ones listed in
    `probable`); `remainder` is None for a complete factorization, else a
    composite cofactor the budget could not split.
    """

    n: int
    factors: list[tuple[int, int]]
    remainder: Optional[int] = None
    remainder_status: Optional[str] = None  # "composite" | "unresolved"
    probable: frozenset[int] = field(default_factory=frozenset)

    @property
    def complete(self) -> bool:
        return self.remainder is None

    def product(self) -> int:
        out = reduce(lambda acc, pe: acc * pe[0] ** pe[1], self.factors, 1)
        return out * (self.remainder or 1)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]


def _brent_rho(n: int, budget: FactorBudget) -> Optional[int]:
    """A nontrivial factor of odd composite n, or None within budget."""
    for attempt in range(budget.rho_restarts):
        c = attempt + 1
        y, r, q = 2, 1, 1
        g, x, ys = 1, 0, 0
        count = 0
        while g == 1 and count < budget.rho_iterations:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                count += min(128, r - k)
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factor(n: int, budget: FactorBudget = DEFAULT_BUDGET) -> Factorization:
    """Factor n >= 1 within budget: trial division then Pollard rho (Brent).

    Never wrong, possibly incomplete: budget exhaustion leaves a composite
    remainder rather than guessing.  product() always reproduces n exactly.
    """
    if n < 1:
        raise ValueError("factor requires n >= 1")
    original = n
    counts: dict[int, int] = {}
    probable: set[int] = set()

    limit = budget.trial_bound
    for p in _SMALL_PRIMES:
        if p > limit or p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    if n > 1 and limit > _SMALL_PRIMES[-1]:
        p = _SMALL_PRIMES[-1] + 2
        while p <= limit and p * p <= n:
            while n % p == 0:
                counts[p] = counts.get(p, 0) + 1
                n //= p
            p += 2

    unresolved: list[int] = []
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m < limit * limit or is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            if m >= _DETERMINISTIC_BOUND:
                probable.add(m)
            continue
        power = is_perfect_power(m)
        if power is not None:
            base, exp = power
            stack.extend([base] * exp)
            continue
        d = _brent_rho(m, budget)
        if d is None:
            unresolved.append(m)
        else:
            stack.append(d)
            stack.append(m // d)

    remainder = reduce(lambda a, b: a * b, unresolved, 1) if unresolved else None
    result = Factorization(
        n=original,
        factors=sorted(counts.items()),
        remainder=remainder,
        remainder_status="composite" if remainder else None,
        probable=frozenset(probable),
    )
    assert result.product() == original
    return result


def crt_combine(
    constraints: Iterable[tuple[int, int]],
) -> tuple[int, int]:
    """Combine congruences x = r (mod m) into a single one.

    Returns (residue, modulus) with 0 <= residue < modulus = lcm of the
    inputs.  Non-coprime moduli are merged when consistent; inconsistent
    pairs raise ValueError.  No constraints means (0, 1).
    """
    residue, modulus = 0, 1
    for r, m in constraints:
        if m < 1:
            raise ValueError(f"modulus must be positive, got {m}")
        g = math.gcd(modulus, m)
        if (r - residue) % g:
            raise ValueError(
                f"inconsistent congruences: x = {residue} (mod {modulus}) "
                f"vs x = {r} (mod {m})"
            )
        m_g = m // g
        combined = modulus // g * m
        t = (r - residue) // g * pow(modulus // g, -1, m_g) % m_g
        residue = (residue + modulus * t) % combined
        modulus = combined
    return residue, modulus


def multiplicative_order(
    base: int, modulus: int, budget: FactorBudget = DEFAULT_BUDGET
) -> int:
    """Least m >= 1 with base**m = 1 (mod modulus).

    Computed by factoring the group exponent and stripping prime factors,
    never by linear scan.  Requires gcd(base, modulus) = 1 and modulus >= 2;
    raises ValueError otherwise, or if the needed factorizations exceed the
    budget (composite moduli are supported as a convenience only).
    """
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if math.gcd(base, modulus) != 1:
        raise ValueError(f"order undefined: gcd({base}, {modulus}) != 1")

    if is_prime(modulus):
        exponent = modulus - 1
    else:
        mf = factor(modulus, budget)
        if not mf.complete:
            raise ValueError(
                f"cannot factor modulus {modulus} within budget; "
                "order computation would need a linear scan"
            )
        lam = 1
        for p, e in mf.factors:
            if p == 2 and e >= 3:
                part = 2 ** (e - 2)
            else:
                part = p ** (e - 1) * (p - 1)
            lam = math.lcm(lam, part)
        exponent = lam

    ef = factor(exponent, budget)
    if not ef.complete:
        raise ValueError(
            f"cannot factor group exponent {exponent} within budget"
        )
    if pow(base, exponent, modulus) != 1:
        # Carmichael bound is always a valid exponent; reaching here means a
        # probable-prime modulus was actually composite.
        raise ValueError(f"modulus {modulus} misclassified as prime")
    order = exponent
    for p, _ in ef.factors:
        while order % p == 0 and pow(base, order // p, modulus) == 1:
            order //= p
    return order


def has_order(base: int, m: int, modulus: int, budget: FactorBudget = DEFAULT_BUDGET) -> bool:
    """Whether base has multiplicative order exactly m mod modulus.

    Needs only the factorization of m (the order is m iff base**m = 1 and
    base**(m/q) != 1 for every prime q dividing m), so it stays cheap even
    when modulus - 1 would be hopeless to factor.
    """
    if m < 1 or modulus < 2 or math.gcd(base, modulus) != 1:
        return False
    if pow(base, m, modulus) != 1:
        return False
    mf = factor(m, budget)
    if not mf.complete:
        raise ValueError(f"cannot factor the candidate order {m}")
    return all(pow(base, m // q, modulus) != 1 for q in mf.primes())


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0, exact integer arithmetic only."""
    if n < 0 or k < 1:
        raise ValueError("iroot requires n >= 0 and k >= 1")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    bits = n.bit_length()
    if k >= bits:
        return 1
    x = 1 << (bits + k - 1) // k  # upper start for Newton
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x


def is_perfect_power(n: int) -> Optional[tuple[int, int]]:
    """(base, exp) with base**exp = n and exp >= 2 maximal, else None.

    Exponents are searched through prime values up to log2(n) only, since
    any k-th power is a q-th power for each prime q dividing k.
    """
    if n < 4:
        return None
    base, exp = n, 1
    progress = True
    while progress:
        progress = False
        max_k = base.bit_length()
        for q in _prime_iter(max_k):
            r = iroot(base, q)
            if r ** q == base:
                base, exp = r, exp * q
                progress = True
                break
    return (base, exp) if exp >= 2 else None


def _prime_iter(limit: int):
    """Primes <= limit, small ones first."""
    for p in _SMALL_PRIMES:
        if p > limit:
            return
        yield p
    p = _SMALL_PRIMES[-1] + 2
    while p <= limit:
        if is_prime(p):
            yield p
        p += 2
