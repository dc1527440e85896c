"""Digit-substitution predicates on concrete base-10 numbers.

A substitution replaces one decimal digit (possibly one of the infinitely
many leading zeros) with a different digit; arithmetically it adds
(replacement - original) * 10**position.  The predicates here check what
happens to primality under every such change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

from .arith import is_prime, primes_up_to

__all__ = [
    "Substitution",
    "WindowVerdict",
    "digit_count",
    "digit_at",
    "substitutions",
    "substitution_report",
    "is_digitally_delicate",
    "is_widely_digitally_delicate_window",
    "find_first_digitally_delicate",
    "is_composite_digit_stable",
]


@dataclass(frozen=True)
class Substitution:
    """Replace the digit at 10**position (original) with replacement."""

    position: int
    original: int
    replacement: int

    def __post_init__(self):
        if self.position < 0:
            raise ValueError("position must be >= 0")
        if not (0 <= self.original <= 9 and 0 <= self.replacement <= 9):
            raise ValueError("digits must be in 0..9")
        if self.original == self.replacement:
            raise ValueError("replacement must differ from the original digit")

    @property
    def delta(self) -> int:
        """The digit offset d = replacement - original, in [-9..-1, 1..9]."""
        return self.replacement - self.original

    def apply(self, n: int) -> int:
        """n with the digit swapped; requires the stated original digit to
        actually sit at the position (leading zeros included)."""
        if digit_at(n, self.position) != self.original:
            raise ValueError(
                f"digit of {n} at position {self.position} is "
                f"{digit_at(n, self.position)}, not {self.original}"
            )
        result = n + self.delta * 10 ** self.position
        assert result >= 0
        return result

    def inverse(self) -> "Substitution":
        return Substitution(self.position, self.replacement, self.original)


def digit_count(n: int) -> int:
    """Number of decimal digits of n >= 0 (0 has one digit)."""
    return len(str(abs(n)))


def digit_at(n: int, position: int) -> int:
    """Decimal digit of n at 10**position; 0 beyond the leading digit."""
    return n // 10 ** position % 10


def substitutions(n: int, leading_zeros: int = 0) -> Iterator[Substitution]:
    """All single-digit substitutions of n: every written position, plus
    `leading_zeros` positions of leading zeros (replacements 1..9 there)."""
    width = digit_count(n)
    for k in range(width):
        original = digit_at(n, k)
        for r in range(10):
            if r != original:
                yield Substitution(k, original, r)
    for k in range(width, width + leading_zeros):
        for r in range(1, 10):
            yield Substitution(k, 0, r)


def substitution_report(
    n: int, leading_zeros: int = 0
) -> list[tuple[Substitution, int, bool]]:
    """Itemized (substitution, value, value_is_prime) rows for n."""
    out = []
    for sub in substitutions(n, leading_zeros):
        value = sub.apply(n)
        out.append((sub, value, bool(is_prime(value))))
    return out


def is_digitally_delicate(p: int) -> bool:
    """Whether changing any single written digit of the prime p always gives
    a composite number.

    Replacing the leading digit by 0 evaluates the shorter number.  Values
    0 and 1 count as failures (they are not composite).  Raises ValueError
    if p is not prime.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    for sub in substitutions(p):
        value = sub.apply(p)
        if value < 2 or is_prime(value):
            return False
    return True


@dataclass(frozen=True)
class WindowVerdict:
    """passed means every tested substitution stayed composite.  Passing a
    finite window is NOT a proof of the widely digitally delicate property;
    only a covering-system certificate gives that.  On failure, witness is
    the offending substituted value (a prime, except for the degenerate
    single-digit cases where it can be 0 or 1)."""

    passed: bool
    witness: Optional[int] = None

    def __bool__(self) -> bool:
        return self.passed


def is_widely_digitally_delicate_window(p: int, window: int = 64) -> WindowVerdict:
    """Digit-delicacy check extended to leading zeros, heuristically.

    Tests every written-digit substitution plus the leading-zero positions
    from digit_count(p) through digit_count(p) + window, i.e. window + 1
    leading zeros (window >= 1).  A passed verdict only says no prime was
    found in that range.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    for sub in substitutions(p, leading_zeros=window + 1):
        value = sub.apply(p)
        if sub.position < digit_count(p) and value < 2:
            return WindowVerdict(False, witness=value)
        if is_prime(value):
            return WindowVerdict(False, witness=value)
    return WindowVerdict(True)


def find_first_digitally_delicate(bound: int) -> Optional[int]:
    """Least digitally delicate prime <= bound, or None."""
    if bound < 2:
        return None
    for p in primes_up_to(bound):
        if is_digitally_delicate(p):
            return p
    return None


def is_composite_digit_stable(n: int) -> bool:
    """Whether the composite n, coprime to 10, stays composite under every
    written-digit substitution (no leading-zero window here).

    Raises ValueError if n is prime or shares a factor with 10.
    """
    if is_prime(n) or n < 4:
        raise ValueError(f"{n} is not composite")
    if math.gcd(n, 10) != 1:
        raise ValueError(f"{n} is not coprime to 10")
    for sub in substitutions(n):
        value = sub.apply(n)
        if value < 2 or is_prime(value):
            return False
    return True
