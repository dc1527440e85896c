"""Shipped covering tables, their ingestion, and the verification report.

The package ships one covering file per digit offset d with d not congruent
to 2 mod 3 (the remaining six digits are handled by the single congruence
0 mod 1 assigned to the prime 3, recorded as `mod3` digits in the
manifest), plus a reference file of expected order-m prime counts.  The
report re-verifies every covering, compares congruence counts, moduli lcm
and largest prime factor against the embedded expected values, resolves
prime assignments where the order-m prime lists can be computed, and
checks every prime shared between digits for residue consistency.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Optional, Sequence, Union

from .arith import FactorBudget, DEFAULT_BUDGET
from .covering import (
    Congruence,
    CoveringSystem,
    is_covering_fast,
    is_covering_naive,
    lcm_analysis,
)
from .construction import cross_digit_consistency, derive_b_residue
from .cyclotomic import load_order_counts, load_order_table, OrderTable, primes_of_order

__all__ = [
    "TableBundle",
    "BundleError",
    "ingest_tables",
    "default_bundle",
    "parse_covering_file",
    "write_covering_file",
    "reproduce_report",
    "resolve_assignment",
    "VerificationReport",
    "EXPECTED_CONGRUENCE_COUNTS",
    "EXPECTED_LCM",
    "EXPECTED_MAX_PRIME",
    "MOD3_DIGITS",
    "REPEATED_PRIME_DIGITS",
    "DATA_ROOT",
]

DATA_ROOT = Path(__file__).parent / "data"

MOD3_DIGITS = frozenset({-7, -4, -1, 2, 5, 8})

# Expected congruence counts per digit offset.
EXPECTED_CONGRUENCE_COUNTS = {
    -9: 232, -8: 441, -7: 1, -6: 257, -5: 268, -4: 1, -3: 739, -2: 289,
    -1: 1, 1: 37, 2: 1, 3: 203, 4: 26, 5: 1, 6: 19, 7: 137, 8: 1, 9: 4,
}

# Expected lcm of the moduli per tabulated digit.
EXPECTED_LCM = {
    -9: 14433138720, -8: 699847948800, -6: 1045044000, -5: 56216160,
    -3: 1486147703040, -2: 321253732800, 1: 5040, 3: 133333200,
    4: 1296, 6: 360, 7: 18295200, 9: 8,
}

# Expected largest prime factor of that lcm.
EXPECTED_MAX_PRIME = {
    -9: 31, -8: 17, -6: 29, -5: 13, -3: 19, -2: 23,
    1: 7, 3: 37, 4: 3, 6: 5, 7: 11, 9: 2,
}

# Primes serving more than one digit offset: prime -> (digits, table index).
REPEATED_PRIME_DIGITS = {
    3: ((-7, -4, -1, 2, 5, 8), 1),
    7: ((-9, -8, -6, -5, -3, 3, 4), 1),
    11: ((-9, -2, 9), 1),
    13: ((-9, -3, 3, 4), 2),
    17: ((-8, -6, -3, -2, 7), 1),
    19: ((-6, 4), 1),
    23: ((-9, -8, -6, -3, 3, 7), 1),
    29: ((-9, -8, -6, 1, 3), 1),
    31: ((-8, -2, 6), 1),
    37: ((3, 4), 1),
    43: ((-8, -3, 1), 1),
    53: ((-8, -5, 3), 1),
    61: ((-6, 3, 6), 1),
    67: ((-9, 7), 1),
    79: ((-9, -5), 2),
    89: ((-6, -3, 7), 1),
    103: ((-9, -8, -3), 1),
    199: ((-6, -3, 7), 1),
    211: ((-6, 6), 1),
    241: ((-6, 6), 2),
    331: ((-8, 7), 1),
    353: ((-6, 7), 1),
    409: ((-8, -3), 1),
    449: ((-9, 7), 2),
    2161: ((-6, 6), 3),
    3541: ((-6, 6), 1),
    9091: ((-6, 6), 1),
    27961: ((-6, 6), 2),
    1676321: ((-6, 6), 1),
    3762091: ((-6, 6), 2),
    4188901: ((-6, 6), 2),
    39526741: ((-6, 6), 3),
    5964848081: ((-6, 6), 2),
}

ALL_DIGITS = tuple(d for d in range(-9, 10) if d != 0)


class BundleError(ValueError):
    """Malformed or incomplete table data; str() carries file:line context."""


@dataclass(frozen=True)
class CoveringRow:
    congruence: Congruence
    rho: Optional[int] = None


@dataclass
class ParsedCovering:
    digit: Optional[int]
    rows: list[CoveringRow]
    warnings: list[str] = field(default_factory=list)


def parse_covering_file(path: Union[str, Path]) -> ParsedCovering:
    """Parse a covering file: optional `# digit <d>` header, then one
    `a m [rho]` line per congruence.  Residues outside [0, m) are
    normalized with a warning; anything else malformed raises BundleError
    with the offending location."""
    path = Path(path)
    digit: Optional[int] = None
    rows: list[CoveringRow] = []
    warnings: list[str] = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "digit":
                try:
                    digit = int(parts[1])
                except ValueError:
                    raise BundleError(
                        f"{path}:{lineno}: bad digit header {raw!r}"
                    ) from None
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise BundleError(
                f"{path}:{lineno}: expected 'a m [rho]', got {raw!r}"
            )
        try:
            numbers = [int(s) for s in parts]
        except ValueError:
            raise BundleError(
                f"{path}:{lineno}: non-integer field in {raw!r}"
            ) from None
        a, m = numbers[0], numbers[1]
        rho = numbers[2] if len(numbers) == 3 else None
        if m < 1:
            raise BundleError(f"{path}:{lineno}: modulus {m} must be positive")
        if rho is not None and rho < 1:
            raise BundleError(f"{path}:{lineno}: index {rho} must be >= 1")
        if not 0 <= a < m:
            warnings.append(
                f"{path}:{lineno}: residue {a} normalized to {a % m} (mod {m})"
            )
        rows.append(CoveringRow(Congruence.reduced(a, m), rho))
    return ParsedCovering(digit=digit, rows=rows, warnings=warnings)


def write_covering_file(
    path: Union[str, Path], digit: int, rows: Sequence[CoveringRow]
) -> None:
    lines = [f"# digit {digit}"]
    for row in rows:
        c = row.congruence
        tail = f" {row.rho}" if row.rho is not None else ""
        lines.append(f"{c.residue} {c.modulus}{tail}")
    Path(path).write_text("\n".join(lines) + "\n")


@dataclass
class TableBundle:
    """All shipped or ingested table data for the 18 digit offsets."""

    coverings: dict[int, tuple[CoveringRow, ...]]
    mod3_digits: frozenset[int]
    order_counts: Optional[dict[int, int]] = None
    order_table: Optional[OrderTable] = None
    manifest: Optional[dict] = None
    warnings: list[str] = field(default_factory=list)

    def digits(self) -> tuple[int, ...]:
        return ALL_DIGITS

    def system(self, digit: int) -> CoveringSystem:
        if digit in self.mod3_digits:
            return CoveringSystem((Congruence(0, 1),))
        return CoveringSystem(tuple(r.congruence for r in self.coverings[digit]))

    def rows(self, digit: int) -> tuple[CoveringRow, ...]:
        if digit in self.mod3_digits:
            return (CoveringRow(Congruence(0, 1), 1),)
        return self.coverings[digit]


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def ingest_tables(directory: Union[str, Path]) -> TableBundle:
    """Load a bundle directory.

    Expects `coverings/d<d>.txt` files described by `coverings/manifest.json`
    (falling back to globbing when no manifest exists), and optionally
    `order_prime_counts.txt` and `order_table.txt` at the top level.  Raises
    BundleError when a digit is neither tabulated nor marked mod3, when a
    manifest row count disagrees with the file, or on any parse error.
    """
    root = Path(directory)
    if not root.is_dir():
        raise BundleError(f"{root} is not a directory")
    cov_dir = root / "coverings" if (root / "coverings").is_dir() else root

    manifest = None
    manifest_path = cov_dir / "manifest.json"
    if manifest_path.exists():
        try:
            manifest = json.loads(manifest_path.read_text())
        except json.JSONDecodeError as exc:
            raise BundleError(f"{manifest_path}: invalid JSON: {exc}") from None

    coverings: dict[int, tuple[CoveringRow, ...]] = {}
    warnings: list[str] = []
    if manifest is not None:
        mod3 = frozenset(manifest.get("mod3_digits", ()))
        for digit_str, info in sorted(
            manifest.get("digits", {}).items(), key=lambda kv: int(kv[0])
        ):
            digit = int(digit_str)
            parsed = parse_covering_file(cov_dir / info["file"])
            warnings.extend(parsed.warnings)
            if parsed.digit is not None and parsed.digit != digit:
                raise BundleError(
                    f"{info['file']}: header digit {parsed.digit} "
                    f"disagrees with manifest digit {digit}"
                )
            if "congruences" in info and info["congruences"] != len(parsed.rows):
                raise BundleError(
                    f"{info['file']}: {len(parsed.rows)} congruences, "
                    f"manifest says {info['congruences']}"
                )
            if "sha256" in info:
                digest = _sha256(cov_dir / info["file"])
                if digest != info["sha256"]:
                    raise BundleError(f"{info['file']}: checksum mismatch")
            coverings[digit] = tuple(parsed.rows)
    else:
        mod3 = MOD3_DIGITS
        for path in sorted(cov_dir.glob("d*.txt")):
            parsed = parse_covering_file(path)
            warnings.extend(parsed.warnings)
            digit = parsed.digit
            if digit is None:
                try:
                    digit = int(path.stem[1:])
                except ValueError:
                    raise BundleError(
                        f"{path}: no digit header and unrecognized name"
                    ) from None
            coverings[digit] = tuple(parsed.rows)

    missing = [
        d for d in ALL_DIGITS if d not in coverings and d not in mod3
    ]
    if missing:
        raise BundleError(
            f"digit coverage gap: no covering table or mod3 marker for {missing}"
        )

    order_counts = None
    counts_path = root / "order_prime_counts.txt"
    if counts_path.exists():
        order_counts = load_order_counts(counts_path)

    order_table = None
    table_path = root / "order_table.txt"
    if table_path.exists():
        order_table = load_order_table(table_path)

    return TableBundle(
        coverings=coverings,
        mod3_digits=frozenset(mod3),
        order_counts=order_counts,
        order_table=order_table,
        manifest=manifest,
        warnings=warnings,
    )


@lru_cache(maxsize=1)
def default_bundle() -> TableBundle:
    """The bundle shipped with the package."""
    return ingest_tables(DATA_ROOT)


def resolve_assignment(
    m: int, rho: int, budget: FactorBudget = DEFAULT_BUDGET
) -> Optional[int]:
    """The rho-th smallest prime with 10 of order m, or None if unknown.

    With an incomplete factorization, indices are still exact for primes
    below the trial-division bound: every order-m prime smaller than such a
    prime was necessarily found.  Indices beyond that reliable prefix
    return None rather than guessing.
    """
    result = primes_of_order(m, budget)
    if result.complete:
        reliable = len(result.primes)
    else:
        reliable = sum(1 for p in result.primes if p < budget.trial_bound)
    if 1 <= rho <= reliable:
        return result.primes[rho - 1]
    return None


@dataclass
class DigitReport:
    digit: int
    source: str  # "table" or "mod3"
    congruences: int
    lcm: int
    max_prime: int
    covering: bool
    witness: Optional[int]
    seconds: float
    expected_congruences: Optional[int]
    expected_lcm: Optional[int]
    expected_max_prime: Optional[int]
    resolved: int
    total: int

    @property
    def matches_expected(self) -> bool:
        ok = True
        if self.expected_congruences is not None:
            ok &= self.congruences == self.expected_congruences
        if self.expected_lcm is not None:
            ok &= self.lcm == self.expected_lcm
        if self.expected_max_prime is not None:
            ok &= self.max_prime == self.expected_max_prime
        return ok

    @property
    def ok(self) -> bool:
        return self.covering and self.matches_expected


@dataclass
class SharedPrimeCheck:
    prime: int
    uses: tuple[tuple[int, int], ...]  # (digit, residue a)
    consistent: bool
    offset_residue: Optional[int]


@dataclass
class VerificationReport:
    digits: list[DigitReport]
    shared: list[SharedPrimeCheck]
    seconds: float
    resolve_limit: int

    @property
    def ok(self) -> bool:
        return all(d.ok for d in self.digits) and all(
            s.consistent for s in self.shared
        )

    def lines(self) -> list[str]:
        out = [
            f"{'d':>3} {'cong':>5} {'lcm':>14} {'max p':>6} "
            f"{'covering':>9} {'expected':>9} {'assigned':>9} {'time':>8}"
        ]
        for r in self.digits:
            assigned = f"{r.resolved}/{r.total}"
            out.append(
                f"{r.digit:>3} {r.congruences:>5} {r.lcm:>14} {r.max_prime:>6} "
                f"{str(r.covering):>9} {str(r.matches_expected):>9} "
                f"{assigned:>9} {r.seconds:>7.2f}s"
            )
            if not r.covering:
                out.append(f"    uncovered witness: {r.witness}")
        shared_ok = sum(1 for s in self.shared if s.consistent)
        out.append(
            f"shared primes consistent: {shared_ok}/{len(self.shared)} "
            f"(assignments resolved for moduli <= {self.resolve_limit})"
        )
        for s in self.shared:
            if not s.consistent:
                out.append(f"    INCONSISTENT prime {s.prime}: uses {s.uses}")
        out.append(f"total {self.seconds:.2f}s; overall {'OK' if self.ok else 'FAIL'}")
        return out

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "seconds": self.seconds,
            "digits": [
                {
                    "digit": r.digit,
                    "source": r.source,
                    "congruences": r.congruences,
                    "lcm": str(r.lcm),
                    "max_prime": str(r.max_prime),
                    "covering": r.covering,
                    "witness": None if r.witness is None else str(r.witness),
                    "matches_expected": r.matches_expected,
                    "resolved_assignments": r.resolved,
                    "total_assignments": r.total,
                    "seconds": r.seconds,
                }
                for r in self.digits
            ],
            "shared_primes": [
                {
                    "prime": str(s.prime),
                    "uses": [list(u) for u in s.uses],
                    "consistent": s.consistent,
                }
                for s in self.shared
            ],
        }


def _verify_digit(bundle: TableBundle, digit: int, resolve_limit: int) -> DigitReport:
    start = time.perf_counter()
    source = "mod3" if digit in bundle.mod3_digits else "table"
    system = bundle.system(digit)
    analysis = lcm_analysis(system)
    if analysis.lcm <= 10 ** 6:
        verdict = is_covering_naive(system)
    else:
        verdict = is_covering_fast(system)
    resolved = 0
    rows = bundle.rows(digit)
    for row in rows:
        if row.rho is None:
            continue
        m = row.congruence.modulus
        if m <= resolve_limit and resolve_assignment(m, row.rho) is not None:
            resolved += 1
    return DigitReport(
        digit=digit,
        source=source,
        congruences=analysis.count,
        lcm=analysis.lcm,
        max_prime=analysis.max_prime,
        covering=verdict.covering,
        witness=verdict.witness,
        seconds=time.perf_counter() - start,
        expected_congruences=EXPECTED_CONGRUENCE_COUNTS.get(digit),
        expected_lcm=EXPECTED_LCM.get(digit) if source == "table" else 1,
        expected_max_prime=(
            EXPECTED_MAX_PRIME.get(digit) if source == "table" else 1
        ),
        resolved=resolved,
        total=len(rows),
    )


def shared_prime_checks(
    bundle: TableBundle, resolve_limit: int
) -> list[SharedPrimeCheck]:
    """Resolve assignments up to the modulus limit and check every prime
    used by more than one digit for offset-residue consistency."""
    uses: dict[int, list[tuple[int, int]]] = {}
    for digit in bundle.digits():
        for row in bundle.rows(digit):
            m = row.congruence.modulus
            if row.rho is None or m > resolve_limit:
                continue
            prime = 3 if digit in bundle.mod3_digits else resolve_assignment(m, row.rho)
            if prime is None:
                continue
            uses.setdefault(prime, []).append((digit, row.congruence.residue))
    checks = []
    for prime in sorted(uses):
        if len(uses[prime]) < 2:
            continue
        pairs = tuple(uses[prime])
        consistent = cross_digit_consistency(prime, pairs)
        residue = derive_b_residue(*pairs[0], prime) if consistent else None
        checks.append(
            SharedPrimeCheck(
                prime=prime,
                uses=pairs,
                consistent=consistent,
                offset_residue=residue,
            )
        )
    return checks


def reproduce_report(
    bundle: Optional[TableBundle] = None,
    threads: int = 1,
    resolve_limit: int = 64,
) -> VerificationReport:
    """Re-verify every shipped covering and compare with the expected data.

    Per digit: congruence count, moduli lcm, largest prime factor, covering
    verdict and wall time, each checked against the embedded expected
    values.  Digits may be verified concurrently; the report order is fixed
    by digit value, and shared-prime consistency is checked at the end.
    """
    if bundle is None:
        bundle = default_bundle()
    start = time.perf_counter()
    digits = list(bundle.digits())
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(
                pool.map(lambda d: _verify_digit(bundle, d, resolve_limit), digits)
            )
    else:
        reports = [_verify_digit(bundle, d, resolve_limit) for d in digits]
    shared = shared_prime_checks(bundle, resolve_limit)
    return VerificationReport(
        digits=reports,
        shared=shared,
        seconds=time.perf_counter() - start,
        resolve_limit=resolve_limit,
    )
