"""Command-line front end.

Subcommands: cover, construct, delicate, graham, order, report.
All numeric input and output is decimal strings.  Exit codes: 0 success,
1 verification failure (a witness is printed when one exists), 2 data or
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import __version__
from .arith import FactorBudget, is_prime
from .bundle import (
    BundleError,
    default_bundle,
    ingest_tables,
    parse_covering_file,
    reproduce_report,
    resolve_assignment,
)
from .construction import (
    Assignment,
    DigitCovering,
    assemble,
    load_construction,
    substitution_divisor,
    write_construction,
)
from .covering import (
    CoveringSystem,
    is_covering_fast,
    is_covering_naive,
    lcm_analysis,
    reduction_profile,
)
from .cyclotomic import load_order_table, primes_of_order, validate_order_table
from .delicate import (
    is_composite_digit_stable,
    is_digitally_delicate,
    is_widely_digitally_delicate_window,
    find_first_digitally_delicate,
    substitution_report,
)
from .graham import GrahamInstance, reduce_seeds, verify_cover

OK, FAIL, ERROR = 0, 1, 2


def _budget_from_seconds(seconds: Optional[float]) -> FactorBudget:
    """Scale the factoring effort knob from a rough seconds budget."""
    if seconds is None:
        return FactorBudget()
    iterations = max(10_000, int(seconds * 250_000))
    return FactorBudget(rho_iterations=iterations)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def _load_system(path: str) -> tuple[CoveringSystem, Optional[int]]:
    parsed = parse_covering_file(path)
    for w in parsed.warnings:
        print(w, file=sys.stderr)
    system = CoveringSystem(tuple(r.congruence for r in parsed.rows))
    return system, parsed.digit


def cmd_cover_verify(args) -> int:
    system, digit = _load_system(args.file)
    analysis = lcm_analysis(system)
    if args.naive:
        verdict = is_covering_naive(system)
    elif args.fast or args.w is not None:
        verdict = is_covering_fast(system, w=args.w)
    elif analysis.lcm <= 10 ** 6:
        verdict = is_covering_naive(system)
    else:
        verdict = is_covering_fast(system)

    payload = {
        "file": args.file,
        "digit": digit,
        "congruences": analysis.count,
        "lcm": str(analysis.lcm),
        "max_prime": str(analysis.max_prime),
        "covering": verdict.covering,
        "witness": None if verdict.witness is None else str(verdict.witness),
    }
    lines = [
        f"congruences: {analysis.count}",
        f"lcm: {analysis.lcm}",
        f"max prime: {analysis.max_prime}",
        f"covering: {verdict.covering}"
        + ("" if verdict.covering else f" (uncovered: {verdict.witness})"),
    ]

    if args.profile:
        profile = reduction_profile(system, w=args.w)
        w = profile[0].w if profile else 1
        max_span = max(r.span for r in profile)
        top = [r.u for r in profile if r.span == max_span]
        payload["profile"] = {
            "w": w,
            "max_span": max_span,
            "max_span_classes": top,
            "classes": [
                {
                    "u": r.u,
                    "kept": len(r.congruences),
                    "lcm": str(r.lcm_prime),
                    "delta": str(r.delta),
                    "span": str(r.span),
                    "covered": r.covered,
                }
                for r in profile
            ],
        }
        lines.append(f"profile: w={w}, max span {max_span} at u in {top}")
        if w <= 100:
            for r in profile:
                lines.append(
                    f"  u={r.u:>4}  kept={len(r.congruences):>4}  "
                    f"lcm'={r.lcm_prime}  delta={r.delta}  span={r.span}  "
                    f"covered={r.covered}"
                )
    _emit(args, payload, lines)
    return OK if verdict.covering else FAIL


def _build_digit_covering(digit: int, tables_dir: Optional[str], budget) -> DigitCovering:
    from .covering import Congruence

    if digit % 3 == 2:
        return DigitCovering(
            digit=digit,
            entries=(Assignment(Congruence(0, 1), 3, rho=1),),
        )
    bundle = ingest_tables(tables_dir) if tables_dir else default_bundle()
    if digit not in bundle.coverings:
        raise BundleError(f"no covering table for digit {digit}")
    entries = []
    for row in bundle.coverings[digit]:
        if row.rho is None:
            raise BundleError(
                f"digit {digit}: congruence {row.congruence} has no prime index"
            )
        prime = resolve_assignment(row.congruence.modulus, row.rho, budget)
        if prime is None:
            raise BundleError(
                f"digit {digit}: cannot resolve the prime for "
                f"{row.congruence} (index {row.rho}); the order-"
                f"{row.congruence.modulus} prime list is not computable "
                "within budget"
            )
        entries.append(Assignment(row.congruence, prime, rho=row.rho))
    return DigitCovering(digit=digit, entries=tuple(entries))


def cmd_construct_assemble(args) -> int:
    budget = _budget_from_seconds(args.budget)
    digits = [int(s) for s in args.digits.split(",") if s.strip()]
    coverings = [_build_digit_covering(d, args.tables, budget) for d in digits]
    construction = assemble(coverings)
    if args.out:
        write_construction(construction, args.out)
    payload = {
        "digits": sorted(construction.digits),
        "A": str(construction.modulus),
        "B": str(construction.offset),
        "constraints": [
            {"prime": str(p), "residue": str(r)}
            for p, r in construction.residue_constraints
        ],
        "probable_primes": sorted(str(p) for p in construction.probable_primes),
    }
    lines = [
        f"A={construction.modulus}",
        f"B={construction.offset}",
        f"digits: {sorted(construction.digits)}",
        f"constraints: "
        + ", ".join(f"B={r} (mod {p})" for p, r in construction.residue_constraints),
    ]
    if args.out:
        lines.append(f"written to {args.out}")
    _emit(args, payload, lines)
    return OK


def cmd_construct_certify(args) -> int:
    construction = load_construction(args.construction)
    n, d, k = int(args.n), int(args.d), int(args.k)
    cert = substitution_divisor(construction, n, d, k)
    ok = cert.check()
    payload = {
        "n": str(n),
        "d": d,
        "k": k,
        "prime": str(cert.prime),
        "congruence": {"residue": cert.congruence.residue, "modulus": cert.congruence.modulus},
        "value": str(cert.value),
        "valid": ok,
    }
    lines = [
        f"value n + ({d})*10^{k} = {cert.value}",
        f"divisible by {cert.prime} via k = {cert.congruence}",
        f"certificate valid: {ok}",
    ]
    _emit(args, payload, lines)
    return OK if ok else FAIL


def cmd_delicate_check(args) -> int:
    n = int(args.n)
    if not is_prime(n):
        print(f"{n} is not prime", file=sys.stderr)
        return ERROR
    delicate = is_digitally_delicate(n)
    payload = {"n": str(n), "digitally_delicate": delicate}
    lines = [f"digitally delicate: {delicate}"]
    code = OK if delicate else FAIL
    if not delicate:
        for sub, value, prime in substitution_report(n):
            if prime or value < 2:
                lines.append(
                    f"witness: position {sub.position}, "
                    f"{sub.original} -> {sub.replacement} gives {value}"
                )
                payload["witness"] = str(value)
                break
    if args.widely is not None and delicate:
        verdict = is_widely_digitally_delicate_window(n, window=args.widely)
        payload["window"] = args.widely
        payload["window_passed"] = verdict.passed
        if verdict.passed:
            lines.append(
                f"no prime under any substitution through "
                f"{args.widely + 1} leading zeros (not a proof)"
            )
        else:
            payload["witness"] = str(verdict.witness)
            lines.append(f"leading-zero window fails: {verdict.witness} is prime")
            code = FAIL
    _emit(args, payload, lines)
    return code


def cmd_delicate_scan(args) -> int:
    bound = int(args.bound)
    found = find_first_digitally_delicate(bound)
    payload = {"bound": str(bound), "first": None if found is None else str(found)}
    lines = [str(found) if found is not None else "none"]
    _emit(args, payload, lines)
    return OK


def cmd_delicate_stable(args) -> int:
    n = int(args.n)
    stable = is_composite_digit_stable(n)
    payload = {"n": str(n), "composite_digit_stable": stable}
    lines = [f"composite digit stable: {stable}"]
    if not stable:
        for sub, value, prime in substitution_report(n):
            if prime or value < 2:
                payload["witness"] = str(value)
                lines.append(
                    f"witness: position {sub.position}, "
                    f"{sub.original} -> {sub.replacement} gives {value}"
                )
                break
    _emit(args, payload, lines)
    return OK if stable else FAIL


def _parse_instance(args) -> GrahamInstance:
    primes = tuple(int(s) for s in args.primes.split(",") if s.strip())
    return GrahamInstance(a=int(args.a), b=int(args.b), primes=primes)


def cmd_graham_verify(args) -> int:
    instance = _parse_instance(args)
    report = verify_cover(instance)
    payload = {
        "a": str(instance.a),
        "b": str(instance.b),
        "primes": [str(p) for p in instance.primes],
        "product": str(instance.product),
        "period_lcm": report.period_lcm,
        "covered": report.covered,
        "uncovered_index": report.uncovered_index,
        "terms_exceed_primes": report.terms_exceed_primes,
        "periods": {
            str(p): {"period": rp.period, "zeros": sorted(rp.zero_indices)}
            for p, rp in report.periods.items()
        },
    }
    lines = [
        f"N = {instance.product}",
        f"period lcm: {report.period_lcm}",
        f"every index divisible by a listed prime: {report.covered}"
        + (
            ""
            if report.covered
            else f" (uncovered index {report.uncovered_index})"
        ),
    ]
    _emit(args, payload, lines)
    return OK if report.covered else FAIL


def cmd_graham_reduce(args) -> int:
    instance = _parse_instance(args)
    red = reduce_seeds(instance)
    payload = {
        "gcd_a": str(red.gcd_a),
        "gcd_b": str(red.gcd_b),
        "a_reduced": str(red.a_reduced),
        "a_modulus": str(red.a_modulus),
        "b_reduced": str(red.b_reduced),
        "b_modulus": str(red.b_modulus),
    }
    lines = [
        f"gcd(a, N) = {red.gcd_a}; a' = {red.a_reduced} (mod {red.a_modulus})",
        f"gcd(b, N) = {red.gcd_b}; b' = {red.b_reduced} (mod {red.b_modulus})",
    ]
    _emit(args, payload, lines)
    return OK


def cmd_order_primes(args) -> int:
    budget = _budget_from_seconds(args.budget)
    result = primes_of_order(int(args.m), budget)
    payload = {
        "m": result.modulus,
        "primes": [str(p) for p in result.primes],
        "complete": result.complete,
        "remainder_digits": (
            None if result.remainder is None else len(str(result.remainder))
        ),
    }
    lines = [
        f"primes with 10 of order {result.modulus}: "
        + ", ".join(str(p) for p in result.primes),
        f"complete: {result.complete}"
        + (
            ""
            if result.complete
            else f" (unfactored {len(str(result.remainder))}-digit cofactor)"
        ),
    ]
    _emit(args, payload, lines)
    return OK


def cmd_order_validate(args) -> int:
    budget = _budget_from_seconds(args.budget)
    table = load_order_table(args.file)
    report = validate_order_table(table, budget)
    violations = report.all_violations()
    payload = {
        "file": args.file,
        "rows": len(table),
        "valid": report.valid,
        "violations": violations,
    }
    lines = [f"rows: {len(table)}", f"valid: {report.valid}"]
    lines.extend(f"  {v}" for v in violations)
    _emit(args, payload, lines)
    return OK if report.valid else FAIL


def cmd_order_counts(args) -> int:
    bundle = ingest_tables(args.tables) if args.tables else default_bundle()
    if bundle.order_counts is None:
        print("bundle has no order_prime_counts.txt", file=sys.stderr)
        return ERROR
    budget = _budget_from_seconds(args.budget)
    rows = []
    ok = True
    for m in sorted(bundle.order_counts):
        if m > args.limit:
            continue
        expected = bundle.order_counts[m]
        computed = primes_of_order(m, budget)
        enough = not computed.complete or len(computed.primes) >= expected
        ok &= enough
        rows.append(
            {
                "m": m,
                "expected_at_least": expected,
                "computed": len(computed.primes),
                "complete": computed.complete,
                "ok": enough,
            }
        )
    payload = {"rows": rows, "ok": ok}
    lines = [f"{'m':>5} {'used':>5} {'found':>6} {'complete':>9} {'ok':>4}"]
    for r in rows:
        lines.append(
            f"{r['m']:>5} {r['expected_at_least']:>5} {r['computed']:>6} "
            f"{str(r['complete']):>9} {str(r['ok']):>4}"
        )
    lines.append(f"all rows consistent: {ok}")
    _emit(args, payload, lines)
    return OK if ok else FAIL


def cmd_report(args) -> int:
    bundle = ingest_tables(args.tables) if args.tables else default_bundle()
    report = reproduce_report(
        bundle, threads=args.threads, resolve_limit=args.resolve_limit
    )
    _emit(args, report.to_dict(), report.lines())
    return OK if report.ok else FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="digitcover",
        description=(
            "Verify covering systems, their prime tables, and the "
            "digit-substitution compositeness constructions built on them."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    parser.add_argument(
        "--threads", type=int, default=1, help="worker threads where supported"
    )
    parser.add_argument(
        "--budget",
        type=float,
        default=None,
        help="approximate seconds of factoring effort for order-table work",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cover = sub.add_parser("cover", help="covering-system verification")
    cover_sub = cover.add_subparsers(dest="subcommand", required=True)
    verify = cover_sub.add_parser("verify", help="verify a covering file")
    verify.add_argument("file")
    route = verify.add_mutually_exclusive_group()
    route.add_argument("--naive", action="store_true", help="full interval scan")
    route.add_argument("--fast", action="store_true", help="residue-class route")
    verify.add_argument("--w", type=int, default=None, help="class modulus (fast route)")
    verify.add_argument("--profile", action="store_true", help="per-class reductions")
    verify.set_defaults(func=cmd_cover_verify)

    construct = sub.add_parser("construct", help="progression assembly")
    construct_sub = construct.add_subparsers(dest="subcommand", required=True)
    asm = construct_sub.add_parser("assemble", help="assemble a construction")
    asm.add_argument("--digits", required=True, help="comma-separated digit offsets")
    asm.add_argument("--tables", default=None, help="bundle directory (default: shipped)")
    asm.add_argument("--out", default=None, help="write the construction to a file")
    asm.set_defaults(func=cmd_construct_assemble)
    certify = construct_sub.add_parser("certify", help="divisor certificate for one substitution")
    certify.add_argument("--construction", required=True, help="file from assemble --out")
    certify.add_argument("--n", required=True, help="progression element (decimal)")
    certify.add_argument("--d", required=True, help="digit offset")
    certify.add_argument("--k", required=True, help="substitution exponent")
    certify.set_defaults(func=cmd_construct_certify)

    delicate = sub.add_parser("delicate", help="digit-substitution predicates")
    delicate_sub = delicate.add_subparsers(dest="subcommand", required=True)
    check = delicate_sub.add_parser("check", help="digital delicacy of a prime")
    check.add_argument("n")
    check.add_argument(
        "--widely",
        type=int,
        default=None,
        metavar="K",
        help="also test K+1 leading-zero positions",
    )
    check.set_defaults(func=cmd_delicate_check)
    scan = delicate_sub.add_parser("scan", help="first digitally delicate prime")
    scan.add_argument("--bound", required=True)
    scan.set_defaults(func=cmd_delicate_scan)
    stable = delicate_sub.add_parser("stable", help="composite digit stability")
    stable.add_argument("n")
    stable.set_defaults(func=cmd_delicate_stable)

    graham = sub.add_parser("graham", help="composite recurrence covers")
    graham_sub = graham.add_subparsers(dest="subcommand", required=True)
    gverify = graham_sub.add_parser("verify", help="verify the compositeness cover")
    gverify.add_argument("--a", required=True)
    gverify.add_argument("--b", required=True)
    gverify.add_argument("--primes", required=True, help="comma-separated primes")
    gverify.set_defaults(func=cmd_graham_verify)
    greduce = graham_sub.add_parser("reduce", help="factor the seed congruences")
    greduce.add_argument("--a", required=True)
    greduce.add_argument("--b", required=True)
    greduce.add_argument("--primes", required=True)
    greduce.set_defaults(func=cmd_graham_reduce)

    order = sub.add_parser("order", help="order-m prime tables")
    order_sub = order.add_subparsers(dest="subcommand", required=True)
    oprimes = order_sub.add_parser("primes", help="primes with 10 of a given order")
    oprimes.add_argument("m")
    oprimes.set_defaults(func=cmd_order_primes)
    ovalidate = order_sub.add_parser("validate", help="validate an order-table file")
    ovalidate.add_argument("file")
    ovalidate.set_defaults(func=cmd_order_validate)
    ocounts = order_sub.add_parser(
        "counts", help="compare computed prime counts with the shipped reference"
    )
    ocounts.add_argument("--limit", type=int, default=40, help="largest order to check")
    ocounts.add_argument("--tables", default=None)
    ocounts.set_defaults(func=cmd_order_counts)

    report = sub.add_parser("report", help="full verification report")
    report.add_argument("--tables", default=None, help="bundle directory")
    report.add_argument(
        "--resolve-limit",
        type=int,
        default=64,
        help="resolve prime assignments for moduli up to this bound",
    )
    report.set_defaults(func=cmd_report)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BundleError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
