"""Covering systems of congruences, the prime tables behind them, and the
arithmetic-progression constructions that make every digit substitution of a
number divisible by a fixed prime.

The package is organized around the pipeline:

    arith          exact integer primitives (orders, CRT, primality, factoring)
    cyclotomic     cyclotomic values at 10 and the order-m prime tables
    covering       covering systems and their verification (naive + residue-class)
    construction   binding coverings to primes: the An+B progression
    delicate       digit-substitution predicates on concrete numbers
    graham         Fibonacci-like recurrences whose terms are all composite
    bundle         shipped data tables, ingestion, and the verification report
"""

__version__ = "0.1.0"
