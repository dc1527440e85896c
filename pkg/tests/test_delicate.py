import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from digitcover.arith import is_prime
from digitcover.construction import substitution_divisor
from digitcover.delicate import (
    Substitution,
    digit_at,
    digit_count,
    find_first_digitally_delicate,
    is_composite_digit_stable,
    is_digitally_delicate,
    is_widely_digitally_delicate_window,
    substitution_report,
    substitutions,
)


class TestSubstitution:
    def test_apply_and_inverse(self):
        sub = Substitution(2, 4, 7)
        n = 294401
        assert sub.apply(n) == 294701
        assert sub.inverse().apply(294701) == n

    def test_validation(self):
        with pytest.raises(ValueError):
            Substitution(0, 3, 3)
        with pytest.raises(ValueError):
            Substitution(-1, 0, 1)
        with pytest.raises(ValueError):
            Substitution(0, 10, 1)

    def test_wrong_original_digit_rejected(self):
        with pytest.raises(ValueError, match="position"):
            Substitution(0, 5, 1).apply(294001)

    def test_leading_zero_positions(self):
        sub = Substitution(6, 0, 1)
        assert sub.apply(294001) == 1294001

    @given(
        st.integers(min_value=0, max_value=10 ** 18),
        st.integers(min_value=0, max_value=24),
        st.integers(min_value=0, max_value=9),
    )
    @settings(max_examples=500)
    def test_involution(self, n, k, r):
        o = digit_at(n, k)
        if r == o:
            return
        sub = Substitution(k, o, r)
        assert sub.inverse().apply(sub.apply(n)) == n

    @given(st.integers(min_value=1, max_value=10 ** 18))
    @settings(max_examples=500)
    def test_string_edit_equivalence(self, n):
        rng = random.Random(n)
        width = digit_count(n)
        k = rng.randrange(width)
        text = str(n)
        o = int(text[width - 1 - k])
        r = rng.choice([x for x in range(10) if x != o])
        edited = text[: width - 1 - k] + str(r) + text[width - k :]
        assert Substitution(k, o, r).apply(n) == int(edited)

    def test_substitution_count(self):
        assert sum(1 for _ in substitutions(294001)) == 54
        assert sum(1 for _ in substitutions(294001, leading_zeros=2)) == 54 + 18


class TestDigitallyDelicate:
    def test_294001_is_delicate(self):
        assert is_digitally_delicate(294001)

    def test_294001_report_all_composite_or_equal(self):
        rows = substitution_report(294001)
        assert len(rows) == 54
        for sub, value, prime in rows:
            assert value != 294001
            assert not prime, (sub, value)
        # the display set includes the shortened number from the leading digit
        values = {v for _, v, _ in rows}
        assert 94001 in values and 194001 in values and 994001 in values

    def test_two_is_not(self):
        assert not is_digitally_delicate(2)  # 3 is prime

    def test_rejects_composites(self):
        with pytest.raises(ValueError, match="not prime"):
            is_digitally_delicate(294002)

    def test_smaller_primes_are_not_delicate(self):
        for p in (2, 3, 5, 7, 11, 101, 293999):
            if is_prime(p):
                assert not is_digitally_delicate(p)


class TestWidelyWindow:
    def test_294001_fails_with_10294001(self):
        verdict = is_widely_digitally_delicate_window(294001, window=1)
        assert not verdict.passed
        assert verdict.witness == 10294001

    def test_first_leading_zero_position_alone_is_quiet(self):
        # all single-step leading-zero changes of 294001 are composite; the
        # failure needs the second position, so the window spans both
        for d in range(1, 10):
            assert not is_prime(d * 10 ** 6 + 294001)
        assert is_prime(1 * 10 ** 7 + 294001)

    def test_window_requires_positive(self):
        with pytest.raises(ValueError):
            is_widely_digitally_delicate_window(294001, window=0)

    def test_non_delicate_prime_fails_inside(self):
        verdict = is_widely_digitally_delicate_window(101, window=3)
        assert not verdict.passed
        assert verdict.witness is not None and is_prime(verdict.witness)

    def test_progression_primes_certified_on_covered_digits(self, mini_construction):
        # cross-module check: window-substituted values on covered digits
        # carry divisor certificates and the primality test agrees
        c = mini_construction
        n = c.offset
        while not is_prime(n):
            n += c.modulus
        width = digit_count(n)
        for d in sorted(c.digits):
            if d < 0:
                continue  # leading-zero replacements only add positive digits
            for k in range(width, width + 40):
                cert = substitution_divisor(c, n, d, k)
                value = n + d * 10 ** k
                assert value % cert.prime == 0 and value > cert.prime
                assert not is_prime(value)


class TestScan:
    def test_first_is_294001(self):
        assert find_first_digitally_delicate(300000) == 294001

    def test_none_below_small_bounds(self):
        assert find_first_digitally_delicate(10) is None
        assert find_first_digitally_delicate(1000) is None

    def test_monotone_in_bound(self):
        first = find_first_digitally_delicate(294001)
        later = find_first_digitally_delicate(296000)
        assert first == later == 294001


class TestCompositeStable:
    def test_212159_is_stable(self):
        assert is_composite_digit_stable(212159)

    def test_212159_all_54_composite(self):
        rows = substitution_report(212159)
        assert len(rows) == 54
        for _, value, prime in rows:
            assert not prime

    def test_nine_is_not_stable(self):
        assert not is_composite_digit_stable(9)  # 7 is prime

    def test_input_validation(self):
        with pytest.raises(ValueError, match="not composite"):
            is_composite_digit_stable(13)
        with pytest.raises(ValueError, match="coprime"):
            is_composite_digit_stable(15)
        with pytest.raises(ValueError, match="coprime"):
            is_composite_digit_stable(16)
