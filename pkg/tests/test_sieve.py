import pytest

from ecexponent.arith import log_integral
from ecexponent.sieve import iter_segments, primes_in


def _trial_division_primes(lo, hi):
    out = []
    for n in range(max(lo, 2), hi):
        if all(n % d for d in range(2, int(n**0.5) + 1)):
            out.append(n)
    return out


def test_first_segment():
    assert primes_in(2, 3).primes == (2,)


def test_small_window_against_trial_division():
    assert list(primes_in(10, 30).primes) == [11, 13, 17, 19, 23, 29]
    for lo, hi in ((2, 100), (97, 200), (1000, 1100), (7907, 7920)):
        assert list(primes_in(lo, hi).primes) == _trial_division_primes(lo, hi)


def test_prime_count_below_one_million():
    assert len(primes_in(2, 10**6).primes) == 78498


def test_segment_concatenation_matches_monolithic():
    monolithic = primes_in(2, 10**5).primes
    glued = []
    for lo, hi in iter_segments(2, 10**5, 7):
        glued.extend(primes_in(lo, hi).primes)
    assert tuple(glued) == monolithic


def test_pnt_sanity_at_one_million():
    pi_x = len(primes_in(2, 10**6).primes)
    li_x = log_integral(10**6)
    assert abs(pi_x / li_x - 1) < 0.002


def test_range_errors():
    with pytest.raises(ValueError):
        primes_in(10, 10)
    with pytest.raises(ValueError):
        primes_in(30, 10)
    with pytest.raises(ValueError):
        primes_in(1, 10)
