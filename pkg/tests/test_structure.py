from math import lcm

import pytest

from ecexponent.curves import CurveZ, _add, reduce_mod
from ecexponent.sieve import primes_in
from ecexponent.structure import (d_via_frobenius, divides_d,
                                  exponent_via_points, structure_pair)


def brute_pair(curve_mod):
    """Exhaustive structure oracle: exponent as the lcm of all point orders."""
    p, a, b = curve_mod.p, curve_mod.a_mod, curve_mod.b_mod
    pts = [(x, y) for x in range(p) for y in range(p)
           if (y * y - (x * x % p) * x - a * x - b) % p == 0]
    n = len(pts) + 1
    e = 1
    for P in pts:
        Q, order = P, 1
        while Q is not None:
            Q = _add(Q, P, a, p)
            order += 1
        e = lcm(e, order)
    return n, n // e, e


def test_divides_d_examples():
    assert divides_d(1, 7, 3)
    assert divides_d(4, 17, 2)
    assert divides_d(2, 5, -2)
    assert not divides_d(4, 5, -2)
    with pytest.raises(ValueError):
        divides_d(10, 5, -2)


def test_divides_d_is_divisor_closed():
    for p, a_p in ((17, 2), (101, -6), (1009, 18), (65537, 2)):
        passing = [k for k in range(1, 60)
                   if k % p and divides_d(k, p, a_p)]
        for k in passing:
            for j in range(1, k):
                if k % j == 0:
                    assert j in passing


def test_d_via_frobenius_examples():
    assert d_via_frobenius(7, 3) == 1
    assert d_via_frobenius(5, -2) == 2
    assert d_via_frobenius(17, 2) == 4


def test_structure_pair_examples():
    rec = structure_pair(reduce_mod(CurveZ(1, 1), 5))
    assert (rec.p, rec.a_p, rec.n_p, rec.d_p, rec.e_p) == (5, -3, 9, 1, 9)
    rec = structure_pair(reduce_mod(CurveZ(-1, 0), 5))
    assert (rec.p, rec.a_p, rec.n_p, rec.d_p, rec.e_p) == (5, -2, 8, 2, 4)
    rec = structure_pair(reduce_mod(CurveZ(-1, 0), 17))
    assert (rec.p, rec.a_p, rec.n_p, rec.d_p, rec.e_p) == (17, 2, 16, 4, 4)


def test_structure_pair_beyond_the_frobenius_screen():
    # E(F_13) for y^2 = x^3 + x + 1 is cyclic of order 18 although
    # (pi - 1)/3 is an algebraic integer (End is the suborder Z[3i]);
    # the certified pair must not be fooled by the screen
    rec = structure_pair(reduce_mod(CurveZ(1, 1), 13))
    assert (rec.d_p, rec.e_p) == (1, 18)
    assert d_via_frobenius(13, -4) == 3  # the screen alone overshoots


def test_structure_pair_matches_exhaustive_oracle(corpus):
    for curve in corpus:
        for p in primes_in(5, 250).primes:
            mod_p = reduce_mod(curve, p)
            if mod_p is None:
                continue
            rec = structure_pair(mod_p)
            assert (rec.n_p, rec.d_p, rec.e_p) == brute_pair(mod_p)


def test_exponent_via_points_cyclic_case():
    mod_p = reduce_mod(CurveZ(1, 1), 5)
    assert exponent_via_points(mod_p, 4) == 9


def test_exponent_via_points_divides_group_order(corpus):
    for curve in corpus[:3]:
        for p in primes_in(5, 500).primes:
            mod_p = reduce_mod(curve, p)
            if mod_p is None:
                continue
            rec = structure_pair(mod_p)
            e = exponent_via_points(mod_p, 3, n_points=rec.n_p)
            assert rec.n_p % e == 0
            assert rec.e_p % e == 0


def test_full_two_torsion_forces_even_d():
    # y^2 = x^3 - x has all 2-torsion rational, so 2 | d_p at every good p
    curve = CurveZ(-1, 0)
    for p in primes_in(5, 10**4 + 1).primes:
        mod_p = reduce_mod(curve, p)
        if mod_p is None:
            continue
        rec = structure_pair(mod_p)
        assert rec.d_p % 2 == 0
        assert divides_d(2, p, rec.a_p)


def test_invariants_on_random_slice(corpus):
    for curve in corpus:
        for p in primes_in(5000, 6000).primes:
            mod_p = reduce_mod(curve, p)
            if mod_p is None:
                continue
            rec = structure_pair(mod_p)
            assert rec.d_p * rec.e_p == rec.n_p
            assert rec.e_p % rec.d_p == 0
            assert (rec.p - 1) % rec.d_p == 0
            assert rec.a_p * rec.a_p <= 4 * rec.p
