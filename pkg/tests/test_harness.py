import json
from fractions import Fraction

import pytest

from ecexponent.curves import CurveZ, reduce_mod
from ecexponent.degrees import GenericOracle, TableOracle
from ecexponent.harness import CSV_HEADER, census, emit, sweep
from ecexponent.sieve import primes_in
from ecexponent.structure import divides_d, structure_pair


@pytest.fixture(scope="module")
def small_sweep():
    return sweep(CurveZ(-1, 0), 17, GenericOracle(), ks=(2, 4))


def test_sweep_x3_minus_x_to_17(small_sweep):
    rep = small_sweep
    by_p = {rec.p: rec for rec in rep.records}
    assert rep.excluded_primes == [2, 3]
    assert by_p[5].e_p == 4
    assert by_p[17].e_p == 4
    assert 13 in by_p
    assert rep.sum_e == rep.sum_check
    assert rep.sum_e == sum(r.e_p for r in rep.records)
    assert rep.sum_p_over_d == sum(
        (Fraction(r.p, r.d_p) for r in rep.records), Fraction(0))


def test_sweep_degenerate_range():
    rep = sweep(CurveZ(1, 1), 5, GenericOracle(), ks=(2,))
    assert [rec.p for rec in rep.records] == [5]
    assert rep.sum_e == rep.sum_check


def test_sweep_rejects_bad_input():
    with pytest.raises(ValueError):
        sweep(CurveZ(1, 1), 4, GenericOracle())
    with pytest.raises(ValueError):
        sweep(CurveZ(1, 1), 100, GenericOracle(), threads=0)


def test_exact_sum_identity_mixed_curves():
    for curve in (CurveZ(1, 1), CurveZ(2, 3)):
        rep = sweep(curve, 2000, GenericOracle())
        assert rep.sum_e == rep.sum_check
        lhs = sum(rec.e_p for rec in rep.records)
        rhs = sum((rec.p + 1 - rec.a_p) // rec.d_p for rec in rep.records)
        assert lhs == rhs


def test_census_counts():
    oracle = GenericOracle()
    counts = census(CurveZ(-1, 0), 10**4, (1, 2), oracle)
    n_good = counts[1][0]
    # k = 1 counts every good prime; full 2-torsion makes k = 2 count all
    assert counts[2][0] == n_good
    pi_bound = len(primes_in(2, 10**4 + 1).primes)
    assert n_good == pi_bound - 2  # only 2 and 3 are excluded
    with pytest.raises(ValueError):
        census(CurveZ(-1, 0), 100, (1000,), oracle)


def test_census_against_structure_records():
    oracle = GenericOracle()
    curve = CurveZ(2, 3)
    counts = census(curve, 3000, (2, 3, 4), oracle)
    screen = {2: 0, 3: 0, 4: 0}
    true_d = {2: 0, 3: 0, 4: 0}
    for p in primes_in(5, 3001).primes:
        mod_p = reduce_mod(curve, p)
        if mod_p is None:
            continue
        rec = structure_pair(mod_p)
        for k in screen:
            if divides_d(k, p, rec.a_p):
                screen[k] += 1
            if rec.d_p % k == 0:
                true_d[k] += 1
    for k in screen:
        # the census is the Frobenius-screen count, which dominates the
        # count of primes whose actual d_p is divisible by k
        assert counts[k][0] == screen[k]
        assert counts[k][0] >= true_d[k]


def test_emit_csv_format(small_sweep):
    data = emit(small_sweep, "csv").decode()
    lines = data.splitlines()
    assert lines[0] == CSV_HEADER == "p,a_p,N,d_p,e_p"
    assert lines[1] == "5,-2,8,2,4"
    assert lines[-1] == "17,2,16,4,4"
    assert len(lines) == len(small_sweep.records) + 1


def test_emit_csv_header_only_for_empty_sweep():
    # all primes <= 5 are bad for y^2 = x^3 + 5: 2, 3 small and 5 | disc
    rep = sweep(CurveZ(0, 5), 5, GenericOracle(), ks=(2,))
    assert rep.records == []
    assert emit(rep, "csv").decode() == "p,a_p,N,d_p,e_p\n"


def test_emit_json_round_trip(small_sweep):
    blob = emit(small_sweep, "json")
    obj = json.loads(blob)
    assert obj["curve"] == {"a": -1, "b": 0, "discriminant": 64}
    assert obj["sum_e"] == small_sweep.sum_e == obj["sum_check"]
    assert obj["excluded_primes"] == [2, 3]
    assert obj["census"]["2"]["count"] == len(small_sweep.records)
    num, den = obj["sum_p_over_d"].split("/")
    assert Fraction(int(num), int(den)) == small_sweep.sum_p_over_d
    assert json.loads(emit(small_sweep, "json")) == obj
    with pytest.raises(ValueError):
        emit(small_sweep, "xml")


def test_determinism_byte_identical():
    a = emit(sweep(CurveZ(2, 3), 4000, GenericOracle()), "csv")
    b = emit(sweep(CurveZ(2, 3), 4000, GenericOracle()), "csv")
    assert a == b


def test_partitioned_equals_serial():
    serial = sweep(CurveZ(1, 1), 5000, GenericOracle())
    parts = sweep(CurveZ(1, 1), 5000, GenericOracle(), threads=4)
    assert emit(serial, "csv") == emit(parts, "csv")
    assert serial.census == parts.census
    assert serial.cyclic_count == parts.cyclic_count


def test_empirical_c_tracks_series_target():
    # y^2 = x^3 + 2x + 3 has the rational 2-torsion point (-1, 0), so its
    # 2-division field is the quadratic Q(sqrt(-11)): level-2 override 2
    oracle = TableOracle(GenericOracle(), {2: 2}, 2)
    rep = sweep(CurveZ(2, 3), 10**4, oracle, target_truncation=10**4)
    assert abs(rep.empirical_c - rep.target_c_e.value) < 0.02
