"""Prime sweeps: per-prime structure records, aggregated sums, divisibility
census, and report serialization.

Work is partitioned over contiguous prime segments; each segment is a pure
function of (curve, range, seed), so partitions may run in worker processes
and are merged back in ascending range order. Serial and partitioned runs
produce identical records, and CSV emission is byte-identical across runs
with the same configuration.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .arith import log_integral
from .bounded import BoundedValue
from .curves import CurveZ, LocalData, reduce_mod
from .degrees import DegreeOracle, degree
from .constants import c_E_series
from .sieve import iter_segments, primes_in
from .structure import divides_d, structure_pair

DEFAULT_CENSUS = (2, 3, 4, 5, 6)
DEFAULT_TARGET_TRUNCATION = 1000

CSV_HEADER = "p,a_p,N,d_p,e_p"


@dataclass
class SweepReport:
    """Aggregates of a sweep over good primes p <= X."""

    curve: CurveZ
    x_limit: int
    oracle_spec: str
    excluded_primes: list[int]
    records: list[LocalData]
    sum_e: int
    sum_check: int
    sum_p: int
    sum_p_over_d: Fraction
    li_x2: float
    empirical_c: float
    target_c_e: BoundedValue
    census: dict[int, tuple[int, float]]
    cyclic_count: int
    runtime_seconds: float

    def validate(self) -> None:
        if self.sum_e != self.sum_check:
            raise AssertionError(
                f"sum_e={self.sum_e} != sum_check={self.sum_check}")
        if self.records and not 0 < self.empirical_c < 2:
            raise AssertionError(f"empirical_c={self.empirical_c} out of (0,2)")
        n_good = len(self.records)
        for k, (count, _) in self.census.items():
            if count > n_good:
                raise AssertionError(f"census count for k={k} exceeds pi(X)")


@dataclass
class _Partial:
    lo: int
    records: list[LocalData]
    excluded: list[int]
    census: dict[int, int]
    cyclic: int


def _sweep_segment(a: int, b: int, lo: int, hi: int, ks: tuple[int, ...],
                   seed: int) -> _Partial:
    """Pure per-segment worker: all good primes in [lo, hi)."""
    curve = CurveZ(a, b)
    records: list[LocalData] = []
    excluded: list[int] = []
    census = {k: 0 for k in ks}
    cyclic = 0
    for p in primes_in(lo, hi).primes:
        mod_p = reduce_mod(curve, p)
        if mod_p is None:
            excluded.append(p)
            continue
        rec = structure_pair(mod_p, seed=seed)
        records.append(rec)
        if rec.d_p == 1:
            cyclic += 1
        for k in ks:
            if k % p != 0 and divides_d(k, p, rec.a_p):
                census[k] += 1
    return _Partial(lo, records, excluded, census, cyclic)


def sweep(curve: CurveZ, x_limit: int, oracle: DegreeOracle,
          oracle_spec: str = "generic", ks: tuple[int, ...] = DEFAULT_CENSUS,
          threads: int = 1, seed: int = 0,
          target_truncation: int = DEFAULT_TARGET_TRUNCATION) -> SweepReport:
    """Sweep all primes p <= x_limit: per-prime structure, exact sums,
    census counts, and the series target the sums are compared against."""
    if x_limit < 5:
        raise ValueError(f"x_limit must be >= 5, got {x_limit}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    started = time.monotonic()

    parts = iter_segments(2, x_limit + 1, threads)
    args = [(curve.a, curve.b, lo, hi, tuple(ks), seed) for lo, hi in parts]
    if threads == 1 or len(parts) == 1:
        partials = [_sweep_segment(*arg) for arg in args]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(_sweep_segment, *zip(*args)))
    partials.sort(key=lambda part: part.lo)

    records: list[LocalData] = []
    excluded: list[int] = []
    census_counts = {k: 0 for k in ks}
    cyclic = 0
    for part in partials:
        records.extend(part.records)
        excluded.extend(part.excluded)
        for k in ks:
            census_counts[k] += part.census[k]
        cyclic += part.cyclic

    sum_e = sum(rec.e_p for rec in records)
    sum_check = sum((rec.p + 1 - rec.a_p) // rec.d_p for rec in records)
    sum_p = sum(rec.p for rec in records)
    sum_p_over_d = sum((Fraction(rec.p, rec.d_p) for rec in records),
                       Fraction(0))
    li_x2 = log_integral(float(x_limit) ** 2)
    li_x = log_integral(float(x_limit))
    census = {k: (census_counts[k], li_x / degree(oracle, k)) for k in ks}
    target = c_E_series(oracle, target_truncation)

    report = SweepReport(
        curve=curve,
        x_limit=x_limit,
        oracle_spec=oracle_spec,
        excluded_primes=excluded,
        records=records,
        sum_e=sum_e,
        sum_check=sum_check,
        sum_p=sum_p,
        sum_p_over_d=sum_p_over_d,
        li_x2=li_x2,
        empirical_c=sum_e / li_x2,
        target_c_e=target,
        census=census,
        cyclic_count=cyclic,
        runtime_seconds=time.monotonic() - started,
    )
    report.validate()
    return report


def census(curve: CurveZ, x_limit: int, ks: tuple[int, ...],
           oracle: DegreeOracle, threads: int = 1,
           seed: int = 0) -> dict[int, tuple[int, float]]:
    """Per k: exact count of good primes p <= X with k | d_p, and the
    density expectation li(X) / deg L_k."""
    bound = 2 * isqrt(x_limit)
    for k in ks:
        if not 1 <= k <= bound:
            raise ValueError(f"census requires k <= 2*sqrt(X); got k={k}")
    report = sweep(curve, x_limit, oracle, ks=tuple(ks), threads=threads,
                   seed=seed)
    return report.census


def emit(report: SweepReport, fmt: str) -> bytes:
    """Serialize a report: `json` for the aggregate object, `csv` for the
    per-prime stream (stable field order, deterministic bytes)."""
    if fmt == "csv":
        lines = [CSV_HEADER]
        lines.extend(f"{r.p},{r.a_p},{r.n_p},{r.d_p},{r.e_p}"
                     for r in report.records)
        return ("\n".join(lines) + "\n").encode()
    if fmt == "json":
        obj = {
            "curve": {"a": report.curve.a, "b": report.curve.b,
                      "discriminant": report.curve.discriminant},
            "x_limit": report.x_limit,
            "oracle": report.oracle_spec,
            "excluded_primes": report.excluded_primes,
            "good_primes": len(report.records),
            "sum_e": report.sum_e,
            "sum_check": report.sum_check,
            "sum_p": report.sum_p,
            "sum_p_over_d": f"{report.sum_p_over_d.numerator}/"
                            f"{report.sum_p_over_d.denominator}",
            "li_x2": report.li_x2,
            "empirical_c": report.empirical_c,
            "target_c_e": {"value": report.target_c_e.value,
                           "error": report.target_c_e.error,
                           "truncation": report.target_c_e.truncation},
            "census": {str(k): {"count": count, "expected": expected}
                       for k, (count, expected) in report.census.items()},
            "cyclic_count": report.cyclic_count,
            "runtime_seconds": report.runtime_seconds,
        }
        return (json.dumps(obj, indent=2) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")
