"""Density constants with certified truncation error.

Euler products over primes are evaluated as an exact rational partial
product over q <= Q (one rounding per factor, at mpmath working precision)
times an analytic correction for the primes q > Q: writing each factor as
1 - x(1/q) with x a rational power series, the log tail

    sum over q > Q of -log(1 - x(1/q)) = sum over n >= 2 of c_n * P_{>Q}(n)

is evaluated through the prime zeta function P, truncated at n = N with a
geometric remainder bound. For CM products the split/inert assignment of
primes beyond Q is unknown to the evaluator, so the character-independent
average of the two log series is folded into the value and the
character-dependent half-difference is charged entirely to the error bound;
the prime cutoff grows adaptively until that charge is below the target.

The series constants (the exponent-density series and the cyclicity series)
are truncated sums with the degree-oracle tail bounds of the degrees module,
every term evaluated in exact rational arithmetic before a single rounding.
"""

from __future__ import annotations

from fractions import Fraction
from math import fsum

from mpmath import mp, mpf

from .arith import factorize, mobius, omega, phi, rad
from .bounded import BoundedValue
from .degrees import (CM_DISCRIMINANTS, DegreeOracle, GenericOracle,
                      MissingDegreeError, TableOracle, _is_split, degree,
                      degree_tail_bound)
from .sieve import primes_in

_SERIES_ORDER = 24      # power-series truncation for log-tail coefficients
_MP_DPS = 30
_MP_SLACK = 1e-20       # generous cover for mpmath round-off at 30 digits
_EPS_MIN = 1e-12
_CUT_CAP = 1 << 26


def _series_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = _SERIES_ORDER
    out = [Fraction(0)] * (n + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j in range(n + 1 - i):
            if b[j]:
                out[i + j] += ai * b[j]
    return out


def _series_geometric(step: int, sign: int = 1) -> list[Fraction]:
    """1/(1 - sign*u^step) as a truncated power series."""
    out = [Fraction(0)] * (_SERIES_ORDER + 1)
    s = Fraction(1)
    for i in range(0, _SERIES_ORDER + 1, step):
        out[i] = s
        s *= sign
    return out


def _shift(x: list[Fraction], by: int) -> list[Fraction]:
    return [Fraction(0)] * by + x[: _SERIES_ORDER + 1 - by]


def _neg_log_one_minus(x: list[Fraction]) -> list[Fraction]:
    """Coefficients of -log(1 - x(u)) = sum over m of x^m / m, truncated."""
    out = [Fraction(0)] * (_SERIES_ORDER + 1)
    power = x[:]
    m = 1
    while any(power) and m <= _SERIES_ORDER:
        for i, v in enumerate(power):
            if v:
                out[i] += Fraction(v, m)
        power = _series_mul(power, x)
        m += 1
    return out


def _x_universal() -> list[Fraction]:
    # q^3 / ((q^2-1)(q^5-1)) = u^4 / ((1-u^2)(1-u^5))
    return _shift(_series_mul(_series_geometric(2), _series_geometric(5)), 4)


def _x_kummer() -> list[Fraction]:
    # q / (q^3-1) = u^2 / (1-u^3)
    return _shift(_series_geometric(3), 2)


def _x_cm(split: bool) -> list[Fraction]:
    # 1 / (q^2 (1 -/+ 1/q)(1 - 1/q^3)) = u^2 / ((1 -/+ u)(1 - u^3))
    return _shift(_series_mul(_series_geometric(1, 1 if split else -1),
                              _series_geometric(3)), 2)


def _log_remainder_bound(x_major: list[Fraction], q_cut: int) -> float:
    """Bound for the discarded n > N part of a log tail summed over q > Q.

    x_major must coefficient-wise dominate |x|; then the log coefficients
    are dominated too, their weighted sum at u = 1/2 is at most s/(1-s)
    with s = x_major(1/2) < 1, each prime contributes at most that times
    (2/q)^(N+1), and the sum over q > Q compares with an integral.
    """
    s = sum(c * Fraction(1, 2**i) for i, c in enumerate(x_major))
    g = float(s / (1 - s))
    n = _SERIES_ORDER
    return g * 2.0 ** (n + 1) * float(q_cut) ** (-n) / n * 1.0000001


def _integral_prime_tail(n: int, q_cut: int) -> float:
    """Upper bound for P_{>Q}(n) by integral comparison, n >= 2."""
    return float(q_cut) ** (1 - n) / (n - 1)


def _prime_zeta_beyond(ns, q_cut: int, primes) -> dict[int, mpf]:
    """P_{>Q}(n) = primezeta(n) - sum over primes q <= Q of q^-n."""
    out = {}
    for n in ns:
        partial = fsum(float(q) ** (-n) for q in primes)
        out[n] = mp.primezeta(n) - mpf(partial)
    return out


def _euler_product(log_avg, log_twist, x_major, q_cut: int,
                   factor_at) -> tuple[float, float]:
    """Shared evaluator returning (value, certified absolute error).

    log_avg: log-tail series folded into the value. log_twist: series whose
    magnitude is charged to the error (None for character-free products).
    factor_at(q) gives the exact rational factor at explicit primes q <= Q,
    or None to skip the prime.
    """
    mp.dps = _MP_DPS
    primes = list(primes_in(2, q_cut + 1).primes)
    ns = sorted({n for n, c in enumerate(log_avg) if c and n >= 2}
                | ({n for n, c in enumerate(log_twist) if c and n >= 2}
                   if log_twist else set()))
    pz = _prime_zeta_beyond(ns, q_cut, primes)

    prod = mpf(1)
    for q in primes:
        f = factor_at(q)
        if f is not None:
            prod *= mpf(f.numerator) / mpf(f.denominator)

    correction = mpf(0)
    for n, c in enumerate(log_avg):
        if c and n >= 2:
            correction += mpf(c.numerator) / mpf(c.denominator) * pz[n]
    value = float(prod * mp.e ** (-correction))

    remainder = _log_remainder_bound(x_major, q_cut)
    rel_err = remainder + _MP_SLACK
    if log_twist is not None:
        rel_err += remainder  # the twist series has its own n > N remainder
        for n, c in enumerate(log_twist):
            if c and n >= 2:
                rel_err += abs(float(c)) * float(pz[n])
    abs_err = abs(value) * rel_err * (1 + rel_err) + 4e-16 * (1 + abs(value))
    return value, abs_err


def _twist_charge(log_twist, q_cut: int) -> float:
    return sum(abs(float(c)) * _integral_prime_tail(n, q_cut)
               for n, c in enumerate(log_twist) if c and n >= 2)


def _adaptive_cut(eps: float, x_major, log_twist, floor: int = 1000) -> int:
    """Smallest doubling cutoff whose certified error charge is below eps/2
    (the twist charge decays like Q^-2, so this terminates quickly)."""
    q_cut = floor
    while True:
        charge = 2 * _log_remainder_bound(x_major, q_cut)
        if log_twist is not None:
            charge += _twist_charge(log_twist, q_cut)
        if charge <= eps / 2 or q_cut >= _CUT_CAP:
            return q_cut
        q_cut *= 2


def universal_c(eps: float = 1e-9) -> BoundedValue:
    """The universal constant prod over q of 1 - q^3/((q^2-1)(q^5-1))."""
    if eps < _EPS_MIN:
        raise ValueError(f"eps must be >= {_EPS_MIN}, got {eps}")
    x = _x_universal()
    q_cut = _adaptive_cut(eps, x, None)

    def factor(q: int) -> Fraction:
        return 1 - Fraction(q**3, (q * q - 1) * (q**5 - 1))

    value, err = _euler_product(_neg_log_one_minus(x), None, x, q_cut, factor)
    return BoundedValue(value=value, error=err, truncation=q_cut)


def kummer_C(eps: float = 1e-9) -> BoundedValue:
    """The Kummer-degree analogue prod over q of 1 - q/(q^3-1)."""
    if eps < _EPS_MIN:
        raise ValueError(f"eps must be >= {_EPS_MIN}, got {eps}")
    x = _x_kummer()
    q_cut = _adaptive_cut(eps, x, None)

    def factor(q: int) -> Fraction:
        return 1 - Fraction(q, q**3 - 1)

    value, err = _euler_product(_neg_log_one_minus(x), None, x, q_cut, factor)
    return BoundedValue(value=value, error=err, truncation=q_cut)


def cm_euler_factor(d: int, q: int) -> Fraction | None:
    """Exact factor at an unramified prime q; None at primes dividing 2D."""
    if (2 * d) % q == 0:
        return None
    if _is_split(d, q):
        return 1 - 1 / (Fraction(q * q) * (1 - Fraction(1, q))
                        * (1 - Fraction(1, q**3)))
    return 1 - 1 / (Fraction(q * q) * (1 + Fraction(1, q))
                    * (1 - Fraction(1, q**3)))


def cm_product(d: int, eps: float = 1e-9) -> BoundedValue:
    """The CM Euler product over split and inert primes of Q(sqrt(-D))."""
    if d not in CM_DISCRIMINANTS:
        raise ValueError(f"D={d} is not a CM field parameter")
    if eps < _EPS_MIN:
        raise ValueError(f"eps must be >= {_EPS_MIN}, got {eps}")
    x_split = _x_cm(True)
    log_split = _neg_log_one_minus(x_split)
    log_inert = _neg_log_one_minus(_x_cm(False))
    log_avg = [(a + b) / 2 for a, b in zip(log_split, log_inert)]
    log_twist = [(a - b) / 2 for a, b in zip(log_split, log_inert)]
    q_cut = max(_adaptive_cut(eps, x_split, log_twist), 2 * d + 1)
    value, err = _euler_product(log_avg, log_twist, x_split, q_cut,
                                lambda q: cm_euler_factor(d, q))
    return BoundedValue(value=value, error=err, truncation=q_cut)


def _series_rounding(n_terms: int, magnitude: float) -> float:
    return (n_terms + 2) * 2.0**-52 * max(1.0, magnitude)


def _series_tail(oracle: DegreeOracle, y: int) -> float:
    """Tail error for a series truncated at Y >= 1: explicit |terms| up to
    k = 2 when Y = 1, then the certified analytic bound."""
    extra = 1.0 / degree(oracle, 2) if y < 2 else 0.0
    return extra + degree_tail_bound(oracle, max(y, 2)).value


def c_E_series(oracle: DegreeOracle, y: int) -> BoundedValue:
    """Truncation at k <= Y of the exponent-density series

        sum over k of (-1)^omega(k) * phi(rad(k)) / (k * deg L_k),

    with certified tail error from the oracle's tail bound (the weight
    phi(rad k)/k is at most 1)."""
    if y < 1:
        raise ValueError(f"Y must be >= 1, got {y}")
    terms = []
    for k in range(1, y + 1):
        sign = -1 if omega(k) % 2 else 1
        terms.append(float(Fraction(sign * phi(rad(k)),
                                    k * degree(oracle, k))))
    value = fsum(terms)
    return BoundedValue(value=value,
                        error=_series_tail(oracle, y)
                        + _series_rounding(y, abs(value)),
                        truncation=y)


def cyclicity_constant(oracle: DegreeOracle, y: int) -> BoundedValue:
    """Truncation at k <= Y of the cyclicity series
    sum over k of mu(k) / deg L_k."""
    if y < 1:
        raise ValueError(f"Y must be >= 1, got {y}")
    terms = []
    for k in range(1, y + 1):
        mu = mobius(k)
        if mu:
            terms.append(mu / degree(oracle, k))
    value = fsum(terms)
    return BoundedValue(value=value,
                        error=_series_tail(oracle, y)
                        + _series_rounding(len(terms), abs(value)),
                        truncation=y)


def c_E_closed_form(oracle: TableOracle, eps: float = 1e-12) -> BoundedValue:
    """Exact-rational assembly of the exponent density for a table-corrected
    generic oracle with level m:

        c_E = c * prod over q | m of (1 - q^3/((q^2-1)(q^5-1)))^-1 * S.

    S resums the series over integers supported on primes of m using the
    override degrees at divisors of m and the generic q^4-per-step growth
    above the level: a divisor d of m contributes 1/deg(d) weighted by
    -(q-1)/q^a per prime power q^a in d, with the weight picking up the
    geometric factor q^5/(q^5-1) at primes saturated in d (exponent equal
    to that of m), which resums the exponents beyond the level. Error is
    inherited from the universal constant only.
    """
    if not isinstance(oracle, TableOracle) or not isinstance(
            oracle.base, GenericOracle):
        raise ValueError(
            "closed form requires a table-corrected generic oracle")
    m = oracle.level
    m_factors = factorize(m).factors

    def r(d: int) -> int:
        if d == 1:
            return 1
        try:
            return oracle.overrides[d]
        except KeyError:
            raise MissingDegreeError(
                f"closed form needs a degree override for {d} | m={m}"
            ) from None

    div_list: list[tuple[int, tuple[tuple[int, int], ...]]] = [(1, ())]
    for q, a in m_factors:
        div_list = [(d * q**i, fz + ((q, i),) if i else fz)
                    for d, fz in div_list for i in range(a + 1)]

    m_exp = dict(m_factors)
    s = Fraction(0)
    for d, fz in div_list:
        term = Fraction(1, r(d))
        for q, a in fz:
            weight = Fraction(-(q - 1), q**a)
            if a == m_exp[q]:
                weight *= Fraction(q**5, q**5 - 1)
            term *= weight
        s += term

    euler_part = Fraction(1)
    for q, _ in m_factors:
        euler_part /= 1 - Fraction(q**3, (q * q - 1) * (q**5 - 1))

    rational = euler_part * s
    if rational <= 0:
        raise ValueError(f"nonpositive rational factor {rational}")
    c = universal_c(eps)
    mp.dps = _MP_DPS
    value = float(mpf(c.value) * mpf(rational.numerator)
                  / mpf(rational.denominator))
    err = c.error * float(rational) * 1.0000001 + 4e-16 * (1 + abs(value))
    return BoundedValue(value=value, error=err, truncation=c.truncation)
