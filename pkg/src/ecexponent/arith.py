"""Exact integer arithmetic: factorization, the classical multiplicative
functions, Mobius-convolution identities, and the logarithmic integral.

All identity-style computations (mu_over_j, inverse_identity_check) are done
in exact rational arithmetic via fractions.Fraction; only log_integral is a
floating-point quantity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import fsum, gcd, isqrt, log

from scipy.integrate import quad

_TRIAL_LIMIT = 10_000

# Deterministic Miller-Rabin witness set, valid for all n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer.

    factors is a tuple of (prime, exponent) pairs with strictly increasing
    primes; the empty tuple represents 1.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization of {self.value}")
            prod *= p**e
            last = p
        if prod != self.value:
            raise ValueError(f"factors do not multiply back to {self.value}")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """Find a nontrivial factor of composite odd n (Brent's cycle variant).

    Deterministic: the polynomial offset is stepped through 1, 2, 3, ...
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed to split {n}")  # pragma: no cover


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> Factorization:
    """Factor n >= 1 by trial division to 10^4, then Miller-Rabin plus
    Pollard rho on whatever cofactor remains.

    Deterministic; n = 1 yields an empty factor list.
    """
    if n < 1:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    value = n
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 5
    while d <= _TRIAL_LIMIT and d * d <= n:
        for q in (d, d + 2):
            while n % q == 0:
                factors[q] = factors.get(q, 0) + 1
                n //= q
        d += 6
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        f = _pollard_rho(m)
        stack.append(f)
        stack.append(m // f)
    return Factorization(value, tuple(sorted(factors.items())))


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def mobius(k: int) -> int:
    fz = factorize(k)
    if any(e > 1 for _, e in fz.factors):
        return 0
    return -1 if len(fz.factors) % 2 else 1


def omega(k: int) -> int:
    """Number of distinct prime factors."""
    return len(factorize(k).factors)


def phi(k: int) -> int:
    """Euler totient."""
    result = k
    for p, _ in factorize(k).factors:
        result = result // p * (p - 1)
    return result


def rad(k: int) -> int:
    """Largest squarefree divisor (radical)."""
    result = 1
    for p, _ in factorize(k).factors:
        result *= p
    return result


def tau(k: int) -> int:
    """Number of divisors."""
    result = 1
    for _, e in factorize(k).factors:
        result *= e + 1
    return result


def sigma(k: int) -> int:
    """Sum of divisors."""
    result = 1
    for p, e in factorize(k).factors:
        result *= (p ** (e + 1) - 1) // (p - 1)
    return result


_ARITH_FNS = {
    "mobius": mobius,
    "omega": omega,
    "phi": phi,
    "rad": rad,
    "tau": tau,
    "sigma": sigma,
}


def arith_fn(name: str, k: int) -> int:
    """Dispatch to one of the classical arithmetic functions by name."""
    try:
        fn = _ARITH_FNS[name]
    except KeyError:
        raise ValueError(f"unknown arithmetic function {name!r}") from None
    if k < 1:
        raise ValueError(f"{name} requires k >= 1, got {k}")
    return fn(k)


def mu_over_j_exact(k: int) -> Fraction:
    """Sum of mu(h)/j over ordered pairs with h*j = k, by the closed form

        (-1)^omega(k) * phi(rad(k)) / k.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    sign = -1 if omega(k) % 2 else 1
    return Fraction(sign * phi(rad(k)), k)


def mu_over_j_convolution(k: int) -> Fraction:
    """Debug path for mu_over_j_exact: enumerate the pairs h*j = k directly."""
    total = Fraction(0)
    for h in divisors(k):
        mu = mobius(h)
        if mu:
            total += Fraction(mu, k // h)
    return total


def inverse_identity_check(k: int) -> Fraction:
    """Sum of mu(h)/j over all pairs with h*j | k; callers assert it is 1/k."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    total = Fraction(0)
    for d in divisors(k):
        total += mu_over_j_convolution(d)
    return total


def log_integral(x: float) -> float:
    """li(x) = integral from 2 to x of dt/log(t), for x >= 2.

    Adaptive quadrature at relative tolerance 1e-12, applied piecewise over
    geometric subranges so the extrapolation stays conditioned on very wide
    intervals; absolute error is within 1e-9 * max(1, li(x)) over the
    supported range.
    """
    if x < 2:
        raise ValueError(f"log_integral requires x >= 2, got {x}")
    if x == 2:
        return 0.0
    pieces = []
    lo = 2.0
    while lo < x:
        hi = min(lo * 1e3, x)
        value, _ = quad(lambda t: 1.0 / log(t), lo, hi,
                        epsabs=1e-12, epsrel=1e-12, limit=200)
        pieces.append(value)
        lo = hi
    return fsum(pieces)
