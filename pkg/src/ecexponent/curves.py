"""Short-Weierstrass curves y^2 = x^3 + a*x + b over F_p: the chord-tangent
group law, point order computation, group order |E(F_p)|, and the Frobenius
trace a_p = p + 1 - |E(F_p)|.

Points are None (the identity) or (x, y) tuples of residues. Group orders are
found by exhaustive counting for p < 10^4 and by baby-step/giant-step order
computation of pseudo-random points for larger p: take the lcm of point
orders until exactly one multiple of the lcm lies in the Hasse interval
[p + 1 - 2*sqrt(p), p + 1 + 2*sqrt(p)], falling back to exhaustive counting
in the rare case where the lcm stabilizes below the interval width.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt, lcm

import numpy as np

from .arith import factorize

ENUMERATION_LIMIT = 10_000
_MAX_P = 1 << 62
_BSGS_MAX_POINTS = 12
_CHUNK = 1 << 20

Point = "tuple[int, int] | None"


class ConsistencyError(Exception):
    """An internal cross-check failed (order finding or structure bug)."""


@dataclass(frozen=True)
class CurveZ:
    """Integer model y^2 = x^3 + a*x + b, nonsingular over Q."""

    a: int
    b: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError(f"singular model: a={self.a}, b={self.b}")

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.a**3 + 27 * self.b**2)


@dataclass(frozen=True)
class CurveModP:
    """Good reduction of a CurveZ at a prime p > 3."""

    p: int
    a_mod: int
    b_mod: int

    def __post_init__(self):
        p = self.p
        if not 3 < p < _MAX_P:
            raise ValueError(f"p out of supported range: {p}")
        if (4 * self.a_mod**3 + 27 * self.b_mod**2) % p == 0:
            raise ValueError(f"singular reduction at p={p}")


@dataclass(frozen=True)
class LocalData:
    """Per-prime invariants: |E(F_p)| = n_p = p + 1 - a_p and the structure
    pair E(F_p) = Z/d_p x Z/e_p with d_p | e_p."""

    p: int
    a_p: int
    n_p: int
    d_p: int
    e_p: int

    def __post_init__(self):
        if self.n_p != self.p + 1 - self.a_p:
            raise ValueError("n_p != p + 1 - a_p")
        if self.a_p * self.a_p > 4 * self.p:
            raise ValueError(f"Hasse violation at p={self.p}: a_p={self.a_p}")
        if self.d_p * self.e_p != self.n_p or self.e_p % self.d_p:
            raise ValueError(f"invalid structure pair at p={self.p}")
        if (self.p - 1) % self.d_p:
            raise ValueError(f"d_p does not divide p - 1 at p={self.p}")


def reduce_mod(curve: CurveZ, p: int) -> CurveModP | None:
    """Reduction of the given model at p; None marks bad reduction.

    Bad reduction is declared when p <= 3 or p divides the discriminant of
    the given (not necessarily minimal) model.
    """
    if p <= 3 or curve.discriminant % p == 0:
        return None
    return CurveModP(p, curve.a % p, curve.b % p)


def _add(P, Q, a, p):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        num = (3 * x1 * x1 + a) % p
        den = 2 * y1 % p
    else:
        num = (y2 - y1) % p
        den = (x2 - x1) % p
    lam = num * pow(den, p - 2, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return (x3, (lam * (x1 - x3) - y1) % p)


def _neg(P, p):
    if P is None or P[1] == 0:
        return P
    return (P[0], p - P[1])


def _mul(n, P, a, p):
    R = None
    while n:
        if n & 1:
            R = _add(R, P, a, p)
        P = _add(P, P, a, p)
        n >>= 1
    return R


def ec_add(P, Q, curve: CurveModP):
    """P + Q under the chord-tangent group law."""
    return _add(P, Q, curve.a_mod, curve.p)


def ec_neg(P, curve: CurveModP):
    return _neg(P, curve.p)


def scalar_mul(n: int, P, curve: CurveModP):
    """n*P by double-and-add; 0*P is the identity."""
    if n < 0:
        raise ValueError(f"scalar must be >= 0, got {n}")
    return _mul(n, P, curve.a_mod, curve.p)


def on_curve(P, curve: CurveModP) -> bool:
    if P is None:
        return True
    x, y = P
    p = curve.p
    return (y * y - (x * x % p) * x - curve.a_mod * x - curve.b_mod) % p == 0


def _sqrt_mod(n: int, p: int) -> int:
    """Tonelli-Shanks square root of a quadratic residue n mod p, p odd."""
    n %= p
    if n == 0:
        return 0
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    # factor p - 1 = q * 2^s and locate a non-residue deterministically
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c = pow(z, q, p)
    x = pow(n, (q + 1) // 2, p)
    t = pow(n, q, p)
    m = s
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        t = t * b % p * b % p
        c = b * b % p
        m = i
    return x


def point_rng(curve: CurveModP, seed: int = 0) -> random.Random:
    """Deterministic PRNG for point sampling, keyed by (a, b, p, seed)."""
    return random.Random(f"{curve.a_mod},{curve.b_mod},{curve.p},{seed}")


def random_point(curve: CurveModP, rng: random.Random):
    """A pseudo-random affine point, by x-sampling and Tonelli-Shanks."""
    p, a, b = curve.p, curve.a_mod, curve.b_mod
    while True:
        x = rng.randrange(p)
        rhs = ((x * x % p) * x + a * x + b) % p
        if rhs == 0:
            return (x, 0)
        if pow(rhs, (p - 1) // 2, p) == 1:
            return (x, _sqrt_mod(rhs, p))


def point_order(P, curve: CurveModP, annihilator: int):
    """Exact order of P given any annihilator (a multiple of the order)."""
    a, p = curve.a_mod, curve.p
    r = annihilator
    for q, _ in factorize(annihilator).factors:
        while r % q == 0 and _mul(r // q, P, a, p) is None:
            r //= q
    return r


def _annihilator_in_interval(P, curve: CurveModP, lo: int, hi: int) -> int:
    """Smallest t in [lo, hi] with t*P = identity, by baby-step/giant-step.

    Such t exists because |E(F_p)| lies in [lo, hi] and annihilates P.
    """
    a, p = curve.a_mod, curve.p
    m = isqrt(hi - lo) + 1
    baby = {}
    Q = None
    for j in range(m):
        if Q not in baby:
            baby[Q] = j
        Q = _add(Q, P, a, p)
    neg_mP = _neg(Q, p)  # Q = m*P after the loop
    S = _neg(_mul(lo, P, a, p), p)
    for i in range(m + 2):
        j = baby.get(S)
        if j is not None:
            return lo + i * m + j
        S = _add(S, neg_mP, a, p)
    raise ConsistencyError(f"no annihilator in Hasse interval at p={p}")


def hasse_interval(p: int) -> tuple[int, int]:
    s = isqrt(4 * p)
    return p + 1 - s, p + 1 + s


def group_order_enumeration(curve: CurveModP) -> int:
    """|E(F_p)| = p + 1 + sum over x of chi(x^3 + a*x + b), exhaustively.

    chi is the quadratic character mod p; chunked so only the chi table is
    O(p) memory.
    """
    p, a, b = curve.p, curve.a_mod, curve.b_mod
    chi = np.full(p, -1, dtype=np.int8)
    chi[0] = 0
    for start in range(1, p, _CHUNK):
        x = np.arange(start, min(start + _CHUNK, p), dtype=np.int64)
        chi[x * x % p] = 1
    total = 0
    for start in range(0, p, _CHUNK):
        x = np.arange(start, min(start + _CHUNK, p), dtype=np.int64)
        rhs = ((x * x % p) * x % p + a * x % p + b) % p
        total += int(chi[rhs].sum())
    return p + 1 + total


def group_order_bsgs(curve: CurveModP, seed: int = 0) -> int | None:
    """|E(F_p)| via point orders, or None when the lcm of sampled point
    orders leaves more than one candidate in the Hasse interval."""
    lo, hi = hasse_interval(curve.p)
    rng = point_rng(curve, seed)
    L = 1
    candidates: range | None = None
    for trial in range(_BSGS_MAX_POINTS):
        P = random_point(curve, rng)
        if candidates is None:
            t = _annihilator_in_interval(P, curve, lo, hi)
        else:
            t = next((n for n in candidates
                      if scalar_mul(n, P, curve) is None), None)
            if t is None:
                raise ConsistencyError(
                    f"no candidate order annihilates a point at p={curve.p}")
        L = lcm(L, point_order(P, curve, t))
        first = (lo + L - 1) // L * L
        if first > hi:
            raise ConsistencyError(
                f"no multiple of the point-order lcm in the Hasse "
                f"interval at p={curve.p}")
        if first + L > hi:
            return first
        candidates = range(first, hi + 1, L)
    return None


def group_order(curve: CurveModP, seed: int = 0) -> int:
    """|E(F_p)|: exhaustive for p < 10^4, else BSGS with exhaustive fallback."""
    if curve.p < ENUMERATION_LIMIT:
        return group_order_enumeration(curve)
    n = group_order_bsgs(curve, seed)
    if n is None:
        n = group_order_enumeration(curve)
    return n


def trace(curve: CurveModP, seed: int = 0) -> int:
    """Frobenius trace a_p = p + 1 - |E(F_p)|; |a_p| <= 2*sqrt(p) by Hasse."""
    return curve.p + 1 - group_order(curve, seed)
