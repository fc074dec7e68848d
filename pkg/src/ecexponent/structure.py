"""The structure pair (d_p, e_p) with E(F_p) = Z/d_p x Z/e_p, d_p | e_p.

The arithmetic screen for k | d_p is the integrality test on the Frobenius
root pi_p of X^2 - a_p*X + p: the trace and norm of (pi_p - 1)/k are
integers exactly when

    k | a_p - 2   and   k^2 | p + 1 - a_p.

This is necessary for k | d_p (the endomorphism (pi_p - 1)/k then lies in
the maximal order of Q(pi_p)), and it is also sufficient whenever the
endomorphism ring of the reduction is that maximal order, which covers
every good prime of a curve with CM by a maximal order. It is not
sufficient in general: y^2 = x^3 + x + 1 at p = 13 has a_p = -4, so
(pi_p - 1)/3 = -1 +/- i is integral, yet E(F_13) is cyclic of order 18
because End is the index-3 suborder Z[3i]. structure_pair therefore treats
the screen as an upper bound and certifies the true d_p by exhibiting
independent torsion points, with subgroup membership decided by small
Pohlig-Hellman logarithms. Sampling affects only the running time, never
the result.
"""

from __future__ import annotations

from math import lcm

from .arith import divisors, factorize
from .curves import (ConsistencyError, CurveModP, LocalData, _add, _mul,
                     _neg, group_order, point_order, point_rng, random_point)

_SYLOW_SAMPLE_CAP = 400


def divides_d(k: int, p: int, a_p: int) -> bool:
    """Frobenius integrality screen: trace and norm of (pi_p - 1)/k are
    integers. Necessary for k | d_p; exact in the maximal-order model.

    Requires good reduction at p and p not dividing k.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if k % p == 0:
        raise ValueError(f"precondition violated: p={p} divides k={k}")
    return (a_p - 2) % k == 0 and (p + 1 - a_p) % (k * k) == 0


def d_via_frobenius(p: int, a_p: int) -> int:
    """Largest k passing divides_d(k, p, a_p); an upper-bound model for d_p
    that is exact when the reduction has maximal endomorphism ring.

    Candidates divide a_p - 2 (or p - 1 when a_p = 2, since d_p | p - 1),
    so a divisor scan suffices.
    """
    n_p = p + 1 - a_p
    if a_p == 2:
        pool = divisors(p - 1)
    else:
        pool = divisors(abs(a_p - 2))
    best = 1
    for k in pool:
        if k > best and k % p != 0 and n_p % (k * k) == 0:
            best = k
    return best


def _ell_power_order(S, ell: int, curve: CurveModP) -> int:
    """t with ord(S) = ell^t, for S already of ell-power order."""
    a, p = curve.a_mod, curve.p
    t = 0
    while S is not None:
        S = _mul(ell, S, a, p)
        t += 1
    return t


def _in_cyclic(Q, base, b: int, ell: int, curve: CurveModP) -> bool:
    """Whether Q lies in <base>, where ord(base) = ell^b exactly."""
    if Q is None:
        return True
    a, p = curve.a_mod, curve.p
    gamma = _mul(ell ** (b - 1), base, a, p)
    digits = {None: 0}
    G = gamma
    for i in range(1, ell):
        digits.setdefault(G, i)
        G = _add(G, gamma, a, p)
    x = 0
    residual = Q
    for k in range(b):
        T = _mul(ell ** (b - 1 - k), residual, a, p)
        dig = digits.get(T)
        if dig is None:
            return False
        if dig:
            x += dig * ell**k
            residual = _add(Q, _neg(_mul(x, base, a, p), p), a, p)
    return residual is None


def _sylow_alpha(curve: CurveModP, n: int, ell: int, v: int, hi: int,
                 rng) -> int:
    """v_ell(d_p), certified by torsion-point evidence.

    The ell-Sylow subgroup is Z/ell^alpha x Z/ell^beta with alpha <= beta
    and alpha + beta = v; hi is a proven upper bound for alpha. Each sample
    either raises the witnessed beta (the valuation b of a maximal point
    seen so far) or raises the certified alpha lower bound j: a pair with
    intersection level i generates Z/ell^i x Z/ell^b. The loop closes as
    soon as j = hi or j + b = v, both of which pin alpha = j.
    """
    a, p = curve.a_mod, curve.p
    cofactor = n // ell**v
    spine = None
    b = 0
    j = 0
    for _ in range(_SYLOW_SAMPLE_CAP):
        if j >= hi or j + b >= v:
            return j
        S = _mul(cofactor, random_point(curve, rng), a, p)
        t = _ell_power_order(S, ell, curve)
        if t > b:
            spine, b, S, t = S, t, spine, b
        if S is None or t == 0:
            continue
        i = 0
        while i < t:
            # an order-ell^s element lies in <spine> iff it lies in the
            # order-ell^s cyclic piece, so match the base to the element
            s = t - i
            base = _mul(ell ** (b - s), spine, a, p)
            if _in_cyclic(_mul(ell**i, S, a, p), base, s, ell, curve):
                break
            i += 1
        if i > hi:
            raise ConsistencyError(
                f"independent {ell}^{i}-torsion exceeds the Frobenius "
                f"bound at p={p}")
        j = max(j, i)
    raise ConsistencyError(
        f"Sylow sampling did not converge at p={p}, ell={ell}")


def structure_pair(curve: CurveModP, seed: int = 0) -> LocalData:
    """LocalData for a good reduction: d_p certified from the Frobenius
    screen plus torsion-point independence, e_p = |E(F_p)| / d_p."""
    p = curve.p
    n = group_order(curve, seed)
    a_p = p + 1 - n
    rng = point_rng(curve, seed + (1 << 30))
    d = 1
    for ell, v in factorize(n).factors:
        if v < 2 or (p - 1) % ell:
            continue
        if a_p != 2:
            screen = 0
            m = a_p - 2
            while m % ell == 0:
                m //= ell
                screen += 1
        else:
            screen = v
        hi = min(screen, v // 2)
        m, cap = p - 1, 0
        while m % ell == 0:
            m //= ell
            cap += 1
        hi = min(hi, cap)
        if hi:
            d *= ell ** _sylow_alpha(curve, n, ell, v, hi, rng)
    if n % (d * d):
        raise ConsistencyError(
            f"d_p^2 does not divide the group order at p={p} "
            f"(order finding bug?)")
    return LocalData(p=p, a_p=a_p, n_p=n, d_p=d, e_p=n // d)


def exponent_via_points(curve: CurveModP, trials: int,
                        n_points: int | None = None, seed: int = 1) -> int:
    """lcm of the orders of `trials` pseudo-random points.

    Always divides the exponent e_p; equals it with probability approaching
    one as trials grows. n_points may pass a precomputed group order.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    n = group_order(curve, seed) if n_points is None else n_points
    rng = point_rng(curve, seed)
    e = 1
    for _ in range(trials):
        P = random_point(curve, rng)
        e = lcm(e, point_order(P, curve, n))
    return e
