"""Division-field degree oracles: models of k -> deg L_k.

Three models are provided.

* generic: deg L_k = |GL2(Z/kZ)|, the Serre-generic normalization.
* cm(D): multiplicative over prime powers, with local degree
  (q-1)^2 * q^(2a-2) when q splits in Q(sqrt(-D)) and
  (q^2-1) * q^(2a-2) when q is inert. Primes q | 2D fall outside the
  split/inert formulas; their local degrees come from a user exception
  table, defaulting to the unit-group order of the local ring
  ((q-1) * q^(2a-1) at ramified q). Table entries extend upward in the
  exponent with the model's q^2-per-step growth.
* table-corrected: a base oracle plus overrides deg L_h for divisors h of a
  level m; for general k the exponents at primes dividing m are capped at
  their exponent in m, the override at the capped divisor applies, and
  exponent excess grows at the base model's local rate.

Tail sums over k > Y are certified with the explicit totient lower bound
phi(k) >= k / (e^gamma * lnln k + 3/lnln k), k >= 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt, lcm, log, pi

from .arith import factorize
from .bounded import BoundedValue

CM_DISCRIMINANTS = (1, 2, 3, 7, 11, 19, 43, 67, 163)

_EXP_GAMMA = 1.7810724179901979852  # e^gamma
_ZETA2 = pi * pi / 6
_TAIL_START = 32       # analytic tail formulas are proved from here on
_FLOAT_SLACK = 1 + 1e-9


class MissingDegreeError(KeyError):
    """A required exception/override table entry is absent."""


def gl2_order(k: int) -> int:
    """|GL2(Z/kZ)| = k^4 * prod over q | k of (1 - 1/q)(1 - 1/q^2)."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    out = 1
    for q, a in factorize(k).factors:
        out *= q ** (4 * a - 3) * (q - 1) * (q * q - 1)
    return out


def _is_split(d: int, q: int) -> bool:
    """Whether an odd prime q not dividing D splits in Q(sqrt(-D))."""
    return pow(-d % q, (q - 1) // 2, q) == 1


def _splitting_type(d: int, q: int) -> int:
    """Kronecker symbol of disc(Q(sqrt(-D))) at q: 1 split, -1 inert,
    0 ramified."""
    disc = -d if -d % 4 == 1 else -4 * d
    if q == 2:
        if disc % 2 == 0:
            return 0
        return 1 if disc % 8 == 1 else -1
    if disc % q == 0:
        return 0
    return 1 if pow(disc % q, (q - 1) // 2, q) == 1 else -1


@dataclass(frozen=True)
class GenericOracle:
    kind = "generic"

    def local_degree(self, q: int, a: int) -> int:
        return q ** (4 * a - 3) * (q - 1) * (q * q - 1)

    def degree(self, k: int) -> int:
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
        out = 1
        for q, a in factorize(k).factors:
            out *= self.local_degree(q, a)
        return out


@dataclass(frozen=True)
class CMOracle:
    """CM model for K = Q(sqrt(-D)), D squarefree from the nine-value list."""

    d: int
    exceptions: dict[int, int] = field(default_factory=dict)
    strict: bool = False

    def __post_init__(self):
        if self.d not in CM_DISCRIMINANTS:
            raise ValueError(f"D={self.d} is not a CM field parameter")
        for key, deg in self.exceptions.items():
            fz = factorize(key).factors
            if len(fz) != 1 or (2 * self.d) % fz[0][0]:
                raise ValueError(
                    f"exception keys must be powers of primes dividing 2D; "
                    f"got {key}")
            if deg < 1:
                raise ValueError(f"invalid degree override {key} -> {deg}")

    def local_degree(self, q: int, a: int) -> int:
        if (2 * self.d) % q == 0:
            return self._exceptional_local(q, a)
        if _is_split(self.d, q):
            return (q - 1) ** 2 * q ** (2 * a - 2)
        return (q * q - 1) * q ** (2 * a - 2)

    def _exceptional_local(self, q: int, a: int) -> int:
        # largest tabulated exponent <= a wins, extended at q^2 per step
        for a0 in range(a, 0, -1):
            deg = self.exceptions.get(q**a0)
            if deg is not None:
                return deg * q ** (2 * (a - a0))
        if self.strict:
            raise MissingDegreeError(
                f"no exception table entry for {q}^{a} (q | 2D={2 * self.d})")
        t = _splitting_type(self.d, q)
        if t == 1:
            return (q - 1) ** 2 * q ** (2 * a - 2)
        if t == -1:
            return (q * q - 1) * q ** (2 * a - 2)
        return (q - 1) * q ** (2 * a - 1)

    def degree(self, k: int) -> int:
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
        out = 1
        for q, a in factorize(k).factors:
            out *= self.local_degree(q, a)
        return out

    def phi_sq_ratio(self) -> float:
        """kappa with degree(k) >= kappa * phi(k)^2 for every k."""
        kappa = 1.0
        for key, deg in self.exceptions.items():
            q, a = factorize(key).factors[0]
            phi_sq = ((q - 1) * q ** (a - 1)) ** 2
            kappa = min(kappa, deg / phi_sq)
        return kappa


@dataclass(frozen=True)
class TableOracle:
    """Base model with overrides at divisors of the level m."""

    base: "GenericOracle | CMOracle"
    overrides: dict[int, int]
    level: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError(f"level must be positive, got {self.level}")
        for key, deg in self.overrides.items():
            if key < 1 or self.level % key:
                raise ValueError(
                    f"override key {key} does not divide the level "
                    f"{self.level}")
            if deg < 1:
                raise ValueError(f"invalid degree override {key} -> {deg}")

    def degree(self, k: int) -> int:
        if k < 1:
            raise ValueError(f"k must be positive, got {k}")
        capped = 1
        excess = 1
        coprime = 1
        for q, a in factorize(k).factors:
            if self.level % q == 0:
                m_q = 0
                m = self.level
                while m % q == 0:
                    m //= q
                    m_q += 1
                a0 = min(a, m_q)
                capped *= q**a0
                if a > a0:
                    excess *= (self.base.local_degree(q, a)
                               // self.base.local_degree(q, a0))
            else:
                coprime *= self.base.local_degree(q, a)
        if capped == 1:
            override = 1
        else:
            try:
                override = self.overrides[capped]
            except KeyError:
                raise MissingDegreeError(
                    f"no override for divisor {capped} of level "
                    f"{self.level}") from None
        return override * excess * coprime

    def base_ratio(self) -> float:
        """rho with degree(k) >= rho * base.degree(k) for every k."""
        rho = 1.0
        for key, deg in self.overrides.items():
            rho = min(rho, deg / self.base.degree(key))
        return rho


DegreeOracle = GenericOracle | CMOracle | TableOracle


def degree(oracle: DegreeOracle, k: int) -> int:
    """deg L_k under the oracle's model."""
    return oracle.degree(k)


def _phi_overshoot(t: float) -> float:
    """E(t) with t/phi(t) <= E(t) for integers t >= 3 (Rosser-Schoenfeld)."""
    x = log(log(t))
    return _EXP_GAMMA * x + 3.0 / x


def _analytic_tail(oracle: DegreeOracle, k0: int) -> float:
    """Certified upper bound for the sum of 1/degree(k) over k >= k0 >= 32.

    Generic: degree(k) >= (6/pi^2) k^3 phi(k) >= (6/pi^2) k^4 / E(k), and
    E(t)/t^(1/4) decreases on t >= 32, so the tail is at most
    (pi^2/6) E(k0) (k0^-4 + (2/5) k0^-3).
    CM: degree(k) >= kappa phi(k)^2 >= kappa k^2 / E(k)^2 gives
    (1/kappa) E(k0)^2 (k0^-2 + 2/k0).
    """
    e0 = _phi_overshoot(k0)
    if isinstance(oracle, GenericOracle):
        return _ZETA2 * e0 * (k0**-4.0 + 0.4 * k0**-3.0) * _FLOAT_SLACK
    if isinstance(oracle, CMOracle):
        kappa = oracle.phi_sq_ratio()
        return (e0 * e0 / kappa) * (k0**-2.0 + 2.0 / k0) * _FLOAT_SLACK
    return _analytic_tail(oracle.base, k0) / oracle.base_ratio() * _FLOAT_SLACK


def degree_tail_bound(oracle: DegreeOracle, y: float) -> BoundedValue:
    """Certified numeric upper bound for sum over k > Y of 1/degree(k).

    The terms with Y < k < 32 are summed explicitly; the rest is bounded
    analytically. Valid (not merely asymptotic).
    """
    if y < 2:
        raise ValueError(f"Y must be >= 2, got {y}")
    k_first = int(y) + 1
    k0 = max(k_first, _TAIL_START)
    explicit = sum(1.0 / oracle.degree(k) for k in range(k_first, k0))
    bound = explicit * _FLOAT_SLACK + _analytic_tail(oracle, k0)
    return BoundedValue(value=bound, error=0.0, truncation=y)


def load_degree_table(path: str) -> dict[int, int]:
    """Parse a plain-text table: `k <whitespace> degree` lines, # comments."""
    table: dict[int, int] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            parts = body.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected `k degree`")
            k, deg = int(parts[0]), int(parts[1])
            if k < 1 or deg < 1:
                raise ValueError(f"{path}:{lineno}: entries must be positive")
            if k in table:
                raise ValueError(f"{path}:{lineno}: duplicate key {k}")
            table[k] = deg
    return table


def parse_oracle(spec: str) -> DegreeOracle:
    """Build an oracle from a CLI string: `generic`, `cm:<D>`,
    `cm:<D>:<table>`, or `table:<path>` (level = lcm of the keys)."""
    if spec == "generic":
        return GenericOracle()
    if spec.startswith("cm:"):
        rest = spec[3:]
        path = None
        if ":" in rest:
            rest, path = rest.split(":", 1)
        try:
            d = int(rest)
        except ValueError:
            raise ValueError(f"bad CM parameter in oracle spec {spec!r}")
        exceptions = load_degree_table(path) if path else {}
        return CMOracle(d, exceptions)
    if spec.startswith("table:"):
        overrides = load_degree_table(spec[6:])
        if not overrides:
            raise ValueError(f"empty override table in {spec!r}")
        level = lcm(*overrides)
        return TableOracle(GenericOracle(), overrides, level)
    raise ValueError(f"unknown oracle spec {spec!r}")
