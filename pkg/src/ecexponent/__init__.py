"""Exponent statistics of elliptic-curve reductions E(F_p).

The library computes the structure pair (d_p, e_p) with
E(F_p) = Z/d_p x Z/e_p over prime sweeps, evaluates the density constants
that govern the average exponent with certified truncation error, and
checks the divisibility-density predictions empirically at desk scale.
"""

from .arith import (Factorization, arith_fn, factorize, inverse_identity_check,
                    log_integral, mu_over_j_convolution, mu_over_j_exact)
from .bounded import BoundedValue
from .constants import (c_E_closed_form, c_E_series, cm_product,
                        cyclicity_constant, kummer_C, universal_c)
from .curves import (ConsistencyError, CurveModP, CurveZ, LocalData, ec_add,
                     ec_neg, group_order, reduce_mod, scalar_mul, trace)
from .degrees import (CMOracle, DegreeOracle, GenericOracle, TableOracle,
                      degree, degree_tail_bound, gl2_order, load_degree_table,
                      parse_oracle)
from .sieve import PrimeSegment, primes_in
from .structure import (d_via_frobenius, divides_d, exponent_via_points,
                        structure_pair)
from .harness import SweepReport, census, emit, sweep

__version__ = "0.1.0"

__all__ = [
    "BoundedValue", "CMOracle", "ConsistencyError", "CurveModP", "CurveZ",
    "DegreeOracle", "Factorization", "GenericOracle", "LocalData",
    "PrimeSegment", "SweepReport", "TableOracle", "arith_fn",
    "c_E_closed_form", "c_E_series", "census", "cm_product",
    "cyclicity_constant", "d_via_frobenius", "degree", "degree_tail_bound",
    "divides_d", "ec_add", "ec_neg", "emit", "exponent_via_points",
    "factorize", "gl2_order", "group_order", "inverse_identity_check",
    "kummer_C", "load_degree_table", "log_integral", "mu_over_j_convolution",
    "mu_over_j_exact", "parse_oracle", "primes_in", "reduce_mod",
    "scalar_mul", "structure_pair", "sweep", "trace", "universal_c",
]
