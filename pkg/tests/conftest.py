import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from ecexponent.curves import CurveZ

# >= 5 integer models, including the two the acceptance criteria name.
# (-1, 0) has CM by Z[i] and full rational 2-torsion; (0, 1) has CM by
# Z[zeta_3]; (1, 0) has CM by Z[i]; the rest are generic.
CORPUS = (
    CurveZ(-1, 0),
    CurveZ(1, 1),
    CurveZ(1, 0),
    CurveZ(0, 1),
    CurveZ(2, 3),
    CurveZ(-7, 10),
)

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def brute_degree_tails():
    """Partial tails sum over Y < k <= 10^6 of 1/deg for the generic and
    cm:1-default oracles, by direct summation with a smallest-prime-factor
    sieve (the brute-force side of the tail certification check)."""
    import numpy as np

    from ecexponent.degrees import CMOracle, GenericOracle

    n = 10**6
    spf = np.zeros(n + 1, dtype=np.int64)
    for i in range(2, n + 1):
        if spf[i] == 0:
            sl = spf[i::i]
            sl[sl == 0] = i
    oracles = {"generic": GenericOracle(), "cm": CMOracle(1)}
    cuts = (10, 100, 1000)
    tails = {name: {y: 0.0 for y in cuts} for name in oracles}
    for k in range(11, n + 1):
        m = k
        fz = []
        while m > 1:
            q = int(spf[m])
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            fz.append((q, e))
        for name, oracle in oracles.items():
            deg = 1
            for q, e in fz:
                deg *= oracle.local_degree(q, e)
            inv = 1.0 / deg
            for y in cuts:
                if k > y:
                    tails[name][y] += inv
    return tails
