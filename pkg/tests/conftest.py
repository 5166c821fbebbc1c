"""Shared fixtures: small groups, character tables, cached pq categories."""

import itertools

import numpy as np
import pytest

from dcenter.groups import FiniteGroup


def permutation_group_table(perms):
    """Multiplication table for a list of permutation tuples (identity first)."""
    pos = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    mul = np.empty((n, n), dtype=np.int64)
    for i, g in enumerate(perms):
        for j, h in enumerate(perms):
            composed = tuple(g[h[k]] for k in range(len(g)))
            mul[i, j] = pos[composed]
    return mul


S3_PERMS = [
    (0, 1, 2),
    (0, 2, 1),
    (1, 0, 2),
    (1, 2, 0),
    (2, 0, 1),
    (2, 1, 0),
]


@pytest.fixture(scope="session")
def s3():
    return FiniteGroup(permutation_group_table(S3_PERMS), "S3")


@pytest.fixture(scope="session")
def klein():
    idx = list(range(4))
    mul = [[(a ^ b) for b in idx] for a in idx]
    return FiniteGroup(mul, "Z2xZ2")


@pytest.fixture(scope="session")
def d4():
    """Dihedral group of order 8: r^4 = s^2 = 1, s r s = r^-1."""
    elems = [(i, j) for i in range(4) for j in range(2)]  # r^i s^j
    pos = {e: k for k, e in enumerate(elems)}
    mul = np.empty((8, 8), dtype=np.int64)
    for (i1, j1), a in pos.items():
        for (i2, j2), b in pos.items():
            # r^i1 s^j1 r^i2 s^j2 = r^(i1 + (-1)^j1 i2) s^(j1+j2)
            i3 = (i1 + (i2 if j1 == 0 else -i2)) % 4
            mul[a, b] = pos[(i3, (j1 + j2) % 2)]
    return FiniteGroup(mul, "D4")


def s3_parity(i):
    g = S3_PERMS[i]
    inversions = sum(
        1 for a, b in itertools.combinations(range(3), 2) if g[a] > g[b]
    )
    return inversions % 2
