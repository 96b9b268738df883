"""Shared brute-force oracles for the test suite.

These are deliberately naive (literal nested loops over chains) so they share
no structure with either the suffix-sum oracle in fmzv.harmonic or the series
DP in fmzv.series.
"""

import itertools

import pytest


def naive_h(p: int, comp, star: bool = False) -> int:
    """Multiple harmonic sum by literal enumeration of chains."""
    d = len(comp)
    if d == 0:
        return 1
    total = 0
    for chain in itertools.product(range(1, p), repeat=d):
        if star:
            ok = all(chain[i] <= chain[i + 1] for i in range(d - 1))
        else:
            ok = all(chain[i] < chain[i + 1] for i in range(d - 1))
        if not ok:
            continue
        term = 1
        for n, k in zip(chain, comp):
            term = term * pow(n, -k, p) % p
        total = (total + term) % p
    return total


def naive_weighted_sum(p: int, weights, k: int, h_values, star: bool = False) -> int:
    """sum over compositions of k of prod weights[i]^k_i * H(comp), using a
    precomputed table of H values (or H* when star)."""
    from fmzv.harmonic import enumerate_compositions

    d = len(weights)
    total = 0
    for comp in enumerate_compositions(k, d):
        term = h_values[comp]
        for a, ki in zip(weights, comp):
            term = term * pow(a, ki, p) % p
        total = (total + term) % p
    return total


@pytest.fixture
def f5():
    from fmzv.field import PrimeField

    return PrimeField(5)


@pytest.fixture
def f7():
    from fmzv.field import PrimeField

    return PrimeField(7)


@pytest.fixture
def f11():
    from fmzv.field import PrimeField

    return PrimeField(11)
