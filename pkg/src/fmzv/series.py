"""Truncated power series over GF(p) and the fast weighted-sum kernel.

The central object is the order-K expansion at x = 0 of

    f(a1*x, ..., ad*x) = sum over 0 < n1 < ... < nd < p of
                         1 / ((n1 - a1*x) * ... * (nd - ad*x)),

whose x^t coefficient is sum_{k1+...+kd = t+d} a1^(k1-1)*...*ad^(kd-1) *
H(k1,...,kd).  Multiplying the x^(k-d) coefficient by a1*...*ad therefore
gives the weighted sum over all compositions of k of a1^k1*...*ad^kd *
H(k1,...,kd), and the star variant does the same for H*.

The expansion comes from one sweep of the chain DP

    F_j(n) = (sum_{m < n} F_{j-1}(m)) * 1/(n - aj*x)        (strict chains)
    F_j(n) = (sum_{m <= n} F_{j-1}(m)) * 1/(n - aj*x)       (weak chains)

costing O(d * p * K) field operations.  Multiplication by 1/(n - a*x) is
O(K) via u_t = s_t + (a/n) u_{t-1}, result_t = u_t / n; in vector form
u = q^t * cumsum(s_t * q^-t) with q = a/n, which is how the numpy kernel
processes whole blocks of n at once.  Residues stay below 2^31 so every
int64 intermediate is exact.

A series is a plain list of ints (coefficients of x^0 .. x^(K-1)).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import InvalidParameters, TruncationMismatch
from .field import PrimeField, inverse_table

_BLOCK_ROWS = 4096
_TABLE_CACHE_LIMIT = 2**22  # cache n^t tables only while (p-1)*K stays this small


def series_add(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) != len(b):
        raise TruncationMismatch(f"lengths {len(a)} and {len(b)} differ")
    return [(x + y) % p for x, y in zip(a, b)]


def series_scale(s: list[int], c: int, p: int) -> list[int]:
    c %= p
    return [c * x % p for x in s]


def series_mul(a: list[int], b: list[int], p: int) -> list[int]:
    """Naive O(K^2) product truncated to len(a) terms."""
    if len(a) != len(b):
        raise TruncationMismatch(f"lengths {len(a)} and {len(b)} differ")
    k = len(a)
    out = [0] * k
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j in range(k - i):
            out[i + j] = (out[i + j] + x * b[j]) % p
    return out


def geometric_coeffs(field: PrimeField, n: int, a: int, trunc: int) -> list[int]:
    """Coefficients of 1/(n - a*x) = sum_t n^-(t+1) a^t x^t."""
    p = field.p
    inv_n = field.inv(n)
    q = a % p * inv_n % p
    out = [0] * trunc
    cur = inv_n
    for t in range(trunc):
        out[t] = cur
        cur = cur * q % p
    return out


def mul_geometric(field: PrimeField, s: list[int], n: int, a: int) -> list[int]:
    """s(x) * 1/(n - a*x) truncated to len(s), in O(len(s)) field ops."""
    p = field.p
    n %= p
    if n == 0:
        raise ZeroDivisionError(f"geometric factor has pole at n = 0 mod {p}")
    inv_n = field.inv(n)
    q = a % p * inv_n % p
    u = 0
    out = [0] * len(s)
    for t, st in enumerate(s):
        u = (st + q * u) % p
        out[t] = inv_n * u % p
    return out


@lru_cache(maxsize=32)
def _power_tables(p: int, trunc: int):
    """(npow, ninvpow, ninv): npow[r, t] = (r+1)^t, ninvpow[r, t] = (r+1)^-t,
    ninv[r] = (r+1)^-1, all mod p, for r = 0..p-2."""
    n = np.arange(1, p, dtype=np.int64)
    ninv = np.array(inverse_table(p)[1:], dtype=np.int64)
    npow = np.empty((p - 1, trunc), dtype=np.int64)
    ninvpow = np.empty((p - 1, trunc), dtype=np.int64)
    npow[:, 0] = 1
    ninvpow[:, 0] = 1
    for t in range(1, trunc):
        npow[:, t] = npow[:, t - 1] * n % p
        ninvpow[:, t] = ninvpow[:, t - 1] * ninv % p
    return npow, ninvpow, ninv


def _block_tables(p: int, trunc: int, lo: int, hi: int):
    """Same tables as _power_tables but for n in [lo+1, hi], built on the fly."""
    n = np.arange(lo + 1, hi + 1, dtype=np.int64)
    inv = inverse_table(p)
    ninv = np.array([inv[v] for v in range(lo + 1, hi + 1)], dtype=np.int64)
    npow = np.empty((hi - lo, trunc), dtype=np.int64)
    ninvpow = np.empty((hi - lo, trunc), dtype=np.int64)
    npow[:, 0] = 1
    ninvpow[:, 0] = 1
    for t in range(1, trunc):
        npow[:, t] = npow[:, t - 1] * n % p
        ninvpow[:, t] = ninvpow[:, t - 1] * ninv % p
    return npow, ninvpow, ninv


def _scalar_pow_row(p: int, a: int, trunc: int) -> np.ndarray:
    out = np.empty(trunc, dtype=np.int64)
    cur = 1
    for t in range(trunc):
        out[t] = cur
        cur = cur * a % p
    return out


@lru_cache(maxsize=64)
def _geom_tables(p: int, trunc: int, a: int):
    """(qinv, geom) for weight a: qinv[r, t] = (n_r/a)^t and
    geom[r, t] = n_r^-(t+1) a^t, the series of 1/(n_r - a*x)."""
    npow, ninvpow, ninv = _power_tables(p, trunc)
    inv_a = pow(a, p - 2, p)
    qinv = npow * _scalar_pow_row(p, inv_a, trunc) % p
    geom = ninvpow * _scalar_pow_row(p, a, trunc) % p * ninv[:, None] % p
    return qinv, geom


def _reduced_weights(field: PrimeField, weights) -> list[int]:
    out = []
    for a in weights:
        # int(Fraction(3, 2)) would silently truncate; force explicit reduction
        if not isinstance(a, (int, np.integer)):
            raise InvalidParameters(
                f"weights must be ints reduced mod p, got {type(a).__name__} "
                "(reduce rationals with reduce_rational first)")
        out.append(int(a) % field.p)
    return out


def gen_series(field: PrimeField, weights, trunc: int, star: bool = False) -> list[int]:
    """Order-`trunc` expansion of f(a1*x, ..., ad*x) (star: weak chains).

    Coefficient t is sum over compositions (k1,...,kd) of t+d of
    a1^(k1-1)*...*ad^(kd-1) * H(k1,...,kd).  Depth 0 gives [1, 0, ...].
    """
    p = field.p
    ws = _reduced_weights(field, weights)
    if trunc < 1:
        raise InvalidParameters(f"truncation must be >= 1, got {trunc}")
    if any(a == 0 for a in ws):
        raise InvalidParameters("weights must be nonzero mod p")
    k = trunc
    d = len(ws)
    if d == 0:
        out = [0] * k
        out[0] = 1
        return out
    if k * (p - 1) >= 2**62:
        raise InvalidParameters("p * trunc too large for exact int64 accumulation")

    m = p - 1
    cached = m * k <= _TABLE_CACHE_LIMIT
    if not cached:
        apow = {a: _scalar_pow_row(p, a, k) for a in set(ws)}
        ainvpow = {a: _scalar_pow_row(p, field.inv(a), k) for a in set(ws)}
    block_rows = min(m, _BLOCK_ROWS)
    # products s * qinv stay below (block+1)*(p-1)^2, so when a whole row of
    # them accumulates under 2^63 the reductions can wait until after cumsum
    lazy = (block_rows + 1) * (p - 1) ** 2 * k < 2**63

    # carry[j] = sum of F_j(n) over all rows processed so far; carry[0] is the
    # constant series 1, the exclusive prefix of the (empty) depth-0 chains.
    carry = np.zeros((d + 1, k), dtype=np.int64)
    carry[0, 0] = 1

    for lo in range(0, m, _BLOCK_ROWS):
        hi = min(lo + _BLOCK_ROWS, m)
        if cached:
            qinv = {}
            geom = {}
            for a in set(ws):
                qi, ge = _geom_tables(p, k, a)
                qinv[a] = qi[lo:hi]
                geom[a] = ge[lo:hi]
        else:
            npow, ninvpow, ninv = _block_tables(p, k, lo, hi)
            qinv = {a: npow * ainvpow[a] % p for a in set(ws)}
            geom = {a: ninvpow * apow[a] % p * ninv[:, None] % p for a in set(ws)}

        f_prev = None  # stage-0 rows are identically zero
        for j, a in enumerate(ws, start=1):
            if f_prev is None:
                # prefix of the depth-0 chains is the constant series 1, so the
                # first stage is exactly the geometric table
                f_prev = geom[a]
                continue
            cs = np.cumsum(f_prev, axis=0)  # rows < p, block <= 4096: fits int64
            block_total = cs[-1]
            s = (cs if star else cs - f_prev) + carry[j - 1]
            if lazy:
                u = np.cumsum(s * qinv[a], axis=1) % p
            else:
                u = np.cumsum(s % p * qinv[a] % p, axis=1) % p
            f = u * geom[a] % p
            carry[j - 1] = (carry[j - 1] + block_total) % p
            f_prev = f
        carry[d] = (carry[d] + f_prev.sum(axis=0)) % p

    return [int(c) for c in carry[d]]


def _weight_product(field: PrimeField, ws) -> int:
    prod = 1
    for a in ws:
        prod = prod * a % field.p
    return prod


def weighted_sum(field: PrimeField, weights, k: int, star: bool = False) -> int:
    """sum over compositions (k1,...,kd) of k of a1^k1*...*ad^kd * H(k1,...,kd).

    Returns 0 when k < d (empty composition set).
    """
    ws = _reduced_weights(field, weights)
    d = len(ws)
    if d == 0:
        return 1 if k == 0 else 0
    if k < d:
        return 0
    coeffs = gen_series(field, ws, k - d + 1, star=star)
    return _weight_product(field, ws) * coeffs[k - d] % field.p


def weighted_sum_star(field: PrimeField, weights, k: int) -> int:
    return weighted_sum(field, weights, k, star=True)


def weighted_sum_range(field: PrimeField, weights, k_max: int, star: bool = False) -> list[int]:
    """weighted_sum for every k in 0..k_max from a single DP pass.

    Entry k is 0 for k < d.
    """
    ws = _reduced_weights(field, weights)
    d = len(ws)
    out = [0] * (k_max + 1)
    if d == 0:
        if k_max >= 0:
            out[0] = 1
        return out
    if k_max < d:
        return out
    coeffs = gen_series(field, ws, k_max - d + 1, star=star)
    prod = _weight_product(field, ws)
    for t, c in enumerate(coeffs):
        out[t + d] = prod * c % field.p
    return out


def closed_form_coeffs(field: PrimeField, d: int, trunc: int) -> list[int]:
    """Expansion of x^(p-1-d) / (2*(x^(p-1) - 1)): the value -1/2 at every
    exponent congruent to p-1-d mod p-1, and 0 elsewhere."""
    p = field.p
    neg_half = (p - 1) * field.inv(2) % p
    out = [0] * trunc
    t = p - 1 - d
    while t < trunc:
        if t >= 0:
            out[t] = neg_half
        t += p - 1
    return out


def verify_closed_form_series(field: PrimeField, d: int, i: int, trunc: int) -> bool:
    """Check that the expansion of f(x,..,x,2x,x,..,x) (2 in slot i, depth d odd)
    agrees with x^(p-1-d) / (2*(x^(p-1) - 1)) through `trunc` coefficients."""
    p = field.p
    if d % 2 == 0 or d < 1:
        raise InvalidParameters(f"depth must be odd and positive, got {d}")
    if d >= p:
        raise InvalidParameters(f"depth must satisfy d < p, got d={d}, p={p}")
    if not 1 <= i <= d:
        raise InvalidParameters(f"slot must satisfy 1 <= i <= d, got {i}")
    weights = [1] * d
    weights[i - 1] = 2
    return gen_series(field, weights, trunc) == closed_form_coeffs(field, d, trunc)
