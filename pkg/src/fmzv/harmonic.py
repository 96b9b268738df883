"""Multiple harmonic sums by direct nested summation.

h_direct and h_star_direct evaluate

    H(k1,...,kd)  = sum over 0 < n1 < ... < nd < p   of n1^-k1 * ... * nd^-kd
    H*(k1,...,kd) = sum over 0 < n1 <= ... <= nd < p of n1^-k1 * ... * nd^-kd

in GF(p), using a suffix-cumulative dynamic program over the chain endpoints
(O(d*p) field ops per composition).  These are the reference oracles for the
series-based fast path, so they deliberately share nothing with the series
module beyond base-field arithmetic.

A composition is a tuple of parts >= 1; its weight is the sum of parts and
its depth the number of parts.  The empty composition has both sums equal
to 1 (empty product).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .errors import InvalidParameters
from .field import PrimeField, inverse_table

Composition = tuple[int, ...]


def validate_composition(parts) -> Composition:
    comp = tuple(int(k) for k in parts)
    if any(k < 1 for k in comp):
        raise InvalidParameters(f"composition parts must be >= 1, got {comp}")
    return comp


def composition_weight(comp) -> int:
    return sum(comp)


def enumerate_compositions(k: int, d: int) -> Iterator[Composition]:
    """All C(k-1, d-1) compositions of k into d positive parts, lexicographically.

    Empty stream when k < d; the single empty composition when k = d = 0.
    """
    if d == 0:
        if k == 0:
            yield ()
        return
    if k < d:
        return
    if d == 1:
        yield (k,)
        return
    for first in range(1, k - d + 2):
        for rest in enumerate_compositions(k - first, d - 1):
            yield (first,) + rest


@lru_cache(maxsize=4096)
def _inv_pow_row(p: int, e: int) -> tuple[int, ...]:
    """row[n-1] = n^-e mod p for n = 1..p-1."""
    inv = inverse_table(p)
    return tuple(pow(inv[n], e, p) for n in range(1, p))


def _suffix_stage(p: int, row, nxt, star: bool) -> list[int]:
    """One chain stage: out[n] = sum_{m >= n} m^-e * nxt[m + (0 if star else 1)].

    Arrays are indexed by n in 1..p-1 with a sentinel at index p; nxt holds the
    suffix sums of the previous (shallower-from-the-right) stage.
    """
    out = [0] * (p + 1)
    acc = 0
    if star:
        for n in range(p - 1, 0, -1):
            acc = (acc + row[n - 1] * nxt[n]) % p
            out[n] = acc
    else:
        for n in range(p - 1, 0, -1):
            acc = (acc + row[n - 1] * nxt[n + 1]) % p
            out[n] = acc
    return out


def h_direct(field: PrimeField, composition) -> int:
    """H(k1,...,kd) over strictly increasing chains; 1 at depth 0, 0 for depth >= p."""
    comp = validate_composition(composition)
    p = field.p
    if not comp:
        return 1
    if len(comp) >= p:
        return 0
    nxt = [1] * (p + 1)
    for e in reversed(comp):
        nxt = _suffix_stage(p, _inv_pow_row(p, e), nxt, star=False)
    return nxt[1]


def h_star_direct(field: PrimeField, composition) -> int:
    """H*(k1,...,kd) over weakly increasing chains; 1 at depth 0."""
    comp = validate_composition(composition)
    p = field.p
    if not comp:
        return 1
    nxt = [1] * (p + 1)
    for e in reversed(comp):
        nxt = _suffix_stage(p, _inv_pow_row(p, e), nxt, star=True)
    return nxt[1]


def harmonic_table(
    field: PrimeField,
    max_weight: int,
    max_depth: int | None = None,
    star: bool = False,
) -> dict[Composition, int]:
    """All H (or H*) values for compositions of weight <= max_weight at once.

    Shares suffix stages across compositions (depth-first over suffixes), so the
    whole table costs O(p) per composition instead of O(d*p).
    """
    p = field.p
    if max_depth is None:
        max_depth = max_weight
    out: dict[Composition, int] = {(): 1}
    base = [1] * (p + 1)

    def extend(suffix: Composition, arr, weight_left: int, depth_left: int) -> None:
        for e in range(1, weight_left + 1):
            nxt = _suffix_stage(p, _inv_pow_row(p, e), arr, star)
            comp = (e,) + suffix
            out[comp] = nxt[1]
            if depth_left > 1 and weight_left - e >= 1:
                extend(comp, nxt, weight_left - e, depth_left - 1)

    if max_weight >= 1 and max_depth >= 1:
        extend((), base, max_weight, max_depth)
    return out


def antipode_check(field: PrimeField, composition) -> int:
    """Alternating prefix/suffix convolution sum_{j=0..d} (-1)^j H*(k1..kj) H(kd..k_{j+1}).

    Identically 0 in GF(p) for every prime and every nonempty composition.
    """
    comp = validate_composition(composition)
    if not comp:
        raise InvalidParameters("antipode check needs depth >= 1")
    p = field.p
    d = len(comp)
    total = 0
    sign = 1
    for j in range(d + 1):
        left = h_star_direct(field, comp[:j])
        right = h_direct(field, tuple(reversed(comp[j:])))
        total = (total + sign * left * right) % p
        sign = -sign
    return total
