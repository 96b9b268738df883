"""Exact arithmetic in GF(p) and in the quadratic extension GF(p^2).

GF(p) elements are plain ints, fully reduced into [0, p); the modulus lives
in a PrimeField context rather than on each element.  GF(p^2) elements are
(a, b) pairs representing a + b*w with w^2 = delta, delta the smallest
quadratic nonresidue mod p, so the representation is deterministic per
modulus.

Python ints never overflow, so no widening tricks are needed here; the
numpy-based kernels elsewhere keep p below 2^31 so that products fit in
int64, and PrimeField enforces that bound for everyone.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import InvalidParameters, WeightNotReducible

MAX_MODULUS = 2**31

# Deterministic Miller-Rabin: these witnesses are exact for all n < 3,215,031,751,
# which covers the full [3, 2^31) modulus range.
_MR_WITNESSES = (2, 3, 5, 7)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 3,215,031,751."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def find_nonresidue(p: int) -> int:
    """Smallest delta >= 2 with delta^((p-1)/2) = -1 mod p."""
    e = (p - 1) // 2
    for delta in range(2, p):
        if pow(delta, e, p) == p - 1:
            return delta
    raise InvalidParameters(f"no quadratic nonresidue below {p}; modulus is not an odd prime")


class PrimeField:
    """Arithmetic context for GF(p), p an odd prime with 3 <= p < 2^31."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool):
            raise InvalidParameters(f"modulus must be an int, got {type(p).__name__}")
        if p < 3 or p >= MAX_MODULUS:
            raise InvalidParameters(f"modulus must lie in [3, 2^31), got {p}")
        if p % 2 == 0 or not is_prime(p):
            raise InvalidParameters(f"{p} is not an odd prime")
        self.p = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def element(self, v: int) -> int:
        return v % self.p

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def mul(self, x: int, y: int) -> int:
        return x * y % self.p

    def neg(self, x: int) -> int:
        return -x % self.p

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError(f"inverse of 0 mod {self.p}")
        return pow(x, self.p - 2, self.p)

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(x), -e, self.p)
        return pow(x % self.p, e, self.p)

    def batch_inverse(self, xs) -> list[int]:
        """Invert many elements with one modular inversion (prefix-product trick)."""
        xs = [x % self.p for x in xs]
        if not xs:
            return []
        p = self.p
        prefix = [0] * len(xs)
        run = 1
        for i, x in enumerate(xs):
            if x == 0:
                raise ZeroDivisionError(f"zero entry at index {i}")
            run = run * x % p
            prefix[i] = run
        inv_run = pow(run, p - 2, p)
        out = [0] * len(xs)
        for i in range(len(xs) - 1, 0, -1):
            out[i] = inv_run * prefix[i - 1] % p
            inv_run = inv_run * xs[i] % p
        out[0] = inv_run
        return out


@lru_cache(maxsize=64)
def inverse_table(p: int) -> tuple[int, ...]:
    """inv[n] = n^-1 mod p for n in 1..p-1 (index 0 unused), via the
    linear recurrence inv[n] = -(p // n) * inv[p mod n]."""
    inv = [0] * p
    if p > 1:
        inv[1] = 1
    for n in range(2, p):
        inv[n] = (p - p // n) * inv[p % n] % p
    return tuple(inv)


class Fp2:
    """Arithmetic context for GF(p^2) = GF(p)[w] / (w^2 - delta).

    Elements are (a, b) int pairs meaning a + b*w, both components reduced.
    """

    __slots__ = ("field", "p", "delta")

    def __init__(self, field: PrimeField, delta: int | None = None):
        self.field = field
        self.p = field.p
        if delta is None:
            delta = find_nonresidue(self.p)
        else:
            delta %= self.p
            if pow(delta, (self.p - 1) // 2, self.p) != self.p - 1:
                raise InvalidParameters(f"{delta} is not a quadratic nonresidue mod {self.p}")
        self.delta = delta

    def __repr__(self) -> str:
        return f"Fp2(p={self.p}, delta={self.delta})"

    def embed(self, v: int) -> tuple[int, int]:
        return (v % self.p, 0)

    def in_base(self, x: tuple[int, int]) -> bool:
        return x[1] % self.p == 0

    def add(self, x, y) -> tuple[int, int]:
        p = self.p
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p)

    def sub(self, x, y) -> tuple[int, int]:
        p = self.p
        return ((x[0] - y[0]) % p, (x[1] - y[1]) % p)

    def neg(self, x) -> tuple[int, int]:
        p = self.p
        return (-x[0] % p, -x[1] % p)

    def mul(self, x, y) -> tuple[int, int]:
        p = self.p
        a, b = x
        c, d = y
        return ((a * c + self.delta * (b * d % p)) % p, (a * d + b * c) % p)

    def norm(self, x) -> int:
        # N(a + b*w) = a^2 - delta*b^2, multiplicative into GF(p).
        p = self.p
        a, b = x
        return (a * a - self.delta * (b * b % p)) % p

    def inv(self, x) -> tuple[int, int]:
        p = self.p
        n = self.norm(x)
        if n == 0:
            raise ZeroDivisionError(f"inverse of 0 in GF({p}^2)")
        ninv = pow(n, p - 2, p)
        return (x[0] * ninv % p, -x[1] * ninv % p)

    def pow(self, x, e: int) -> tuple[int, int]:
        if e < 0:
            x = self.inv(x)
            e = -e
        result = (1, 0)
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def batch_inverse(self, xs) -> list[tuple[int, int]]:
        """Invert many elements at the cost of one GF(p) inversion, via norms."""
        p = self.p
        norms = []
        for i, x in enumerate(xs):
            n = self.norm(x)
            if n == 0:
                raise ZeroDivisionError(f"zero entry at index {i}")
            norms.append(n)
        ninvs = self.field.batch_inverse(norms)
        return [(x[0] * ni % p, -x[1] * ni % p) for x, ni in zip(xs, ninvs)]


def reduce_rational(w: Fraction, field: PrimeField) -> int:
    """Image of a rational weight in GF(p); fails if p divides the denominator."""
    w = Fraction(w)
    if w.denominator % field.p == 0:
        raise WeightNotReducible(f"denominator of {w} vanishes mod {field.p}")
    return w.numerator % field.p * field.inv(w.denominator % field.p) % field.p
