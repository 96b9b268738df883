"""Pointwise verification of the difference equations behind the weighted sums.

Everything here revolves around the depth-d chain sum

    f(x1,...,xd) = sum over 0 < n1 < ... < nd < p of 1/((n1-x1)...(nd-xd)),

a rational function of its arguments over GF(p) (f() = 1 at depth 0), and two
specializations of its bordered form

    ftilde(x0, x1,...,xd, x_{d+1}) = f(x1,...,xd) / (x0 * x_{d+1}):

    G[a,b](x) = x^2 * ftilde(x,..,x, 2x,   x,..,x)   (a+1 left, b+1 right)
    S[a,b](x) = x^2 * ftilde(x,..,x, 2x-1, x,..,x)

These satisfy translation/difference identities whose closed-form consequence
(2*G[a,b](x) = x^(-a-b-1) * U(x), U(x) = x^(p-1)/(x^(p-1)-1)) is the engine of
the weighted sum formula.  All identities carry x^(p-1)-1 in a denominator,
which vanishes on all of GF(p)*, so they cannot be tested in the base field:
each check evaluates both sides at random points of GF(p^2) \ GF(p), where
every x - n is invertible.  The sides are ratios of low-degree polynomials,
so agreement at more points than the degree bound proves the identity and a
single mismatch at a pole-free point refutes it.

Verdicts are exact: no tolerance anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .errors import DegenerateTuple, InvalidParameters, PoleError
from .field import Fp2

Pair = tuple[int, int]


@dataclass(frozen=True)
class Verdict:
    statement: str
    trial: int
    point: Pair
    lhs: Pair
    rhs: Pair
    passed: bool
    variant: str = "generic"
    resamples: int = 0
    params: dict = dc_field(default_factory=dict)


def all_passed(verdicts) -> bool:
    return all(v.passed for v in verdicts)


def trial_rng(seed: int, label: str, index: int) -> random.Random:
    """Independent per-trial stream, derived by index so that parallel or
    reordered execution cannot change the sampled points."""
    return random.Random(f"{seed}:{label}:{index}")


def random_point(qf: Fp2, rng: random.Random) -> Pair:
    """Uniform element of GF(p^2) \\ GF(p) (nonzero w-component)."""
    return (rng.randrange(qf.p), rng.randrange(1, qf.p))


def pit_sample_count(qf: Fp2, degree_hint: int) -> int:
    """Distinct points at which agreement proves an identity of this module.

    Every term is a chain sum over at most six distinct shifted arguments
    (x, x-1, 2x, 2x-1, 2x-2, 2x-3), so the two sides share a common
    denominator of degree at most 6(p-1) plus a few boundary factors; their
    difference is a single ratio whose numerator has degree below
    6p + 2*degree_hint + 8.  More distinct pole-free points than that forces
    the numerator to vanish identically.  For tiny p the count is capped at
    the p^2 - p available points (exhaustive, though short of the bound)."""
    bound = 6 * qf.p + 2 * degree_hint + 8
    return min(bound, qf.p * qf.p - qf.p)


def _inv_row(qf: Fp2, x: Pair) -> tuple[list[int], list[int]]:
    """Component lists of (n - x)^-1 for n = 1..p-1, via one batched inversion."""
    p = qf.p
    xa, xb = x[0] % p, x[1] % p
    rows = [((n - xa) % p, -xb % p) for n in range(1, p)]
    inv = qf.batch_inverse(rows)
    return [v[0] for v in inv], [v[1] for v in inv]


def _chain_stage(ga, gb, ia, ib, p, delta):
    """One strict-chain stage: new(n) = (sum_{m<n} g(m)) * inv_row(n)."""
    m = len(ga)
    na = [0] * m
    nb = [0] * m
    pa = pb = 0
    for r in range(m):
        xa = ia[r]
        xb = ib[r]
        na[r] = (pa * xa + delta * (pb * xb % p)) % p
        nb[r] = (pa * xb + pb * xa) % p
        pa = (pa + ga[r]) % p
        pb = (pb + gb[r]) % p
    return na, nb


def eval_f(qf: Fp2, args) -> Pair:
    """Exact value of f(x1,...,xd) at GF(p^2) points, O(d*p) field ops.

    Arguments may lie in GF(p) only if they equal 0; any argument in
    {1,...,p-1} sits on a pole of the sum.
    """
    p = qf.p
    xs = [(x[0] % p, x[1] % p) for x in args]
    if not xs:
        return (1, 0)
    for x in xs:
        if x[1] == 0 and x[0] != 0:
            raise PoleError(f"argument {x[0]} lies in {{1,...,{p-1}}}")
    rows = {x: _inv_row(qf, x) for x in set(xs)}
    ga, gb = rows[xs[0]]
    ga, gb = list(ga), list(gb)
    delta = qf.delta
    for x in xs[1:]:
        ia, ib = rows[x]
        ga, gb = _chain_stage(ga, gb, ia, ib, p, delta)
    return (sum(ga) % p, sum(gb) % p)


def eval_f_tilde(qf: Fp2, x0: Pair, args, x_last: Pair) -> Pair:
    """f(args) / (x0 * x_last)."""
    if qf.norm(x0) == 0 or qf.norm(x_last) == 0:
        raise ZeroDivisionError("boundary argument of the bordered sum is zero")
    val = eval_f(qf, args)
    return qf.mul(val, qf.inv(qf.mul(x0, x_last)))


def _check_case(a: int, b: int) -> None:
    if a < -1 or b < -1 or (a, b) == (-1, -1):
        raise InvalidParameters(f"need a, b >= -1 and (a, b) != (-1, -1), got ({a}, {b})")


def _check_point(qf: Fp2, c: Pair) -> Pair:
    c = (c[0] % qf.p, c[1] % qf.p)
    if c[1] == 0:
        raise InvalidParameters("evaluation point must lie outside GF(p)")
    return c


def eval_G(qf: Fp2, a: int, b: int, c: Pair) -> Pair:
    """G[a,b] at c: f(c,..,c,2c,c,..,c) for a,b >= 0 (a left copies, b right),
    or (1/2) f(c,...,c) with a+b+1 copies when a = -1 or b = -1."""
    _check_case(a, b)
    c = _check_point(qf, c)
    if a >= 0 and b >= 0:
        two_c = qf.add(c, c)
        return eval_f(qf, (c,) * a + (two_c,) + (c,) * b)
    half = qf.embed(qf.field.inv(2))
    return qf.mul(half, eval_f(qf, (c,) * (a + b + 1)))


def eval_S(qf: Fp2, a: int, b: int, c: Pair) -> Pair:
    """S[a,b] at c: like G but with 2c-1 in the marked slot; the degenerate
    a = -1 or b = -1 form is (c/(2c-1)) f(c,...,c) with a+b+1 copies."""
    _check_case(a, b)
    c = _check_point(qf, c)
    two_c_minus_1 = qf.sub(qf.add(c, c), qf.embed(1))
    if a >= 0 and b >= 0:
        return eval_f(qf, (c,) * a + (two_c_minus_1,) + (c,) * b)
    factor = qf.mul(c, qf.inv(two_c_minus_1))
    return qf.mul(factor, eval_f(qf, (c,) * (a + b + 1)))


def u_at(qf: Fp2, c: Pair) -> Pair:
    """U(c) = c^(p-1) / (c^(p-1) - 1); finite for every c outside GF(p)."""
    t = qf.pow(c, qf.p - 1)
    return qf.mul(t, qf.inv(qf.sub(t, qf.embed(1))))


def equal_args_closed_form(qf: Fp2, d: int, c: Pair) -> Pair:
    """c^(p-1-d) / (c^(p-1) - 1), the closed form of f(c,...,c) for 0 < d < p."""
    num = qf.pow(c, qf.p - 1 - d)
    den = qf.sub(qf.pow(c, qf.p - 1), qf.embed(1))
    return qf.mul(num, qf.inv(den))


def verify_lemma_fxx(qf: Fp2, d: int, trials: int = 20, seed: int = 0) -> list[Verdict]:
    """f(c,...,c) (d copies) against its closed form, at random points."""
    if not 0 < d < qf.p:
        raise InvalidParameters(f"need 0 < d < p, got d={d}, p={qf.p}")
    out = []
    for t in range(trials):
        rng = trial_rng(seed, f"fxx:{qf.p}:{d}", t)
        c = random_point(qf, rng)
        lhs = eval_f(qf, (c,) * d)
        rhs = equal_args_closed_form(qf, d, c)
        out.append(Verdict("lemma_fxx", t, c, lhs, rhs, lhs == rhs,
                           params={"d": d}))
    return out


def _translation_sides(qf: Fp2, xs) -> tuple[Pair, Pair]:
    one = qf.embed(1)
    shifted = [qf.sub(x, one) for x in xs]
    lhs = qf.sub(eval_f(qf, shifted), eval_f(qf, xs))
    term1 = qf.mul(qf.inv(shifted[0]), eval_f(qf, shifted[1:]))
    term2 = qf.mul(qf.inv(xs[-1]), eval_f(qf, xs[:-1]))
    return lhs, qf.sub(term1, term2)


def verify_translation(qf: Fp2, d: int, trials: int = 20, seed: int = 0) -> list[Verdict]:
    """Full-translation identity

        f(x1-1,..,xd-1) - f(x1,..,xd)
            = f(x2-1,..,xd-1)/(x1-1) - f(x1,..,x_{d-1})/xd

    at generic tuples, at the all-equal tuple, and at each tuple with a single
    2c-1 slot (the specialization the G/S difference equation relies on).
    """
    if d < 1:
        raise InvalidParameters(f"need depth >= 1, got {d}")
    out = []
    for t in range(trials):
        rng = trial_rng(seed, f"translation:{qf.p}:{d}", t)
        xs = [random_point(qf, rng) for _ in range(d)]
        lhs, rhs = _translation_sides(qf, xs)
        out.append(Verdict("translation", t, xs[0], lhs, rhs, lhs == rhs,
                           params={"d": d}))
        c = random_point(qf, rng)
        lhs, rhs = _translation_sides(qf, [c] * d)
        out.append(Verdict("translation", t, c, lhs, rhs, lhs == rhs,
                           variant="equal-args", params={"d": d}))
        two_c_minus_1 = qf.sub(qf.add(c, c), qf.embed(1))
        for slot in range(d):
            marked = [c] * d
            marked[slot] = two_c_minus_1
            lhs, rhs = _translation_sides(qf, marked)
            out.append(Verdict("translation", t, c, lhs, rhs, lhs == rhs,
                               variant=f"special-slot-{slot + 1}", params={"d": d}))
    return out


def verify_gab_sab(qf: Fp2, a: int, b: int, trials: int = 20, seed: int = 0) -> list[Verdict]:
    """G[a,b](c-1) - S[a,b](c) = G[a-1,b](c-1)/(c-1) - S[a,b-1](c)/c."""
    if a < 0 or b < 0:
        raise InvalidParameters(f"need a, b >= 0, got ({a}, {b})")
    out = []
    for t in range(trials):
        rng = trial_rng(seed, f"gab_sab:{qf.p}:{a}:{b}", t)
        c = random_point(qf, rng)
        c1 = qf.sub(c, qf.embed(1))
        lhs = qf.sub(eval_G(qf, a, b, c1), eval_S(qf, a, b, c))
        rhs = qf.sub(
            qf.mul(qf.inv(c1), eval_G(qf, a - 1, b, c1)),
            qf.mul(qf.inv(c), eval_S(qf, a, b - 1, c)),
        )
        out.append(Verdict("gab_sab", t, c, lhs, rhs, lhs == rhs,
                           params={"a": a, "b": b}))
    return out


def _one_translation_sides(qf: Fp2, xs, i: int) -> tuple[Pair, Pair, bool]:
    """Sides of the single-slot translation identity for the bordered sum;
    third component reports whether a correction denominator vanished."""
    one = qf.embed(1)
    den1 = qf.sub(qf.sub(xs[i], xs[i - 1]), one)
    den2 = qf.sub(xs[i], xs[i + 1])
    if qf.norm(den1) == 0 or qf.norm(den2) == 0:
        return (0, 0), (0, 0), False

    def ftilde(seq) -> Pair:
        return eval_f_tilde(qf, seq[0], seq[1:-1], seq[-1])

    shifted = list(xs)
    shifted[i] = qf.sub(xs[i], one)
    lhs = qf.sub(ftilde(shifted), ftilde(xs))
    drop_i = xs[:i] + xs[i + 1:]
    drop_prev = xs[:i - 1] + [qf.sub(xs[i], one)] + xs[i + 1:]
    drop_next = xs[:i + 1] + xs[i + 2:]
    rhs = qf.add(
        qf.mul(qf.inv(den1), qf.sub(ftilde(drop_i), ftilde(drop_prev))),
        qf.mul(qf.inv(den2), qf.sub(ftilde(drop_next), ftilde(drop_i))),
    )
    return lhs, rhs, True


def verify_one_translation(qf: Fp2, d: int, i: int, trials: int = 20, seed: int = 0,
                           max_resamples: int = 100) -> list[Verdict]:
    """Single-slot translation of the bordered sum (tuples x0..x_{d+1}, slot i),
    at generic tuples and at the (c,..,c,2c,c,..,c) specialization."""
    if not 1 <= i <= d:
        raise InvalidParameters(f"need 1 <= i <= d, got i={i}, d={d}")
    out = []
    for t in range(trials):
        rng = trial_rng(seed, f"one_translation:{qf.p}:{d}:{i}", t)
        resamples = 0
        while True:
            xs = [random_point(qf, rng) for _ in range(d + 2)]
            lhs, rhs, ok = _one_translation_sides(qf, xs, i)
            if ok:
                break
            resamples += 1
            if resamples > max_resamples:
                raise DegenerateTuple(
                    f"no nondegenerate tuple after {max_resamples} resamples "
                    f"(p={qf.p}, d={d}, i={i}, trial {t})")
        out.append(Verdict("one_translation", t, xs[i], lhs, rhs, lhs == rhs,
                           resamples=resamples, params={"d": d, "i": i}))
        c = random_point(qf, rng)
        marked = [c] * (d + 2)
        marked[i] = qf.add(c, c)
        lhs, rhs, ok = _one_translation_sides(qf, marked, i)
        # denominators reduce to c-1 and c, both nonzero off the base field
        out.append(Verdict("one_translation", t, c, lhs, rhs, ok and lhs == rhs,
                           variant="special", params={"d": d, "i": i}))
    return out


def verify_sab_gab(qf: Fp2, a: int, b: int, trials: int = 20, seed: int = 0) -> list[Verdict]:
    """S[a,b](c) - G[a,b](c)
        = f(c,..,c)/(c(c-1)) - S[a-1,b](c)/(c-1) + G[a,b-1](c)/c
    with a+b equal arguments in the f term."""
    if a < 0 or b < 0:
        raise InvalidParameters(f"need a, b >= 0, got ({a}, {b})")
    one = qf.embed(1)
    out = []
    for t in range(trials):
        rng = trial_rng(seed, f"sab_gab:{qf.p}:{a}:{b}", t)
        c = random_point(qf, rng)
        c1 = qf.sub(c, one)
        lhs = qf.sub(eval_S(qf, a, b, c), eval_G(qf, a, b, c))
        rhs = qf.mul(qf.inv(qf.mul(c, c1)), eval_f(qf, (c,) * (a + b)))
        rhs = qf.sub(rhs, qf.mul(qf.inv(c1), eval_S(qf, a - 1, b, c)))
        rhs = qf.add(rhs, qf.mul(qf.inv(c), eval_G(qf, a, b - 1, c)))
        out.append(Verdict("sab_gab", t, c, lhs, rhs, lhs == rhs,
                           params={"a": a, "b": b}))
    return out


def verify_induction_step(qf: Fp2, a: int, b: int, trials: int = 20, seed: int = 0) -> list[Verdict]:
    """Combined difference equation

        G[a,b](c-1) - G[a,b](c) = -S[a,b-1](c)/c + G[a,b-1](c)/c
                                  + G[a-1,b](c-1)/(c-1) - S[a-1,b](c)/(c-1)
                                  + U(c)/(c^(a+b+1) (c-1)).

    Requires 2 <= a+b < p: the final term substitutes the depth-(a+b)
    equal-arguments closed form, which needs depth < p.
    """
    if a < 0 or b < 0 or a + b < 2:
        raise InvalidParameters(f"need a, b >= 0 with a+b >= 2, got ({a}, {b})")
    if a + b >= qf.p:
        raise InvalidParameters(f"need a+b < p, got a+b={a + b}, p={qf.p}")
    one = qf.embed(1)
    out = []
    for t in range(trials):
        rng = trial_rng(seed, f"induction:{qf.p}:{a}:{b}", t)
        c = random_point(qf, rng)
        c1 = qf.sub(c, one)
        inv_c = qf.inv(c)
        inv_c1 = qf.inv(c1)
        lhs = qf.sub(eval_G(qf, a, b, c1), eval_G(qf, a, b, c))
        rhs = qf.mul(inv_c, qf.sub(eval_G(qf, a, b - 1, c), eval_S(qf, a, b - 1, c)))
        rhs = qf.add(rhs, qf.mul(inv_c1, qf.sub(eval_G(qf, a - 1, b, c1), eval_S(qf, a - 1, b, c))))
        u_term = qf.mul(u_at(qf, c), qf.inv(qf.mul(qf.pow(c, a + b + 1), c1)))
        rhs = qf.add(rhs, u_term)
        out.append(Verdict("induction_step", t, c, lhs, rhs, lhs == rhs,
                           params={"a": a, "b": b}))
    return out


def verify_main_closed_form(qf: Fp2, a: int, b: int, trials: int = 20, seed: int = 0) -> list[Verdict]:
    """2*G[a,b](c) = c^(-a-b-1) * U(c), for a, b >= -1, (a,b) != (-1,-1),
    a+b even with 0 <= a+b < p-1."""
    _check_case(a, b)
    s = a + b
    if s < 0 or s % 2 != 0:
        raise InvalidParameters(f"need a+b even and >= 0, got a+b={s}")
    if s >= qf.p - 1:
        raise InvalidParameters(f"need a+b < p-1, got a+b={s}, p={qf.p}")
    out = []
    for t in range(trials):
        rng = trial_rng(seed, f"main_closed_form:{qf.p}:{a}:{b}", t)
        c = random_point(qf, rng)
        lhs = qf.mul(qf.embed(2), eval_G(qf, a, b, c))
        rhs = qf.mul(qf.pow(qf.inv(c), s + 1), u_at(qf, c))
        out.append(Verdict("main_closed_form", t, c, lhs, rhs, lhs == rhs,
                           params={"a": a, "b": b}))
    return out
