"""Prime sweeps: exhaustive weighted-sum checks and conjecture exception scans.

A statement about all primes at once ("the weighted sum vanishes as an element
of prod_p GF(p) / sum_p GF(p)") is operationally a claim about exception sets:
scan every odd prime up to p_max, record the primes where the per-prime
residue is nonzero, and compare against the predicted set where theory gives
one.  Conjecture scans are report-generating only; they assert nothing about
unknown truth, just internal consistency.

Every scanned prime is classified exactly once: zero residue, exception
(nonzero residue, recorded with its value), or skipped (prime too small for
the depth, or a weight with no nonzero image mod p).  Per-prime work is pure,
so sweeps can run on a process pool; results are merged in ascending prime
order, making reports byte-identical for any worker count.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import InvalidParameters
from .field import PrimeField, reduce_rational
from .series import weighted_sum, weighted_sum_range

SIEVE_LIMIT = 10**6

REPORT_BODY_SCHEMA = {
    "type": "object",
    "required": ["version", "seed", "observations"],
    "properties": {
        "version": {"type": "string"},
        "seed": {"type": "integer"},
        "observations": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["statement", "params", "range", "exceptions",
                             "skipped", "residues_nonzero", "seed", "scanned"],
                "properties": {
                    "statement": {"type": "string"},
                    "params": {"type": "object"},
                    "range": {
                        "type": "object",
                        "required": ["p_min", "p_max"],
                        "properties": {
                            "p_min": {"type": "integer"},
                            "p_max": {"type": "integer"},
                        },
                    },
                    "exceptions": {"type": "array", "items": {"type": "integer"}},
                    "skipped": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["p", "reason"],
                            "properties": {
                                "p": {"type": "integer"},
                                "reason": {"type": "string"},
                            },
                        },
                    },
                    "residues_nonzero": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["p", "value"],
                            "properties": {
                                "p": {"type": "integer"},
                                "value": {"type": "integer"},
                            },
                        },
                    },
                    "seed": {"type": "integer"},
                    "scanned": {"type": "integer"},
                },
            },
        },
    },
}


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit by a bytearray sieve (limit capped at 10^6)."""
    if limit > SIEVE_LIMIT:
        raise InvalidParameters(f"prime sweeps are capped at p_max <= {SIEVE_LIMIT}")
    if limit < 2:
        return []
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for q in range(2, int(limit**0.5) + 1):
        if flags[q]:
            start = q * q
            flags[start::q] = b"\x00" * (((limit - start) // q) + 1)
    return [n for n in range(2, limit + 1) if flags[n]]


def odd_primes(lo_exclusive: int, hi_inclusive: int) -> list[int]:
    return [p for p in sieve_primes(hi_inclusive) if p > max(2, lo_exclusive)]


@dataclass
class AdelicObservation:
    """One statement instance swept over a prime range."""

    statement: str
    params: dict
    p_min: int
    p_max: int
    exceptions: list[int]
    skipped: list[dict]
    residues_nonzero: list[dict]
    seed: int
    scanned: int
    extra: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        body = {
            "statement": self.statement,
            "params": self.params,
            "range": {"p_min": self.p_min, "p_max": self.p_max},
            "exceptions": list(self.exceptions),
            "skipped": list(self.skipped),
            "residues_nonzero": list(self.residues_nonzero),
            "seed": self.seed,
            "scanned": self.scanned,
        }
        body.update(self.extra)
        return body

    @property
    def passed(self) -> bool:
        """True unless a predicted-exception comparison failed."""
        return bool(self.extra.get("passed", True))


def check_partition(obs: AdelicObservation, primes: list[int]) -> bool:
    """Every scanned prime classified exactly once (zero / exception / skipped)."""
    exceptions = set(obs.exceptions)
    skipped = {s["p"] for s in obs.skipped}
    if exceptions & skipped:
        return False
    if not exceptions <= set(primes) or not skipped <= set(primes):
        return False
    if sorted(exceptions) != sorted(r["p"] for r in obs.residues_nonzero):
        return False
    return obs.scanned == len(primes)


def _run_tasks(fn, tasks, threads: int):
    if threads > 1 and len(tasks) >= 4:
        chunk = max(1, len(tasks) // (threads * 4))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, tasks, chunksize=chunk))
    return [fn(t) for t in tasks]


@dataclass
class SweepReport:
    """Observations plus run metadata.

    The body (version, seed, observations) is a pure function of the run
    configuration: serializing it twice for the same configuration yields
    identical bytes.  Wall-clock data lives only in `meta`.
    """

    observations: list[AdelicObservation]
    seed: int
    version: str
    meta: dict = dc_field(default_factory=dict)

    def body_dict(self) -> dict:
        return {
            "version": self.version,
            "seed": self.seed,
            "observations": [obs.to_dict() for obs in self.observations],
        }

    def body_json(self) -> str:
        return json.dumps(self.body_dict(), sort_keys=True, separators=(",", ":"))

    def to_json(self, indent: int | None = 2) -> str:
        doc = {"body": self.body_dict(), "meta": self.meta}
        return json.dumps(doc, sort_keys=True, indent=indent)

    def to_csv(self) -> str:
        """One row per (statement instance, prime class)."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["statement", "params", "p_min", "p_max",
                         "prime_class", "count", "primes"])
        for obs in self.observations:
            params = json.dumps(obs.params, sort_keys=True, separators=(",", ":"))
            skipped = sorted(s["p"] for s in obs.skipped)
            zero = obs.scanned - len(obs.exceptions) - len(skipped)
            rows = [
                ("zero", zero, ""),
                ("exception", len(obs.exceptions),
                 ";".join(str(p) for p in obs.exceptions)),
                ("skipped", len(skipped), ";".join(str(p) for p in skipped)),
            ]
            for cls, count, primes in rows:
                writer.writerow([obs.statement, params, obs.p_min, obs.p_max,
                                 cls, count, primes])
        return buf.getvalue()

    @property
    def passed(self) -> bool:
        return all(obs.passed for obs in self.observations)


# ---------------------------------------------------------------------------
# Exhaustive weighted-sum checks (proved statements: zero tolerance)
# ---------------------------------------------------------------------------

def slot_weights(d: int, i: int) -> list[int]:
    """All-ones weight vector of depth d with a 2 in slot i."""
    w = [1] * d
    w[i - 1] = 2
    return w


def predicted_residue(p: int, k: int) -> int:
    """Predicted weighted-sum value: -1 when p-1 divides k, else 0."""
    return p - 1 if k % (p - 1) == 0 else 0


@dataclass(frozen=True)
class Theorem1Check:
    p: int
    d: int
    k: int
    i: int
    value: int
    expected: int

    @property
    def passed(self) -> bool:
        return self.value == self.expected


def verify_theorem1(p: int, d: int, k: int, i: int) -> Theorem1Check:
    """Single-instance check of the weighted sum formula sum 2^{k_i} H = -[p-1 | k]."""
    if d % 2 == 0 or d < 1:
        raise InvalidParameters(f"depth must be odd and positive, got {d}")
    if not 1 <= i <= d:
        raise InvalidParameters(f"slot must satisfy 1 <= i <= d, got {i}")
    if k < d:
        raise InvalidParameters(f"weight must satisfy k >= d, got k={k}, d={d}")
    field = PrimeField(p)
    if p <= d:
        raise InvalidParameters(f"prime must exceed the depth, got p={p}, d={d}")
    value = weighted_sum(field, slot_weights(d, i), k)
    return Theorem1Check(p, d, k, i, value, predicted_residue(p, k))


def _theorem1_prime_task(args) -> tuple[int, list[tuple[int, int, int, int]]]:
    """Mismatches [(i, k, value, expected)] for one prime across all k and slots."""
    p, d, k_max, slots = args
    field = PrimeField(p)
    bad = []
    for i in slots:
        values = weighted_sum_range(field, slot_weights(d, i), k_max)
        for k in range(d, k_max + 1):
            want = predicted_residue(p, k)
            if values[k] != want:
                bad.append((i, k, values[k], want))
    return p, bad


def sweep_theorem1(d: int, k_max: int, p_max: int, i: int | None = None,
                   threads: int = 1, seed: int = 0) -> AdelicObservation:
    """Check the slot-weighted sum formula for every odd prime d < p <= p_max,
    every k in [d, k_max], and every slot (or just slot i)."""
    if d % 2 == 0 or d < 1:
        raise InvalidParameters(f"depth must be odd and positive, got {d}")
    if i is not None and not 1 <= i <= d:
        raise InvalidParameters(f"slot must satisfy 1 <= i <= d, got {i}")
    if k_max < d:
        raise InvalidParameters(f"k_max must be >= d, got {k_max}")
    slots = [i] if i is not None else list(range(1, d + 1))
    primes = odd_primes(d, p_max)
    results = _run_tasks(_theorem1_prime_task,
                         [(p, d, k_max, slots) for p in primes], threads)
    results.sort(key=lambda r: r[0])
    exceptions = []
    residues = []
    for p, bad in results:
        if bad:
            exceptions.append(p)
            for (slot, k, value, want) in bad:
                residues.append({"p": p, "value": value, "k": k, "i": slot,
                                 "expected": want})
    return AdelicObservation(
        statement="theorem1",
        params={"d": d, "k_max": k_max, "i": i if i is not None else "all"},
        p_min=primes[0] if primes else p_max,
        p_max=p_max,
        exceptions=exceptions,
        skipped=[],
        residues_nonzero=residues,
        seed=seed,
        scanned=len(primes),
        extra={"passed": not exceptions},
    )


def _mzv_prime_task(args) -> tuple[int, int]:
    p, d, k, i, star = args
    field = PrimeField(p)
    return p, weighted_sum(field, slot_weights(d, i), k, star=star)


def _mzv_sweep(d: int, k: int, i: int, p_max: int, star: bool,
               threads: int, seed: int) -> tuple[list[int], list[int], list[dict]]:
    if d % 2 == 0 or d < 1:
        raise InvalidParameters(f"depth must be odd and positive, got {d}")
    if not 1 <= i <= d:
        raise InvalidParameters(f"slot must satisfy 1 <= i <= d, got {i}")
    if k < d:
        raise InvalidParameters(f"weight must satisfy k >= d, got k={k}, d={d}")
    primes = odd_primes(d, p_max)
    results = _run_tasks(_mzv_prime_task,
                         [(p, d, k, i, star) for p in primes], threads)
    results.sort(key=lambda r: r[0])
    exceptions = [p for p, v in results if v != 0]
    residues = [{"p": p, "value": v} for p, v in results if v != 0]
    return primes, exceptions, residues


def verify_finite_mzv(d: int, k: int, i: int, p_max: int,
                      threads: int = 1, seed: int = 0) -> AdelicObservation:
    """Sweep the slot-weighted sum over primes; the exception set must be
    exactly the primes p > d with (p-1) | k, where the residue is -1."""
    primes, exceptions, residues = _mzv_sweep(d, k, i, p_max, False, threads, seed)
    predicted = [p for p in primes if k % (p - 1) == 0]
    passed = exceptions == predicted and all(
        r["value"] == r["p"] - 1 for r in residues)
    return AdelicObservation(
        statement="mzv",
        params={"d": d, "k": k, "i": i},
        p_min=primes[0] if primes else p_max,
        p_max=p_max,
        exceptions=exceptions,
        skipped=[],
        residues_nonzero=residues,
        seed=seed,
        scanned=len(primes),
        extra={"predicted_exceptions": predicted, "passed": passed},
    )


def verify_finite_mzv_star(d: int, k: int, i: int, p_max: int,
                           threads: int = 1, seed: int = 0) -> AdelicObservation:
    """Star variant: every exception prime must satisfy p <= max(d, k+1);
    above that bound no sub-weight can be divisible by p-1, so the residue
    is exactly 0."""
    primes, exceptions, residues = _mzv_sweep(d, k, i, p_max, True, threads, seed)
    bound = max(d, k + 1)
    passed = all(p <= bound for p in exceptions)
    return AdelicObservation(
        statement="mzv_star",
        params={"d": d, "k": k, "i": i},
        p_min=primes[0] if primes else p_max,
        p_max=p_max,
        exceptions=exceptions,
        skipped=[],
        residues_nonzero=residues,
        seed=seed,
        scanned=len(primes),
        extra={"exception_bound": bound, "passed": passed},
    )


# ---------------------------------------------------------------------------
# Conjecture scans (open statements: report-generating, never pass/fail)
# ---------------------------------------------------------------------------

def _classify_weights(p: int, weight_vectors, depth: int):
    """Skip reason for this prime, or (None, reduced vectors)."""
    if any(w.denominator % p == 0 for vec in weight_vectors for w in vec):
        return "denominator divisible by p", None
    if p == 2:
        return "p = 2 is not an odd modulus", None
    field = PrimeField(p)
    reduced = [[reduce_rational(w, field) for w in vec] for vec in weight_vectors]
    if any(a == 0 for vec in reduced for a in vec):
        return "weight zero mod p", None
    if p <= depth:
        return "p <= depth", None
    return None, reduced


def _pair_scan_task(args):
    """Residues (plain, star) of one weighted sum at one prime, or a skip."""
    p, weights, k = args
    reason, reduced = _classify_weights(p, [weights], len(weights))
    if reason is not None:
        return p, ("skip", reason)
    field = PrimeField(p)
    ws = reduced[0]
    return p, ("ok", weighted_sum(field, ws, k), weighted_sum(field, ws, k, star=True))


def _diff_scan_task(args):
    """Residue differences between two weight vectors at one prime, or a skip."""
    p, w1, w2, k = args
    reason, reduced = _classify_weights(p, [w1, w2], len(w1))
    if reason is not None:
        return p, ("skip", reason)
    field = PrimeField(p)
    v1, v2 = reduced
    diff = (weighted_sum(field, v1, k) - weighted_sum(field, v2, k)) % p
    diff_star = (weighted_sum(field, v1, k, star=True)
                 - weighted_sum(field, v2, k, star=True)) % p
    return p, ("ok", diff, diff_star)


def _fold_pair_results(statement: str, params: dict, p_max: int, seed: int,
                       primes: list[int], results) -> list[AdelicObservation]:
    """Split per-prime (plain, star) residues into two observations."""
    results.sort(key=lambda r: r[0])
    skipped = []
    plain = []
    star = []
    for p, res in results:
        if res[0] == "skip":
            skipped.append({"p": p, "reason": res[1]})
        else:
            plain.append((p, res[1]))
            star.append((p, res[2]))
    out = []
    for suffix, vals in (("", plain), ("_star", star)):
        exceptions = [p for p, v in vals if v != 0]
        residues = [{"p": p, "value": v} for p, v in vals if v != 0]
        out.append(AdelicObservation(
            statement=statement + suffix,
            params=params,
            p_min=primes[0] if primes else p_max,
            p_max=p_max,
            exceptions=exceptions,
            skipped=list(skipped),
            residues_nonzero=residues,
            seed=seed,
            scanned=len(primes),
        ))
    return out


def _weights_param(weights: list[Fraction]) -> list:
    return [int(w) if w.denominator == 1 else str(w) for w in weights]


def scan_custom(weights, k: int, p_max: int, threads: int = 1, seed: int = 0,
                statement: str = "custom", params: dict | None = None) -> list[AdelicObservation]:
    """Sweep a user-supplied rational weight vector; returns the plain and star
    observations."""
    ws = [Fraction(w) for w in weights]
    if not ws:
        raise InvalidParameters("weight vector must be nonempty")
    if any(w == 0 for w in ws):
        raise InvalidParameters("weights must be nonzero rationals")
    if k < 1:
        raise InvalidParameters(f"weight k must be >= 1, got {k}")
    primes = sieve_primes(p_max)
    results = _run_tasks(_pair_scan_task, [(p, tuple(ws), k) for p in primes], threads)
    if params is None:
        params = {"k": k, "weights": _weights_param(ws)}
    return _fold_pair_results(statement, params, p_max, seed, primes, results)


def conjecture1_weights(r: int) -> list[Fraction]:
    """Reading of the pattern (1, 1, 2, 3, ..., r): a leading 1 prepended to
    1..r, depth r+1.  (For r = 1 this collapses to (1, 1).)"""
    return [Fraction(1)] + [Fraction(j) for j in range(1, r + 1)]


def scan_conjecture1(r: int, k: int, p_max: int, threads: int = 1,
                     seed: int = 0) -> list[AdelicObservation]:
    """Does the weighted sum with weights (1, 1, 2, ..., r) vanish for almost
    all primes?  Open; this only reports exception sets (plain and star)."""
    if r < 1 or k < 1:
        raise InvalidParameters(f"need r, k >= 1, got r={r}, k={k}")
    ws = conjecture1_weights(r)
    params = {"r": r, "k": k, "weights": _weights_param(ws),
              "reading": "leading 1 prepended to 1..r"}
    return scan_custom(ws, k, p_max, threads, seed, statement="conj1", params=params)


def conjecture2_weights(r: int) -> list[Fraction]:
    """Reading of the pattern (1, 1, 2, ..., r-1, r, r): trailing r repeated,
    depth r+2.  (For r = 1 this collapses to (1, 1, 1).)"""
    return conjecture1_weights(r) + [Fraction(r)]


def scan_conjecture2(r: int, k: int, p_max: int, threads: int = 1,
                     seed: int = 0) -> list[AdelicObservation]:
    """Same as scan_conjecture1 for the doubled-tail pattern; r must be odd."""
    if r < 1 or k < 1:
        raise InvalidParameters(f"need r, k >= 1, got r={r}, k={k}")
    if r % 2 == 0:
        raise InvalidParameters(f"r must be odd, got {r}")
    ws = conjecture2_weights(r)
    params = {"r": r, "k": k, "weights": _weights_param(ws),
              "reading": "leading 1 prepended to 1..r, trailing r repeated"}
    return scan_custom(ws, k, p_max, threads, seed, statement="conj2", params=params)


def scan_conjecture3(a, b, r: int, k: int, p_max: int, threads: int = 1,
                     seed: int = 0) -> list[AdelicObservation]:
    """Arithmetic-progression symmetry: does swapping the leading weight a for
    b in (a, a+b, a+2b, ..., a+rb) leave the weighted sum unchanged for almost
    all primes?  Records the per-prime difference of the two sums."""
    a = Fraction(a)
    b = Fraction(b)
    if r < 1 or k < 1:
        raise InvalidParameters(f"need r, k >= 1, got r={r}, k={k}")
    tail = [a + j * b for j in range(1, r + 1)]
    w1 = [a] + tail
    w2 = [b] + tail
    if any(w == 0 for w in w1 + w2):
        raise InvalidParameters(
            "all of a, b and a+j*b must be nonzero rationals (zero weights "
            "annihilate every term)")
    primes = sieve_primes(p_max)
    results = _run_tasks(_diff_scan_task,
                         [(p, tuple(w1), tuple(w2), k) for p in primes], threads)
    params = {"a": str(a), "b": str(b), "r": r, "k": k,
              "weights": _weights_param(w1), "weights_alt": _weights_param(w2)}
    return _fold_pair_results("conj3", params, p_max, seed, primes, results)
