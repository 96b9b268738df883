"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s`.  Every check is exact
(equality in GF(p) or exact set equality); there are no tolerances anywhere.
"""

import contextlib
import io
import json
import random
import time

import jsonschema

from conftest import naive_weighted_sum
from fmzv.cli import main as cli_main
from fmzv.field import Fp2, PrimeField
from fmzv.harmonic import antipode_check, harmonic_table
from fmzv.identities import (
    all_passed,
    verify_gab_sab,
    verify_induction_step,
    verify_lemma_fxx,
    verify_main_closed_form,
    verify_one_translation,
    verify_sab_gab,
    verify_translation,
)
from fmzv.scan import (
    REPORT_BODY_SCHEMA,
    SweepReport,
    check_partition,
    odd_primes,
    scan_conjecture1,
    scan_conjecture2,
    scan_conjecture3,
    sieve_primes,
    sweep_theorem1,
    verify_finite_mzv,
    verify_finite_mzv_star,
)
from fmzv.series import verify_closed_form_series, weighted_sum


def _report(n: int, description: str, failures: list, started: float,
            budget_s: float | None = None) -> None:
    elapsed = time.time() - started
    ok = not failures and (budget_s is None or elapsed <= budget_s)
    line = f"ACCEPTANCE {n} {'PASS' if ok else 'FAIL'}: {description} [{elapsed:.1f}s]"
    print(line)
    assert not failures, f"criterion {n}: first failures: {failures[:5]}"
    if budget_s is not None:
        assert elapsed <= budget_s, f"criterion {n}: {elapsed:.1f}s over {budget_s}s budget"


def test_criterion_1_theorem1_exhaustive():
    t0 = time.time()
    failures = []
    for d in (1, 3, 5, 7):
        obs = sweep_theorem1(d, 30, 199, threads=1)
        if not obs.passed:
            failures.extend((d, r) for r in obs.residues_nonzero[:3])
        if obs.scanned != len(odd_primes(d, 199)):
            failures.append((d, "wrong prime count"))
    _report(1, "weighted sum formula, d in {1,3,5,7}, p <= 199, k <= 30, all slots",
            failures, t0, budget_s=120)


def test_criterion_2_oracle_equivalence():
    t0 = time.time()
    failures = []
    rng = random.Random(20260809)
    for p in odd_primes(2, 31):
        field = PrimeField(p)
        tables = {
            False: harmonic_table(field, 12, max_depth=4, star=False),
            True: harmonic_table(field, 12, max_depth=4, star=True),
        }
        for d in range(1, 5):
            for k in range(d, 13):
                for _ in range(50):
                    ws = [rng.randrange(1, p) for _ in range(d)]
                    for star in (False, True):
                        fast = weighted_sum(field, ws, k, star=star)
                        slow = naive_weighted_sum(p, ws, k, tables[star], star=star)
                        if fast != slow:
                            failures.append((p, d, k, tuple(ws), star, fast, slow))
    _report(2, "series DP == composition-enumeration oracle, p <= 31, d <= 4, "
               "k <= 12, 50 random weight vectors each", failures, t0, budget_s=30)


def test_criterion_3_lemma_suite():
    t0 = time.time()
    failures = []
    for p in (5, 7, 11, 13, 101):
        qf = Fp2(PrimeField(p))

        def run(name, verdicts):
            if not all_passed(verdicts):
                failures.append((p, name))

        for d in range(1, 11):
            if d < p:
                run(("fxx", d), verify_lemma_fxx(qf, d, 20, seed=0))
            run(("translation", d), verify_translation(qf, d, 20, seed=0))
            for i in range(1, d + 1):
                run(("one_translation", d, i),
                    verify_one_translation(qf, d, i, 20, seed=0))
        for a in range(0, 11):
            for b in range(0, 11 - a):
                run(("gab_sab", a, b), verify_gab_sab(qf, a, b, 20, seed=0))
                run(("sab_gab", a, b), verify_sab_gab(qf, a, b, 20, seed=0))
                if 2 <= a + b < p:
                    run(("induction", a, b),
                        verify_induction_step(qf, a, b, 20, seed=0))
        for a in range(-1, 11):
            for b in range(-1, 11 - max(a, 0)):
                s = a + b
                if (a, b) == (-1, -1) or s < 0 or s % 2 or s >= p - 1 or s > 10:
                    continue
                run(("main_closed_form", a, b),
                    verify_main_closed_form(qf, a, b, 20, seed=0))
    _report(3, "identity suite at 20 random GF(p^2) points, "
               "p in {5,7,11,13,101}, depths/orders up to 10", failures, t0, budget_s=60)


def test_criterion_4_closed_form_series():
    t0 = time.time()
    failures = []
    for p in odd_primes(2, 61):
        field = PrimeField(p)
        trunc = 3 * (p - 1)
        for d in range(1, p, 2):
            for i in range(1, d + 1):
                if not verify_closed_form_series(field, d, i, trunc):
                    failures.append((p, d, i))
    _report(4, "coefficientwise closed-form check, p <= 61, all odd d < p, "
               "all slots, K = 3(p-1)", failures, t0, budget_s=60)


def test_criterion_5_adelic_exception_sets():
    t0 = time.time()
    failures = []
    for d in (1, 3, 5):
        for k in range(d, 21):
            for i in range(1, d + 1):
                obs = verify_finite_mzv(d, k, i, 500, threads=1)
                predicted = [p for p in odd_primes(d, 500) if k % (p - 1) == 0]
                if obs.exceptions != predicted or not obs.passed:
                    failures.append(("mzv", d, k, i, obs.exceptions, predicted))
                obs = verify_finite_mzv_star(d, k, i, 500, threads=1)
                bound = max(d, k + 1)
                if any(p > bound for p in obs.exceptions) or not obs.passed:
                    failures.append(("mzv_star", d, k, i, obs.exceptions, bound))
    _report(5, "exception sets: exactly {p > d : p-1 | k} plain, none above "
               "max(d, k+1) star; d in {1,3,5}, k <= 20, p <= 500", failures, t0)


def test_criterion_6_antipode():
    t0 = time.time()
    failures = []
    rng = random.Random(1123)
    primes = odd_primes(2, 97)
    for _ in range(200):
        p = rng.choice(primes)
        field = PrimeField(p)
        d = rng.randint(1, 5)
        w = rng.randint(d, 12)
        cuts = sorted(rng.sample(range(1, w), d - 1)) if d > 1 else []
        comp = tuple(b - a for a, b in zip([0] + cuts, cuts + [w]))
        if antipode_check(field, comp) != 0:
            failures.append((p, comp))
    _report(6, "antipode convolution vanishes: 200 random compositions, "
               "weight <= 12, depth <= 5, p <= 97", failures, t0)


def test_criterion_7_per_prime_sum_formula():
    t0 = time.time()
    failures = []
    for p in odd_primes(2, 31):
        field = PrimeField(p)
        table = harmonic_table(field, 15)
        sums: dict[tuple[int, int], int] = {}
        for comp, value in table.items():
            if comp:
                key = (sum(comp), len(comp))
                sums[key] = (sums.get(key, 0) + value) % p
        for d in range(1, min(p, 16)):
            for k in range(d, 16):
                got = sums.get((k, d), 0)
                want = p - 1 if k % (p - 1) == 0 else 0
                if got != want:
                    failures.append((p, d, k, got, want))
    _report(7, "fixed-depth sum of H over compositions is -[p-1 | k], "
               "0 < d < p <= 31, k <= 15", failures, t0)


def test_criterion_8_conjecture_scans():
    t0 = time.time()
    failures = []
    primes = sieve_primes(300)
    reports = []
    for r in (1, 2, 3, 4):
        reports.append(("conj1", scan_conjecture1(r, 12, 300, threads=1, seed=7)))
    for r in (1, 3):
        reports.append(("conj2", scan_conjecture2(r, 12, 300, threads=1, seed=7)))
    reports.append(("conj3", scan_conjecture3("1/2", "1/3", 4, 12, 300,
                                              threads=1, seed=7)))
    reports.append(("conj3", scan_conjecture3(2, -3, 3, 10, 300, threads=1, seed=7)))
    for name, observations in reports:
        report = SweepReport(observations, seed=7, version="test")
        try:
            jsonschema.validate(report.body_dict(), REPORT_BODY_SCHEMA)
        except jsonschema.ValidationError as exc:
            failures.append((name, "schema", str(exc)[:80]))
        for obs in observations:
            if not check_partition(obs, primes):
                failures.append((name, obs.statement, "partition"))
    # determinism: same seed, threads 1 vs 3, byte-identical bodies
    for threads in (1, 3):
        obs = scan_conjecture1(3, 9, 300, threads=threads, seed=7)
        reports.append(("det", obs))
    b1 = SweepReport(reports[-2][1], seed=7, version="test").body_json()
    b2 = SweepReport(reports[-1][1], seed=7, version="test").body_json()
    if b1 != b2:
        failures.append(("determinism", "threads 1 vs 3 bodies differ"))
    _report(8, "conjecture scans at p <= 300 complete with schema-valid, "
               "internally consistent, thread-count-independent reports",
            failures, t0)


def _run_cli_json(argv) -> str:
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = cli_main(argv)
    assert code == 0, argv
    return json.dumps(json.loads(out.getvalue())["body"], sort_keys=True,
                      separators=(",", ":"))


def test_criterion_9_byte_determinism():
    t0 = time.time()
    failures = []
    commands = [
        ["scan", "conj3", "--a", "1", "--b", "2", "--r", "2", "--k", "8",
         "--p-max", "200", "--seed", "11", "--format", "json", "--threads", "1"],
        ["verify", "mzv-star", "--d", "3", "--k", "9", "--i", "2",
         "--p-max", "200", "--seed", "11", "--format", "json", "--threads", "1"],
        ["verify", "one-translation", "--p", "13", "--d", "4", "--i", "2",
         "--seed", "11", "--format", "json"],
        ["hsum", "--p", "13", "--comp", "2,1,3", "--format", "json"],
    ]
    for argv in commands:
        first = _run_cli_json(argv)
        second = _run_cli_json(argv)
        if first != second:
            failures.append((argv, "bodies differ"))
    # and across worker counts
    a = _run_cli_json(["scan", "conj1", "--r", "2", "--k", "10", "--p-max", "250",
                       "--seed", "3", "--format", "json", "--threads", "1"])
    b = _run_cli_json(["scan", "conj1", "--r", "2", "--k", "10", "--p-max", "250",
                       "--seed", "3", "--format", "json", "--threads", "4"])
    if a != b:
        failures.append(("threads", "bodies differ"))
    _report(9, "same run configuration implies byte-identical JSON bodies",
            failures, t0)
