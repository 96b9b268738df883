"""Command-line front end.

Three command families:

  fmzv hsum    --p 7 --comp 1,2,1 [--star]          print one harmonic sum
  fmzv verify  <statement> ...                      exit 0 iff it checks out
  fmzv scan    <conjecture> ...                     write an exception report

Verification failures exit 1, usage/parameter errors exit 2, success exits 0.
Reports are emitted as text (stdout), JSON, or CSV (--out PATH or stdout).
The JSON body is deterministic for a fixed configuration and seed; timing
lives in a separate "meta" block so reports can be diffed byte-for-byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .errors import (
    DegenerateTuple,
    InvalidParameters,
    PoleError,
    TruncationMismatch,
    WeightNotReducible,
)
from .field import Fp2, PrimeField
from .harmonic import antipode_check, h_direct, h_star_direct, validate_composition
from .identities import (
    all_passed,
    pit_sample_count,
    trial_rng,
    verify_gab_sab,
    verify_induction_step,
    verify_lemma_fxx,
    verify_main_closed_form,
    verify_one_translation,
    verify_sab_gab,
    verify_translation,
)
from .scan import (
    AdelicObservation,
    SweepReport,
    check_partition,
    scan_conjecture1,
    scan_conjecture2,
    scan_conjecture3,
    scan_custom,
    sieve_primes,
    sweep_theorem1,
    verify_finite_mzv,
    verify_finite_mzv_star,
)
from .series import verify_closed_form_series

_USAGE_ERRORS = (InvalidParameters, WeightNotReducible, TruncationMismatch,
                 PoleError, ZeroDivisionError)


def _default_seed() -> int:
    try:
        return int(os.environ.get("FMZV_SEED", "0"))
    except ValueError:
        return 0


def _default_threads() -> int:
    return os.cpu_count() or 1


def _add_common(parser: argparse.ArgumentParser, sweep: bool = False) -> None:
    parser.add_argument("--seed", type=int, default=None,
                        help="RNG seed (default: $FMZV_SEED or 0)")
    parser.add_argument("--format", choices=("text", "json", "csv"),
                        default="text", help="output format (default text)")
    parser.add_argument("--out", type=str, default=None,
                        help="write json/csv output to this path instead of stdout")
    if sweep:
        parser.add_argument("--threads", type=int, default=None,
                            help="process parallelism for the prime sweep "
                                 "(default: available cores)")


def _parse_comp(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError:
        raise InvalidParameters(f"malformed composition {text!r}")
    if not parts:
        raise InvalidParameters(f"malformed composition {text!r}")
    return validate_composition(parts)


def _parse_weights(text: str) -> list[Fraction]:
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip() != ""]
    except (ValueError, ZeroDivisionError):
        raise InvalidParameters(f"malformed weight list {text!r}")


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidParameters(f"malformed rational {text!r}")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="fmzv",
        description="Weighted sums of multiple harmonic sums modulo primes: "
                    "exact checks and conjecture scans.")
    top.add_argument("--version", action="version", version=f"fmzv {__version__}")
    cmds = top.add_subparsers(dest="command", required=True)

    hsum = cmds.add_parser("hsum", help="print one multiple harmonic sum")
    hsum.add_argument("--p", type=int, required=True, help="odd prime modulus")
    hsum.add_argument("--comp", type=str, required=True,
                      help="composition, e.g. 1,2,1")
    hsum.add_argument("--star", action="store_true",
                      help="weakly increasing chains instead of strict")
    _add_common(hsum)

    verify = cmds.add_parser("verify", help="check a proved statement exactly")
    vsub = verify.add_subparsers(dest="statement", required=True)

    v = vsub.add_parser("theorem1", help="slot-weighted sum formula over a prime range")
    v.add_argument("--d", type=int, required=True, help="odd depth")
    v.add_argument("--k-max", type=int, default=30)
    v.add_argument("--p-max", type=int, default=199)
    v.add_argument("--i", type=int, default=None, help="slot (default: all)")
    _add_common(v, sweep=True)

    for name, star in (("mzv", False), ("mzv-star", True)):
        v = vsub.add_parser(name, help="adelic exception-set check"
                                       + (" (star)" if star else ""))
        v.add_argument("--d", type=int, required=True, help="odd depth")
        v.add_argument("--k", type=int, required=True)
        v.add_argument("--i", type=int, default=1)
        v.add_argument("--p-max", type=int, default=500)
        _add_common(v, sweep=True)

    def identity_parser(name, helptext, depth_slot=False, ab=False, depth=False):
        v = vsub.add_parser(name, help=helptext)
        v.add_argument("--p", type=int, required=True, help="odd prime modulus")
        if depth or depth_slot:
            v.add_argument("--d", type=int, required=True)
        if depth_slot:
            v.add_argument("--i", type=int, required=True)
        if ab:
            v.add_argument("--a", type=int, required=True)
            v.add_argument("--b", type=int, required=True)
        v.add_argument("--trials", type=int, default=20)
        v.add_argument("--exhaustive-degree", action="store_true",
                       help="sample enough distinct points to prove the identity")
        _add_common(v)
        return v

    identity_parser("lemma-fxx", "equal-arguments closed form", depth=True)
    identity_parser("translation", "full translation identity", depth=True)
    identity_parser("gab-sab", "marked-slot difference, translated vs shifted", ab=True)
    identity_parser("one-translation", "single-slot translation of the bordered sum",
                    depth_slot=True)
    identity_parser("sab-gab", "marked-slot difference at equal points", ab=True)
    identity_parser("induction", "combined difference equation with closed-form tail",
                    ab=True)
    identity_parser("closed-form", "main closed form 2*G[a,b] = x^(-a-b-1) U(x)",
                    ab=True)

    v = vsub.add_parser("closed-form-series",
                        help="coefficientwise closed-form check of the series DP")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--d", type=int, required=True, help="odd depth")
    v.add_argument("--i", type=int, required=True, help="slot of the doubled weight")
    v.add_argument("--K", type=int, default=None,
                   help="truncation order (default 3*(p-1))")
    _add_common(v)

    v = vsub.add_parser("antipode", help="alternating prefix/suffix convolution is 0")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--comp", type=str, default=None,
                   help="specific composition; omit to sample randomly")
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--max-weight", type=int, default=12)
    v.add_argument("--max-depth", type=int, default=5)
    _add_common(v)

    scan = cmds.add_parser("scan", help="sweep an open conjecture, report exceptions")
    ssub = scan.add_subparsers(dest="statement", required=True)

    s = ssub.add_parser("conj1", help="weights (1, 1, 2, ..., r)")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--p-max", type=int, default=300)
    _add_common(s, sweep=True)

    s = ssub.add_parser("conj2", help="weights (1, 1, 2, ..., r, r), r odd")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--p-max", type=int, default=300)
    _add_common(s, sweep=True)

    s = ssub.add_parser("conj3", help="arithmetic progression (a, a+b, ..., a+rb) "
                                      "vs leading weight b")
    s.add_argument("--a", type=str, required=True, help="rational, e.g. 1/2")
    s.add_argument("--b", type=str, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--p-max", type=int, default=300)
    _add_common(s, sweep=True)

    s = ssub.add_parser("custom-weights", help="sweep an explicit weight vector")
    s.add_argument("--weights", type=str, required=True,
                   help="comma-separated rationals, e.g. 1,1,2")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--p-max", type=int, default=300)
    _add_common(s, sweep=True)

    return top


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------

def _emit(report: SweepReport, args) -> None:
    fmt = args.format
    if fmt == "text":
        sys.stdout.write(render_text(report))
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(render_text(report))
        return
    payload = report.to_json() + "\n" if fmt == "json" else report.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def render_text(report: SweepReport) -> str:
    lines = []
    for obs in report.observations:
        d = obs.to_dict()
        params = json.dumps(obs.params, sort_keys=True)
        zero = obs.scanned - len(obs.exceptions) - len(obs.skipped)
        lines.append(f"{obs.statement}  params={params}")
        lines.append(f"  primes [{obs.p_min}, {obs.p_max}]  scanned={obs.scanned}"
                     f"  zero={zero}  exceptions={len(obs.exceptions)}"
                     f"  skipped={len(obs.skipped)}")
        if obs.exceptions:
            shown = ", ".join(f"{r['p']}->{r['value']}" for r in obs.residues_nonzero[:12])
            more = "" if len(obs.residues_nonzero) <= 12 else " ..."
            lines.append(f"  nonzero residues: {shown}{more}")
        if "predicted_exceptions" in d:
            lines.append(f"  predicted exceptions: {d['predicted_exceptions']}")
        if "exception_bound" in d:
            lines.append(f"  allowed exception bound: p <= {d['exception_bound']}")
        if "verdicts" in d:
            v = d["verdicts"]
            lines.append(f"  trials={v['trials']}  failed={v['failed']}")
        if "passed" in obs.extra:
            lines.append(f"  passed: {obs.passed}")
    lines.append(f"seed={report.seed}  elapsed_ms={report.meta.get('elapsed_ms')}")
    return "\n".join(lines) + "\n"


def _verdict_observation(statement: str, p: int, params: dict,
                         verdicts, seed: int) -> AdelicObservation:
    failed = [v.trial for v in verdicts if not v.passed]
    return AdelicObservation(
        statement=statement,
        params=params,
        p_min=p,
        p_max=p,
        exceptions=[p] if failed else [],
        skipped=[],
        residues_nonzero=[],
        seed=seed,
        scanned=1,
        extra={"verdicts": {"trials": len(verdicts), "failed": sorted(set(failed))},
               "passed": not failed},
    )


def _run_hsum(args) -> tuple[SweepReport | None, int]:
    field = PrimeField(args.p)
    comp = _parse_comp(args.comp)
    value = h_star_direct(field, comp) if args.star else h_direct(field, comp)
    if args.format == "text":
        print(value)
        return None, 0
    obs = AdelicObservation(
        statement="hsum_star" if args.star else "hsum",
        params={"p": args.p, "comp": list(comp)},
        p_min=args.p, p_max=args.p, exceptions=[], skipped=[],
        residues_nonzero=([{"p": args.p, "value": value}] if value else []),
        seed=args.seed, scanned=1, extra={"value": value})
    return SweepReport([obs], args.seed, __version__), 0


_IDENTITY_RUNNERS = {
    "lemma-fxx": ("lemma_fxx", lambda qf, a, t, s: verify_lemma_fxx(qf, a.d, t, s),
                  lambda a: {"d": a.d}, lambda a: a.d),
    "translation": ("translation", lambda qf, a, t, s: verify_translation(qf, a.d, t, s),
                    lambda a: {"d": a.d}, lambda a: a.d),
    "gab-sab": ("gab_sab", lambda qf, a, t, s: verify_gab_sab(qf, a.a, a.b, t, s),
                lambda a: {"a": a.a, "b": a.b}, lambda a: a.a + a.b + 1),
    "one-translation": ("one_translation",
                        lambda qf, a, t, s: verify_one_translation(qf, a.d, a.i, t, s),
                        lambda a: {"d": a.d, "i": a.i}, lambda a: a.d),
    "sab-gab": ("sab_gab", lambda qf, a, t, s: verify_sab_gab(qf, a.a, a.b, t, s),
                lambda a: {"a": a.a, "b": a.b}, lambda a: a.a + a.b + 1),
    "induction": ("induction_step",
                  lambda qf, a, t, s: verify_induction_step(qf, a.a, a.b, t, s),
                  lambda a: {"a": a.a, "b": a.b}, lambda a: a.a + a.b + 1),
    "closed-form": ("main_closed_form",
                    lambda qf, a, t, s: verify_main_closed_form(qf, a.a, a.b, t, s),
                    lambda a: {"a": a.a, "b": a.b}, lambda a: a.a + a.b + 1),
}


def _run_verify(args) -> tuple[SweepReport | None, int]:
    seed = args.seed
    threads = getattr(args, "threads", None) or _default_threads()

    if args.statement == "theorem1":
        obs = sweep_theorem1(args.d, args.k_max, args.p_max, args.i,
                             threads=threads, seed=seed)
        return SweepReport([obs], seed, __version__), 0 if obs.passed else 1

    if args.statement in ("mzv", "mzv-star"):
        fn = verify_finite_mzv_star if args.statement == "mzv-star" else verify_finite_mzv
        obs = fn(args.d, args.k, args.i, args.p_max, threads=threads, seed=seed)
        return SweepReport([obs], seed, __version__), 0 if obs.passed else 1

    if args.statement in _IDENTITY_RUNNERS:
        stmt, runner, params_of, degree_of = _IDENTITY_RUNNERS[args.statement]
        qf = Fp2(PrimeField(args.p))
        trials = args.trials
        if args.exhaustive_degree:
            trials = pit_sample_count(qf, degree_of(args))
        verdicts = runner(qf, args, trials, seed)
        params = dict(params_of(args), p=args.p, trials=trials)
        obs = _verdict_observation(stmt, args.p, params, verdicts, seed)
        return SweepReport([obs], seed, __version__), 0 if all_passed(verdicts) else 1

    if args.statement == "closed-form-series":
        field = PrimeField(args.p)
        trunc = args.K if args.K is not None else 3 * (args.p - 1)
        ok = verify_closed_form_series(field, args.d, args.i, trunc)
        obs = AdelicObservation(
            statement="closed_form_series",
            params={"p": args.p, "d": args.d, "i": args.i, "K": trunc},
            p_min=args.p, p_max=args.p,
            exceptions=[] if ok else [args.p], skipped=[], residues_nonzero=[],
            seed=seed, scanned=1, extra={"passed": ok})
        return SweepReport([obs], seed, __version__), 0 if ok else 1

    if args.statement == "antipode":
        field = PrimeField(args.p)
        checks: list[tuple[tuple[int, ...], int]] = []
        if args.comp is not None:
            comp = _parse_comp(args.comp)
            checks.append((comp, antipode_check(field, comp)))
        else:
            for t in range(args.trials):
                rng = trial_rng(seed, f"antipode:{args.p}", t)
                d = rng.randint(1, args.max_depth)
                w = rng.randint(max(d, 1), args.max_weight)
                cuts = sorted(rng.sample(range(1, w), d - 1)) if d > 1 else []
                comp = tuple(b - a for a, b in zip([0] + cuts, cuts + [w]))
                checks.append((comp, antipode_check(field, comp)))
        bad = [(comp, v) for comp, v in checks if v != 0]
        obs = AdelicObservation(
            statement="antipode",
            params={"p": args.p, "checks": len(checks)},
            p_min=args.p, p_max=args.p,
            exceptions=[args.p] if bad else [], skipped=[],
            residues_nonzero=[{"p": args.p, "value": v, "comp": list(c)}
                              for c, v in bad],
            seed=seed, scanned=1, extra={"passed": not bad})
        return SweepReport([obs], seed, __version__), 0 if not bad else 1

    raise InvalidParameters(f"unknown verify statement {args.statement!r}")


def _run_scan(args) -> tuple[SweepReport | None, int]:
    seed = args.seed
    threads = getattr(args, "threads", None) or _default_threads()
    if args.statement == "conj1":
        observations = scan_conjecture1(args.r, args.k, args.p_max, threads, seed)
    elif args.statement == "conj2":
        observations = scan_conjecture2(args.r, args.k, args.p_max, threads, seed)
    elif args.statement == "conj3":
        observations = scan_conjecture3(_parse_rational(args.a), _parse_rational(args.b),
                                        args.r, args.k, args.p_max, threads, seed)
    elif args.statement == "custom-weights":
        observations = scan_custom(_parse_weights(args.weights), args.k,
                                   args.p_max, threads, seed)
    else:
        raise InvalidParameters(f"unknown scan statement {args.statement!r}")
    primes = sieve_primes(args.p_max)
    consistent = all(check_partition(obs, primes) for obs in observations)
    return SweepReport(list(observations), seed, __version__), 0 if consistent else 1


def _merge_negative_values(argv: list[str]) -> list[str]:
    """Join flag/value pairs whose value starts with '-' (e.g. --b -1/5):
    argparse would otherwise read the value as an option string."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (tok in ("--a", "--b", "--weights") and nxt is not None
                and len(nxt) > 1 and nxt[0] == "-" and nxt[1].isdigit()):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_merge_negative_values(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.seed is None:
        args.seed = _default_seed()

    start = time.monotonic()
    try:
        if args.command == "hsum":
            report, code = _run_hsum(args)
        elif args.command == "verify":
            report, code = _run_verify(args)
        else:
            report, code = _run_scan(args)
    except _USAGE_ERRORS as exc:
        print(f"fmzv: error: {exc}", file=sys.stderr)
        return 2
    except DegenerateTuple as exc:
        print(f"fmzv: error: {exc}", file=sys.stderr)
        return 1

    if report is not None:
        report.meta = {"elapsed_ms": int((time.monotonic() - start) * 1000),
                       "threads": getattr(args, "threads", None) or 1,
                       "command": args.command}
        _emit(report, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
