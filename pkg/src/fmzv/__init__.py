"""Exact weighted sums of multiple harmonic sums modulo primes.

Library layout:

- field:      GF(p) / GF(p^2) contexts, batch inversion, rational reduction
- harmonic:   direct (oracle) evaluation of H and H*, antipode convolution
- series:     truncated-series chain DP, weighted sums, closed-form check
- identities: pointwise identity verification over GF(p^2)
- scan:       prime sweeps, exception sets, reports
- cli:        command-line front end (`fmzv`)
"""

from .errors import (
    DegenerateTuple,
    InvalidParameters,
    PoleError,
    TruncationMismatch,
    WeightNotReducible,
)
from .field import Fp2, PrimeField, find_nonresidue, is_prime, reduce_rational
from .harmonic import (
    antipode_check,
    enumerate_compositions,
    h_direct,
    h_star_direct,
    harmonic_table,
)
from .identities import (
    eval_G,
    eval_S,
    eval_f,
    eval_f_tilde,
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
    scan_conjecture1,
    scan_conjecture2,
    scan_conjecture3,
    scan_custom,
    sieve_primes,
    sweep_theorem1,
    verify_finite_mzv,
    verify_finite_mzv_star,
    verify_theorem1,
)
from .series import (
    gen_series,
    mul_geometric,
    verify_closed_form_series,
    weighted_sum,
    weighted_sum_range,
    weighted_sum_star,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateTuple",
    "InvalidParameters",
    "PoleError",
    "TruncationMismatch",
    "WeightNotReducible",
    "Fp2",
    "PrimeField",
    "find_nonresidue",
    "is_prime",
    "reduce_rational",
    "antipode_check",
    "enumerate_compositions",
    "h_direct",
    "h_star_direct",
    "harmonic_table",
    "eval_G",
    "eval_S",
    "eval_f",
    "eval_f_tilde",
    "verify_gab_sab",
    "verify_induction_step",
    "verify_lemma_fxx",
    "verify_main_closed_form",
    "verify_one_translation",
    "verify_sab_gab",
    "verify_translation",
    "AdelicObservation",
    "SweepReport",
    "scan_conjecture1",
    "scan_conjecture2",
    "scan_conjecture3",
    "scan_custom",
    "sieve_primes",
    "sweep_theorem1",
    "verify_finite_mzv",
    "verify_finite_mzv_star",
    "verify_theorem1",
    "gen_series",
    "mul_geometric",
    "verify_closed_form_series",
    "weighted_sum",
    "weighted_sum_range",
    "weighted_sum_star",
    "__version__",
]
