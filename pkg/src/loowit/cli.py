"""Command-line front end: state generation, analysis, one-parameter family
scans with bisection thresholds, and Monte-Carlo oracle runs.

Exit codes: 0 success, 1 invalid input, 2 no threshold found in a scan.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Callable

from . import criteria, oracle, qstate, witness
from .criteria import Criterion
from .loo import LOOBasis, gell_mann_basis
from .qstate import DensityMatrix

BOUND_NAMES = ("bound_ppt", "bound_realign", "bound_lmax", "bound_combined")
CRITERION_NAMES = tuple(c.value for c in Criterion) + BOUND_NAMES
FAMILY_NAMES = ("upb_noise", "noisy_singlet", "noise_mixture", "mixture")

DEFAULT_STEP = 0.01
DEFAULT_TOL = 1e-4
MIN_TOL = 1e-6


@dataclass(frozen=True)
class ScanSpec:
    """One-parameter scan request: grid plus bisection tolerance."""

    family: str
    p_start: float
    p_stop: float
    step: float = DEFAULT_STEP
    criterion: str = "nonlinear_opt"
    bisection_tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        if self.family not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.family!r}; known: {', '.join(FAMILY_NAMES)}")
        if self.criterion not in CRITERION_NAMES:
            raise ValueError(
                f"unknown criterion {self.criterion!r}; known: {', '.join(CRITERION_NAMES)}"
            )
        if not (0.0 <= self.p_start < self.p_stop <= 1.0):
            raise ValueError(
                f"need 0 <= start < stop <= 1, got start={self.p_start}, stop={self.p_stop}"
            )
        if self.step <= 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if self.bisection_tol < MIN_TOL:
            raise ValueError(f"bisection tolerance must be >= {MIN_TOL}, got {self.bisection_tol}")


def scan_score(rho: DensityMatrix, criterion: str) -> tuple[float, bool]:
    """Score and detection flag for a Verdict criterion or a bound name."""
    if criterion in BOUND_NAMES:
        bounds = criteria.concurrence_lower_bounds(rho)
        value = getattr(bounds, criterion)
        return value, value > criteria.DETECTION_MARGIN
    verdict = criteria.evaluate(rho, Criterion(criterion))
    return verdict.score, verdict.detected


@dataclass(frozen=True)
class ScanResult:
    spec: ScanSpec
    rows: list  # (p, score, detected) triples, ordered by p
    status: str  # ok | no_threshold | grid_only | detected_from_start
    threshold: float | None
    tolerance: float


def _grid(start: float, stop: float, step: float) -> list[float]:
    points = []
    i = 0
    while True:
        p = start + i * step
        if p >= stop - 1e-12:
            points.append(stop)
            return points
        points.append(p)
        i += 1


def run_scan(spec: ScanSpec, family: Callable[[float], DensityMatrix]) -> ScanResult:
    """Evaluate the criterion over the grid, then bisect the first crossing.

    Bisection assumes the detection flag is monotone in p; this is verified
    on the bracketing grid cell, falling back to grid-only reporting when
    the scores there are not monotone.
    """
    rows = []
    for p in _grid(spec.p_start, spec.p_stop, spec.step):
        score, detected = scan_score(family(p), spec.criterion)
        rows.append((p, score, detected))

    first = next((i for i, row in enumerate(rows) if row[2]), None)
    if first is None:
        return ScanResult(spec, rows, "no_threshold", None, spec.bisection_tol)
    if first == 0:
        return ScanResult(spec, rows, "detected_from_start", rows[0][0], spec.bisection_tol)

    lo, hi = rows[first - 1][0], rows[first][0]
    score_lo, score_hi = rows[first - 1][1], rows[first][1]
    mid = (lo + hi) / 2
    score_mid, _ = scan_score(family(mid), spec.criterion)
    if not (score_lo <= score_mid + 1e-12 and score_mid <= score_hi + 1e-12):
        return ScanResult(spec, rows, "grid_only", hi, spec.step)

    while hi - lo > spec.bisection_tol:
        mid = (lo + hi) / 2
        _, detected = scan_score(family(mid), spec.criterion)
        if detected:
            hi = mid
        else:
            lo = mid
    return ScanResult(spec, rows, "ok", (lo + hi) / 2, spec.bisection_tol)


def scan_csv(result: ScanResult) -> str:
    lines = ["p,score,detected"]
    for p, score, detected in result.rows:
        lines.append(f"{p:.10g},{score:.10g},{int(detected)}")
    return "\n".join(lines) + "\n"


def _load_family(args) -> Callable[[float], DensityMatrix]:
    name = args.family
    if name == "upb_noise":
        base = qstate.make_state("upb")
        return lambda p: qstate.white_noise_mixture(base, p)
    if name == "noisy_singlet":
        return lambda p: qstate.make_state("noisy_singlet", p)
    if name == "noise_mixture":
        if not args.state:
            raise ValueError("family 'noise_mixture' requires --state")
        base = qstate.load_state(args.state)
        return lambda p: qstate.white_noise_mixture(base, p)
    if name == "mixture":
        if not (args.state and args.state2):
            raise ValueError("family 'mixture' requires --state and --state2")
        first = qstate.load_state(args.state)
        second = qstate.load_state(args.state2)
        return lambda p: qstate.mixture(first, second, p)
    raise ValueError(f"unknown family {name!r}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    rho = qstate.make_state(args.name, args.p)
    if args.out:
        qstate.save_state(rho, args.out)
    else:
        qstate.dump_state(rho, sys.stdout)
    return 0


def _basis_document(basis: LOOBasis) -> list:
    return [
        [[[float(z.real), float(z.imag)] for z in row] for row in g]
        for g in basis.observables
    ]


def _analysis_document(rho: DensityMatrix, emit_bases: bool) -> dict:
    verdicts = criteria.evaluate_all(rho)
    cert = witness.certify(rho)
    bounds = criteria.concurrence_lower_bounds(rho)
    doc = {
        "dims": [rho.dim_a, rho.dim_b],
        "verdicts": [
            {
                "criterion": v.criterion.value,
                "detected": v.detected,
                "score": v.score,
                "threshold_form": v.threshold_form,
            }
            for v in verdicts
        ],
        "linear": {
            "min": cert.linear_min,
            "value_at_reference_basis": cert.linear_value_at_basis,
        },
        "nonlinear": {
            "min": cert.nonlinear_min,
            "l_max": cert.l_max,
            "value_at_reference_basis": cert.nonlinear_value_at_basis,
        },
        "purities": [cert.purity_a, cert.purity_b],
        "concurrence_bounds": {
            "dim_min": bounds.dim_min,
            "bound_ppt": bounds.bound_ppt,
            "bound_realign": bounds.bound_realign,
            "bound_lmax": bounds.bound_lmax,
            "bound_combined": bounds.bound_combined,
        },
    }
    if emit_bases:
        linear = witness.optimal_linear_min(rho)
        nonlinear = witness.optimal_nonlinear_min(rho)
        doc["optimal_bases"] = {
            "linear": {
                "basis_a": _basis_document(linear.basis_a),
                "basis_b": _basis_document(linear.basis_b),
            },
            "nonlinear": {
                "basis_a": _basis_document(nonlinear.basis_a),
                "basis_b": _basis_document(nonlinear.basis_b),
            },
        }
    return doc


def _print_analysis(doc: dict) -> None:
    da, db = doc["dims"]
    print(f"state: {da}x{db} bipartite density matrix")
    print("verdicts:")
    for v in doc["verdicts"]:
        flag = "DETECTED" if v["detected"] else "not detected"
        print(f"  {v['criterion']:<14} score={v['score']: .10g}  {flag}")
    lin, non = doc["linear"], doc["nonlinear"]
    print(f"optimal linear min:    {lin['min']:.10g}  (at reference basis: {lin['value_at_reference_basis']:.10g})")
    print(f"optimal nonlinear min: {non['min']:.10g}  (at reference basis: {non['value_at_reference_basis']:.10g})")
    print(f"l_max:                 {non['l_max']:.10g}")
    pa, pb = doc["purities"]
    print(f"purities:              Tr rho_A^2 = {pa:.10g}, Tr rho_B^2 = {pb:.10g}")
    b = doc["concurrence_bounds"]
    print(
        "concurrence bounds:    "
        f"ppt={b['bound_ppt']:.10g} realign={b['bound_realign']:.10g} "
        f"lmax={b['bound_lmax']:.10g} combined={b['bound_combined']:.10g}"
    )


def cmd_analyze(args) -> int:
    rho = qstate.load_state(args.state)
    violations = qstate.validate(rho)
    if violations:
        for v in violations:
            print(f"invalid state: {v.invariant} violated, residual {v.residual!r}", file=sys.stderr)
        return 1
    doc = _analysis_document(rho, args.emit_bases)
    if args.json:
        json.dump(doc, sys.stdout, indent=2)
        print()
    else:
        _print_analysis(doc)
    return 0


def cmd_scan(args) -> int:
    spec = ScanSpec(
        family=args.family,
        p_start=args.p_start,
        p_stop=args.p_stop,
        step=args.step,
        criterion=args.criterion,
        bisection_tol=args.tol,
    )
    result = run_scan(spec, _load_family(args))
    csv_text = scan_csv(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        report = sys.stdout
    else:
        sys.stdout.write(csv_text)
        report = sys.stderr
    if result.status == "no_threshold":
        print(f"no threshold in range for {spec.criterion} on {spec.family}", file=report)
        return 2
    if result.status == "detected_from_start":
        print(
            f"threshold {spec.criterion}: detected at every grid point; "
            f"threshold <= p = {result.threshold:.10g}",
            file=report,
        )
    elif result.status == "grid_only":
        print(
            f"threshold {spec.criterion}: p = {result.threshold:.10g} +- {result.tolerance:.10g} "
            "(grid resolution; scores not monotone on the bracketing cell)",
            file=report,
        )
    else:
        print(
            f"threshold {spec.criterion}: p = {result.threshold:.10g} +- {result.tolerance:.10g}",
            file=report,
        )
    return 0


def cmd_oracle(args) -> int:
    rho = qstate.load_state(args.state)
    basis_a = gell_mann_basis(rho.dim_a)
    basis_b = gell_mann_basis(rho.dim_b)
    targets = [
        ("mu", witness.correlation_matrix(rho, basis_a, basis_b)),
        ("tau", witness.covariance_matrix(rho, basis_a, basis_b)),
    ]
    for name, data in targets:
        report = oracle.sampled_max_trace(data.matrix, args.samples, args.seed, target=name)
        print(
            f"target {report.target}: analytic={report.analytic_value!r} "
            f"best_sampled={report.best_sampled!r} gap={report.gap!r} "
            f"samples={report.samples} seed={report.seed}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loowit",
        description="Entanglement witnesses from local orthogonal observables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a named state and write the state file")
    p_gen.add_argument("name", help=f"state name: {', '.join(qstate.STATE_NAMES)}")
    p_gen.add_argument("--p", type=float, default=None, help="mixing parameter, in [0, 1]")
    p_gen.add_argument("--out", default=None, help="output path (default: stdout)")
    p_gen.set_defaults(func=cmd_gen)

    p_an = sub.add_parser("analyze", help="criteria, optimal witnesses and bounds for a state file")
    p_an.add_argument("--state", required=True, help="state file to analyze")
    p_an.add_argument("--json", action="store_true", help="machine-readable JSON output")
    p_an.add_argument("--emit-bases", action="store_true", help="include optimal bases in the JSON")
    p_an.set_defaults(func=cmd_analyze)

    p_scan = sub.add_parser("scan", help="scan a one-parameter family and locate the threshold")
    p_scan.add_argument("--family", required=True, choices=FAMILY_NAMES)
    p_scan.add_argument("--criterion", required=True, choices=CRITERION_NAMES)
    p_scan.add_argument("--p-start", type=float, default=0.0)
    p_scan.add_argument("--p-stop", type=float, default=1.0)
    p_scan.add_argument("--step", type=float, default=DEFAULT_STEP)
    p_scan.add_argument("--tol", type=float, default=DEFAULT_TOL, help="bisection tolerance")
    p_scan.add_argument("--state", default=None, help="base state file (noise_mixture, mixture)")
    p_scan.add_argument("--state2", default=None, help="second state file (mixture)")
    p_scan.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    p_scan.set_defaults(func=cmd_scan)

    p_or = sub.add_parser("oracle", help="Monte-Carlo check of the closed-form optima")
    p_or.add_argument("--state", required=True)
    p_or.add_argument("--samples", type=int, default=1000)
    p_or.add_argument("--seed", type=int, default=0)
    p_or.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
