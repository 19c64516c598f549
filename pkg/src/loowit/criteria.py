"""Entanglement criterion verdicts and I-concurrence lower bounds.

Each criterion is scored so that a positive value certifies entanglement:
PPT and realignment use trace norms minus one, the two witness criteria use
the negated optimal witness minima.  All four scores are invariant under
local unitaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import qstate, witness
from .qstate import DensityMatrix

# Scores this close to zero are treated as float noise, not detections.
DETECTION_MARGIN = 1e-9


class Criterion(str, Enum):
    PPT = "ppt"
    REALIGN = "realign"
    LINEAR_OPT = "linear_opt"
    NONLINEAR_OPT = "nonlinear_opt"


_THRESHOLD_FORMS = {
    Criterion.PPT: "trace norm of the partial transpose minus 1",
    Criterion.REALIGN: "trace norm of the realigned state minus 1",
    Criterion.LINEAR_OPT: "negated minimum of the linear witness over LOO pairs",
    Criterion.NONLINEAR_OPT: "negated minimum of the nonlinear witness over LOO pairs",
}


@dataclass(frozen=True)
class Verdict:
    criterion: Criterion
    detected: bool
    score: float
    threshold_form: str


def _verdict(criterion: Criterion, score: float) -> Verdict:
    return Verdict(criterion, score > DETECTION_MARGIN, score, _THRESHOLD_FORMS[criterion])


def criterion_score(rho: DensityMatrix, criterion: Criterion) -> float:
    if criterion == Criterion.PPT:
        return qstate.trace_norm(qstate.partial_transpose(rho, "A")) - 1.0
    if criterion == Criterion.REALIGN:
        return qstate.trace_norm(qstate.realign(rho)) - 1.0
    if criterion == Criterion.LINEAR_OPT:
        return -witness.optimal_linear_min(rho).value
    if criterion == Criterion.NONLINEAR_OPT:
        return -witness.optimal_nonlinear_min(rho).value
    raise ValueError(f"unknown criterion {criterion!r}")


def evaluate(rho: DensityMatrix, criterion: Criterion) -> Verdict:
    return _verdict(criterion, criterion_score(rho, criterion))


def evaluate_all(rho: DensityMatrix) -> list[Verdict]:
    """All four verdicts, in the fixed order PPT, REALIGN, LINEAR_OPT,
    NONLINEAR_OPT."""
    return [evaluate(rho, c) for c in Criterion]


def max_concurrence(dim_min: int) -> float:
    """Largest possible I-concurrence for min subsystem dimension m."""
    return math.sqrt(2.0 * (dim_min - 1) / dim_min)


def concurrence_pure(psi, dim_a: int | None = None, dim_b: int | None = None) -> float:
    """I-concurrence √(2(1 - Tr ρ_A²)) of a pure bipartite state.

    Accepts a normalized vector (with dims), a DensityMatrix, or a projector
    matrix (with dims).
    """
    vec, da, db = qstate.pure_state_vector(psi, dim_a, dim_b)
    s = np.linalg.svd(vec.reshape(da, db), compute_uv=False)
    purity_a = float(np.sum(s**4))
    return math.sqrt(2.0 * max(0.0, 1.0 - purity_a))


@dataclass(frozen=True)
class ConcurrenceBound:
    """Lower bounds on the mixed-state I-concurrence, one per criterion,
    each of the form √(2/(m(m-1))) · score clamped at zero, with m the
    smaller subsystem dimension."""

    dim_min: int
    bound_ppt: float
    bound_realign: float
    bound_lmax: float
    bound_combined: float


def concurrence_lower_bounds(rho: DensityMatrix) -> ConcurrenceBound:
    """PPT-, realignment- and witness-maximum-based concurrence bounds.

    ``bound_lmax`` uses ℒ_max - 1 where ℒ_max = Σ_k σ_k(τ) + mean purity; it
    is never weaker than the realignment bound.  ``bound_combined`` is the
    max of all three.  Scores inside the float-noise margin clamp to exactly
    zero, like the verdicts.
    """
    m = min(rho.dim_a, rho.dim_b)
    if m < 2:
        raise ValueError(f"concurrence bounds need min dim >= 2, got {m}")
    factor = math.sqrt(2.0 / (m * (m - 1)))

    def bound(score: float) -> float:
        return factor * score if score > DETECTION_MARGIN else 0.0

    score_ppt = criterion_score(rho, Criterion.PPT)
    score_realign = criterion_score(rho, Criterion.REALIGN)
    score_lmax = witness.optimal_nonlinear_min(rho).l_max - 1.0
    bound_ppt = bound(score_ppt)
    bound_realign = bound(score_realign)
    bound_lmax = bound(score_lmax)
    return ConcurrenceBound(
        dim_min=m,
        bound_ppt=bound_ppt,
        bound_realign=bound_realign,
        bound_lmax=bound_lmax,
        bound_combined=max(bound_ppt, bound_realign, bound_lmax),
    )
