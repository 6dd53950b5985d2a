"""Recovery of realized factor values from observed statistics.

The statistics with the smallest |z| are treated as (approximately) pure
noise-plus-factors, and the factor values are fitted by least absolute
deviation regression on that calibration set. Acceptance of a fit is via a
coordinate-wise subgradient certificate rather than any property of the
solver: IRLS on a smoothed objective followed by exact coordinate-wise
weighted-median polishing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .factors import FactorModel

__all__ = [
    "RankDeficientError",
    "ZeroEigenvalueError",
    "CalibrationSet",
    "FactorFit",
    "select_calibration_set",
    "lad_regress",
    "ls_regress",
    "misspecification_bound",
]

# Smoothing schedule for sqrt(r^2 + mu^2); decades from loose to tight.
_IRLS_SCHEDULE = tuple(10.0 ** (-e) for e in range(2, 9))
_IRLS_STAGE_CAP = 12
_MAX_POLISH_SWEEPS = 50


class RankDeficientError(ValueError):
    """Design matrix does not have full column rank."""


class ZeroEigenvalueError(ValueError):
    """A retained eigenvalue is zero where a positive one is required."""


@dataclass(frozen=True)
class CalibrationSet:
    """Indices of the statistics with smallest |z|, ties broken by index."""

    indices: np.ndarray
    fraction: float

    @property
    def size(self) -> int:
        return self.indices.shape[0]


@dataclass(frozen=True)
class FactorFit:
    """Fitted factor values with the L1 objective and certificate status."""

    w_hat: np.ndarray
    objective: float
    iterations: int
    converged: bool


def select_calibration_set(z: np.ndarray, fraction: float) -> CalibrationSet:
    """The round(fraction * p) statistics with smallest absolute value."""
    z = np.asarray(z, dtype=float)
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    p = z.shape[0]
    m = int(np.floor(fraction * p + 0.5))
    if m == 0:
        raise ValueError(f"calibration set is empty: fraction={fraction}, p={p}")
    order = np.argsort(np.abs(z), kind="stable")
    indices = np.sort(order[:m])
    return CalibrationSet(indices=indices, fraction=fraction)


def _objective(design: np.ndarray, z: np.ndarray, beta: np.ndarray) -> float:
    return float(np.sum(np.abs(z - design @ beta)))


def _weighted_median(values: np.ndarray, weights: np.ndarray) -> float:
    """Smallest v with cumulative weight at least half the total."""
    order = np.argsort(values, kind="stable")
    cum = np.cumsum(weights[order])
    idx = int(np.searchsorted(cum, 0.5 * cum[-1]))
    return float(values[order[idx]])


def _polish(design, z, beta, tol, max_sweeps=_MAX_POLISH_SWEEPS):
    """Coordinate-wise L1 minimization via exact weighted medians.

    Each coordinate move is an exact line minimization, so the objective is
    nonincreasing; sweeps stop once the objective stalls or every move is
    negligible against the coefficient scale.
    """
    beta = beta.copy()
    k = design.shape[1]
    columns = [design[:, h] for h in range(k)]
    nonzero = [col != 0.0 for col in columns]
    weights = [np.abs(col[nz]) for col, nz in zip(columns, nonzero)]
    sweeps = 0
    last_objective = _objective(design, z, beta)
    for _ in range(max_sweeps):
        sweeps += 1
        residual = z - design @ beta
        moved = 0.0
        for h in range(k):
            nz = nonzero[h]
            if not weights[h].size:
                continue
            col = columns[h]
            partial = residual[nz] + col[nz] * beta[h]
            best = _weighted_median(partial / col[nz], weights[h])
            delta = best - beta[h]
            if delta != 0.0:
                residual -= col * delta
                beta[h] = best
                moved = max(moved, abs(delta))
        if moved <= tol * (1.0 + float(np.linalg.norm(beta))):
            break
        objective = _objective(design, z, beta)
        if objective >= last_objective * (1.0 - 1e-12):
            break
        last_objective = objective
    return beta, sweeps


def _vertex_refine(design, z, beta):
    """Exact interpolation through the smallest-residual rows.

    A generic L1 optimum passes through k data rows; solving through the k
    rows with smallest |residual| (plus a few single-row swaps) jumps from a
    nearby point onto the exact vertex. Keeps the best objective seen.
    """
    m, k = design.shape
    if m < k:
        return beta
    order = np.argsort(np.abs(z - design @ beta), kind="stable")
    best = beta
    best_objective = _objective(design, z, beta)
    base = order[:k].copy()
    trials = [None]
    trials += [(i, j) for i in range(max(0, k - 3), k) for j in range(k, min(m, k + 4))]
    for trial in trials:
        rows = base.copy()
        if trial is not None:
            rows[trial[0]] = order[trial[1]]
        try:
            candidate = np.linalg.solve(design[rows], z[rows])
        except np.linalg.LinAlgError:
            continue
        objective = _objective(design, z, candidate)
        if objective < best_objective:
            best, best_objective = candidate, objective
    return best


def _certificate(design, z, beta, tol, scale) -> bool:
    """Coordinate-wise subgradient optimality check for the L1 objective.

    Residuals are counted as zero at the solver tolerance times the data
    scale; exact zeros only occur in exact arithmetic.
    """
    residual = z - design @ beta
    zero = np.abs(residual) <= max(tol, 1e-12) * scale
    signs = np.sign(residual)
    signs[zero] = 0.0
    gradient = design.T @ signs
    abs_design = np.abs(design)
    slack = np.sum(abs_design[zero], axis=0) + tol * np.sum(abs_design, axis=0)
    return bool(np.all(np.abs(gradient) <= slack))


def _irls_pass(design, z, beta, schedule, tol, budget):
    """Smoothed-objective IRLS steps; returns the iterate and step count."""
    iterations = 0
    for mu in schedule:
        for _ in range(_IRLS_STAGE_CAP):
            if iterations >= budget:
                return beta, iterations
            residual = z - design @ beta
            weights = 1.0 / np.sqrt(np.square(residual) + mu * mu)
            weighted = design * weights[:, None]
            gram = design.T @ weighted
            rhs = weighted.T @ z
            try:
                updated = np.linalg.solve(gram, rhs)
            except np.linalg.LinAlgError:
                updated, *_ = np.linalg.lstsq(gram, rhs, rcond=None)
            step = float(np.linalg.norm(updated - beta))
            beta = updated
            iterations += 1
            if step <= max(0.05 * mu, tol * (1.0 + float(np.linalg.norm(beta)))):
                break
    return beta, iterations


def lad_regress(
    loadings_sub: np.ndarray,
    z_sub: np.ndarray,
    tol: float = 1e-8,
    max_iter: int = 500,
) -> FactorFit:
    """Least-absolute-deviation fit of factor values on a calibration set.

    Minimizes sum_i |z_i - b_i . w| over w. IRLS on the smoothed objective
    sqrt(r^2 + mu^2) with mu stepping from 1e-2 down to 1e-8 provides the
    start; a weighted-median coordinate polish finishes, alternating with
    short smoothed joint steps that move off coordinate-wise corners.
    `converged` reports the subgradient certificate, and the best iterate is
    returned either way.
    """
    design = np.asarray(loadings_sub, dtype=float)
    z = np.asarray(z_sub, dtype=float)
    m, k = design.shape
    if k < 1:
        raise ValueError("at least one factor is required")
    if m < k:
        raise ValueError(f"need at least as many rows as factors: m={m}, k={k}")
    if np.linalg.matrix_rank(design) < k:
        raise RankDeficientError(f"design has rank below {k}")

    scale = max(1.0, float(np.max(np.abs(z))) if z.size else 1.0)
    start, *_ = np.linalg.lstsq(design, z, rcond=None)
    beta, iterations = _irls_pass(design, z, start.copy(), _IRLS_SCHEDULE, tol, max_iter)

    # Polish from the best candidate so the objective can never regress
    # below the plain least-squares start or the zero vector.
    candidates = [beta, start, np.zeros(k)]
    beta = min(candidates, key=lambda b: _objective(design, z, b))
    for _ in range(4):
        beta, sweeps = _polish(design, z, beta, tol)
        iterations += sweeps
        before = _objective(design, z, beta)
        if iterations >= max_iter:
            break
        nudged = _vertex_refine(design, z, beta)
        iterations += 1
        if _objective(design, z, nudged) >= before * (1.0 - 1e-12) - 1e-15:
            break
        beta = nudged
    converged = _certificate(design, z, beta, tol, scale)
    return FactorFit(
        w_hat=beta,
        objective=_objective(design, z, beta),
        iterations=iterations,
        converged=converged,
    )


def ls_regress(model: FactorModel, z: np.ndarray) -> np.ndarray:
    """Closed-form least-squares factor fit on the full set of statistics.

    The loading columns are orthogonal with squared norms lambda_h, so the
    normal equations reduce to w_h = (gamma_h . z) / sqrt(lambda_h).
    """
    z = np.asarray(z, dtype=float)
    retained = model.eigenvalues[: model.k]
    if np.any(retained <= 0.0):
        raise ZeroEigenvalueError("least-squares fit requires positive retained eigenvalues")
    return (model.loadings.T @ z) / retained


def misspecification_bound(model: FactorModel, mu: np.ndarray) -> float:
    """Bound on the least-squares bias from ignoring the nonzero means.

    ||mu||_2 * sqrt(sum of reciprocal retained eigenvalues); an algebraic
    bound on the distance between the fits with and without mean shifts.
    """
    mu = np.asarray(mu, dtype=float)
    retained = model.eigenvalues[: model.k]
    if np.any(retained <= 0.0):
        raise ZeroEigenvalueError("bound requires positive retained eigenvalues")
    return float(np.linalg.norm(mu) * np.sqrt(np.sum(1.0 / retained)))
