"""Experiment orchestration and file I/O.

One experiment fixes a scenario: a single design draw determines the known
correlation matrix, the factor model, and the mean shifts; replications
then draw fresh test statistics from N(mu, Sigma) and evaluate the realized
counts and the estimators. Every random stream is a spawn of the master
seed keyed by purpose (design, replication index, Monte-Carlo draws), so
output is bit-identical for a given config regardless of thread count.

Outputs are a per-replication CSV plus an aggregates JSON that embeds the
config, seed, and library version; the loader recomputes the record-derived
aggregates and refuses output that does not match.
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.stats import ks_2samp

from . import __version__
from .factors import (
    FactorModel,
    build_factor_model,
    estimate_fdp,
    fdp_limit,
    FactorRealization,
    numerator_over_draws,
    select_num_factors,
    standard_factor_draws,
)
from .fdr import approx_fdr, bh_procedure, efron_estimate, storey_estimate
from .gauss import two_sided_pvalue
from .lad import lad_regress, select_calibration_set
from .linalg import CorrelationMatrix, spectral_decompose, symmetric_sqrt
from .simulate import (
    Scenario,
    generate_design,
    realized_counts,
    sample_correlation,
)

__all__ = [
    "ExperimentConfig",
    "ExperimentOutput",
    "ScenarioState",
    "prepare_scenario",
    "run_experiment",
    "variance_study",
    "write_output",
    "load_output",
    "run_estimate",
    "run_convergence",
    "read_matrix_csv",
    "read_vector_csv",
]

# Substream namespaces under the master seed.
_NS_DESIGN = 0
_NS_REPLICATION = 1
_NS_LIMIT = 3

_HISTOGRAM_BINS = 50

RECORD_COLUMNS = (
    "rep",
    "t",
    "R",
    "V",
    "S",
    "fdp_true",
    "fdp_pfa",
    "fdp_efron",
    "fdp_storey",
    "fdp_bh_proc",
    "fdp_storey_proc",
)

# Aggregate keys the loader recomputes from the records.
_RECHECKED_KEYS = (
    "mean_V",
    "var_V",
    "mean_R",
    "mean_fdp_true",
    "sd_fdp_true",
    "mean_fdp_pfa",
    "sd_fdp_pfa",
    "mean_fdp_efron",
    "sd_fdp_efron",
    "mean_fdp_storey",
    "mean_re_pfa",
    "sd_re_pfa",
    "mean_re_efron",
    "sd_re_efron",
    "mean_fdp_bh_proc",
    "mean_fdp_storey_proc",
)


def substream(seed: int, *key: int) -> np.random.Generator:
    """Generator for one purpose-keyed substream of the master seed."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(key)))


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one simulation experiment needs, JSON-serializable."""

    scenario: Scenario
    t_grid: tuple[float, ...]
    n_reps: int
    seed: int
    n_mc: int = 10000
    epsilon: float = 0.01
    calibration_fraction: float = 0.75
    placement: str = "first"
    with_estimators: bool = True
    control_alpha: float | None = None
    efron_x0: float = 1.0
    storey_lambda: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "t_grid", tuple(float(t) for t in self.t_grid))
        if not self.t_grid:
            raise ValueError("t_grid must not be empty")
        if any(not 0.0 < t < 1.0 for t in self.t_grid):
            raise ValueError(f"every threshold must lie in (0, 1), got {self.t_grid}")
        if self.n_reps < 1:
            raise ValueError(f"n_reps must be at least 1, got {self.n_reps}")
        if self.placement not in ("first", "random"):
            raise ValueError(f"placement must be 'first' or 'random', got {self.placement!r}")

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario.to_dict(),
            "t_grid": list(self.t_grid),
            "n_reps": self.n_reps,
            "seed": self.seed,
            "n_mc": self.n_mc,
            "epsilon": self.epsilon,
            "calibration_fraction": self.calibration_fraction,
            "placement": self.placement,
            "with_estimators": self.with_estimators,
            "control_alpha": self.control_alpha,
            "efron_x0": self.efron_x0,
            "storey_lambda": self.storey_lambda,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        data = dict(data)
        scenario = Scenario.from_dict(data.pop("scenario"))
        data["t_grid"] = tuple(data["t_grid"])
        return cls(scenario=scenario, **data)


@dataclass(frozen=True)
class ScenarioState:
    """Per-experiment fixed state: design summary, factor model, shifts."""

    scenario: Scenario
    sigma_hat: CorrelationMatrix
    sds: np.ndarray
    root: np.ndarray
    model: FactorModel
    mu: np.ndarray
    true_nulls: np.ndarray
    false_nulls: np.ndarray

    @property
    def k(self) -> int:
        return self.model.k


@dataclass
class ExperimentOutput:
    """Per-replication records plus aggregate summaries."""

    config: ExperimentConfig
    records: list[dict]
    aggregates: dict


def prepare_scenario(config: ExperimentConfig) -> ScenarioState:
    """Draw the design, build the factor model, place the false nulls."""
    rng = substream(config.seed, _NS_DESIGN)
    design = generate_design(config.scenario, rng)
    sigma_hat, sds = sample_correlation(design)
    system = spectral_decompose(sigma_hat)
    root = symmetric_sqrt(system)
    k = select_num_factors(system.values, config.epsilon)
    model = build_factor_model(system, k)
    p, p1 = config.scenario.p, config.scenario.p1
    if config.placement == "random":
        false_nulls = np.sort(rng.choice(p, size=p1, replace=False)).astype(np.intp)
    else:
        false_nulls = np.arange(p1, dtype=np.intp)
    mu = np.zeros(p)
    mu[false_nulls] = np.sqrt(config.scenario.n) * config.scenario.beta * sds[false_nulls] / config.scenario.sigma
    mask = np.ones(p, dtype=bool)
    mask[false_nulls] = False
    return ScenarioState(
        scenario=config.scenario,
        sigma_hat=sigma_hat,
        sds=sds,
        root=root,
        model=model,
        mu=mu,
        true_nulls=np.flatnonzero(mask),
        false_nulls=false_nulls,
    )


def _storey_stepup_threshold(pvalues: np.ndarray, alpha: float, lambda_param: float) -> float:
    """Largest threshold whose Storey estimate stays at or below alpha.

    Step-up over the observed p-values with the capped null-count estimate;
    returns 0.0 when no threshold qualifies.
    """
    p = pvalues.shape[0]
    p0_hat = min(np.count_nonzero(pvalues > lambda_param) / (1.0 - lambda_param), float(p))
    sorted_p = np.sort(pvalues)
    estimates = p0_hat * sorted_p / np.arange(1, p + 1)
    passing = np.flatnonzero(estimates <= alpha)
    if passing.size == 0:
        return 0.0
    return float(sorted_p[passing[-1]])


def _fdp_of_rejections(rejected: np.ndarray, null_mask: np.ndarray) -> float:
    total = int(np.count_nonzero(rejected))
    if total == 0:
        return 0.0
    return float(np.count_nonzero(rejected & null_mask)) / total


def _replication_row(config: ExperimentConfig, state: ScenarioState, rep: int, z: np.ndarray) -> list[dict]:
    pvalues = two_sided_pvalue(z)
    null_mask = np.zeros(state.scenario.p, dtype=bool)
    null_mask[state.true_nulls] = True

    w_hat = None
    if config.with_estimators:
        if state.k == 0:
            w_hat = np.zeros(0)
        else:
            calibration = select_calibration_set(z, config.calibration_fraction)
            fit = lad_regress(
                state.model.loadings[calibration.indices],
                z[calibration.indices],
            )
            w_hat = fit.w_hat

    bh_fdp: dict[float, float] = {}
    storey_proc_fdp: dict[float, float] = {}
    if config.control_alpha is not None:
        alpha = config.control_alpha
        bh = bh_procedure(pvalues, alpha)
        rejected = np.zeros(state.scenario.p, dtype=bool)
        rejected[bh.indices] = True
        bh_value = _fdp_of_rejections(rejected, null_mask)
        storey_t = _storey_stepup_threshold(pvalues, alpha, config.storey_lambda)
        storey_value = _fdp_of_rejections(pvalues <= storey_t, null_mask)
        for t in config.t_grid:
            bh_fdp[t] = bh_value
            storey_proc_fdp[t] = storey_value

    rows = []
    p0 = state.scenario.p - state.scenario.p1
    for t in config.t_grid:
        v, s, r = realized_counts(z, state.mu, state.true_nulls, t)
        row = {
            "rep": rep,
            "t": t,
            "R": r,
            "V": v,
            "S": s,
            "fdp_true": v / r if r else 0.0,
            "fdp_pfa": None,
            "fdp_efron": None,
            "fdp_storey": None,
            "fdp_bh_proc": bh_fdp.get(t),
            "fdp_storey_proc": storey_proc_fdp.get(t),
        }
        if config.with_estimators:
            row["fdp_pfa"] = estimate_fdp(t, z, state.model, w_hat).fdp
            row["fdp_efron"] = efron_estimate(z, t, p0, config.efron_x0)
            row["fdp_storey"] = min(storey_estimate(pvalues, t, config.storey_lambda), 1.0)
        rows.append(row)
    return rows


def _draw_statistics(config: ExperimentConfig, state: ScenarioState, reps: range) -> np.ndarray:
    noise = np.empty((len(reps), state.scenario.p))
    for i, rep in enumerate(reps):
        noise[i] = substream(config.seed, _NS_REPLICATION, rep).standard_normal(state.scenario.p)
    return state.mu + noise @ state.root


def _relative_errors(estimates: np.ndarray, truths: np.ndarray) -> np.ndarray:
    out = np.zeros_like(truths)
    nonzero = truths != 0.0
    out[nonzero] = (estimates[nonzero] - truths[nonzero]) / truths[nonzero]
    return out


def _column(records: list[dict], t: float, name: str) -> np.ndarray | None:
    values = [row[name] for row in records if row["t"] == t]
    if any(value is None for value in values):
        return None
    return np.asarray(values, dtype=float)


def _aggregate_per_t(records: list[dict], t: float) -> dict:
    out: dict = {}
    v = _column(records, t, "V")
    r = _column(records, t, "R")
    fdp_true = _column(records, t, "fdp_true")
    out["mean_V"] = float(np.mean(v))
    out["var_V"] = float(np.var(v, ddof=1)) if v.size > 1 else 0.0
    out["mean_R"] = float(np.mean(r))
    out["mean_fdp_true"] = float(np.mean(fdp_true))
    out["sd_fdp_true"] = float(np.std(fdp_true, ddof=1)) if fdp_true.size > 1 else 0.0
    for name in ("fdp_pfa", "fdp_efron", "fdp_storey"):
        estimates = _column(records, t, name)
        if estimates is None:
            continue
        out[f"mean_{name}"] = float(np.mean(estimates))
        if name != "fdp_storey":
            out[f"sd_{name}"] = float(np.std(estimates, ddof=1)) if estimates.size > 1 else 0.0
            errors = _relative_errors(estimates, fdp_true)
            short = name.removeprefix("fdp_")
            out[f"mean_re_{short}"] = float(np.mean(errors))
            out[f"sd_re_{short}"] = float(np.std(errors, ddof=1)) if errors.size > 1 else 0.0
    for name in ("fdp_bh_proc", "fdp_storey_proc"):
        values = _column(records, t, name)
        if values is not None:
            out[f"mean_{name}"] = float(np.mean(values))
    return out


def run_experiment(config: ExperimentConfig, chunk_size: int = 512) -> ExperimentOutput:
    """Run all replications and aggregate; deterministic in (config, seed)."""
    state = prepare_scenario(config)
    n_threads = max(1, int(os.environ.get("PFA_THREADS", "1")))

    records: list[dict] = []
    for start in range(0, config.n_reps, chunk_size):
        reps = range(start, min(start + chunk_size, config.n_reps))
        statistics = _draw_statistics(config, state, reps)
        if n_threads > 1:
            with ThreadPoolExecutor(max_workers=n_threads) as pool:
                chunks = list(
                    pool.map(
                        lambda pair: _replication_row(config, state, pair[0], pair[1]),
                        zip(reps, statistics),
                    )
                )
        else:
            chunks = [_replication_row(config, state, rep, z) for rep, z in zip(reps, statistics)]
        for rows in chunks:
            records.extend(rows)

    aggregates: dict = {
        "version": __version__,
        "config": config.to_dict(),
        "k": state.k,
        "n_degenerate_rows": int(state.model.degenerate_rows.size),
        "false_nulls": state.false_nulls.tolist(),
        "per_t": {},
    }
    draws = None
    if state.k > 0:
        draws = standard_factor_draws(state.k, config.n_mc, config.seed)
    p1 = config.scenario.p1
    for t in config.t_grid:
        summary = _aggregate_per_t(records, t)
        summary["approx_fdr"] = approx_fdr(t, state.model, p1, n_mc=config.n_mc, seed=config.seed, draws=draws)
        if state.k == 0:
            summary["var_numerator_all"] = 0.0
            summary["var_numerator_nulls"] = 0.0
        else:
            all_values = numerator_over_draws(t, state.model, draws)
            null_values = numerator_over_draws(t, state.model, draws, subset=state.true_nulls)
            summary["var_numerator_all"] = float(np.var(all_values, ddof=1))
            summary["var_numerator_nulls"] = float(np.var(null_values, ddof=1))
        aggregates["per_t"][_t_key(t)] = summary
    return ExperimentOutput(config=config, records=records, aggregates=aggregates)


def variance_study(
    scenario: Scenario,
    t: float,
    n_reps: int,
    n_mc: int,
    seed: int,
    epsilon: float = 0.01,
    chunk_size: int = 256,
) -> dict:
    """Empirical false-count variance versus the factor-formula MC variance.

    Counts false discoveries over n_reps statistic draws (no estimators, so
    very large replication counts stay cheap) and sets them against the
    Monte-Carlo variance of the conditional false-count numerator over
    factor draws, for the all-index and true-null index sets.
    """
    config = ExperimentConfig(
        scenario=scenario,
        t_grid=(t,),
        n_reps=n_reps,
        seed=seed,
        n_mc=n_mc,
        epsilon=epsilon,
        with_estimators=False,
    )
    state = prepare_scenario(config)
    p = scenario.p
    null_mask = np.zeros(p, dtype=bool)
    null_mask[state.true_nulls] = True
    counts = np.empty(n_reps)
    for start in range(0, n_reps, chunk_size):
        reps = range(start, min(start + chunk_size, n_reps))
        statistics = _draw_statistics(config, state, reps)
        pvalues = two_sided_pvalue(statistics)
        counts[reps.start : reps.stop] = np.sum((pvalues <= t) & null_mask, axis=1)
    if state.k == 0:
        var_all = 0.0
        var_nulls = 0.0
    else:
        draws = standard_factor_draws(state.k, n_mc, seed)
        var_all = float(np.var(numerator_over_draws(t, state.model, draws), ddof=1))
        var_nulls = float(
            np.var(numerator_over_draws(t, state.model, draws, subset=state.true_nulls), ddof=1)
        )
    return {
        "version": __version__,
        "config": config.to_dict(),
        "k": state.k,
        "t": float(t),
        "mean_V": float(np.mean(counts)),
        "var_V_empirical": float(np.var(counts, ddof=1)),
        "var_numerator_all": var_all,
        "var_numerator_nulls": var_nulls,
    }


def _t_key(t: float) -> str:
    return repr(float(t))


def _format_cell(value) -> str:
    if value is None:
        return ""
    return repr(value) if isinstance(value, float) else str(value)


def write_output(output: ExperimentOutput, out_dir: str | Path) -> tuple[Path, Path]:
    """Write records.csv and aggregates.json under out_dir."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records_path = out_dir / "records.csv"
    with records_path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(RECORD_COLUMNS)
        for row in output.records:
            writer.writerow([_format_cell(row[name]) for name in RECORD_COLUMNS])
    aggregates_path = out_dir / "aggregates.json"
    with aggregates_path.open("w") as handle:
        json.dump(output.aggregates, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return records_path, aggregates_path


def _parse_cell(name: str, text: str):
    if text == "":
        return None
    if name in ("rep", "R", "V", "S"):
        return int(text)
    return float(text)


def load_output(out_dir: str | Path) -> ExperimentOutput:
    """Read an experiment back and verify record-derived aggregates."""
    out_dir = Path(out_dir)
    with (out_dir / "aggregates.json").open() as handle:
        aggregates = json.load(handle)
    config = ExperimentConfig.from_dict(aggregates["config"])
    records: list[dict] = []
    with (out_dir / "records.csv").open(newline="") as handle:
        reader = csv.DictReader(handle)
        for row in reader:
            records.append({name: _parse_cell(name, row[name]) for name in RECORD_COLUMNS})
    for t in config.t_grid:
        stored = aggregates["per_t"][_t_key(t)]
        recomputed = _aggregate_per_t(records, t)
        for key in _RECHECKED_KEYS:
            if key not in stored and key not in recomputed:
                continue
            if (key in stored) != (key in recomputed):
                raise ValueError(f"aggregate key {key!r} present on only one side at t={t}")
            expected, actual = stored[key], recomputed[key]
            tolerance = 1e-9 * max(1.0, abs(expected))
            if abs(expected - actual) > tolerance:
                raise ValueError(
                    f"aggregate {key!r} at t={t} does not match its records: "
                    f"stored {expected!r}, recomputed {actual!r}"
                )
    return ExperimentOutput(config=config, records=records, aggregates=aggregates)


def run_estimate(
    z: np.ndarray,
    sigma: CorrelationMatrix,
    t: float,
    epsilon: float = 0.01,
    fraction: float = 0.75,
    lad_tol: float = 1e-8,
    lad_max_iter: int = 500,
) -> dict:
    """Full estimation pipeline on observed statistics and known correlation.

    Decompose, select the factor count, fit realized factors on the
    calibration set, and estimate the FDP at threshold t.
    """
    z = np.asarray(z, dtype=float)
    if z.shape[0] != sigma.dim:
        raise ValueError(f"z has length {z.shape[0]} but the matrix has dimension {sigma.dim}")
    system = spectral_decompose(sigma)
    k = select_num_factors(system.values, epsilon)
    model = build_factor_model(system, k)
    calibration = select_calibration_set(z, fraction)
    if k == 0:
        w_hat = np.zeros(0)
        fit_info = {"converged": True, "objective": 0.0, "iterations": 0}
    else:
        fit = lad_regress(
            model.loadings[calibration.indices],
            z[calibration.indices],
            tol=lad_tol,
            max_iter=lad_max_iter,
        )
        w_hat = fit.w_hat
        fit_info = {
            "converged": fit.converged,
            "objective": fit.objective,
            "iterations": fit.iterations,
        }
    report = estimate_fdp(t, z, model, w_hat)
    return {
        "version": __version__,
        "t": t,
        "epsilon": epsilon,
        "fraction": fraction,
        "k": k,
        "m": calibration.size,
        "w_hat": w_hat.tolist(),
        "R": report.n_rejected,
        "est_false_count": report.est_false_count,
        "fdp": report.fdp,
        "degenerate_rows": model.degenerate_rows.tolist(),
        "lad": fit_info,
    }


def run_convergence(
    scenario: Scenario,
    p_grid: tuple[int, ...],
    t_grid: tuple[float, ...],
    n_reps: int,
    seed: int,
    epsilon: float = 0.01,
    out_dir: str | Path | None = None,
) -> dict:
    """Empirical FDP distribution versus its factor-driven limit, per p.

    For each dimension the same replication seeds drive both sides: the
    statistics draw behind the empirical FDP and the factor draw behind the
    limit value. Emits one histogram CSV per (p, t) (50 bins on [0, 1]) plus
    a summary with two-sample Kolmogorov-Smirnov distances.
    """
    if n_reps < 1:
        raise ValueError(f"n_reps must be at least 1, got {n_reps}")
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
    edges = np.linspace(0.0, 1.0, _HISTOGRAM_BINS + 1)
    summary: dict = {
        "version": __version__,
        "scenario": scenario.to_dict(),
        "p_grid": list(p_grid),
        "t_grid": [float(t) for t in t_grid],
        "n_reps": n_reps,
        "seed": seed,
        "epsilon": epsilon,
        "ks": {},
    }
    for p_index, p in enumerate(p_grid):
        config = ExperimentConfig(
            scenario=scenario.with_p(p),
            t_grid=tuple(t_grid),
            n_reps=n_reps,
            seed=seed,
            epsilon=epsilon,
            with_estimators=False,
        )
        rng_design = substream(seed, _NS_DESIGN, p_index)
        design = generate_design(config.scenario, rng_design)
        sigma_hat, sds = sample_correlation(design)
        system = spectral_decompose(sigma_hat)
        root = symmetric_sqrt(system)
        model = build_factor_model(system, select_num_factors(system.values, epsilon))
        p1 = config.scenario.p1
        false_nulls = np.arange(p1, dtype=np.intp)
        mu = np.zeros(p)
        mu[false_nulls] = np.sqrt(config.scenario.n) * config.scenario.beta * sds[false_nulls] / config.scenario.sigma
        mask = np.ones(p, dtype=bool)
        mask[false_nulls] = False
        true_nulls = np.flatnonzero(mask)

        empirical = {t: np.empty(n_reps) for t in t_grid}
        limit = {t: np.empty(n_reps) for t in t_grid}
        for rep in range(n_reps):
            z = mu + root @ substream(seed, _NS_REPLICATION, p_index, rep).standard_normal(p)
            w = substream(seed, _NS_LIMIT, p_index, rep).standard_normal(model.k)
            realization = FactorRealization.from_w(model, w)
            for t in t_grid:
                v, _, r = realized_counts(z, mu, true_nulls, t)
                empirical[t][rep] = v / r if r else 0.0
                limit[t][rep] = fdp_limit(t, model, mu, true_nulls, realization)

        for t in t_grid:
            distance = float(ks_2samp(empirical[t], limit[t]).statistic)
            summary["ks"].setdefault(_t_key(t), {})[str(p)] = distance
            if out_dir is not None:
                counts_emp, _ = np.histogram(empirical[t], bins=edges)
                counts_lim, _ = np.histogram(limit[t], bins=edges)
                path = out_dir / f"convergence_p{p}_t{t:g}.csv"
                with path.open("w", newline="") as handle:
                    writer = csv.writer(handle)
                    writer.writerow(["bin_left", "bin_right", "count_empirical", "count_limit"])
                    for i in range(_HISTOGRAM_BINS):
                        writer.writerow(
                            [repr(edges[i]), repr(edges[i + 1]), int(counts_emp[i]), int(counts_lim[i])]
                        )
    if out_dir is not None:
        with (out_dir / "convergence_summary.json").open("w") as handle:
            json.dump(summary, handle, indent=2, sort_keys=True)
            handle.write("\n")
    return summary


def read_matrix_csv(path: str | Path) -> CorrelationMatrix:
    """Headerless dense CSV of p rows; errors carry the offending line."""
    path = Path(path)
    rows: list[list[float]] = []
    with path.open() as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append([float(cell) for cell in line.split(",")])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: could not parse matrix row: {exc}") from None
    if not rows:
        raise ValueError(f"{path}: empty matrix file")
    width = len(rows[0])
    for i, row in enumerate(rows, start=1):
        if len(row) != width:
            raise ValueError(f"{path}:{i}: expected {width} columns, found {len(row)}")
    return CorrelationMatrix.from_entries(np.asarray(rows))


def read_vector_csv(path: str | Path) -> np.ndarray:
    """Single-column CSV of reals; errors carry the offending line."""
    path = Path(path)
    values: list[float] = []
    with path.open() as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                values.append(float(line))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: could not parse value: {exc}") from None
    if not values:
        raise ValueError(f"{path}: empty vector file")
    return np.asarray(values)
