"""Data generation for the simulation studies.

A Scenario describes one of six dependence structures for the raw design
matrix. One sampled design yields a sample correlation matrix (the known
covariance of the test statistics), per-column standard deviations, and the
mean shifts of the false nulls; test statistics are then drawn exactly from
N(mu, Sigma) via the symmetric square root, which is the conditional law of
the standardized marginal-regression coefficients given the design.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .gauss import two_sided_pvalue
from .linalg import CorrelationMatrix, spectral_decompose, symmetric_sqrt

__all__ = [
    "SCENARIO_KINDS",
    "ConstantColumnError",
    "Scenario",
    "GeneratedInstance",
    "generate_design",
    "sample_correlation",
    "make_test_statistics",
    "realized_counts",
]

SCENARIO_KINDS = (
    "equal_correlation",
    "fan_song",
    "independent_cauchy",
    "three_factor",
    "two_factor",
    "nonlinear_factor",
)

# Share of trailing columns tied to the leading block in the fan_song design.
_FAN_SONG_DEPENDENT_SHARE = 0.05
_FAN_SONG_SOURCE_COLUMNS = 10


class ConstantColumnError(ValueError):
    """A design column has zero sample standard deviation."""


@dataclass(frozen=True)
class Scenario:
    """One dependence structure with its sampling parameters."""

    kind: str
    p: int = 2000
    n: int = 100
    p1: int = 10
    beta: float = 1.0
    sigma: float = 2.0
    rho: float = 0.5

    def __post_init__(self):
        if self.kind not in SCENARIO_KINDS:
            raise ValueError(f"unknown scenario kind {self.kind!r}; expected one of {SCENARIO_KINDS}")
        if self.p < 1:
            raise ValueError(f"p must be positive, got {self.p}")
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if not 0 <= self.p1 <= self.p:
            raise ValueError(f"p1 must lie in [0, p], got {self.p1}")
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.kind == "equal_correlation" and not 0.0 <= self.rho < 1.0:
            raise ValueError(f"rho must lie in [0, 1), got {self.rho}")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "n": self.n,
            "p1": self.p1,
            "beta": self.beta,
            "sigma": self.sigma,
            "rho": self.rho,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        return cls(**{key: data[key] for key in ("kind", "p", "n", "p1", "beta", "sigma", "rho") if key in data})

    def with_p(self, p: int) -> "Scenario":
        return replace(self, p=p)


@dataclass(frozen=True)
class GeneratedInstance:
    """One simulated testing problem: known correlation, shifts, statistics."""

    sigma_hat: CorrelationMatrix
    mu: np.ndarray
    z: np.ndarray
    true_nulls: np.ndarray
    false_nulls: np.ndarray
    sds: np.ndarray


def generate_design(scenario: Scenario, rng: np.random.Generator) -> np.ndarray:
    """n x p design matrix; each row is an independent draw of the p-vector.

    Factor coefficients (where the structure has them) are drawn fresh per
    call, so repeated calls give independent designs from the same family.
    """
    n, p = scenario.n, scenario.p
    kind = scenario.kind
    if kind == "equal_correlation":
        rho = scenario.rho
        common = rng.standard_normal((n, 1))
        noise = rng.standard_normal((n, p))
        return np.sqrt(rho) * common + np.sqrt(1.0 - rho) * noise
    if kind == "fan_song":
        dependent = int(round(_FAN_SONG_DEPENDENT_SHARE * p))
        independent = p - dependent
        if dependent > 0 and independent < _FAN_SONG_SOURCE_COLUMNS:
            raise ValueError(
                f"fan_song needs at least {_FAN_SONG_SOURCE_COLUMNS} independent columns, got {independent}"
            )
        design = np.empty((n, p))
        design[:, :independent] = rng.standard_normal((n, independent))
        if dependent > 0:
            signs = (-1.0) ** np.arange(2, 2 + _FAN_SONG_SOURCE_COLUMNS)  # +, -, +, ...
            combo = design[:, :_FAN_SONG_SOURCE_COLUMNS] @ (signs / 5.0)
            load = _FAN_SONG_SOURCE_COLUMNS / 25.0
            design[:, independent:] = combo[:, None] + np.sqrt(1.0 - load) * rng.standard_normal(
                (n, dependent)
            )
        return design
    if kind == "independent_cauchy":
        # Inverse-CDF sampling; only sample correlations of the columns are
        # consumed downstream, so the heavy tails are harmless.
        return np.tan(np.pi * (rng.random((n, p)) - 0.5))
    if kind == "three_factor":
        coeffs = rng.uniform(-1.0, 1.0, size=(3, p))
        factors = rng.standard_normal((n, 3)) + np.array([-2.0, 1.0, 4.0])
        return factors @ coeffs + rng.standard_normal((n, p))
    if kind == "two_factor":
        coeffs = rng.uniform(-1.0, 1.0, size=(2, p))
        factors = rng.standard_normal((n, 2))
        return factors @ coeffs + rng.standard_normal((n, p))
    if kind == "nonlinear_factor":
        coeffs = rng.uniform(-1.0, 1.0, size=(2, p))
        factors = rng.standard_normal((n, 2))
        linear = np.sin(factors[:, :1] @ coeffs[:1])
        curved = np.sign(coeffs[1]) * np.exp(np.abs(coeffs[1]) * factors[:, 1:])
        return linear + curved + rng.standard_normal((n, p))
    raise AssertionError(f"unhandled scenario kind {kind!r}")


def sample_correlation(design: np.ndarray) -> tuple[CorrelationMatrix, np.ndarray]:
    """Sample correlation matrix and per-column sample SDs (denominator n-1)."""
    design = np.asarray(design, dtype=float)
    n = design.shape[0]
    centered = design - design.mean(axis=0)
    sds = np.sqrt(np.sum(np.square(centered), axis=0) / (n - 1))
    if np.any(sds == 0.0):
        bad = int(np.flatnonzero(sds == 0.0)[0])
        raise ConstantColumnError(f"design column {bad} is constant")
    standardized = centered / sds
    entries = (standardized.T @ standardized) / (n - 1)
    entries = (entries + entries.T) / 2.0
    np.fill_diagonal(entries, 1.0)
    return CorrelationMatrix.from_entries(entries), sds


def make_test_statistics(
    sigma_hat: CorrelationMatrix,
    sds: np.ndarray,
    scenario: Scenario,
    rng: np.random.Generator,
    root: np.ndarray | None = None,
    false_nulls: np.ndarray | None = None,
) -> GeneratedInstance:
    """Draw Z ~ N(mu, Sigma) with mean shifts on the false-null coordinates.

    mu_i = sqrt(n) * beta * sd_i / sigma on the false nulls and exactly 0
    elsewhere. `root` may carry a precomputed symmetric square root of
    Sigma; `false_nulls` overrides the default placement (first p1 indices).
    """
    p = sigma_hat.dim
    sds = np.asarray(sds, dtype=float)
    if sds.shape != (p,):
        raise ValueError(f"expected {p} column SDs, got shape {sds.shape}")
    if root is None:
        root = symmetric_sqrt(spectral_decompose(sigma_hat))
    if false_nulls is None:
        false_nulls = np.arange(scenario.p1, dtype=np.intp)
    else:
        false_nulls = np.asarray(false_nulls, dtype=np.intp)
        if false_nulls.size != scenario.p1:
            raise ValueError(f"expected {scenario.p1} false-null indices, got {false_nulls.size}")
    mu = np.zeros(p)
    mu[false_nulls] = np.sqrt(scenario.n) * scenario.beta * sds[false_nulls] / scenario.sigma
    mask = np.ones(p, dtype=bool)
    mask[false_nulls] = False
    true_nulls = np.flatnonzero(mask)
    z = mu + root @ rng.standard_normal(p)
    return GeneratedInstance(
        sigma_hat=sigma_hat,
        mu=mu,
        z=z,
        true_nulls=true_nulls,
        false_nulls=np.sort(false_nulls),
        sds=sds,
    )


def realized_counts(
    z: np.ndarray,
    mu: np.ndarray,
    true_nulls: np.ndarray,
    t: float,
) -> tuple[int, int, int]:
    """(V, S, R): false, true, and total discoveries at threshold t."""
    z = np.asarray(z, dtype=float)
    rejected = two_sided_pvalue(z) <= t
    null_mask = np.zeros(z.shape[0], dtype=bool)
    null_mask[np.asarray(true_nulls, dtype=np.intp)] = True
    false_discoveries = int(np.count_nonzero(rejected & null_mask))
    total = int(np.count_nonzero(rejected))
    return false_discoveries, total - false_discoveries, total
