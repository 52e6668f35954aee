"""
Monte Carlo risk of the adaptive estimators.

Every trial draws its own noise from a seed derived from the master seed and
the trial index, so a report does not depend on how many threads ran it.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from dataclasses import field
from typing import TYPE_CHECKING
from typing import Any

import numpy as np
from django.conf import settings

from shift_denoise.estimators.composite import CompositeKnobs
from shift_denoise.estimators.composite import denoise_full_composite
from shift_denoise.estimators.fitting import estimate
from shift_denoise.estimators.fitting import fit
from shift_denoise.estimators.fitting import log_convergence
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.global_data.exceptions import DataError
from shift_denoise.global_data.exceptions import ShiftDenoiseError
from shift_denoise.harness.generators import NoiseModel
from shift_denoise.harness.generators import gen_noise
from shift_denoise.harness.seeds import derive_seed
from shift_denoise.oracles.constructions import feasible_oracle
from shift_denoise.oracles.constructions import required_rho_bar
from shift_denoise.oracles.subspace import project_onto_subspace
from shift_denoise.signal_core.sequences import Domain

if TYPE_CHECKING:
    from collections.abc import Callable

    from shift_denoise.estimators.config import EstimatorConfig
    from shift_denoise.estimators.filters import Filter
    from shift_denoise.oracles.subspace import SubspaceSpec
    from shift_denoise.signal_core.sequences import Signal
    from shift_denoise.solvers.options import SolverOptions

logger = logging.getLogger(__name__)

RHO_BAR_SLACK = 1e-9


def summarize(values: np.ndarray) -> dict[str, float]:
    """Mean, median, 10% and 90% quantiles and maximum of a 1-D sample."""
    q10, median, q90 = np.quantile(values, [0.1, 0.5, 0.9])
    return {
        "mean": float(np.mean(values)),
        "median": float(median),
        "q10": float(q10),
        "q90": float(q90),
        "max": float(np.max(values)),
    }


@dataclass(frozen=True)
class TrialOutcome:
    index: int
    seed: int
    pointwise: np.ndarray | None = None
    converged: bool = True
    extras: dict[str, float] = field(default_factory=dict)
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass(frozen=True)
class RiskReport:
    """
    Loss statistics of one Monte Carlo experiment.

    ``losses`` holds ‖x - x̂‖_2 on the estimation domain per trial, in trial
    order, with NaN for failed trials; every statistic is computed from the
    successful trials only.
    """

    trials: int
    failed: int
    unconverged: int
    l2: dict[str, float]
    pointwise: dict[str, list[float]]
    normalized_mse: float
    domain: Domain
    config: dict[str, Any]
    master_seed: int
    seeds: tuple[int, ...]
    losses: tuple[float, ...]
    oracle: dict[str, Any] | None = None

    def as_dict(self, *, include_trials: bool = False) -> dict[str, Any]:
        data = {
            "trials": self.trials,
            "failed": self.failed,
            "unconverged": self.unconverged,
            "l2_loss": self.l2,
            "pointwise_loss": {"start": self.domain.start, **self.pointwise},
            "normalized_mse": self.normalized_mse,
            "config": self.config,
            "seeds": {"master_seed": self.master_seed, "derivation": "splitmix64"},
            "oracle": self.oracle,
        }
        if include_trials:
            data["seeds"]["per_trial"] = list(self.seeds)
            data["losses"] = [None if math.isnan(v) else v for v in self.losses]
        return data


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        threads = getattr(settings, "SHIFTDENOISE_THREADS", 1)
    if threads < 1:
        msg = f"threads must be at least 1, got {threads}"
        raise ConfigurationError(msg)
    return int(threads)


def run_trials(
    trials: int,
    master_seed: int,
    trial: Callable[[int, int], TrialOutcome],
    threads: int | None = None,
) -> list[TrialOutcome]:
    """
    Run ``trial(index, seed)`` for every index and return the outcomes in index order.

    Fits that stop early inside a trial are logged, not warned about; the
    outcome carries the flag and the report counts them.
    """
    if trials < 1:
        msg = f"trials must be at least 1, got {trials}"
        raise ConfigurationError(msg)
    seeds = [derive_seed(master_seed, k) for k in range(trials)]

    def guarded(k: int) -> TrialOutcome:
        try:
            with log_convergence():
                return trial(k, seeds[k])
        except (ShiftDenoiseError, np.linalg.LinAlgError) as exc:
            logger.warning("trial %d (seed %d) failed: %s", k, seeds[k], exc)
            return TrialOutcome(index=k, seed=seeds[k], error=str(exc))

    workers = min(resolve_threads(threads), trials)
    if workers == 1:
        outcomes = [guarded(k) for k in range(trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(guarded, range(trials)))
    unconverged = sum(not o.converged for o in outcomes if not o.failed)
    if unconverged:
        logger.warning("%d of %d trials ended with an unconverged fit", unconverged, trials)
    return outcomes


def build_report(  # noqa: PLR0913
    outcomes: list[TrialOutcome],
    domain: Domain,
    config: dict[str, Any],
    master_seed: int,
    oracle: Callable[[list[TrialOutcome]], dict[str, Any]] | None = None,
) -> RiskReport:
    good = [o for o in outcomes if not o.failed]
    if not good:
        msg = f"all {len(outcomes)} trials failed; first error: {outcomes[0].error}"
        raise DataError(msg)
    pointwise = np.vstack([o.pointwise for o in good])
    losses = np.linalg.norm(pointwise, axis=1)
    return RiskReport(
        trials=len(outcomes),
        failed=len(outcomes) - len(good),
        unconverged=sum(not o.converged for o in good),
        l2=summarize(losses),
        pointwise={
            "mean": pointwise.mean(axis=0).tolist(),
            "q90": np.quantile(pointwise, 0.9, axis=0).tolist(),
        },
        normalized_mse=float(math.sqrt(np.mean(losses**2)) / math.sqrt(len(domain))),
        domain=domain,
        config=config,
        master_seed=int(master_seed),
        seeds=tuple(o.seed for o in outcomes),
        losses=tuple(
            math.nan if o.failed else float(np.linalg.norm(o.pointwise)) for o in outcomes
        ),
        oracle=oracle(good) if oracle else None,
    )


def _observed(x: Signal, cfg: EstimatorConfig) -> Domain:
    domains = cfg.observation_domains()
    union = Domain.interval(min(d.start for d in domains), max(d.stop for d in domains))
    x.require(union, "signal")
    return union


def _noisy(x: Signal, domain: Domain, sigma: float, seed: int) -> Signal:
    return x.restrict(domain) + gen_noise(domain, NoiseModel(sigma, seed))


def mc_risk(  # noqa: PLR0913
    x: Signal,
    cfg: EstimatorConfig,
    sigma: float,
    trials: int,
    master_seed: int,
    threads: int | None = None,
) -> RiskReport:
    """Loss of the adaptive filter of ``cfg`` over ``trials`` noise draws."""
    observed = _observed(x, cfg)
    target = cfg.estimation_domain()
    truth = x.on(target)

    def trial(k: int, seed: int) -> TrialOutcome:
        y = _noisy(x, observed, sigma, seed)
        phi = fit(y, cfg)
        error = np.abs(truth - estimate(phi, y, target).values)
        return TrialOutcome(index=k, seed=seed, pointwise=error, converged=phi.converged)

    outcomes = run_trials(trials, master_seed, trial, threads)
    report = build_report(outcomes, target, {"estimator": cfg.as_dict(), "sigma": sigma}, master_seed)
    logger.info(
        "mc_risk sigma=%g trials=%d: median loss %.4g, %d failed",
        sigma,
        trials,
        report.l2["median"],
        report.failed,
    )
    return report


def _check_oracle_level(oracle: Filter, cfg: EstimatorConfig) -> None:
    if cfg.rho_bar is None:
        return
    needed = required_rho_bar(oracle)
    if needed > cfg.rho_bar * (1 + RHO_BAR_SLACK):
        msg = (
            f"the composition oracle needs rho_bar >= {needed:.4g} but the configuration "
            f"has rho_bar={cfg.rho_bar}; increase rho_bar to compare against it"
        )
        raise ConfigurationError(msg)


def oracle_comparison(  # noqa: PLR0913
    x: Signal,
    spec: SubspaceSpec,
    cfg: EstimatorConfig,
    sigma: float,
    trials: int,
    master_seed: int,
    threads: int | None = None,
) -> RiskReport:
    """
    Paired comparison of the adaptive filter against the composition oracle.

    Both filters, and the least-squares fit of the known subspace on the
    observed window, see the same noise in every trial.
    """
    oracle = feasible_oracle(spec, cfg)
    _check_oracle_level(oracle, cfg)
    observed = _observed(x, cfg)
    target = cfg.estimation_domain()
    truth = x.on(target)
    offset = target.start - observed.start

    def trial(k: int, seed: int) -> TrialOutcome:
        y = _noisy(x, observed, sigma, seed)
        phi = fit(y, cfg)
        error = np.abs(truth - estimate(phi, y, target).values)
        oracle_loss = np.linalg.norm(truth - estimate(oracle, y, target).values)
        projected = project_onto_subspace(y, spec, observed).values[offset : offset + len(target)]
        return TrialOutcome(
            index=k,
            seed=seed,
            pointwise=error,
            converged=phi.converged,
            extras={
                "oracle": float(oracle_loss),
                "baseline": float(np.linalg.norm(truth - projected)),
            },
        )

    def compare(good: list[TrialOutcome]) -> dict[str, Any]:
        adaptive = np.array([np.linalg.norm(o.pointwise) for o in good])
        oracle_losses = np.array([o.extras["oracle"] for o in good])
        baseline = np.array([o.extras["baseline"] for o in good])
        tiny = np.finfo(np.float64).tiny
        ratio = np.where(oracle_losses > tiny, adaptive / np.maximum(oracle_losses, tiny), 1.0)
        return {
            "kind": "feasible",
            "rho_bar_required": required_rho_bar(oracle),
            "oracle_l2_loss": summarize(oracle_losses),
            "baseline_l2_loss": summarize(baseline),
            "excess": summarize(adaptive - oracle_losses),
            "ratio": summarize(ratio),
        }

    outcomes = run_trials(trials, master_seed, trial, threads)
    report = build_report(
        outcomes,
        target,
        {"estimator": cfg.as_dict(), "sigma": sigma, "s": spec.s},
        master_seed,
        oracle=compare,
    )
    logger.info(
        "oracle_comparison sigma=%g trials=%d: median ratio %.4g",
        sigma,
        trials,
        report.oracle["ratio"]["median"],
    )
    return report


def mc_composite_risk(  # noqa: PLR0913
    x: Signal,
    big_n: int,
    s: int,
    sigma: float,
    trials: int,
    master_seed: int,
    knobs: CompositeKnobs | None = None,
    solver: SolverOptions | None = None,
    threads: int | None = None,
) -> RiskReport:
    """Loss of the composite estimator on D_N."""
    knobs = knobs or CompositeKnobs.from_settings()
    domain = Domain.symmetric(big_n)
    x.require(domain, "signal")
    truth = x.on(domain)

    def trial(k: int, seed: int) -> TrialOutcome:
        y = _noisy(x, domain, sigma, seed)
        x_hat = denoise_full_composite(y, big_n, s, knobs=knobs, solver=solver)
        return TrialOutcome(index=k, seed=seed, pointwise=np.abs(truth - x_hat.values))

    outcomes = run_trials(trials, master_seed, trial, threads)
    config = {
        "estimator": "composite",
        "N": big_n,
        "s": s,
        "sigma": sigma,
        "c_ratio": knobs.c_ratio,
        "rho_bar_edge_scale": knobs.rho_bar_edge_scale,
    }
    report = build_report(outcomes, domain, config, master_seed)
    logger.info(
        "mc_composite_risk N=%d sigma=%g trials=%d: normalized mse %.4g",
        big_n,
        sigma,
        trials,
        report.normalized_mse,
    )
    return report
