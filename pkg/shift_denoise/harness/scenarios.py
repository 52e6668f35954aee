"""
Simulation scenarios: a signal generator, an estimator and a grid of noise
levels (and, for the composite estimator, of half-widths N).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace
from typing import TYPE_CHECKING
from typing import Any

from shift_denoise import __version__
from shift_denoise.estimators.composite import CompositeKnobs
from shift_denoise.estimators.remainders import composite_rate
from shift_denoise.global_data.enm import EstimatorKind
from shift_denoise.global_data.enm import EstimatorMode
from shift_denoise.global_data.enm import GeneratorKind
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.harness.generators import gen_generalized_harmonic
from shift_denoise.harness.generators import gen_harmonic
from shift_denoise.harness.risk import mc_composite_risk
from shift_denoise.harness.risk import mc_risk
from shift_denoise.harness.risk import oracle_comparison
from shift_denoise.harness.seeds import derive_seed
from shift_denoise.signal_core.io import read_signal_csv
from shift_denoise.signal_core.sequences import Domain

if TYPE_CHECKING:
    from shift_denoise.estimators.config import EstimatorConfig
    from shift_denoise.harness.risk import RiskReport
    from shift_denoise.oracles.subspace import SubspaceSpec
    from shift_denoise.signal_core.sequences import Signal
    from shift_denoise.solvers.options import SolverOptions

logger = logging.getLogger(__name__)

CURVE_COLUMNS = (
    "sigma",
    "N",
    "trials",
    "failed",
    "mean",
    "median",
    "q10",
    "q90",
    "normalized_mse",
    "oracle_ratio_median",
    "rate",
)


@dataclass(frozen=True)
class SignalGenerator:
    kind: GeneratorKind
    s: int | None = None
    frequencies: tuple[float, ...] | None = None
    amplitudes: tuple[complex, ...] | None = None
    min_separation: float = 0.0
    seed: int | None = None
    spec: SubspaceSpec | None = None
    coefficients: tuple[tuple[complex, ...], ...] | None = None
    path: str | None = None

    def generate(self, domain: Domain, default_seed: int) -> tuple[Signal, SubspaceSpec | None]:
        """The test signal on ``domain`` and, unless it was read from a file, its subspace."""
        if self.kind == GeneratorKind.CSV:
            x = read_signal_csv(self.path)
            x.require(domain, f"signal in {self.path}")
            return x, None
        if self.kind == GeneratorKind.GENERALIZED:
            return gen_generalized_harmonic(self.spec, self.coefficients, domain), self.spec
        return gen_harmonic(
            self.s,
            domain,
            self.seed if self.seed is not None else default_seed,
            frequencies=self.frequencies,
            amplitudes=self.amplitudes,
            min_separation=self.min_separation,
        )


@dataclass(frozen=True)
class Scenario:
    name: str
    generator: SignalGenerator
    estimator: EstimatorKind
    sigmas: tuple[float, ...]
    trials: int
    master_seed: int
    config: EstimatorConfig | None = None
    s: int | None = None
    knobs: CompositeKnobs | None = None
    solver: SolverOptions | None = None
    big_n: tuple[int, ...] = ()
    oracle: bool = False
    keep_trials: bool = False
    document: dict[str, Any] = field(default_factory=dict)

    def with_seed(self, master_seed: int) -> Scenario:
        return replace(self, master_seed=master_seed, document={**self.document, "master_seed": master_seed})


def _case_config(scenario: Scenario, sigma: float) -> EstimatorConfig:
    cfg = scenario.config
    if cfg.mode == EstimatorMode.PENALIZED:
        return replace(cfg, sigma=sigma)
    return cfg


def _fit_domain(cfg: EstimatorConfig) -> Domain:
    domains = cfg.observation_domains()
    return Domain.interval(min(d.start for d in domains), max(d.stop for d in domains))


def _run_case(scenario: Scenario, sigma: float, big_n: int | None, seed: int, threads: int | None) -> RiskReport:
    if scenario.estimator == EstimatorKind.COMPOSITE:
        x, _ = scenario.generator.generate(Domain.symmetric(big_n), scenario.master_seed)
        return mc_composite_risk(
            x,
            big_n,
            scenario.s,
            sigma,
            scenario.trials,
            seed,
            knobs=scenario.knobs,
            solver=scenario.solver,
            threads=threads,
        )
    cfg = _case_config(scenario, sigma)
    x, spec = scenario.generator.generate(_fit_domain(cfg), scenario.master_seed)
    if scenario.oracle:
        if spec is None:
            msg = "oracle comparison needs a generator with a known subspace"
            raise ConfigurationError(msg)
        return oracle_comparison(x, spec, cfg, sigma, scenario.trials, seed, threads)
    return mc_risk(x, cfg, sigma, scenario.trials, seed, threads)


def run_scenario(scenario: Scenario, threads: int | None = None) -> dict[str, Any]:
    """
    Evaluate every (σ, N) case of ``scenario``.

    Case k runs its trials from the master seed derive_seed(master_seed, k),
    recorded in the case as ``case_seed``. The report carries no timing or
    thread information, so equal scenarios give equal reports.
    """
    grid = [(sigma, big_n) for sigma in scenario.sigmas for big_n in (scenario.big_n or (None,))]
    logger.info("scenario %r: %d cases of %d trials", scenario.name, len(grid), scenario.trials)
    cases = []
    for k, (sigma, big_n) in enumerate(grid):
        seed = derive_seed(scenario.master_seed, k)
        report = _run_case(scenario, sigma, big_n, seed, threads)
        cases.append(
            {
                "sigma": sigma,
                "N": big_n,
                "case_seed": seed,
                **report.as_dict(include_trials=scenario.keep_trials),
            },
        )
        logger.info(
            "scenario %r case %d/%d (sigma=%g, N=%s): median loss %.4g",
            scenario.name,
            k + 1,
            len(grid),
            sigma,
            big_n,
            report.l2["median"],
        )
    return {
        "version": __version__,
        "scenario": scenario.document,
        "estimator": str(scenario.estimator),
        "s": scenario.s,
        "cases": cases,
    }


def report_curves(report: dict[str, Any]) -> list[dict[str, Any]]:
    """One plot-ready row per case; ``rate`` is filled for composite runs."""
    rows = []
    composite = report.get("estimator") == EstimatorKind.COMPOSITE
    for case in report["cases"]:
        loss = case["l2_loss"]
        oracle = case.get("oracle")
        rate = None
        if composite and case.get("N") and report.get("s"):
            rate = composite_rate(case["N"], report["s"], case["sigma"])
        rows.append(
            {
                "sigma": case["sigma"],
                "N": case.get("N"),
                "trials": case["trials"],
                "failed": case["failed"],
                "mean": loss["mean"],
                "median": loss["median"],
                "q10": loss["q10"],
                "q90": loss["q90"],
                "normalized_mse": case["normalized_mse"],
                "oracle_ratio_median": oracle["ratio"]["median"] if oracle else None,
                "rate": rate,
            },
        )
    return rows
