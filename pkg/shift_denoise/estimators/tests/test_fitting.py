import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from shift_denoise.estimators.fitting import estimate
from shift_denoise.estimators.fitting import extrapolate
from shift_denoise.estimators.fitting import fit
from shift_denoise.estimators.fitting import fit_constrained
from shift_denoise.estimators.fitting import fit_penalized
from shift_denoise.estimators.fitting import fit_predictive
from shift_denoise.estimators.fitting import log_convergence
from shift_denoise.estimators.fitting import residual_objective
from shift_denoise.estimators.filters import Filter
from shift_denoise.estimators.tests.factories import EstimatorConfigFactory
from shift_denoise.estimators.tests.factories import FilterFactory
from shift_denoise.global_data.enm import FilterClass
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.global_data.exceptions import ConvergenceWarning
from shift_denoise.global_data.exceptions import DataError
from shift_denoise.oracles.constructions import extrapolating_filter
from shift_denoise.oracles.constructions import feasible_oracle
from shift_denoise.oracles.constructions import required_rho_bar
from shift_denoise.oracles.subspace import SubspaceSpec
from shift_denoise.signal_core.sequences import Domain
from shift_denoise.signal_core.sequences import Signal
from shift_denoise.signal_core.sequences import convolve
from shift_denoise.solvers.options import SolverOptions


def harmonic(omegas, amplitudes, domain: Domain) -> Signal:
    return Signal.from_function(
        lambda t: sum(a * np.exp(1j * w * t) for w, a in zip(omegas, amplitudes, strict=True)),
        domain,
    )


class TestEstimate:
    def test_identity_filter(self, random_signal):
        y = random_signal(-10, 21)
        out = estimate(FilterFactory(m=3), y, Domain.symmetric(4))
        np.testing.assert_allclose(out.values, y.on(Domain.symmetric(4)))

    def test_zero_filter(self, random_signal):
        y = random_signal(-10, 21)
        zero = FilterFactory(m=3, coefficients=np.zeros(7))
        assert not np.any(estimate(zero, y, Domain.symmetric(4)).values)

    def test_matches_convolution(self, random_signal, rng):
        y = random_signal(-10, 21)
        phi = Filter.shifted(rng.standard_normal(4), 3, 2)
        expected = convolve(phi.as_signal(), y).on(Domain.symmetric(4))
        np.testing.assert_allclose(estimate(phi, y, Domain.symmetric(4)).values, expected, atol=1e-12)

    def test_requires_observations(self, random_signal):
        with pytest.raises(DataError):
            estimate(FilterFactory(m=3), random_signal(-2, 5), Domain.symmetric(2))


class TestFitConstrained:
    def test_constant_signal_gives_average(self):
        cfg = EstimatorConfigFactory(m=4, n=4, rho_bar=1.0)
        y = Signal(-8, np.full(17, 3.0 - 1.0j))
        phi = fit_constrained(y, cfg)
        assert phi.filter_class == FilterClass.BILATERAL
        assert phi.converged
        np.testing.assert_allclose(phi.coefficients, 1 / 9, atol=1e-6)
        assert residual_objective(phi, y, cfg) <= 1e-10

    def test_on_grid_frequency_is_reproduced(self):
        m = 8
        omega = 2 * np.pi * 3 / (2 * m + 1)
        cfg = EstimatorConfigFactory(m=m, n=m, rho_bar=2.0)
        x = harmonic([omega], [1.0], Domain.symmetric(2 * m))
        phi = fit_constrained(x, cfg)
        np.testing.assert_allclose(estimate(phi, x, Domain.symmetric(m)).values, x.on(Domain.symmetric(m)), atol=1e-6)

    @pytest.mark.parametrize("omega", [0.37, 1.0, 2 * np.pi * 3.5 / 17, 4.2])
    def test_off_grid_frequency_is_reproduced(self, omega):
        m = 8
        cfg = EstimatorConfigFactory(m=m, n=m, rho_bar=2.0)
        x = harmonic([omega], [1.0], Domain.symmetric(2 * m))
        phi = fit_constrained(x, cfg)
        error = estimate(phi, x, Domain.symmetric(m)).values - x.on(Domain.symmetric(m))
        assert np.linalg.norm(error) <= 1e-6

    def test_tiny_radius_gives_zero_filter(self, random_signal):
        cfg = EstimatorConfigFactory(m=4, n=6)
        y = random_signal(-10, 21)
        phi = fit_constrained(y, cfg, radius=1e-9 / 3)
        assert phi.l2_norm() <= 1e-9
        assert np.max(np.abs(estimate(phi, y, Domain.symmetric(6)).values)) <= 1e-7

    def test_constraint_holds(self, random_signal):
        cfg = EstimatorConfigFactory(m=6, n=10, rho_bar=1.5)
        phi = fit_constrained(random_signal(-16, 33), cfg)
        assert phi.fourier_l1() <= cfg.radius * (1 + 1e-9)

    def test_objective_is_recorded(self, random_signal):
        cfg = EstimatorConfigFactory(m=3, n=5)
        y = random_signal(-8, 17)
        phi = fit_constrained(y, cfg)
        assert set(phi.metadata) >= {"objective", "certificate", "iterations", "converged"}
        assert phi.metadata["objective"] == pytest.approx(residual_objective(phi, y, cfg), rel=1e-8)

    def test_empty_estimation_radius(self):
        cfg = EstimatorConfigFactory(m=3, n=0, rho_bar=1.0)
        y = Signal(-3, np.ones(7))
        phi = fit_constrained(y, cfg)
        assert estimate(phi, y, Domain.symmetric(0)).values[0] == pytest.approx(1, abs=1e-6)

    def test_phase_equivariance(self, random_signal):
        cfg = EstimatorConfigFactory(m=4, n=6)
        y = random_signal(-10, 21)
        c = np.exp(0.7j)
        rotated = y.scaled(c)
        a = fit_constrained(y, cfg)
        b = fit_constrained(rotated, cfg)
        np.testing.assert_allclose(b.coefficients, a.coefficients, atol=1e-8)
        np.testing.assert_allclose(
            estimate(b, rotated, Domain.symmetric(6)).values,
            c * estimate(a, y, Domain.symmetric(6)).values,
            atol=1e-8,
        )

    def test_short_observations(self, random_signal):
        with pytest.raises(DataError):
            fit_constrained(random_signal(-5, 11), EstimatorConfigFactory(m=4, n=4))

    def test_wrong_mode(self, random_signal):
        with pytest.raises(ConfigurationError):
            fit_constrained(random_signal(-16, 33), EstimatorConfigFactory(penalized=True))

    def test_not_converged_warns(self, random_signal):
        cfg = EstimatorConfigFactory(m=6, n=6, solver__max_iters=1)
        with pytest.warns(ConvergenceWarning):
            phi = fit_constrained(random_signal(-12, 25), cfg)
        assert not phi.converged

    def test_not_converged_logged(self, random_signal, caplog):
        cfg = EstimatorConfigFactory(m=6, n=6, solver__max_iters=1)
        y = random_signal(-12, 25)
        with warnings.catch_warnings():
            warnings.simplefilter("error", ConvergenceWarning)
            with caplog.at_level(logging.INFO, logger="shift_denoise.estimators.fitting"), log_convergence():
                phi = fit_constrained(y, cfg)
        assert not phi.converged
        assert "filter fit stopped after 1 iterations" in caplog.text
        with pytest.warns(ConvergenceWarning):
            fit_constrained(y, cfg)

    def test_logging_is_per_thread(self, random_signal):
        cfg = EstimatorConfigFactory(m=6, n=6, solver__max_iters=1)
        y = random_signal(-12, 25)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            with log_convergence(), ThreadPoolExecutor(max_workers=1) as pool:
                pool.submit(fit_constrained, y, cfg).result()
        assert any(issubclass(item.category, ConvergenceWarning) for item in caught)


class TestFeasibleDominance:
    def test_beats_composition_oracle(self, rng):
        m = n = 16
        spec = SubspaceSpec.from_frequencies([0.9, 2.4])
        domain = Domain.symmetric(m + n)
        noise = 0.5 * (rng.standard_normal(len(domain)) + 1j * rng.standard_normal(len(domain)))
        y = harmonic([0.9, 2.4], [1.0, 0.5j], domain) + Signal(domain.start, noise)
        geometry = EstimatorConfigFactory(m=m, n=n)
        oracle = feasible_oracle(spec, geometry)
        cfg = EstimatorConfigFactory(m=m, n=n, rho_bar=max(1.0, required_rho_bar(oracle)))
        phi = fit_constrained(y, cfg)
        oracle_value = residual_objective(oracle, y, cfg)
        assert residual_objective(phi, y, cfg) <= oracle_value + 1e-6 * (1 + oracle_value)

    @pytest.mark.slow
    def test_random_instances(self, rng):
        for _ in range(50):
            m = n = int(rng.choice([8, 16, 32]))
            s = int(rng.integers(1, 4))
            omegas = rng.uniform(0, 2 * np.pi, s)
            if s > 1 and np.min(np.diff(np.sort(omegas))) < 0.1:
                continue
            spec = SubspaceSpec.from_frequencies(omegas)
            domain = Domain.symmetric(m + n)
            sigma = rng.uniform(0.1, 1.0)
            noise = sigma * (rng.standard_normal(len(domain)) + 1j * rng.standard_normal(len(domain)))
            y = harmonic(omegas, rng.standard_normal(s), domain) + Signal(domain.start, noise)
            oracle = feasible_oracle(spec, EstimatorConfigFactory(m=m, n=n))
            cfg = EstimatorConfigFactory(m=m, n=n, rho_bar=max(1.0, required_rho_bar(oracle)))
            oracle_value = residual_objective(oracle, y, cfg)
            assert residual_objective(fit_constrained(y, cfg), y, cfg) <= oracle_value + 1e-6 * (1 + oracle_value)

    @pytest.mark.slow
    @pytest.mark.parametrize("sigma", [0.0, 0.5])
    def test_fixed_geometry_instances(self, rng, sigma):
        m = n = 32
        domain = Domain.symmetric(m + n)
        for _ in range(25):
            s = int(rng.integers(1, 4))
            omegas = rng.uniform(0, 2 * np.pi, s)
            while s > 1 and np.min(np.diff(np.sort(omegas))) < 0.3:
                omegas = rng.uniform(0, 2 * np.pi, s)
            spec = SubspaceSpec.from_frequencies(omegas)
            noise = sigma * (rng.standard_normal(len(domain)) + 1j * rng.standard_normal(len(domain)))
            y = harmonic(omegas, np.exp(2j * np.pi * rng.uniform(size=s)), domain) + Signal(domain.start, noise)
            oracle = feasible_oracle(spec, EstimatorConfigFactory(m=m, n=n))
            cfg = EstimatorConfigFactory(m=m, n=n, rho_bar=max(1.0, 1.01 * required_rho_bar(oracle)))
            assert residual_objective(fit_constrained(y, cfg), y, cfg) <= residual_objective(oracle, y, cfg) + 1e-6


class TestDefaultSolverConverges:
    def test_noisy_harmonics(self, rng):
        solver = SolverOptions()
        with warnings.catch_warnings():
            warnings.simplefilter("error", ConvergenceWarning)
            for _ in range(40):
                m = n = int(rng.choice([4, 8, 16]))
                s = int(rng.integers(1, 3))
                domain = Domain.symmetric(m + n)
                noise = 0.5 * (rng.standard_normal(len(domain)) + 1j * rng.standard_normal(len(domain)))
                y = harmonic(rng.uniform(0, 2 * np.pi, s), np.exp(2j * np.pi * rng.uniform(size=s)), domain)
                y = y + Signal(domain.start, noise)
                constrained = EstimatorConfigFactory(m=m, n=n, rho_bar=2.0, solver=solver)
                penalized = EstimatorConfigFactory(penalized=True, m=m, n=n, sigma=0.5, solver=solver)
                assert fit_constrained(y, constrained).converged
                assert fit_penalized(y, penalized).converged


class TestFitPenalized:
    def test_large_lambda_shrinks_to_zero(self, random_signal):
        cfg = EstimatorConfigFactory(penalized=True, m=4, n=6, lam=1e8)
        phi = fit_penalized(random_signal(-10, 21), cfg)
        assert phi.l2_norm() <= 1e-6

    def test_small_lambda_fits_constant(self):
        cfg = EstimatorConfigFactory(penalized=True, m=4, n=4, lam=1e-6)
        y = Signal(-8, np.full(17, 2.0))
        phi = fit_penalized(y, cfg)
        np.testing.assert_allclose(estimate(phi, y, Domain.symmetric(4)).values, 2.0, atol=1e-4)

    def test_default_lambda_on_noisy_harmonic(self, rng):
        domain = Domain.symmetric(24)
        noise = rng.standard_normal(len(domain)) + 1j * rng.standard_normal(len(domain))
        y = harmonic([1.3], [3.0], domain) + Signal(domain.start, noise)
        cfg = EstimatorConfigFactory(penalized=True, m=12, n=12, solver__tol=1e-7)
        phi = fit_penalized(y, cfg)
        assert phi.converged
        assert phi.l2_norm() > 0

    def test_zero_sigma_warns(self, random_signal):
        cfg = EstimatorConfigFactory(penalized=True, m=3, n=3, sigma=0.0)
        with pytest.warns(ConvergenceWarning, match="machine epsilon"):
            fit_penalized(random_signal(-6, 13), cfg)

    def test_dispatch(self, random_signal):
        y = random_signal(-10, 21)
        cfg = EstimatorConfigFactory(penalized=True, m=4, n=6, lam=1e8)
        assert fit(y, cfg).l2_norm() <= 1e-6


class TestFitPredictive:
    def test_constant_gives_trailing_average(self):
        cfg = EstimatorConfigFactory(m=8, n=8, h=0, rho_bar=1.0)
        y = Signal(-16, np.ones(17))
        phi = fit_predictive(y, cfg)
        assert phi.support == Domain.one_sided(8)
        np.testing.assert_allclose(estimate(phi, y, Domain.past(8)).values, 1.0, atol=1e-6)

    def test_horizon_two_on_grid_frequency(self):
        m = 8
        omega = 2 * np.pi * 2 / (m + 1)
        cfg = EstimatorConfigFactory(m=m, n=8, h=2, rho_bar=1.0)
        x = harmonic([omega], [1.0], Domain.interval(-20, 4))
        phi = fit_predictive(x, cfg)
        np.testing.assert_allclose(estimate(phi, x, Domain(2, 1)).values, x.on(Domain(2, 1)), atol=1e-5)

    @pytest.mark.parametrize("omega", [0.37, 2 * np.pi * 2.5 / 9, 4.2])
    def test_horizon_two_off_grid_frequency(self, omega):
        cfg = EstimatorConfigFactory(m=8, n=8, h=2, rho_bar=2.0)
        x = harmonic([omega], [1.0], Domain.interval(-20, 2))
        y = x.restrict(Domain.interval(-20, 0))
        phi = fit_predictive(y, cfg)
        assert estimate(phi, y, Domain(2, 1)).values[0] == pytest.approx(x[2], abs=1e-5)

    def test_constraint_holds(self, random_signal):
        cfg = EstimatorConfigFactory(m=6, n=6, h=1, rho_bar=1.5)
        phi = fit_predictive(random_signal(-14, 15), cfg)
        assert phi.fourier_l1() <= cfg.radius * (1 + 1e-9)
        assert math.isclose(cfg.radius, 1.5 / math.sqrt(7))

    def test_needs_horizon(self, random_signal):
        with pytest.raises(ConfigurationError):
            fit_predictive(random_signal(-16, 33), EstimatorConfigFactory())

    def test_dispatch(self):
        cfg = EstimatorConfigFactory(m=4, n=4, h=0, rho_bar=1.0)
        assert fit(Signal(-8, np.ones(9)), cfg).filter_class == FilterClass.SHIFTED


class TestExtrapolate:
    @pytest.mark.parametrize("h0", [1, 2, 4])
    def test_two_harmonics(self, h0):
        omegas, amplitudes = [0.5, 2.0], [1.0, 0.6 - 0.2j]
        m = n = 16
        spec = SubspaceSpec.from_frequencies(omegas)
        level = required_rho_bar(extrapolating_filter(spec, m, 2 * h0))
        cfg = EstimatorConfigFactory(m=m, n=n, rho_bar=max(1.0, 1.01 * level))
        x = harmonic(omegas, amplitudes, Domain.interval(-60, 10))
        y = x.restrict(Domain.interval(-50, 0))
        assert extrapolate(y, cfg, h0) == pytest.approx(x[h0], abs=1e-5)

    def test_anchor_is_last_observation(self):
        cfg = EstimatorConfigFactory(m=4, n=4, rho_bar=1.0)
        y = Signal(100, np.full(30, 2.0))
        assert extrapolate(y, cfg, 1) == pytest.approx(2.0, abs=1e-6)

    def test_horizon_must_be_positive(self):
        with pytest.raises(ConfigurationError):
            extrapolate(Signal(0, np.ones(30)), EstimatorConfigFactory(m=4, n=4), 0)
