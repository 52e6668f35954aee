import numpy as np
import pytest

from shift_denoise.estimators.blockwise import block_centres
from shift_denoise.estimators.blockwise import blockwise_denoise
from shift_denoise.estimators.config import EstimatorConfig
from shift_denoise.estimators.fitting import estimate
from shift_denoise.estimators.fitting import fit
from shift_denoise.estimators.tests.factories import EstimatorConfigFactory
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.global_data.exceptions import DataError
from shift_denoise.signal_core.sequences import Domain
from shift_denoise.signal_core.sequences import Signal
from shift_denoise.solvers.options import SolverOptions


class TestBlockCentres:
    def test_tiling(self):
        assert block_centres(0, 60, 4, 8) == [12, 25, 38, 48]

    def test_single_block(self):
        assert block_centres(-12, 12, 4, 8) == [0]

    def test_too_short(self):
        assert block_centres(0, 10, 4, 8) == []


class TestBlockwiseDenoise:
    def test_single_block_matches_one_fit(self, random_signal):
        cfg = EstimatorConfigFactory(m=4, n=8)
        y = random_signal(-12, 25)
        out = blockwise_denoise(y, cfg)
        assert out.domain == Domain.symmetric(8)
        expected = estimate(fit(y, cfg), y, Domain.symmetric(8))
        np.testing.assert_allclose(out.values, expected.values, atol=1e-12)

    def test_output_covers_interior(self, random_signal):
        cfg = EstimatorConfigFactory(m=3, n=5, solver__max_iters=200, solver__tol=1e-6)
        y = random_signal(10, 50)
        out = blockwise_denoise(y, cfg)
        assert out.domain == Domain.interval(13, 56)

    def test_harmonic_is_recovered(self):
        m = 4
        omega = 2 * np.pi * 2 / (2 * m + 1)
        cfg = EstimatorConfigFactory(m=m, n=8, rho_bar=1.0)
        x = Signal.from_function(lambda t: 2 * np.exp(1j * omega * t), Domain(0, 61))
        out = blockwise_denoise(x, cfg)
        np.testing.assert_allclose(out.values, x.on(out.domain), atol=1e-4)

    def test_piecewise_constant(self):
        cfg = EstimatorConfigFactory(m=2, n=4, rho_bar=1.0)
        values = np.concatenate((np.full(30, 1.0), np.full(30, -2.0)))
        out = blockwise_denoise(Signal(0, values), cfg)
        far_left = Domain.interval(2, 20)
        far_right = Domain.interval(40, 57)
        np.testing.assert_allclose(out.on(far_left), 1.0, atol=1e-4)
        np.testing.assert_allclose(out.on(far_right), -2.0, atol=1e-4)

    def test_short_signal_uses_reduced_radius(self):
        cfg = EstimatorConfigFactory(m=3, n=10, rho_bar=1.0)
        y = Signal(0, np.ones(15))
        out = blockwise_denoise(y, cfg)
        assert out.domain == Domain.interval(3, 11)
        np.testing.assert_allclose(out.values, 1.0, atol=1e-6)

    def test_too_few_observations(self):
        with pytest.raises(DataError):
            blockwise_denoise(Signal(0, np.ones(6)), EstimatorConfigFactory(m=3, n=3))

    def test_bilateral_only(self):
        with pytest.raises(ConfigurationError):
            blockwise_denoise(Signal(0, np.ones(40)), EstimatorConfigFactory(m=3, n=3, h=0))

    def test_geometry_keywords_match_configuration(self, random_signal):
        solver = SolverOptions(max_iters=20000, tol=1e-10)
        y = random_signal(0, 40)
        by_config = blockwise_denoise(y, EstimatorConfig(m=2, n=4, rho_bar=2.0, solver=solver))
        by_keywords = blockwise_denoise(y, m=2, n=4, mode="constrained", rho_bar=2.0, solver=solver)
        assert by_keywords.domain == by_config.domain
        np.testing.assert_array_equal(by_keywords.values, by_config.values)

    def test_penalized_keywords(self):
        solver = SolverOptions(max_iters=20000, tol=1e-10)
        y = Signal(0, np.full(40, 2.0))
        out = blockwise_denoise(y, m=2, n=4, mode="penalized", sigma=1.0, lam=1e-6, solver=solver)
        np.testing.assert_allclose(out.values, 2.0, atol=1e-4)

    @pytest.mark.parametrize(
        "kwargs",
        [{}, {"m": 2}, {"cfg": EstimatorConfig(m=2, n=4, rho_bar=2.0, solver=SolverOptions()), "n": 4}],
    )
    def test_geometry_must_be_given_once(self, kwargs):
        with pytest.raises(ConfigurationError):
            blockwise_denoise(Signal(0, np.ones(40)), **kwargs)
