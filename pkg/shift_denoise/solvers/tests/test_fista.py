import numpy as np
import pytest
from scipy.optimize import minimize

from shift_denoise.conv_operators.operators import ToeplitzOp
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.global_data.exceptions import DataError
from shift_denoise.solvers.fista import gradient_mapping
from shift_denoise.solvers.fista import solve_constrained
from shift_denoise.solvers.fista import solve_penalized
from shift_denoise.solvers.options import SolverOptions
from shift_denoise.solvers.prox import project_l1_ball

TIGHT = SolverOptions(max_iters=20000, tol=1e-10)


def residual(a, b, f):
    return float(np.linalg.norm(b - a @ f) ** 2)


def residual_op(op, b, f):
    return float(np.linalg.norm(b - op.apply(f)) ** 2)


def constrained_reference(a, b, r):
    """SLSQP on the split f = u - v with u, v >= 0 and sum(u + v) <= r."""
    cols = a.shape[1]

    def objective(z):
        return np.sum((b - a @ (z[:cols] - z[cols:])) ** 2)

    result = minimize(
        objective,
        np.zeros(2 * cols),
        method="SLSQP",
        bounds=[(0, None)] * (2 * cols),
        constraints=[{"type": "ineq", "fun": lambda z: r - np.sum(z)}],
        options={"ftol": 1e-14, "maxiter": 2000},
    )
    return float(result.fun)


def penalized_reference(a, b, c):
    cols = a.shape[1]

    def objective(z):
        return np.sum((b - a @ (z[:cols] - z[cols:])) ** 2) + c * np.sum(z) ** 2

    result = minimize(
        objective,
        np.zeros(2 * cols),
        method="L-BFGS-B",
        bounds=[(0, None)] * (2 * cols),
        options={"ftol": 1e-15, "gtol": 1e-12, "maxiter": 10000},
    )
    return float(result.fun)


class TestSolveConstrained:
    def test_identity_feasible(self):
        b = np.array([0.5, -0.25j, 0.1])
        result = solve_constrained(np.eye(3), b, 1.0, TIGHT)
        assert result.converged
        np.testing.assert_allclose(result.solution, b, atol=1e-7)
        assert result.objective == pytest.approx(0, abs=1e-12)

    def test_identity_projects(self):
        result = solve_constrained(np.eye(2), [3.0, 1.0], 2.0, TIGHT)
        np.testing.assert_allclose(result.solution, project_l1_ball([3, 1], 2), atol=1e-7)

    def test_beats_random_feasible_points(self, rng):
        for _ in range(5):
            a = rng.standard_normal((6, 4))
            b = rng.standard_normal(6)
            r = float(rng.uniform(0.2, 2))
            result = solve_constrained(a, b, r, TIGHT)
            assert np.sum(np.abs(result.solution)) <= r + 1e-10
            for _ in range(1000):
                p = rng.standard_normal(4)
                p *= r * rng.uniform() / np.sum(np.abs(p))
                assert result.objective <= residual(a, b, p) + 1e-8

    def test_matches_reference(self, rng):
        for _ in range(5):
            a = rng.standard_normal((6, 4))
            b = rng.standard_normal(6)
            r = float(rng.uniform(0.2, 2))
            result = solve_constrained(a, b, r, TIGHT)
            assert result.objective <= constrained_reference(a, b, r) + 1e-6

    def test_toeplitz_operator(self, random_signal):
        y = random_signal(-8, 17)
        op = ToeplitzOp.bilateral(y, 3, 5)
        result = solve_constrained(op, y.window(-5, 5), 1.5, TIGHT)
        assert result.certificate >= 0
        assert np.sum(np.abs(result.solution)) <= 1.5 + 1e-10
        identity = np.zeros(7)
        identity[3] = 1
        assert result.objective <= residual_op(op, y.window(-5, 5), project_l1_ball(identity, 1.5)) + 1e-8

    def test_deterministic(self, rng):
        a = rng.standard_normal((5, 5))
        b = rng.standard_normal(5)
        first = solve_constrained(a, b, 1.0)
        second = solve_constrained(a, b, 1.0)
        np.testing.assert_array_equal(first.solution, second.solution)
        assert first.iterations == second.iterations

    def test_non_convergence_is_reported(self, rng):
        a = rng.standard_normal((6, 6))
        result = solve_constrained(a, rng.standard_normal(6), 3.0, SolverOptions(max_iters=1, tol=1e-15))
        assert not result.converged
        assert result.iterations == 1

    def test_rejects_bad_inputs(self):
        with pytest.raises(ConfigurationError):
            solve_constrained(np.eye(2), [1, 1], -1)
        with pytest.raises(DataError):
            solve_constrained(np.eye(2), [1, 1, 1], 1)


class TestSolvePenalized:
    def test_zero_penalty_is_least_squares(self):
        b = np.array([1 + 2j, -3, 0.5j])
        result = solve_penalized(np.eye(3), b, 0.0, TIGHT)
        np.testing.assert_allclose(result.solution, b, atol=1e-7)

    def test_large_penalty_shrinks_to_zero(self, rng):
        b = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        b /= np.linalg.norm(b)
        result = solve_penalized(np.eye(4), b, 1e8, TIGHT)
        assert np.linalg.norm(result.solution) <= 1e-6

    @pytest.mark.parametrize("c", [0.1, 1.0, 10.0])
    def test_matches_reference(self, rng, c):
        a = rng.standard_normal((6, 4))
        b = rng.standard_normal(6)
        result = solve_penalized(a, b, c, TIGHT)
        reference = penalized_reference(a, b, c)
        assert result.objective <= reference + 1e-6 * max(1.0, reference)

    def test_stationarity(self, rng):
        a = rng.standard_normal((8, 5)) + 1j * rng.standard_normal((8, 5))
        b = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        result = solve_penalized(a, b, 0.5, TIGHT)
        assert result.converged
        assert result.certificate <= TIGHT.tol * (1 + np.linalg.norm(result.solution))


class TestDefaultOptionsConverge:
    def test_random_complex_instances(self, rng):
        opts = SolverOptions()
        for _ in range(40):
            a = rng.standard_normal((12, 7)) + 1j * rng.standard_normal((12, 7))
            b = rng.standard_normal(12) + 1j * rng.standard_normal(12)
            constrained = solve_constrained(a, b, float(rng.uniform(0.2, 3)), opts)
            penalized = solve_penalized(a, b, float(rng.uniform(0.01, 2)), opts)
            assert constrained.converged
            assert penalized.converged
            assert penalized.certificate <= opts.tol * (1 + np.linalg.norm(penalized.solution))

    def test_stationary_start_is_kept(self):
        b = np.array([0.2, 0.1j])
        result = solve_constrained(np.eye(2), b, 1.0, TIGHT, x0=b)
        assert result.converged
        assert result.iterations == 1
        np.testing.assert_allclose(result.solution, b, atol=1e-15)


class TestGradientMapping:
    def test_vanishes_at_unconstrained_minimizer(self):
        b = np.array([0.2, 0.1j])
        value = gradient_mapping(np.eye(2), b, b, 2.0, lambda v, _step: project_l1_ball(v, 1))
        assert value == pytest.approx(0, abs=1e-15)

    def test_positive_away_from_minimizer(self):
        value = gradient_mapping(np.eye(2), [0.2, 0.1], [0, 0], 2.0, lambda v, _step: v)
        assert value == pytest.approx(np.linalg.norm([0.2, 0.1]))


class TestSolverOptions:
    def test_defaults_come_from_settings(self, settings):
        settings.SHIFTDENOISE_SOLVER = {"MAX_ITERS": 12, "TOL": 1e-6, "STEP_SAFETY": 0.2, "POWER_ITERS": 7}
        opts = SolverOptions.from_settings()
        assert (opts.max_iters, opts.tol, opts.step_safety, opts.power_iters) == (12, 1e-6, 0.2, 7)
        assert SolverOptions.from_settings(max_iters=3).max_iters == 3

    @pytest.mark.parametrize(
        "kwargs",
        [{"max_iters": 0}, {"tol": 0}, {"step_safety": 0}, {"step_safety": 1.5}],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigurationError):
            SolverOptions(**kwargs)
