import numpy as np
import pytest

from shift_denoise.global_data.enm import EstimatorKind
from shift_denoise.global_data.enm import GeneratorKind
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.global_data.exceptions import DataError
from shift_denoise.global_data.files import dumps
from shift_denoise.harness.api.serializers.scenario_serializers import scenario_from_dict
from shift_denoise.harness.scenarios import CURVE_COLUMNS
from shift_denoise.harness.scenarios import report_curves
from shift_denoise.harness.scenarios import run_scenario
from shift_denoise.harness.seeds import derive_seed
from shift_denoise.harness.tests.factories import ScenarioDocumentFactory
from shift_denoise.signal_core.io import write_signal_csv
from shift_denoise.signal_core.sequences import Domain
from shift_denoise.signal_core.sequences import Signal


def oracle_document(**overrides):
    return ScenarioDocumentFactory(
        estimator={"kind": "fit", "config": {"m": 4, "n": 4, "rho_bar": 4.0}},
        oracle=True,
        **overrides,
    )


def composite_document(**overrides):
    return ScenarioDocumentFactory(
        estimator={"kind": "composite", "s": 1, "solver": {"max_iters": 20000, "tol": 1e-10}},
        big_n=[8, 12],
        **overrides,
    )


class TestScenarioDocument:
    def test_builds_fit_scenario(self):
        scenario = scenario_from_dict(ScenarioDocumentFactory())
        assert scenario.estimator == EstimatorKind.FIT
        assert scenario.generator.kind == GeneratorKind.HARMONIC
        assert scenario.generator.amplitudes == (1 + 0j,)
        assert scenario.config.m == 4
        assert scenario.config.solver.max_iters == 20000
        assert scenario.big_n == ()

    def test_builds_composite_scenario(self, settings):
        settings.SHIFTDENOISE_COMPOSITE = {"C_RATIO": 0.5, "RHO_BAR_EDGE_SCALE": 2.0}
        scenario = scenario_from_dict(composite_document())
        assert scenario.big_n == (8, 12)
        assert scenario.knobs.c_ratio == 0.5
        assert scenario.config is None

    def test_keeps_the_document(self):
        document = ScenarioDocumentFactory(name="kept")
        assert scenario_from_dict(document).document == document

    def test_with_seed(self):
        scenario = scenario_from_dict(ScenarioDocumentFactory()).with_seed(99)
        assert scenario.master_seed == 99
        assert scenario.document["master_seed"] == 99

    @pytest.mark.parametrize(
        ("overrides", "message"),
        [
            ({"sigmas": []}, "sigmas"),
            ({"sigmas": [-1.0]}, "sigmas"),
            ({"trials": 0}, "trials"),
            ({"master_seed": -1}, "master_seed"),
            ({"big_n": [16]}, "big_n only applies"),
            ({"generator": {"kind": "harmonic"}}, "require s"),
            ({"generator": {"kind": "harmonic", "s": 2, "frequencies": [0.1]}}, "generator.frequencies"),
            ({"generator": {"kind": "csv"}}, "require path"),
            ({"generator": {"kind": "generalized"}}, "spec and coefficients"),
            ({"estimator": {"kind": "fit"}}, "require config"),
            ({"estimator": {"kind": "composite", "s": 1}}, "requires big_n"),
            ({"estimator": {"kind": "composite"}, "big_n": [8]}, "requires s"),
            ({"estimator": {"kind": "composite", "s": 1, "c_ratio": 0}, "big_n": [8]}, "c_ratio"),
            ({"generator": {"kind": "csv", "path": "x.csv"}, "oracle": True}, "known subspace"),
        ],
    )
    def test_invalid(self, overrides, message):
        with pytest.raises(ConfigurationError, match=message):
            scenario_from_dict(ScenarioDocumentFactory(**overrides))

    def test_oracle_needs_single_filter(self):
        with pytest.raises(ConfigurationError, match="single-filter"):
            scenario_from_dict(composite_document(oracle=True))


class TestRunScenario:
    def test_noiseless_fit(self):
        report = run_scenario(scenario_from_dict(ScenarioDocumentFactory(sigmas=[0.0])))
        assert report["estimator"] == "fit"
        assert report["scenario"]["name"] == "smoke"
        [case] = report["cases"]
        assert case["sigma"] == 0.0
        assert case["N"] is None
        assert case["case_seed"] == derive_seed(7, 0)
        assert case["l2_loss"]["max"] <= 1e-4

    def test_one_case_per_grid_point(self):
        report = run_scenario(scenario_from_dict(ScenarioDocumentFactory(sigmas=[0.0, 0.5, 1.0])))
        assert [case["sigma"] for case in report["cases"]] == [0.0, 0.5, 1.0]
        assert [case["case_seed"] for case in report["cases"]] == [derive_seed(7, k) for k in range(3)]

    def test_threads_give_identical_reports(self):
        document = ScenarioDocumentFactory(
            generator={"kind": "harmonic", "s": 2, "min_separation": 0.3},
            sigmas=[0.5, 1.0],
            trials=5,
            keep_trials=True,
        )
        serial = run_scenario(scenario_from_dict(document), threads=1)
        threaded = run_scenario(scenario_from_dict(document), threads=8)
        assert dumps(serial) == dumps(threaded)

    def test_penalized_uses_case_sigma(self):
        document = ScenarioDocumentFactory(
            estimator={"kind": "fit", "config": {"m": 3, "n": 3, "mode": "penalized", "sigma": 1.0}},
            sigmas=[0.25],
        )
        [case] = run_scenario(scenario_from_dict(document))["cases"]
        assert case["config"]["estimator"]["sigma"] == 0.25

    def test_oracle_case(self):
        document = oracle_document(sigmas=[0.5])
        [case] = run_scenario(scenario_from_dict(document))["cases"]
        assert case["oracle"]["kind"] == "feasible"
        assert case["oracle"]["ratio"]["median"] > 0

    def test_composite_grid(self):
        report = run_scenario(scenario_from_dict(composite_document(sigmas=[0.0])))
        assert report["s"] == 1
        assert [case["N"] for case in report["cases"]] == [8, 12]
        for case in report["cases"]:
            assert case["l2_loss"]["max"] <= 1e-4

    def test_signal_file(self, tmp_path):
        path = tmp_path / "signal.csv"
        with path.open("w", encoding="utf-8", newline="") as stream:
            write_signal_csv(Signal(-8, np.full(17, 2.0 + 0j)), stream)
        document = ScenarioDocumentFactory(generator={"kind": "csv", "path": str(path)})
        [case] = run_scenario(scenario_from_dict(document))["cases"]
        assert case["l2_loss"]["max"] <= 1e-4

    def test_signal_file_too_short(self, tmp_path):
        path = tmp_path / "signal.csv"
        with path.open("w", encoding="utf-8", newline="") as stream:
            write_signal_csv(Signal(-2, np.ones(5)), stream)
        document = ScenarioDocumentFactory(generator={"kind": "csv", "path": str(path)})
        with pytest.raises(DataError):
            run_scenario(scenario_from_dict(document))

    def test_generalized_signal(self):
        document = ScenarioDocumentFactory(
            generator={
                "kind": "generalized",
                "spec": {"modes": [{"omega": 0.0, "mult": 2}]},
                "coefficients": [[[1.0, 0.0], [0.1, 0.0]]],
            },
            estimator={"kind": "fit", "config": {"m": 4, "n": 4, "rho_bar": 4.0}},
            sigmas=[0.1],
        )
        [case] = run_scenario(scenario_from_dict(document))["cases"]
        assert case["failed"] == 0


class TestReportCurves:
    def test_fit_rows(self):
        report = run_scenario(scenario_from_dict(ScenarioDocumentFactory(sigmas=[0.0, 1.0])))
        rows = report_curves(report)
        assert len(rows) == 2
        assert all(tuple(row) == CURVE_COLUMNS for row in rows)
        assert all(row["rate"] is None for row in rows)
        assert all(row["oracle_ratio_median"] is None for row in rows)

    def test_composite_rows_carry_rate(self):
        report = run_scenario(scenario_from_dict(composite_document(sigmas=[1.0])))
        rows = report_curves(report)
        assert [row["N"] for row in rows] == [8, 12]
        assert rows[0]["rate"] > rows[1]["rate"] > 0

    def test_oracle_rows_carry_ratio(self):
        report = run_scenario(scenario_from_dict(oracle_document(sigmas=[1.0])))
        assert report_curves(report)[0]["oracle_ratio_median"] > 0
