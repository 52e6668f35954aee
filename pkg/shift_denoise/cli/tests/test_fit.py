import json
from io import StringIO

import numpy as np
import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from shift_denoise.estimators.api.serializers.estimator_serializers import filter_from_dict
from shift_denoise.estimators.fitting import estimate
from shift_denoise.signal_core.sequences import Domain

CONFIG = {"m": 4, "n": 4, "rho_bar": 2.0, "solver": {"max_iters": 20000, "tol": 1e-10}}


def run_fit(*args):
    out = StringIO()
    call_command("fit", *args, stdout=out, stderr=StringIO())
    return out.getvalue()


def test_constant_signal(tmp_path, json_file, signal_file, constant_signal):
    output = tmp_path / "filter.json"
    stdout = run_fit(
        "--input",
        signal_file("y.csv", constant_signal),
        "--config",
        json_file("config.json", CONFIG),
        "--output",
        str(output),
    )
    assert "Wrote" in stdout
    data = json.loads(output.read_text(encoding="utf-8"))
    assert data["class"] == "bilateral"
    assert data["m"] == 4
    assert len(data["coefficients"]) == 9
    assert data["metadata"]["converged"] is True

    phi = filter_from_dict(data)
    fitted = estimate(phi, constant_signal, Domain.symmetric(4))
    np.testing.assert_allclose(fitted.values, constant_signal.on(Domain.symmetric(4)), atol=1e-6)


def test_output_is_reproducible(tmp_path, json_file, signal_file, constant_signal):
    args = ["--input", signal_file("y.csv", constant_signal), "--config", json_file("config.json", CONFIG)]
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    run_fit(*args, "--output", str(first))
    run_fit(*args, "--output", str(second))
    assert first.read_bytes() == second.read_bytes()


def test_malformed_csv(tmp_path, json_file):
    path = tmp_path / "y.csv"
    path.write_text("t,re,im\n0,1,0\n1,abc,0\n", encoding="utf-8")
    with pytest.raises(CommandError, match="line 3") as exc:
        run_fit("--input", str(path), "--config", json_file("config.json", CONFIG), "--output", str(tmp_path / "f"))
    assert exc.value.returncode == 3


def test_invalid_radius(tmp_path, json_file, signal_file, constant_signal):
    config = json_file("config.json", {**CONFIG, "rho_bar": 0.5})
    with pytest.raises(CommandError, match="rho_bar") as exc:
        run_fit("--input", signal_file("y.csv", constant_signal), "--config", config, "--output", str(tmp_path / "f"))
    assert exc.value.returncode == 2


def test_short_signal(tmp_path, json_file, signal_file, constant_signal):
    config = json_file("config.json", {**CONFIG, "m": 8})
    with pytest.raises(CommandError) as exc:
        run_fit("--input", signal_file("y.csv", constant_signal), "--config", config, "--output", str(tmp_path / "f"))
    assert exc.value.returncode == 3


def test_missing_output_directory(tmp_path, json_file, signal_file, constant_signal):
    with pytest.raises(CommandError, match="does not exist") as exc:
        run_fit(
            "--input",
            signal_file("y.csv", constant_signal),
            "--config",
            json_file("config.json", CONFIG),
            "--output",
            str(tmp_path / "absent" / "filter.json"),
        )
    assert exc.value.returncode == 3


def test_not_converged_still_writes(tmp_path, json_file, signal_file, random_signal):
    output = tmp_path / "filter.json"
    config = json_file("config.json", {**CONFIG, "solver": {"max_iters": 1}})
    err = StringIO()
    with pytest.raises(CommandError, match="did not converge") as exc:
        call_command(
            "fit",
            "--input",
            signal_file("y.csv", random_signal(-8, 17)),
            "--config",
            config,
            "--output",
            str(output),
            stdout=StringIO(),
            stderr=err,
        )
    assert exc.value.returncode == 4
    assert json.loads(output.read_text(encoding="utf-8"))["metadata"]["converged"] is False
    assert "ConvergenceWarning" in err.getvalue()
