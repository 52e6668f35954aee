import json

import numpy as np
import pytest

from shift_denoise.signal_core.io import write_signal_csv
from shift_denoise.signal_core.sequences import Signal


@pytest.fixture
def json_file(tmp_path):
    """``json_file(name, data)`` writes ``data`` under tmp_path and returns the path as a string."""

    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def signal_file(tmp_path):
    """``signal_file(name, x)`` writes the signal as CSV and returns the path as a string."""

    def write(name, x: Signal):
        path = tmp_path / name
        with path.open("w", encoding="utf-8", newline="") as stream:
            write_signal_csv(x, stream)
        return str(path)

    return write


@pytest.fixture
def constant_signal():
    return Signal(-8, np.full(17, 1.5 - 0.5j))
