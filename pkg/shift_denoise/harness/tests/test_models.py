import pytest

from shift_denoise.global_data.enm import RunStatus
from shift_denoise.harness.models import SimulationRun
from shift_denoise.harness.tests.factories import SimulationRunFactory

pytestmark = pytest.mark.django_db


def test_simulation_run_str():
    run = SimulationRunFactory()
    assert str(run) == "smoke (pending)"


def test_defaults():
    run = SimulationRunFactory()
    assert run.status == RunStatus.PENDING
    assert run.threads is None
    assert run.report is None
    assert run.metadata == {}


def test_succeed_counts_failed_trials():
    run = SimulationRunFactory()
    run.start()
    assert SimulationRun.objects.get(pk=run.pk).status == RunStatus.RUNNING
    run.succeed({"cases": [{"failed": 2}, {"failed": 1}]})
    stored = SimulationRun.objects.get(pk=run.pk)
    assert stored.status == RunStatus.SUCCEEDED
    assert stored.failed_trials == 3


def test_fail_keeps_message():
    run = SimulationRunFactory()
    run.fail("solver exploded")
    stored = SimulationRun.objects.get(pk=run.pk)
    assert stored.status == RunStatus.FAILED
    assert stored.error == "solver exploded"
