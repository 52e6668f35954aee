import logging

from celery import shared_task

from shift_denoise.global_data.exceptions import ShiftDenoiseError
from shift_denoise.global_data.files import write_json
from shift_denoise.harness.api.serializers.scenario_serializers import scenario_from_dict
from shift_denoise.harness.models import SimulationRun
from shift_denoise.harness.scenarios import run_scenario

logger = logging.getLogger(__name__)


def execute_run(run: SimulationRun) -> dict:
    """Run the stored scenario of ``run`` and record the outcome on it."""
    run.start()
    try:
        scenario = scenario_from_dict(run.scenario).with_seed(run.master_seed)
        report = run_scenario(scenario, threads=run.threads)
        if run.output_path:
            write_json(report, run.output_path)
    except (ShiftDenoiseError, OSError) as exc:
        logger.exception("simulation run %s failed", run.pk)
        run.fail(str(exc))
        raise
    run.succeed(report)
    logger.info("simulation run %s finished, %d failed trials", run.pk, run.failed_trials)
    return report


@shared_task(bind=True)
def run_simulation(self, run_id):
    """
    Celery task evaluating a queued :class:`SimulationRun`.

    Args:
        run_id (str): primary key of the run

    Returns:
        str: the final status of the run
    """
    run = SimulationRun.objects.get(pk=run_id)
    run.metadata = {**run.metadata, "task_id": self.request.id}
    run.save(update_fields=["metadata", "modified"])
    execute_run(run)
    return run.status
