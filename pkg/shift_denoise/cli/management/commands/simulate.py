import logging
from dataclasses import replace

from django.conf import settings

from shift_denoise.cli.utils import LibraryCommand
from shift_denoise.cli.utils import load_json
from shift_denoise.cli.utils import require_file
from shift_denoise.cli.utils import require_output
from shift_denoise.cli.utils import write_rows
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.harness.api.serializers.scenario_serializers import scenario_from_dict
from shift_denoise.harness.models import SimulationRun
from shift_denoise.harness.risk import resolve_threads
from shift_denoise.harness.scenarios import run_scenario
from shift_denoise.harness.tasks import run_simulation

logger = logging.getLogger(__name__)

TRIAL_COLUMNS = ("case", "sigma", "N", "trial", "seed", "l2_loss")


def trial_rows(report):
    """One row per trial of every case; failed trials have an empty loss."""
    for k, case in enumerate(report["cases"]):
        seeds = case["seeds"]["per_trial"]
        for index, (seed, loss) in enumerate(zip(seeds, case["losses"], strict=True)):
            yield {
                "case": k,
                "sigma": case["sigma"],
                "N": case["N"],
                "trial": index,
                "seed": seed,
                "l2_loss": loss,
            }


class Command(LibraryCommand):
    help = "Run a Monte Carlo simulation scenario and write its risk report"

    def add_arguments(self, parser):
        parser.add_argument("--scenario", required=True, help="Scenario JSON")
        parser.add_argument("--output", required=True, help="Report JSON to write")
        parser.add_argument("--csv", help="Also write one row per trial to this CSV")
        parser.add_argument("--seed", type=int, help="Override the scenario's master_seed")
        parser.add_argument(
            "--threads",
            type=int,
            default=None,
            help=f"Worker threads (default SHIFTDENOISE_THREADS={settings.SHIFTDENOISE_THREADS})",
        )
        parser.add_argument(
            "--async",
            action="store_true",
            dest="use_async",
            help="Queue the scenario on Celery instead of running it here",
        )

    def run(self, **options):
        require_file(options["scenario"], "scenario file")
        output = require_output(options["output"])
        csv_path = require_output(options["csv"]) if options["csv"] else None
        threads = resolve_threads(options["threads"])
        document = load_json(options["scenario"], "scenario")
        scenario = scenario_from_dict(document)
        if options["seed"] is not None:
            if options["seed"] < 0:
                msg = f"--seed must be non-negative, got {options['seed']}"
                raise ConfigurationError(msg)
            scenario = scenario.with_seed(options["seed"])

        if options["use_async"]:
            if csv_path:
                msg = "--csv is not available with --async; keep_trials in the scenario stores the losses"
                raise ConfigurationError(msg)
            run = SimulationRun.objects.create(
                scenario=scenario.document,
                master_seed=scenario.master_seed,
                threads=threads,
                output_path=str(output.resolve()),
            )
            task = run_simulation.delay(str(run.pk))
            self.stdout.write(self.style.SUCCESS(f"Queued simulation run {run.pk} (task {task.id})"))
            return

        if csv_path:
            scenario = replace(scenario, keep_trials=True)
        report = run_scenario(scenario, threads=threads)
        self.write_json(report, output)
        if csv_path:
            write_rows(trial_rows(report), TRIAL_COLUMNS, csv_path)
            self.stdout.write(self.style.SUCCESS(f"Wrote {csv_path}"))
        failed = sum(case["failed"] for case in report["cases"])
        if failed:
            self.stderr.write(self.style.WARNING(f"{failed} trials failed and were excluded"))
