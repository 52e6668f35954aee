import logging

from django.core.exceptions import ValidationError

from shift_denoise.cli.utils import LibraryCommand
from shift_denoise.cli.utils import load_json
from shift_denoise.cli.utils import require_file
from shift_denoise.cli.utils import require_output
from shift_denoise.cli.utils import write_rows
from shift_denoise.global_data.enm import RunStatus
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.global_data.exceptions import DataError
from shift_denoise.harness.models import SimulationRun
from shift_denoise.harness.scenarios import CURVE_COLUMNS
from shift_denoise.harness.scenarios import report_curves

logger = logging.getLogger(__name__)


def stored_report(run_id: str) -> dict:
    try:
        run = SimulationRun.objects.get(pk=run_id)
    except (SimulationRun.DoesNotExist, ValidationError):
        msg = f"no simulation run {run_id}"
        raise ConfigurationError(msg) from None
    if run.status != RunStatus.SUCCEEDED:
        msg = f"simulation run {run_id} is {run.status}, not {RunStatus.SUCCEEDED}"
        raise DataError(msg)
    return run.report


class Command(LibraryCommand):
    help = "Turn a risk report into plot-ready loss curves (CSV)"

    def add_arguments(self, parser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument("--input", help="Report JSON written by simulate")
        source.add_argument("--run", help="Id of a stored simulation run")
        parser.add_argument("--output", required=True, help="Curve CSV to write")

    def run(self, **options):
        output = require_output(options["output"])
        if options["input"]:
            report = load_json(require_file(options["input"], "report file"), "report")
        else:
            report = stored_report(options["run"])
        if not isinstance(report, dict) or "cases" not in report:
            msg = "the report has no cases"
            raise DataError(msg)

        try:
            rows = report_curves(report)
        except (KeyError, TypeError) as exc:
            msg = f"malformed report ({exc!r})"
            raise DataError(msg) from exc
        write_rows(rows, CURVE_COLUMNS, output)
        self.stdout.write(self.style.SUCCESS(f"Wrote {output} ({len(rows)} rows)"))
