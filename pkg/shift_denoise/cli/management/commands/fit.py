import logging

from shift_denoise.cli.utils import LibraryCommand
from shift_denoise.cli.utils import load_json
from shift_denoise.cli.utils import read_signal
from shift_denoise.cli.utils import require_file
from shift_denoise.cli.utils import require_output
from shift_denoise.estimators.api.serializers.estimator_serializers import config_from_dict
from shift_denoise.estimators.api.serializers.estimator_serializers import filter_to_dict
from shift_denoise.estimators.fitting import fit

logger = logging.getLogger(__name__)


class Command(LibraryCommand):
    help = "Fit an adaptive filter to a signal and write it as JSON"

    def add_arguments(self, parser):
        parser.add_argument("--input", required=True, help="Signal CSV with columns t,re,im")
        parser.add_argument("--config", required=True, help="Estimator configuration JSON")
        parser.add_argument("--output", required=True, help="Filter JSON to write")

    def run(self, **options):
        require_file(options["config"], "configuration file")
        output = require_output(options["output"])
        cfg = config_from_dict(load_json(options["config"], "configuration"))
        y = read_signal(options["input"])

        phi = fit(y, cfg)
        self.write_json(filter_to_dict(phi), output)
        self.stdout.write(
            f"{phi.filter_class} filter, m={phi.m}, shift={phi.h}: "
            f"objective {phi.metadata['objective']:.6g} after {phi.metadata['iterations']} iterations",
        )
