import logging

from shift_denoise.cli.utils import LibraryCommand
from shift_denoise.cli.utils import load_json
from shift_denoise.cli.utils import read_signal
from shift_denoise.cli.utils import require_file
from shift_denoise.cli.utils import require_output
from shift_denoise.estimators.api.serializers.estimator_serializers import config_from_dict
from shift_denoise.estimators.api.serializers.estimator_serializers import filter_from_dict
from shift_denoise.estimators.blockwise import blockwise_denoise
from shift_denoise.estimators.composite import CompositeKnobs
from shift_denoise.estimators.composite import denoise_full_composite
from shift_denoise.estimators.fitting import estimate
from shift_denoise.estimators.fitting import fit
from shift_denoise.global_data.enm import DenoiseMode
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.global_data.exceptions import DataError
from shift_denoise.signal_core.sequences import Domain

logger = logging.getLogger(__name__)


def filter_domain(y, phi) -> Domain:
    """Indices where every tap of ``phi`` sees an observation."""
    support = phi.support
    first, last = y.start + support.stop, y.stop + support.start
    if first > last:
        msg = f"a filter with support {support} needs more than {len(y)} observations"
        raise DataError(msg)
    return Domain.interval(first, last)


def composite_half_width(y) -> int:
    """Largest N with D_N inside the observed support."""
    big_n = min(-y.start, y.stop)
    if big_n < 1:
        msg = f"composite denoising needs observations around t=0, got support [{y.start}, {y.stop}]"
        raise DataError(msg)
    return big_n


class Command(LibraryCommand):
    help = "Denoise a signal with a given filter, a fitted filter, blockwise fits or the composite estimator"

    def add_arguments(self, parser):
        parser.add_argument("--input", required=True, help="Signal CSV with columns t,re,im")
        source = parser.add_mutually_exclusive_group()
        source.add_argument("--filter", help="Filter JSON to apply (filter mode)")
        source.add_argument("--config", help="Estimator configuration JSON to fit first")
        parser.add_argument(
            "--mode",
            choices=DenoiseMode.values,
            default=DenoiseMode.FILTER,
            help="filter: one filter; blockwise: one fit per block; composite: full recovery on D_N",
        )
        parser.add_argument("--s", type=int, help="Subspace dimension (composite mode)")
        parser.add_argument("--output", required=True, help="Signal CSV to write")

    def run(self, **options):
        mode = DenoiseMode(options["mode"])
        output = require_output(options["output"])
        for name in ("filter", "config"):
            if options[name]:
                require_file(options[name], f"{name} file")
        y = read_signal(options["input"])

        if mode == DenoiseMode.COMPOSITE:
            if options["s"] is None:
                msg = "composite mode requires --s"
                raise ConfigurationError(msg)
            solver = None
            if options["config"]:
                solver = config_from_dict(load_json(options["config"], "configuration")).solver
            big_n = composite_half_width(y)
            x_hat = denoise_full_composite(
                y,
                big_n,
                options["s"],
                knobs=CompositeKnobs.from_settings(),
                solver=solver,
            )
        elif mode == DenoiseMode.BLOCKWISE:
            if not options["config"]:
                msg = "blockwise mode requires --config"
                raise ConfigurationError(msg)
            x_hat = blockwise_denoise(y, config_from_dict(load_json(options["config"], "configuration")))
        elif options["filter"]:
            phi = filter_from_dict(load_json(options["filter"], "filter"))
            x_hat = estimate(phi, y, filter_domain(y, phi))
        elif options["config"]:
            cfg = config_from_dict(load_json(options["config"], "configuration"))
            x_hat = estimate(fit(y, cfg), y, cfg.estimation_domain())
        else:
            msg = "filter mode requires --filter or --config"
            raise ConfigurationError(msg)

        logger.info("denoised %d observations in %s mode", len(y), mode)
        self.write_signal(x_hat, output)
