import logging

from shift_denoise.cli.utils import LibraryCommand
from shift_denoise.cli.utils import load_json
from shift_denoise.cli.utils import require_file
from shift_denoise.cli.utils import require_output
from shift_denoise.estimators.api.serializers.estimator_serializers import filter_to_dict
from shift_denoise.estimators.config import EstimatorConfig
from shift_denoise.global_data.enm import OracleKind
from shift_denoise.global_data.exceptions import ConfigurationError
from shift_denoise.oracles.api.serializers.subspace_serializers import spec_from_dict
from shift_denoise.oracles.constructions import extrapolating_filter
from shift_denoise.oracles.constructions import feasible_oracle
from shift_denoise.oracles.constructions import interpolating_filter
from shift_denoise.oracles.constructions import predictive_filter_separated
from shift_denoise.oracles.constructions import predictive_filter_unit_roots
from shift_denoise.oracles.constructions import required_rho_bar

logger = logging.getLogger(__name__)


def build_oracle(spec, kind: OracleKind, m: int, h: int | None):
    if kind == OracleKind.INTERP:
        return interpolating_filter(spec, m) if h is None else extrapolating_filter(spec, m, h)
    if h is not None:
        msg = f"--h only applies to --kind {OracleKind.INTERP} and {OracleKind.SQUARE}"
        raise ConfigurationError(msg)
    if kind == OracleKind.SEPARATED:
        if not spec.is_unit_modulus or any(k > 1 for k in spec.multiplicities):
            msg = "the separated-frequency filter needs simple unit-modulus modes"
            raise ConfigurationError(msg)
        return predictive_filter_separated(spec.frequencies, m)
    return predictive_filter_unit_roots(spec, m)


class Command(LibraryCommand):
    help = "Construct an oracle filter reproducing a known shift-invariant subspace"

    def add_arguments(self, parser):
        parser.add_argument("--spec", required=True, help="Subspace JSON: modes or polynomial coefficients")
        parser.add_argument(
            "--kind",
            choices=OracleKind.values,
            default=OracleKind.INTERP,
            help="interp: least-norm filter; separated/unitroots: one-sided constructions; "
            "square: autoconvolution of two half-width filters",
        )
        parser.add_argument("--m", type=int, required=True, help="Filter bandwidth")
        parser.add_argument("--h", type=int, help="Prediction horizon (one-sided filter on {h, ..., h+m})")
        parser.add_argument("--output", required=True, help="Filter JSON to write")

    def run(self, **options):
        require_file(options["spec"], "subspace file")
        output = require_output(options["output"])
        spec = spec_from_dict(load_json(options["spec"], "subspace"))
        kind = OracleKind(options["kind"])
        m, h = options["m"], options["h"]
        if m < 1:
            msg = f"--m must be at least 1, got {m}"
            raise ConfigurationError(msg)

        if kind == OracleKind.SQUARE:
            # only the geometry of the configuration is read
            phi = feasible_oracle(spec, EstimatorConfig(m=m, n=0, h=h, rho_bar=1.0))
        else:
            phi = build_oracle(spec, kind, m, h)
        phi = phi.with_metadata(rho_bar_required=required_rho_bar(phi), l2_norm=phi.l2_norm())
        logger.info("%s oracle for s=%d on %s", kind, spec.s, phi.support)
        self.write_json(filter_to_dict(phi), output)
        self.stdout.write(f"required rho_bar {phi.metadata['rho_bar_required']:.6g}")
