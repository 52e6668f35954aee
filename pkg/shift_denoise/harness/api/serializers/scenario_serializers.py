from django.utils.translation import gettext_lazy as _
from rest_framework import serializers

from shift_denoise.estimators.api.serializers.estimator_serializers import EstimatorConfigSerializer
from shift_denoise.estimators.api.serializers.estimator_serializers import SolverOptionsSerializer
from shift_denoise.estimators.composite import CompositeKnobs
from shift_denoise.global_data.enm import EstimatorKind
from shift_denoise.global_data.enm import GeneratorKind
from shift_denoise.global_data.validation import build
from shift_denoise.harness.scenarios import Scenario
from shift_denoise.harness.scenarios import SignalGenerator
from shift_denoise.oracles.api.serializers.subspace_serializers import SubspaceSpecSerializer


def _complex(pair):
    return complex(pair[0], pair[1])


class GeneratorSerializer(serializers.Serializer):
    """
    ``harmonic``: s, optional frequencies, amplitudes, min_separation, seed.
    ``generalized``: spec and one coefficient list per mode.
    ``csv``: path of a signal file.
    """

    kind = serializers.ChoiceField(choices=GeneratorKind.choices)
    s = serializers.IntegerField(min_value=1, required=False)
    frequencies = serializers.ListField(child=serializers.FloatField(), required=False, min_length=1)
    amplitudes = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(), min_length=2, max_length=2),
        required=False,
        min_length=1,
    )
    min_separation = serializers.FloatField(min_value=0, default=0.0)
    seed = serializers.IntegerField(min_value=0, required=False)
    spec = SubspaceSpecSerializer(required=False)
    coefficients = serializers.ListField(
        child=serializers.ListField(
            child=serializers.ListField(child=serializers.FloatField(), min_length=2, max_length=2),
        ),
        required=False,
    )
    path = serializers.CharField(required=False)

    def validate(self, data):
        kind = data["kind"]
        if kind == GeneratorKind.HARMONIC:
            if "s" not in data:
                raise serializers.ValidationError(_("Harmonic generators require s."))
            for name in ("frequencies", "amplitudes"):
                if name in data and len(data[name]) != data["s"]:
                    raise serializers.ValidationError(
                        {name: _("Expected %(count)d entries.") % {"count": data["s"]}},
                    )
        elif kind == GeneratorKind.GENERALIZED:
            if "spec" not in data or "coefficients" not in data:
                raise serializers.ValidationError(_("Generalized generators require spec and coefficients."))
        elif "path" not in data:
            raise serializers.ValidationError(_("File generators require path."))
        return data

    def create(self, validated_data):
        spec = None
        if "spec" in validated_data:
            spec = SubspaceSpecSerializer().create(validated_data["spec"])
        coefficients = None
        if "coefficients" in validated_data:
            coefficients = tuple(tuple(_complex(p) for p in poly) for poly in validated_data["coefficients"])
        frequencies = validated_data.get("frequencies")
        amplitudes = validated_data.get("amplitudes")
        return SignalGenerator(
            kind=GeneratorKind(validated_data["kind"]),
            s=validated_data.get("s"),
            frequencies=tuple(frequencies) if frequencies else None,
            amplitudes=tuple(_complex(p) for p in amplitudes) if amplitudes else None,
            min_separation=validated_data["min_separation"],
            seed=validated_data.get("seed"),
            spec=spec,
            coefficients=coefficients,
            path=validated_data.get("path"),
        )


class EstimatorSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=EstimatorKind.choices, default=EstimatorKind.FIT)
    config = EstimatorConfigSerializer(required=False)
    s = serializers.IntegerField(min_value=1, required=False)
    c_ratio = serializers.FloatField(required=False)
    rho_bar_edge_scale = serializers.FloatField(required=False)
    solver = SolverOptionsSerializer(required=False)

    def validate_c_ratio(self, value):
        if not value > 0:
            raise serializers.ValidationError(_("c_ratio must be positive."))
        return value

    def validate_rho_bar_edge_scale(self, value):
        if not value > 0:
            raise serializers.ValidationError(_("rho_bar_edge_scale must be positive."))
        return value

    def validate(self, data):
        if data["kind"] == EstimatorKind.FIT and "config" not in data:
            raise serializers.ValidationError(_("Single-filter estimators require config."))
        if data["kind"] == EstimatorKind.COMPOSITE and "s" not in data:
            raise serializers.ValidationError(_("The composite estimator requires s."))
        return data


class ScenarioSerializer(serializers.Serializer):
    """Simulation scenario document; ``create`` returns a :class:`Scenario`."""

    name = serializers.CharField(default="scenario")
    generator = GeneratorSerializer()
    estimator = EstimatorSerializer()
    sigmas = serializers.ListField(child=serializers.FloatField(min_value=0), min_length=1)
    big_n = serializers.ListField(child=serializers.IntegerField(min_value=2), required=False, min_length=1)
    trials = serializers.IntegerField(min_value=1)
    master_seed = serializers.IntegerField(min_value=0, max_value=2**63 - 1)
    oracle = serializers.BooleanField(default=False)
    keep_trials = serializers.BooleanField(default=False)

    def validate(self, data):
        kind = data["estimator"]["kind"]
        if kind == EstimatorKind.COMPOSITE and "big_n" not in data:
            raise serializers.ValidationError(_("The composite estimator requires big_n."))
        if kind == EstimatorKind.FIT and "big_n" in data:
            raise serializers.ValidationError(_("big_n only applies to the composite estimator."))
        if data["oracle"]:
            if kind != EstimatorKind.FIT:
                raise serializers.ValidationError(_("Oracle comparison applies to single-filter estimators."))
            if data["generator"]["kind"] == GeneratorKind.CSV:
                raise serializers.ValidationError(_("Oracle comparison needs a generator with a known subspace."))
        return data

    def create(self, validated_data):
        estimator = validated_data["estimator"]
        kind = EstimatorKind(estimator["kind"])
        config = knobs = solver = None
        if kind == EstimatorKind.FIT:
            config = EstimatorConfigSerializer().create(estimator["config"])
        else:
            defaults = CompositeKnobs.from_settings()
            knobs = CompositeKnobs(
                c_ratio=estimator.get("c_ratio", defaults.c_ratio),
                rho_bar_edge_scale=estimator.get("rho_bar_edge_scale", defaults.rho_bar_edge_scale),
            )
            solver = SolverOptionsSerializer().create(estimator.get("solver") or {})
        return Scenario(
            name=validated_data["name"],
            generator=GeneratorSerializer().create(validated_data["generator"]),
            estimator=kind,
            sigmas=tuple(validated_data["sigmas"]),
            trials=validated_data["trials"],
            master_seed=validated_data["master_seed"],
            config=config,
            s=estimator.get("s"),
            knobs=knobs,
            solver=solver,
            big_n=tuple(validated_data.get("big_n", ())),
            oracle=validated_data["oracle"],
            keep_trials=validated_data["keep_trials"],
            document=dict(self.initial_data),
        )


def scenario_from_dict(data: dict) -> Scenario:
    return build(ScenarioSerializer, data)
