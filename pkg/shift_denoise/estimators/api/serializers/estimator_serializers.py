import numpy as np
from django.utils.translation import gettext_lazy as _
from rest_framework import serializers

from shift_denoise.estimators.config import EstimatorConfig
from shift_denoise.estimators.filters import Filter
from shift_denoise.global_data.enm import EstimatorMode
from shift_denoise.global_data.enm import FilterClass
from shift_denoise.global_data.validation import build
from shift_denoise.solvers.options import SolverOptions


class SolverOptionsSerializer(serializers.Serializer):
    max_iters = serializers.IntegerField(min_value=1, required=False)
    tol = serializers.FloatField(required=False)
    step_safety = serializers.FloatField(required=False)

    def validate_tol(self, value):
        if not value > 0:
            raise serializers.ValidationError(_("Tolerance must be positive."))
        return value

    def validate_step_safety(self, value):
        if not 0 < value <= 1:
            raise serializers.ValidationError(_("Step safety must lie in (0, 1]."))
        return value

    def create(self, validated_data):
        return SolverOptions.from_settings(**validated_data)


class EstimatorConfigSerializer(serializers.Serializer):
    """Reads ``{"m", "n", "h", "mode", "rho_bar", "lambda", "sigma", "solver"}``."""

    m = serializers.IntegerField(min_value=1)
    n = serializers.IntegerField(min_value=0)
    h = serializers.IntegerField(min_value=0, required=False, allow_null=True, default=None)
    mode = serializers.ChoiceField(choices=EstimatorMode.choices, default=EstimatorMode.CONSTRAINED)
    rho_bar = serializers.FloatField(required=False, allow_null=True, default=None)
    sigma = serializers.FloatField(required=False, allow_null=True, default=None)
    solver = SolverOptionsSerializer(required=False)

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.fields["lambda"] = serializers.FloatField(required=False, allow_null=True, default=None)

    def validate_rho_bar(self, value):
        if value is not None and value < 1:
            raise serializers.ValidationError(_("rho_bar must be at least 1."))
        return value

    def validate_sigma(self, value):
        if value is not None and value < 0:
            raise serializers.ValidationError(_("sigma must be non-negative."))
        return value

    def validate(self, data):
        if data["mode"] == EstimatorMode.CONSTRAINED and data.get("rho_bar") is None:
            raise serializers.ValidationError(_("Constrained mode requires rho_bar."))
        if data["mode"] == EstimatorMode.PENALIZED:
            if data.get("sigma") is None:
                raise serializers.ValidationError(_("Penalized mode requires sigma."))
            lam = data.get("lambda")
            if lam is not None and not lam > 0:
                raise serializers.ValidationError(_("lambda must be positive."))
        return data

    def create(self, validated_data):
        solver_data = validated_data.get("solver") or {}
        return EstimatorConfig(
            m=validated_data["m"],
            n=validated_data["n"],
            h=validated_data.get("h"),
            mode=validated_data["mode"],
            rho_bar=validated_data.get("rho_bar"),
            lam=validated_data.get("lambda"),
            sigma=validated_data.get("sigma"),
            solver=SolverOptions.from_settings(**solver_data),
        )


class FilterSerializer(serializers.Serializer):
    """JSON form of a :class:`Filter`; coefficients are ``[re, im]`` pairs over the support."""

    m = serializers.IntegerField(min_value=0)
    shift = serializers.IntegerField(default=0)
    coefficients = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(), min_length=2, max_length=2),
        min_length=1,
    )
    metadata = serializers.DictField(required=False, default=dict)

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.fields["class"] = serializers.ChoiceField(choices=FilterClass.choices)

    def validate(self, data):
        filter_class = FilterClass(data["class"])
        if filter_class == FilterClass.BILATERAL and data["shift"] != 0:
            raise serializers.ValidationError(_("Bilateral filters have shift 0."))
        expected = Filter.support_for(filter_class, data["m"], data["shift"]).length
        if len(data["coefficients"]) != expected:
            raise serializers.ValidationError(
                _("Expected %(count)d coefficients for this class.") % {"count": expected},
            )
        return data

    def create(self, validated_data):
        pairs = np.asarray(validated_data["coefficients"], dtype=np.float64)
        return Filter(
            FilterClass(validated_data["class"]),
            validated_data["m"],
            pairs[:, 0] + 1j * pairs[:, 1],
            validated_data["shift"],
            dict(validated_data.get("metadata") or {}),
        )

    def to_representation(self, instance):
        return {
            "class": str(instance.filter_class),
            "m": instance.m,
            "shift": instance.h,
            "coefficients": [[float(c.real), float(c.imag)] for c in instance.coefficients],
            "metadata": dict(instance.metadata),
        }


def filter_to_dict(phi: Filter) -> dict:
    return FilterSerializer(phi).data


def filter_from_dict(data: dict) -> Filter:
    return build(FilterSerializer, data)


def config_from_dict(data: dict) -> EstimatorConfig:
    return build(EstimatorConfigSerializer, data)
