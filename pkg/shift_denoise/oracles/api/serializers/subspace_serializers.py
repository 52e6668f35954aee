import math

from django.utils.translation import gettext_lazy as _
from rest_framework import serializers

from shift_denoise.global_data.validation import build
from shift_denoise.oracles.subspace import SubspaceSpec


class ModeSerializer(serializers.Serializer):
    omega = serializers.FloatField()
    mult = serializers.IntegerField(min_value=1, default=1)

    def validate_omega(self, value):
        if not 0 <= value < 2 * math.pi:
            raise serializers.ValidationError(_("omega must lie in [0, 2π)."))
        return value


class SubspaceSpecSerializer(serializers.Serializer):
    """``{"modes": [{"omega": w, "mult": k}, ...]}`` or ``{"poly": [[re, im], ...]}``."""

    modes = ModeSerializer(many=True, required=False)
    poly = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(), min_length=2, max_length=2),
        required=False,
        min_length=2,
    )

    def validate_poly(self, value):
        if value[0] != [1.0, 0.0]:
            raise serializers.ValidationError(_("p(0) must equal 1."))
        return value

    def validate(self, data):
        if ("modes" in data) == ("poly" in data):
            raise serializers.ValidationError(_("Give exactly one of modes or poly."))
        if "modes" in data and not data["modes"]:
            raise serializers.ValidationError(_("At least one mode is required."))
        return data

    def create(self, validated_data):
        if "modes" in validated_data:
            return SubspaceSpec.from_modes((mode["omega"], mode["mult"]) for mode in validated_data["modes"])
        return SubspaceSpec.from_poly([complex(re, im) for re, im in validated_data["poly"]])

    def to_representation(self, instance):
        if not instance.is_unit_modulus:
            return {"poly": [[float(c.real), float(c.imag)] for c in instance.poly]}
        return {"modes": [{"omega": omega, "mult": mult} for omega, mult in instance.modes()]}


def spec_from_dict(data: dict) -> SubspaceSpec:
    return build(SubspaceSpecSerializer, data)
