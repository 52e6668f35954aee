from __future__ import annotations

from typing import Any

from shift_denoise.global_data.exceptions import ConfigurationError


def flatten_errors(errors: Any, prefix: str = "") -> list[str]:
    """Turn a nested serializer ``errors`` structure into ``field: message`` lines."""
    if isinstance(errors, dict):
        lines = []
        for key, value in errors.items():
            name = key if key != "non_field_errors" else ""
            lines += flatten_errors(value, f"{prefix}.{name}" if prefix and name else prefix or name)
        return lines
    if isinstance(errors, list):
        lines = []
        for item in errors:
            lines += flatten_errors(item, prefix)
        return lines
    return [f"{prefix}: {errors}" if prefix else str(errors)]


def build(serializer_class, data: Any, **kwargs):
    """Validate ``data`` and return the object the serializer creates."""
    serializer = serializer_class(data=data, **kwargs)
    if not serializer.is_valid():
        msg = "; ".join(flatten_errors(serializer.errors))
        raise ConfigurationError(msg)
    return serializer.save()
