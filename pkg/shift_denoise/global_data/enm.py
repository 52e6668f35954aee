from django.db import models
from django.utils.translation import gettext_lazy as _


class FilterClass(models.TextChoices):
    BILATERAL = "bilateral", _("Bilateral")
    SHIFTED = "shifted", _("Shifted")


class EstimatorMode(models.TextChoices):
    CONSTRAINED = "constrained", _("Constrained")
    PENALIZED = "penalized", _("Penalized")


class Side(models.TextChoices):
    BILATERAL = "bilateral", _("Bilateral")
    UNILATERAL = "unilateral", _("Unilateral")


class NormSpace(models.TextChoices):
    TIME = "time", _("Time")
    FOURIER = "fourier", _("Fourier")


class DenoiseMode(models.TextChoices):
    FILTER = "filter", _("Apply Filter")
    BLOCKWISE = "blockwise", _("Blockwise")
    COMPOSITE = "composite", _("Composite")


class OracleKind(models.TextChoices):
    INTERP = "interp", _("Interpolating")
    SEPARATED = "separated", _("Separated Frequencies")
    UNITROOTS = "unitroots", _("Unit Roots")
    SQUARE = "square", _("Squared Interpolating")


class GeneratorKind(models.TextChoices):
    HARMONIC = "harmonic", _("Harmonic Oscillation")
    GENERALIZED = "generalized", _("Generalized Harmonic Oscillation")
    CSV = "csv", _("Signal File")


class EstimatorKind(models.TextChoices):
    FIT = "fit", _("Single Filter")
    COMPOSITE = "composite", _("Composite")


class RunStatus(models.TextChoices):
    PENDING = "pending", _("Pending")
    RUNNING = "running", _("Running")
    SUCCEEDED = "succeeded", _("Succeeded")
    FAILED = "failed", _("Failed")
