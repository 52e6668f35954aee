import uuid

from django.db import models
from django.utils.translation import gettext_lazy as _
from django_extensions.db.models import TimeStampedModel

from shift_denoise.global_data.enm import RunStatus


class SimulationRun(TimeStampedModel):
    """
    One execution of a simulation scenario, inline or on a Celery worker
    """

    id = models.UUIDField(
        primary_key=True,
        default=uuid.uuid4,
        editable=False,
        help_text=_("Unique identifier for this run."),
    )
    status = models.CharField(
        max_length=20,
        choices=RunStatus.choices,
        default=RunStatus.PENDING,
        help_text=_("Execution status"),
    )
    scenario = models.JSONField(help_text=_("Validated scenario document"))
    master_seed = models.BigIntegerField(help_text=_("Master seed of the trial streams"))
    threads = models.PositiveSmallIntegerField(
        blank=True,
        null=True,
        help_text=_("Worker threads; empty for the configured default"),
    )
    report = models.JSONField(blank=True, null=True, help_text=_("Risk report once the run succeeded"))
    output_path = models.CharField(
        max_length=1024,
        blank=True,
        default="",
        help_text=_("File the report is written to"),
    )
    failed_trials = models.PositiveIntegerField(default=0, help_text=_("Trials excluded from the statistics"))
    error = models.TextField(blank=True, default="", help_text=_("Failure message of a failed run"))
    metadata = models.JSONField(
        default=dict,
        blank=True,
        help_text=_("Optional extra metadata stored as JSON."),
    )

    class Meta:
        verbose_name = _("Simulation Run")
        verbose_name_plural = _("Simulation Runs")
        ordering = ["-created"]

    def __str__(self):
        name = self.scenario.get("name", "scenario") if isinstance(self.scenario, dict) else "scenario"
        return f"{name} ({self.status})"

    def start(self):
        self.status = RunStatus.RUNNING
        self.save(update_fields=["status", "modified"])

    def succeed(self, report):
        self.status = RunStatus.SUCCEEDED
        self.report = report
        self.failed_trials = sum(case.get("failed", 0) for case in report.get("cases", []))
        self.save(update_fields=["status", "report", "failed_trials", "modified"])

    def fail(self, message):
        self.status = RunStatus.FAILED
        self.error = message
        self.save(update_fields=["status", "error", "modified"])
