import uuid

import django_extensions.db.fields
from django.db import migrations
from django.db import models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="SimulationRun",
            fields=[
                ("created", django_extensions.db.fields.CreationDateTimeField(auto_now_add=True, verbose_name="created")),
                ("modified", django_extensions.db.fields.ModificationDateTimeField(auto_now=True, verbose_name="modified")),
                ("id", models.UUIDField(default=uuid.uuid4, editable=False, help_text="Unique identifier for this run.", primary_key=True, serialize=False)),
                ("status", models.CharField(choices=[("pending", "Pending"), ("running", "Running"), ("succeeded", "Succeeded"), ("failed", "Failed")], default="pending", help_text="Execution status", max_length=20)),
                ("scenario", models.JSONField(help_text="Validated scenario document")),
                ("master_seed", models.BigIntegerField(help_text="Master seed of the trial streams")),
                ("threads", models.PositiveSmallIntegerField(blank=True, help_text="Worker threads; empty for the configured default", null=True)),
                ("report", models.JSONField(blank=True, help_text="Risk report once the run succeeded", null=True)),
                ("output_path", models.CharField(blank=True, default="", help_text="File the report is written to", max_length=1024)),
                ("failed_trials", models.PositiveIntegerField(default=0, help_text="Trials excluded from the statistics")),
                ("error", models.TextField(blank=True, default="", help_text="Failure message of a failed run")),
                ("metadata", models.JSONField(blank=True, default=dict, help_text="Optional extra metadata stored as JSON.")),
            ],
            options={
                "verbose_name": "Simulation Run",
                "verbose_name_plural": "Simulation Runs",
                "ordering": ["-created"],
            },
        ),
    ]
