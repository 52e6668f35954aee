from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class HarnessConfig(AppConfig):
    name = "shift_denoise.harness"
    verbose_name = _("Simulation Harness")
