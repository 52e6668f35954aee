from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class SignalCoreConfig(AppConfig):
    name = "shift_denoise.signal_core"
    verbose_name = _("Signal Core")
