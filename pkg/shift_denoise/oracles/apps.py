from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class OraclesConfig(AppConfig):
    name = "shift_denoise.oracles"
    verbose_name = _("Oracles")
