from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class ConvOperatorsConfig(AppConfig):
    name = "shift_denoise.conv_operators"
    verbose_name = _("Convolution Operators")
