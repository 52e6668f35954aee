from .base import *  # noqa: F403
from .base import DATABASES
from .base import LOGGING
from .base import env

# GENERAL
# ------------------------------------------------------------------------------
# https://docs.djangoproject.com/en/dev/ref/settings/#secret-key
SECRET_KEY = env("DJANGO_SECRET_KEY")

# DATABASES
# ------------------------------------------------------------------------------
DATABASES["default"]["CONN_MAX_AGE"] = env.int("CONN_MAX_AGE", default=60)

# LOGGING
# ------------------------------------------------------------------------------
# Workers running long scenarios report progress at INFO; numerical
# warnings (non-convergence, weak separation) stay visible.
LOGGING["loggers"] = {
    "shift_denoise": {"level": env("SHIFTDENOISE_LOG_LEVEL", default="INFO")},
    "celery": {"level": "WARNING"},
}
