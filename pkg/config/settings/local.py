from .base import *  # noqa: F403
from .base import LOGGING
from .base import env

# GENERAL
# ------------------------------------------------------------------------------
# https://docs.djangoproject.com/en/dev/ref/settings/#debug
DEBUG = env.bool("DJANGO_DEBUG", default=True)
# https://docs.djangoproject.com/en/dev/ref/settings/#secret-key
SECRET_KEY = env(
    "DJANGO_SECRET_KEY",
    default="Jf6tQw2Lr8Nc0Vx4Hy7Pb1Zm5Ks9Ge3Ua6Wd2Ti8Ro4Yn0Cl7Bh1Xq5Mj9Sv3Fp2Ek",
)

# CELERY
# ------------------------------------------------------------------------------
# https://docs.celeryq.dev/en/stable/userguide/configuration.html#task-eager-propagates
CELERY_TASK_EAGER_PROPAGATES = True

# LOGGING
# ------------------------------------------------------------------------------
LOGGING["loggers"] = {
    "shift_denoise": {"level": env("SHIFTDENOISE_LOG_LEVEL", default="DEBUG")},
}
