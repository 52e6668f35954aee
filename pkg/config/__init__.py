# shared_task in shift_denoise.harness.tasks binds to this app
from .celery_app import app as celery_app

__all__ = ("celery_app",)
