# ruff: noqa: PTH100
# Sphinx configuration for the shift_denoise documentation.

import os
import sys

import django

sys.path.insert(0, os.path.abspath(".."))
if os.getenv("READTHEDOCS", default="False") == "True":
    os.environ["DJANGO_READ_DOT_ENV_FILE"] = "True"
os.environ["DATABASE_URL"] = "sqlite:///readthedocs.db"
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings.local")
# autodoc imports the apps, which needs a configured project
django.setup()

project = "shift_denoise"
copyright = """2025, shift_denoise contributors"""  # noqa: A001
author = "shift_denoise contributors"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
]
autodoc_member_order = "bysource"
napoleon_google_docstring = True

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

html_theme = "alabaster"
