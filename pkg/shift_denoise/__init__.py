"""Adaptive denoising and prediction of signals near shift-invariant subspaces."""

__version__ = "0.1.0"
