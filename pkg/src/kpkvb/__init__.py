"""Hyperbolic random graphs: samplers, clustering statistics and limit values."""

from .params import ModelParams, ParameterError, derive_params

__all__ = ["ModelParams", "ParameterError", "derive_params"]
__version__ = "0.1.0"
