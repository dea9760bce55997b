"""Decoherence dynamics of a subsystem coupled through an intermediate
oscillator to a hot Ohmic bath."""

from ._core import (
    ModelParams,
    TimeSeries,
    diffusion_closed,
    diffusion_quadrature,
    diffusion_series,
    gamma_factor,
    t_dec_threshold,
)

__all__ = [
    "ModelParams",
    "TimeSeries",
    "diffusion_closed",
    "diffusion_quadrature",
    "diffusion_series",
    "gamma_factor",
    "t_dec_threshold",
]
