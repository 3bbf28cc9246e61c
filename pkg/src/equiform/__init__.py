"""Exact curvature analysis of kinematic surfaces swept by a helix under an equiform motion in E^7.

The package root only exposes the parameter type, so that importing the
floating-point oracle never loads the exact kernel.
"""

from .params import InvalidParams, MotionParams

__all__ = ["MotionParams", "InvalidParams"]
__version__ = "0.1.0"
