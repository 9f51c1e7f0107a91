"""Raster renderings of threshold-cascade sweep CSV tables."""

from .render import (ALPHA_SHADES, PALETTE, UNKNOWN_COLOR, PlotJob, PlotKind,
                     SchemaError, label_color, render)

__version__ = "0.1.0"

__all__ = ["PlotJob", "PlotKind", "SchemaError", "render", "label_color",
           "PALETTE", "ALPHA_SHADES", "UNKNOWN_COLOR"]
