"""Exact Weil-Petersson volumes, boundary ratios and asymptotic checks."""

from .intersect import MemoTable, TauSpec, fill_layer, tau
from .rationals import Rat, rat
from .volumes import VolumeRecord, volume, volume_table

__all__ = [
    "MemoTable",
    "TauSpec",
    "fill_layer",
    "tau",
    "Rat",
    "rat",
    "VolumeRecord",
    "volume",
    "volume_table",
]
