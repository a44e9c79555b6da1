"""Exact cohomology and K-theory rings of toric bundles from fan data."""

from .algebra import Coeff, Mode, XPoly
from .fan import Fan, ValidationReport
from .presentation import Presentation, build_additive, build_multiplicative
from .reducer import NormalForm, Reducer, reduce_additive, reduce_multiplicative
from .shelling import ShellingData, find_shelling, shelling_data

__version__ = "0.1.0"
