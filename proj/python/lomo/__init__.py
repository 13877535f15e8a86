"""Rearrangements, maximal operators and Lorentz-Morrey norms on periodic grids.

Arrays are cube-shaped numpy arrays of cell-center samples on the box
[-side/2, side/2)^n with n = ndim in {1, 2, 3} and a power-of-two extent.
"""

import json

from . import _lomo
from ._lomo import (
    bochner_riesz,
    corpus_sample,
    decreasing_rearrangement,
    fractional_maximal,
    lorentz_morrey_norm,
    lorentz_norm,
    morrey_norm,
    schrodinger,
    suite_names,
)

__version__ = _lomo.__version__


def verify(suites=("all",), **options):
    """Run verification suites; returns (report dict, passed)."""
    text, passed = _lomo.run_suites(list(suites), **options)
    return json.loads(text), passed


__all__ = [
    "bochner_riesz",
    "corpus_sample",
    "decreasing_rearrangement",
    "fractional_maximal",
    "lorentz_morrey_norm",
    "lorentz_norm",
    "morrey_norm",
    "schrodinger",
    "suite_names",
    "verify",
]
