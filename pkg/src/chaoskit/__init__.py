"""chaoskit: a numerical laboratory for linear-operator chaos.

Finite truncations of weighted shifts, block perturbations, Hardy-space
multiplication operators, and a discretized interval-swap operator,
together with orbit diagnostics (Li-Yorke evidence, distributional
profiles, criterion search), polar/singular-value identities, and
scalar-perturbation chaos maps.
"""

__version__ = "0.1.0"

from . import diagnostics, hardy, numerics, operators, spectral  # noqa: F401
from .errors import ChaoskitError  # noqa: F401
