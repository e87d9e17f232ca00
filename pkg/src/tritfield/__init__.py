"""Characteristic-3 multiplication toolbox.

Bit-sliced GF(3) arithmetic, recursive Karatsuba/classical digit
multipliers compiled to prunable gate circuits, a cycle-accurate
digit-level LFSR multiplier model for GF(3^97), and tower-field
multiplication in GF(3^(6*97)) with verified base-multiplication counts
(27/36 schoolbook, 18 Karatsuba, 15 five-point).

The hot kernels run from a compiled extension when built; see
``tritfield._backend`` for the pure-Python fallback selection.
"""

from ._backend import backend_name
from .field397 import F97Element
from .gf3 import Trit, TritVector
from .lfsr import LfsrConfig, LfsrState
from .polymul import Circuit, CostReport, MethodExpr, parse_method
from .tower import Fp2Element, Fp6Element, MulCounter, ProductTrace

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "CostReport",
    "F97Element",
    "Fp2Element",
    "Fp6Element",
    "LfsrConfig",
    "LfsrState",
    "MethodExpr",
    "MulCounter",
    "ProductTrace",
    "Trit",
    "TritVector",
    "backend_name",
    "parse_method",
]
