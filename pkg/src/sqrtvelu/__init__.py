"""Square-root Velu: odd-degree isogenies in O~(sqrt(ell)) field operations."""

from .field import FieldContext, FieldElement, Jet, OpTally, counting
from .curve import MontgomeryCurve, XPoint
from .isogeny import EngineChoice, IsogenyOutput, isogeny_eval, velu_conventional, velu_sqrt

__version__ = "0.1.0"

__all__ = [
    "EngineChoice",
    "FieldContext",
    "FieldElement",
    "IsogenyOutput",
    "Jet",
    "MontgomeryCurve",
    "OpTally",
    "XPoint",
    "counting",
    "isogeny_eval",
    "velu_conventional",
    "velu_sqrt",
]
