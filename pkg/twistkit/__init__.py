__version__ = "0.1.0"

from twistkit.scalars import Scalar, TruncatedSeries
from twistkit.uea import LieAlgebraSpec, UEAElement, TensorElement
from twistkit.twist import Twist, build_exponential_twist, gauge_normalize
from twistkit.star import StarAlgebra, EquivalenceMap, EquivalentStar
from twistkit.modules import EquivariantBimodule, DeformedModule
from twistkit.chern import LineBundleT2, chern_number
from twistkit.report import Report
from twistkit.runner import RunOptions, run_command

__all__ = [
    "Scalar",
    "TruncatedSeries",
    "LieAlgebraSpec",
    "UEAElement",
    "TensorElement",
    "Twist",
    "build_exponential_twist",
    "gauge_normalize",
    "StarAlgebra",
    "EquivalenceMap",
    "EquivalentStar",
    "EquivariantBimodule",
    "DeformedModule",
    "LineBundleT2",
    "chern_number",
    "Report",
    "RunOptions",
    "run_command",
]
