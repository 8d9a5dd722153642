"""
核心功能模块
"""

from .liealg import LieAlgebra
from .autos import Automorphisms
from .calibrate import Calibrator
from .diag import Diagonalizer
from .gradecheck import GradingChecker
from .catalog import Catalog
from .pipeline import GradingPipeline
from .selftest import SelfTest
from .tool import Tool

__all__ = [
    "LieAlgebra",
    "Automorphisms",
    "Calibrator",
    "Diagonalizer",
    "GradingChecker",
    "Catalog",
    "GradingPipeline",
    "SelfTest",
    "Tool",
]
