"""
gradlab：o(8,C) 十四个精细分次的精确计算与认证
"""

from .config import Config, RunConfig, load_config
from .core import (
    Automorphisms,
    Calibrator,
    Catalog,
    Diagonalizer,
    GradingChecker,
    GradingPipeline,
    LieAlgebra,
    SelfTest,
    Tool,
)

__version__ = "0.1.0"

__all__ = [
    "Config",
    "RunConfig",
    "load_config",
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
