"""
共享夹具

说明：
- 结构常数与校准都有全局缓存，夹具取 session 作用域
- 需要校准的测试共用同一个缓存文件（tmp_path_factory 下）
"""
import pytest

from gradlab.config import Config
from gradlab.core import Automorphisms, Catalog, GradingPipeline, LieAlgebra


@pytest.fixture(scope="session")
def algebra() -> LieAlgebra:
    return LieAlgebra()


@pytest.fixture(scope="session")
def autos() -> Automorphisms:
    return Automorphisms()


@pytest.fixture(scope="session")
def catalog() -> Catalog:
    return Catalog()


@pytest.fixture(scope="session")
def calibration_path(tmp_path_factory):
    return tmp_path_factory.mktemp("calibration") / "calibration.json"


@pytest.fixture(scope="session")
def pipeline(calibration_path) -> GradingPipeline:
    return GradingPipeline(Config(calibration_path=calibration_path))
