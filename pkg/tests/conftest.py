"""Shared fixtures."""

import numpy as np
import pytest

from linkbay_gaussq import AccuracyAnalyzer, ReferenceOracle, SeriesEvaluator


@pytest.fixture(scope="session")
def oracle() -> ReferenceOracle:
    return ReferenceOracle()


@pytest.fixture(scope="session")
def series() -> SeriesEvaluator:
    return SeriesEvaluator()


@pytest.fixture
def analyzer(oracle, series) -> AccuracyAnalyzer:
    return AccuracyAnalyzer(oracle=oracle, series=series)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)
