import pytest

from tim.analysis import AnalysisConfig, analyze
from tim.corpus import load


@pytest.fixture(scope="session")
def corpus_analysis():
    cache = {}

    def get(name, **config):
        key = (name, tuple(sorted(config.items())))
        if key not in cache:
            cache[key] = analyze(*load(name), AnalysisConfig(**config))
        return cache[key]

    return get
