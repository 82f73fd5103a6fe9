"""
Shared fixtures.
"""

import logging
import os
from pathlib import Path

import pytest

import protocol_ner
from protocol_ner.corpus.io import read_standoff_corpus
from protocol_ner.corpus.synthetic import write_synthetic_corpus
from protocol_ner.ensemble import BaseMerger, MergedPrediction, MergeMethod, MergerInfo, MergerRegistry
from protocol_ner.ensemble import registry as registry_module

SAMPLE_DIR = Path(protocol_ner.__file__).parent / "data" / "sample"


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch, tmp_path):
    """Keep the user's config files and PROTOCOL_NER_* variables out of tests."""
    monkeypatch.setenv("HOME", str(tmp_path / "home"))
    for key in list(os.environ):
        if key.startswith("PROTOCOL_NER_"):
            monkeypatch.delenv(key)
    monkeypatch.chdir(tmp_path)
    yield
    package_logger = logging.getLogger("protocol_ner")
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
    package_logger.setLevel(logging.NOTSET)


@pytest.fixture
def sample_dir() -> Path:
    return SAMPLE_DIR


@pytest.fixture
def sample_corpus():
    return read_standoff_corpus(SAMPLE_DIR)


@pytest.fixture
def synthetic_dirs(tmp_path):
    """(train_dir, test_dir) of generated standoff protocols."""
    train_dir = tmp_path / "synthetic" / "train"
    test_dir = tmp_path / "synthetic" / "test"
    write_synthetic_corpus(train_dir, 12, seed=0)
    write_synthetic_corpus(test_dir, 4, seed=1)
    return train_dir, test_dir


class FirstModelMerger(BaseMerger):
    @property
    def info(self) -> MergerInfo:
        return MergerInfo("first", "First", "Copies the first model")

    def merge(self, pred) -> MergedPrediction:
        return MergedPrediction(pred.sequences[0], 0.0, MergeMethod.MAJORITY_VOTE, pred.sequences[0])


@pytest.fixture
def first_merger(monkeypatch):
    """A fresh global registry with a third-party 'first' merger added."""
    registry = MergerRegistry()
    registry.register_merger("first", FirstModelMerger)
    monkeypatch.setattr(registry_module, "_global_registry", registry)
    return registry
