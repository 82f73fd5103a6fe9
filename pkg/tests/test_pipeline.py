"""
Tests for the end-to-end ensemble pipeline.
"""

import pytest

from protocol_ner.config import PipelineSettings
from protocol_ner.core.errors import PipelineStageError
from protocol_ner.core.pipeline import ensemble_sizes, run_pipeline
from protocol_ner.corpus.conll import read_conll_file
from protocol_ner.corpus.io import read_standoff_corpus, with_predictions
from protocol_ner.corpus.split import SplitSpec, generate_split
from protocol_ner.ensemble import PredictionSet, majority_vote, sle_merge
from protocol_ner.eval import score_corpora
from protocol_ner.report import render_pipeline
from protocol_ner.tagger import TrainConfig, load_model, predict, train
from protocol_ner.tagscheme import LabelAlphabet, is_valid_bio
from protocol_ner.utils.jsonio import load_json

FAST = TrainConfig(max_epochs=3, patience=1)


@pytest.mark.parametrize(
    "n,expected",
    [(11, [3, 5, 7, 9, 11]), (4, [3, 4]), (3, [3]), (2, [2]), (1, [1])],
)
def test_ensemble_sizes(n, expected):
    assert ensemble_sizes(n) == expected


@pytest.fixture
def corpora(synthetic_dirs):
    train_dir, test_dir = synthetic_dirs
    return read_standoff_corpus(train_dir), read_standoff_corpus(test_dir)


class TestRunPipeline:
    def test_artifacts_and_rows(self, corpora, tmp_path):
        train_corpus, test_corpus = corpora
        out = tmp_path / "run"
        report = run_pipeline(train_corpus, test_corpus, out, PipelineSettings(n_models=3), FAST)

        for i in (1, 2, 3):
            split = SplitSpec.from_dict(load_json(out / "splits" / f"split_{i:02d}.json"))
            assert split.seed == i
            assert len(split.train_ids) == 10
            assert load_model(out / "models" / f"model_{i:02d}.json").alphabet.tags
            predictions = read_conll_file(out / "predictions" / f"model_{i:02d}.conll")
            assert len(predictions) == len(test_corpus.all_sentences())

        assert [row["n"] for row in report["rows"]] == [3]
        assert set(report["rows"][0]["methods"]) == {"MajV", "SLE"}
        for method in ("majv", "sle"):
            merged = read_conll_file(out / "merged" / f"{method}_n03.conll")
            assert all(is_valid_bio([tag for _, tag in sentence]) for sentence in merged)
            assert len(load_json(out / "merged" / f"{method}_n03.json")) == len(merged)

        assert load_json(out / "report.json") == report
        assert len(report["individual"]) == 3
        summary = report["individual_summary"]["exact"]
        assert summary["min"] <= summary["mean"] <= summary["max"]
        for row in report["individual"]:
            assert row["scores"]["partial"]["f1"] >= row["scores"]["exact"]["f1"]

    def test_rerun_is_identical(self, corpora, tmp_path):
        train_corpus, test_corpus = corpora
        settings = PipelineSettings(n_models=3, methods=["sle"])
        first = run_pipeline(train_corpus, test_corpus, tmp_path / "a", settings, FAST)
        second = run_pipeline(train_corpus, test_corpus, tmp_path / "b", settings, FAST)
        assert first == second
        assert (tmp_path / "a" / "merged" / "sle_n03.conll").read_text(encoding="utf-8") == (
            tmp_path / "b" / "merged" / "sle_n03.conll"
        ).read_text(encoding="utf-8")

    def test_single_model_merges_to_itself(self, corpora, tmp_path):
        train_corpus, test_corpus = corpora
        report = run_pipeline(train_corpus, test_corpus, tmp_path / "one", PipelineSettings(n_models=1), FAST)
        individual = report["individual"][0]["scores"]
        row = report["rows"][0]
        assert row["n"] == 1
        for name in ("MajV", "SLE"):
            assert row["methods"][name]["exact"]["f1"] == individual["exact"]["f1"]
            assert row["methods"][name]["repairs"] == 0
        predicted = read_conll_file(tmp_path / "one" / "predictions" / "model_01.conll")
        assert read_conll_file(tmp_path / "one" / "merged" / "sle_n01.conll") == predicted

    def test_parallel_training_matches_serial(self, corpora, tmp_path):
        train_corpus, test_corpus = corpora
        serial = run_pipeline(
            train_corpus, test_corpus, tmp_path / "serial", PipelineSettings(n_models=3, methods=["majv"]), FAST
        )
        parallel = run_pipeline(
            train_corpus,
            test_corpus,
            tmp_path / "parallel",
            PipelineSettings(n_models=3, methods=["majv"], max_workers=2),
            FAST,
        )
        assert parallel["individual"] == serial["individual"]
        assert parallel["rows"] == serial["rows"]

    def test_split_failure_names_the_stage(self, corpora, tmp_path):
        train_corpus, test_corpus = corpora
        small = train_corpus.subset(train_corpus.doc_ids[:2])
        with pytest.raises(PipelineStageError) as info:
            run_pipeline(small, test_corpus, tmp_path / "bad", PipelineSettings(n_models=2, train_fraction=0.9), FAST)
        assert info.value.stage == "split"
        assert info.value.exit_code == 2

    def test_eleven_models_sweep(self, corpora, tmp_path):
        train_corpus, test_corpus = corpora
        report = run_pipeline(
            train_corpus, test_corpus, tmp_path / "eleven", PipelineSettings(n_models=11), TrainConfig(max_epochs=1)
        )
        assert [row["n"] for row in report["rows"]] == [3, 5, 7, 9, 11]
        assert all(set(row["methods"]) == {"MajV", "SLE"} for row in report["rows"])
        assert [row["seed"] for row in report["individual"]] == list(range(1, 12))
        rendered = render_pipeline(report).splitlines()
        assert rendered[0].split() == ["n", "MajV", "SLE"]
        assert rendered[-1].startswith("individual models (exact)")


def as_conll(corpus, tags):
    return [list(zip(s.surfaces, t)) for s, t in zip(corpus.all_sentences(), tags)]


def test_matches_stages_run_one_by_one(sample_corpus, tmp_path):
    out = tmp_path / "run"
    settings = PipelineSettings(n_models=3, seed_base=4)
    report = run_pipeline(sample_corpus, sample_corpus, out, settings, FAST)

    predictions = []
    for i in (1, 2, 3):
        split = generate_split(sample_corpus.doc_ids, 4 + i, settings.train_fraction)
        assert load_json(out / "splits" / f"split_{i:02d}.json") == split.to_dict()
        model = train(
            sample_corpus.subset(split.train_ids), FAST, validation=sample_corpus.subset(split.validation_ids)
        )
        tags = predict(model, sample_corpus)
        assert read_conll_file(out / "predictions" / f"model_{i:02d}.conll") == as_conll(sample_corpus, tags)
        scores = score_corpora(with_predictions(sample_corpus, tags), sample_corpus)
        for criterion in ("exact", "partial"):
            assert report["individual"][i - 1]["scores"][criterion]["f1"] == scores[criterion].micro.f1
        predictions.append(tags)

    alphabet = LabelAlphabet(tag for tags in predictions for seq in tags for tag in seq)
    n_sentences = len(sample_corpus.all_sentences())
    for method, display_name, merge in (("majv", "MajV", majority_vote), ("sle", "SLE", sle_merge)):
        merged = [
            merge(PredictionSet([tags[k] for tags in predictions], alphabet, k)).tags for k in range(n_sentences)
        ]
        assert read_conll_file(out / "merged" / f"{method}_n03.conll") == as_conll(sample_corpus, merged)
        scores = score_corpora(with_predictions(sample_corpus, merged), sample_corpus)
        row = report["rows"][0]["methods"][display_name]
        for criterion in ("exact", "partial"):
            assert row[criterion]["f1"] == scores[criterion].micro.f1


def test_registered_merger_runs(first_merger, corpora, tmp_path):
    train_corpus, test_corpus = corpora
    out = tmp_path / "run"
    report = run_pipeline(train_corpus, test_corpus, out, PipelineSettings(n_models=3, methods=["first"]), FAST)
    assert set(report["rows"][0]["methods"]) == {"First"}
    assert read_conll_file(out / "merged" / "first_n03.conll") == read_conll_file(
        out / "predictions" / "model_01.conll"
    )
