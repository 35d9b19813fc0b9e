"""u_mass, NPMI, and c_v scoring, checked against explicit-matrix oracles."""

import math

import numpy as np
import pytest

from graphtopics import Topic, collect_stats, cv, evaluate, npmi, umass

from conftest import make_corpus
from oracles import cv_oracle, umass_oracle


def stats_for(token_lists, unit="document", size=110, vocabulary=None):
    return collect_stats(make_corpus(token_lists), unit, window_size=size,
                         vocabulary=vocabulary)


class TestCollectStats:
    def test_document_unit(self):
        stats = stats_for([["a", "b"], ["a", "c"]])
        assert stats.count("a") == 2
        assert stats.joint("a", "b") == 1
        assert stats.total_units == 2

    def test_window_enumeration(self):
        stats = stats_for([["a", "b", "a"]], unit="window", size=2)
        # windows {a,b} and {b,a}
        assert stats.total_units == 2
        assert stats.count("a") == 2
        assert stats.count("b") == 2
        assert stats.joint("a", "b") == 2

    def test_short_segment_single_window(self):
        stats = stats_for([["a", "b", "c"]], unit="window", size=110)
        assert stats.total_units == 1

    def test_word_counted_once_per_unit(self):
        stats = stats_for([["a", "a", "a", "b"]])
        assert stats.count("a") == 1

    def test_vocabulary_restriction(self):
        stats = stats_for([["a", "b", "c"]], vocabulary={"a", "b"})
        assert stats.count("c") == 0
        assert stats.joint("a", "b") == 1

    def test_joint_symmetric_and_bounded(self, rng):
        words = [f"w{i}" for i in range(6)]
        for _ in range(15):
            token_lists = [
                [words[int(rng.integers(0, 6))] for _ in range(int(rng.integers(1, 12)))]
                for _ in range(int(rng.integers(1, 6)))
            ]
            for unit, size in (("document", 110), ("window", 3)):
                stats = stats_for(token_lists, unit=unit, size=size)
                for i, w1 in enumerate(words):
                    assert stats.count(w1) <= stats.total_units
                    for w2 in words[i + 1 :]:
                        j = stats.joint(w1, w2)
                        assert j == stats.joint(w2, w1)
                        assert j <= min(stats.count(w1), stats.count(w2))

    def test_unknown_unit(self):
        with pytest.raises(ValueError):
            stats_for([["a"]], unit="sentence")


class TestUmass:
    def test_perfect_cooccurrence_four_docs(self):
        segments = [["w1", "w2", "x"]] * 4
        stats = stats_for(segments)
        value = umass(["w1", "w2"], stats)
        assert value == pytest.approx(math.log(5 / 4), abs=1e-9)
        assert value == pytest.approx(0.2231, abs=1e-4)

    def test_never_cooccurring(self):
        segments = [["w1"], ["w1"], ["w1"], ["w1"], ["w2"]]
        stats = stats_for(segments)
        # count(w1) = 4, joint = 0 -> log(1/4)
        assert umass(["w1", "w2"], stats) == pytest.approx(math.log(1 / 4), abs=1e-9)

    def test_single_document_boundary(self):
        stats = stats_for([["w1", "w2"]])
        assert umass(["w1", "w2"], stats) == pytest.approx(math.log(2), abs=1e-9)

    def test_word_order_matters(self):
        # reversing a 2-word topic changes the conditioning word
        segments = [["a", "b"], ["a"], ["a"], ["b"]]
        stats = stats_for(segments)
        forward = umass(["a", "b"], stats)   # conditions on a (count 3)
        backward = umass(["b", "a"], stats)  # conditions on b (count 2)
        assert forward == pytest.approx(math.log(2 / 3))
        assert backward == pytest.approx(math.log(2 / 2))
        assert forward != backward

    def test_requires_two_scorable_words(self):
        stats = stats_for([["a", "b"]])
        with pytest.raises(ValueError):
            umass(["a", "zzz"], stats)

    def test_requires_document_stats(self):
        stats = stats_for([["a", "b"]], unit="window", size=2)
        with pytest.raises(ValueError):
            umass(["a", "b"], stats)

    def test_matches_oracle_on_random_corpora(self, rng):
        words = [f"w{i}" for i in range(5)]
        for _ in range(20):
            token_lists = [
                [words[int(rng.integers(0, 5))] for _ in range(int(rng.integers(2, 9)))]
                for _ in range(int(rng.integers(2, 6)))
            ]
            stats = stats_for(token_lists)
            topic = [w for w in words if stats.count(w) > 0][:4]
            if len(topic) < 2:
                continue
            assert umass(topic, stats) == pytest.approx(
                umass_oracle(topic, token_lists), abs=1e-9)


class TestNpmi:
    def test_perfect_association(self):
        stats = stats_for([["a", "b"], ["c"]], unit="window", size=5)
        # p(a) = p(b) = p(a,b) = 0.5
        assert npmi("a", "b", stats) == pytest.approx(1.0, abs=1e-9)

    def test_independence(self):
        # 4 windows: {a,b}, {a}, {b}, {} -> p(a)=p(b)=1/2, p(ab)=1/4
        segments = [["a", "b"], ["a"], ["b"], ["x"]]
        stats = stats_for(segments, unit="window", size=5)
        assert npmi("a", "b", stats) == pytest.approx(0.0, abs=1e-9)

    def test_never_joint_is_floor(self):
        stats = stats_for([["a"], ["b"]], unit="window", size=5)
        assert npmi("a", "b", stats) == -1.0

    def test_self_association_ceiling(self, rng):
        words = [f"w{i}" for i in range(4)]
        token_lists = [[words[int(rng.integers(0, 4))] for _ in range(5)] for _ in range(4)]
        stats = stats_for(token_lists, unit="window", size=3)
        for w in words:
            if stats.count(w) > 0:
                assert npmi(w, w, stats) == pytest.approx(1.0, abs=1e-9)

    def test_zero_marginal_rejected(self):
        stats = stats_for([["a", "b"]])
        with pytest.raises(ValueError):
            npmi("a", "zzz", stats)

    def test_range(self, rng):
        words = [f"w{i}" for i in range(5)]
        for _ in range(10):
            token_lists = [
                [words[int(rng.integers(0, 5))] for _ in range(int(rng.integers(1, 8)))]
                for _ in range(int(rng.integers(2, 5)))
            ]
            stats = stats_for(token_lists, unit="window", size=3)
            present = [w for w in words if stats.count(w) > 0]
            for w1 in present:
                for w2 in present:
                    assert -1.0 <= npmi(w1, w2, stats) <= 1.0


class TestCv:
    def test_perfectly_cooccurring_topic(self):
        segments = [["a", "b", "c"]] * 3
        stats = stats_for(segments, unit="window", size=110)
        assert cv(["a", "b", "c"], stats) == pytest.approx(1.0, abs=1e-6)

    def test_hand_built_three_window_corpus(self):
        # 3 segments, each one window: {a,b}, {a,c}, {b,c}
        token_lists = [["a", "b"], ["a", "c"], ["b", "c"]]
        stats = stats_for(token_lists, unit="window", size=110)
        expected = cv_oracle(["a", "b", "c"], token_lists, 110)
        assert cv(["a", "b", "c"], stats) == pytest.approx(expected, abs=1e-6)

    def test_absent_words_sentinel(self):
        stats = stats_for([["a", "b"]], unit="window", size=110)
        assert cv(["x", "y"], stats) is None

    def test_single_scorable_word_sentinel(self):
        stats = stats_for([["a", "b"]], unit="window", size=110)
        assert cv(["a", "zzz"], stats) is None

    def test_requires_window_stats(self):
        stats = stats_for([["a", "b"]])
        with pytest.raises(ValueError):
            cv(["a", "b"], stats)

    def test_within_unit_interval_on_random_corpora(self, rng):
        words = [f"w{i}" for i in range(6)]
        for _ in range(25):
            token_lists = [
                [words[int(rng.integers(0, 6))] for _ in range(int(rng.integers(2, 10)))]
                for _ in range(int(rng.integers(2, 6)))
            ]
            stats = stats_for(token_lists, unit="window", size=4)
            score = cv(words, stats)
            if score is not None:
                assert 0.0 <= score <= 1.0

    def test_matches_oracle_on_random_corpora(self, rng):
        words = [f"w{i}" for i in range(5)]
        for _ in range(25):
            token_lists = [
                [words[int(rng.integers(0, 5))] for _ in range(int(rng.integers(2, 9)))]
                for _ in range(int(rng.integers(2, 6)))
            ]
            size = int(rng.integers(2, 6))
            stats = stats_for(token_lists, unit="window", size=size)
            got = cv(words, stats)
            expected = cv_oracle(words, token_lists, size)
            if expected is None:
                assert got is None
            else:
                assert got == pytest.approx(expected, abs=1e-6)


class TestEvaluate:
    def _topics(self):
        return [
            Topic(members=frozenset({"a", "b"}), source="kcomponent", level=1,
                  ranking=("a", "b"), id="k1-0"),
            Topic(members=frozenset({"c", "d"}), source="kcomponent", level=1,
                  ranking=("c", "d"), id="k1-1"),
        ]

    def _corpus(self):
        return make_corpus([["a", "b", "c"], ["a", "b", "d"], ["c", "d", "a"], ["c", "d", "b"]])

    def test_identical_train_holdout_equal_cv(self):
        corp = self._corpus()
        report = evaluate(self._topics(), corp, corp)
        assert report.mean_cv_intrinsic == report.mean_cv_extrinsic
        for scores in report.per_topic.values():
            assert scores.cv_in == scores.cv_ex

    def test_single_topic_means(self):
        corp = self._corpus()
        report = evaluate(self._topics()[:1], corp, corp)
        only = next(iter(report.per_topic.values()))
        assert report.mean_umass == only.umass
        assert report.mean_cv_intrinsic == only.cv_in

    def test_means_are_hand_averages(self):
        corp = self._corpus()
        report = evaluate(self._topics(), corp, corp)
        scores = [report.per_topic[tid] for tid in sorted(report.per_topic)]
        assert report.mean_umass == pytest.approx(
            sum(s.umass for s in scores) / len(scores))
        assert report.mean_cv_intrinsic == pytest.approx(
            sum(s.cv_in for s in scores) / len(scores))

    def test_undefined_topics_excluded_from_means(self):
        topics = self._topics() + [
            Topic(members=frozenset({"zz", "qq"}), source="kcomponent", level=1,
                  ranking=("zz", "qq"), id="k1-9")]
        corp = self._corpus()
        report = evaluate(topics, corp, corp)
        assert report.undefined_cv_in == 1
        assert report.per_topic["k1-9"].cv_in is None
        defined = [s.cv_in for s in report.per_topic.values() if s.cv_in is not None]
        assert report.mean_cv_intrinsic == pytest.approx(sum(defined) / len(defined))

    def test_empty_topics_rejected(self):
        corp = self._corpus()
        with pytest.raises(ValueError):
            evaluate([], corp, corp)

    def test_csv_shape(self):
        corp = self._corpus()
        report = evaluate(self._topics(), corp, corp, time_p_seconds=0.5)
        lines = report.to_csv().strip().splitlines()
        assert lines[0] == "topic_id,source,umass,cv_in,cv_ex"
        assert lines[-1].startswith("means,time_p=0.500000,")
        assert len(lines) == 2 + len(report.per_topic)

    def test_time_p_recorded(self):
        corp = self._corpus()
        report = evaluate(self._topics(), corp, corp, time_p_seconds=1.25)
        assert report.time_p_seconds == 1.25
