import math

import pytest

import flexautomata as fa

EXAMPLE13 = """1 9 1 0 0 0 0 0 0 0 0
1 15 0 1 1 0 0 0 1 0 1 0 1 0 1 0 0
0 5 0 1 0 0 0
1 2 0 0
0 12 1 1 0 0 0 0 0 0 0 1 0 0
1 5 1 0 1 0 0
1 3 1 0 0
0 6 0 0 0 0 0 1
1 3 1 0 1
0 20 1 0 0 0 0 0 1 0 1 0 0 0 0 0 1 1 1 0 0 0
0 13 0 1 1 1 0 1 0 0 0 0 0 0 0
1 3 1 0 1
1 7 1 0 0 0 0 0 0
"""


def test_parse_and_learn_is_consistent():
    s = fa.parse_abbadingo(EXAMPLE13)
    assert len(s) == 13
    assert s.count("positive") == 8 and s.count("negative") == 5
    assert s.alphabet == ["0", "1"]
    for heuristic in ("edsm", "alergia", "mse"):
        model, log = fa.learn(s, heuristic=heuristic, penalty=1.0)
        for word, label in zip(s.words(), s.labels()):
            assert model.accepts(word) == (label == "positive")
        assert model.check_integrity() == []


def test_even_ones():
    words = [[]]
    layer = [[]]
    for _ in range(7):
        layer = [w + [c] for w in layer for c in (0, 1)]
        words += layer
    traces = [("positive" if w.count(1) % 2 == 0 else "negative", w) for w in words]
    model, _ = fa.learn(fa.Sample(traces, 2))
    assert len(model) == 2
    for w in model.language(10):
        assert w.count(1) % 2 == 0


def test_apta_merge_and_persistence():
    s = fa.parse_abbadingo(EXAMPLE13)
    apta = fa.build_apta(s)
    assert apta.label(0) == "unlabeled"
    assert apta.stats(0)["total_count"] == 13
    out = fa.merge(apta, 0, 1)
    assert out is not None and out["merged_pairs"][0] == (0, 1)
    model, _ = fa.learn(s)
    text = model.save()
    assert fa.Automaton.load(text).save() == text
    assert model.to_dot().startswith("digraph")


def test_regression_and_sampling():
    series = [float((i // 15) % 3) + 0.01 * math.sin(i) for i in range(300)]
    sample, edges, warnings = fa.discretize(series, bins=3, window=3)
    assert len(sample) == 297 and len(edges) == 2 and warnings == []
    model, _ = fa.learn(sample, heuristic="mse")
    for word, targets in zip(sample.words()[:20], sample.targets()[:20]):
        assert math.isfinite(fa.predict(model, word))
        assert targets[-1] is not None
    with pytest.raises(fa.DomainError):
        fa.predict(model, [0, 1, 2, 0, 1, 2, 9], fallback="error")

    words = fa.sample_words(fa.learn(fa.parse_abbadingo(EXAMPLE13))[0], 100, seed=3, max_len=25)
    assert words == fa.sample_words(fa.learn(fa.parse_abbadingo(EXAMPLE13))[0], 100, seed=3, max_len=25)


def test_errors_and_bound():
    with pytest.raises(fa.ParseError):
        fa.parse_abbadingo("1 3 0 1\n")
    with pytest.raises(fa.InconsistentSampleError):
        fa.build_apta(fa.parse_abbadingo("1 1 0\n0 1 0\n"))
    with pytest.raises(fa.Error):
        fa.learn(fa.parse_abbadingo(EXAMPLE13), heuristic="nope")
    expected = math.sqrt(0.5 * math.log(2 / 0.05)) * 2 / math.sqrt(10)
    assert abs(fa.hoeffding_bound(10, 10, 0.05) - expected) < 1e-12
