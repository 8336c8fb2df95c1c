"""Two-level weight composition, normalization, and ranking."""

import pytest

from fahp import CompositionError, compose_global, normalize, rank


def test_rank_descending_dense():
    assert rank({"a": 0.5, "b": 0.3, "c": 0.2}) == {"a": 1, "b": 2, "c": 3}


def test_rank_ties_break_by_id():
    r = rank({"b": 0.4, "a": 0.4, "c": 0.2})
    assert r == {"a": 1, "b": 2, "c": 3}


def test_rank_rejects_empty():
    with pytest.raises(ValueError):
        rank({})


def test_rank_scale_invariance():
    w = {"a": 0.1, "b": 0.7, "c": 0.2}
    scaled = {k: 13.7 * v for k, v in w.items()}
    assert rank(w) == rank(scaled)


def test_normalize_simple():
    n = normalize({"a": 2.0, "b": 6.0})
    assert n == pytest.approx({"a": 0.25, "b": 0.75})


def test_normalize_idempotent():
    n = normalize({"a": 0.3, "b": 0.45, "c": 0.25})
    again = normalize(n)
    for k in n:
        assert again[k] == pytest.approx(n[k], abs=1e-15)


def test_normalize_rejects_nonpositive():
    with pytest.raises(ValueError):
        normalize({"a": 1.0, "b": 0.0})
    with pytest.raises(ValueError):
        normalize({})


def test_compose_two_categories():
    ranking = compose_global(
        {"X": 0.6, "Y": 0.4},
        {"X": {"x1": 0.25, "x2": 0.75}, "Y": {"y1": 1.0}},
    )
    by_leaf = ranking.as_dict()
    assert by_leaf["x1"] == pytest.approx(0.15)
    assert by_leaf["x2"] == pytest.approx(0.45)
    assert by_leaf["y1"] == pytest.approx(0.40)
    assert [row.leaf for row in ranking.rows] == ["x2", "y1", "x1"]
    assert ranking.ranks() == {"x2": 1, "y1": 2, "x1": 3}
    top = ranking.rows[0]
    assert top.category == "X"
    assert top.category_weight == pytest.approx(0.6)
    assert top.local_weight == pytest.approx(0.75)
    assert top.rank == 1


def test_compose_keeps_raw_products():
    # composition multiplies printed weights as they are, without
    # renormalizing, so the global column can sum slightly off 1
    ranking = compose_global(
        {"X": 0.55, "Y": 0.55},
        {"X": {"x1": 1.0}, "Y": {"y1": 1.0}},
    )
    assert sum(row.global_weight for row in ranking.rows) == pytest.approx(1.1)


def test_compose_missing_category_weight():
    with pytest.raises(CompositionError):
        compose_global({"X": 0.6}, {"X": {"x1": 1.0}, "Y": {"y1": 1.0}})


def test_compose_nonpositive_weight():
    with pytest.raises(CompositionError):
        compose_global({"X": 0.0}, {"X": {"x1": 1.0}})
    with pytest.raises(CompositionError):
        compose_global({"X": 0.5}, {"X": {"x1": -0.2}})


def test_compose_duplicate_leaf_across_categories():
    with pytest.raises(CompositionError):
        compose_global(
            {"X": 0.5, "Y": 0.5},
            {"X": {"same": 1.0}, "Y": {"same": 1.0}},
        )


def test_compose_tie_breaks_by_leaf_id():
    ranking = compose_global(
        {"X": 0.5, "Y": 0.5},
        {"X": {"m2": 1.0}, "Y": {"m1": 1.0}},
    )
    assert [row.leaf for row in ranking.rows] == ["m1", "m2"]
    assert [row.rank for row in ranking.rows] == [1, 2]
