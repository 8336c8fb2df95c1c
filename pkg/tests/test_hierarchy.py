"""Hierarchy and comparison-matrix structure and validation."""

import pytest

from fahp import (
    TFN,
    ComparisonJudgment,
    ComparisonMatrix,
    Hierarchy,
    Node,
    ValidationError,
    paper_study,
    validate,
    validate_matrix,
)


def _m(items, pairs, parent="p"):
    js = tuple(ComparisonJudgment(r, c, TFN(1, 2, 3)) for r, c in pairs)
    return ComparisonMatrix(parent=parent, items=tuple(items), judgments=js)


def test_node_label_defaults_to_id():
    assert Node("W1").label == "W1"
    assert Node("W1", label="Technological").label == "Technological"


def test_validate_matrix_accepts_complete():
    m = _m("abc", [("b", "a"), ("c", "a"), ("c", "b")])
    assert validate_matrix(m) is m


def test_validate_matrix_accepts_connected_sparse():
    # a spanning tree of judgments is enough to tie every item together
    m = _m("abcd", [("b", "a"), ("c", "b"), ("d", "c")])
    assert validate_matrix(m) is m


def test_validate_matrix_rejects_single_item():
    with pytest.raises(ValidationError):
        validate_matrix(_m("a", []))


def test_validate_matrix_rejects_unknown_item():
    with pytest.raises(ValidationError):
        validate_matrix(_m("ab", [("b", "z")]))


def test_validate_matrix_rejects_self_comparison():
    with pytest.raises(ValidationError):
        validate_matrix(_m("ab", [("a", "a")]))


def test_validate_matrix_rejects_duplicate_pair():
    # the same unordered pair twice, once per orientation
    js = (
        ComparisonJudgment("b", "a", TFN(1, 2, 3)),
        ComparisonJudgment("a", "b", TFN(2, 3, 4)),
    )
    m = ComparisonMatrix(parent="p", items=("a", "b"), judgments=js)
    with pytest.raises(ValidationError):
        validate_matrix(m)


def test_validate_matrix_rejects_disconnected():
    m = _m("abcd", [("b", "a"), ("d", "c")])
    with pytest.raises(ValidationError):
        validate_matrix(m)


def test_validate_matrix_rejects_duplicate_items():
    m = ComparisonMatrix(parent="p", items=("a", "a"), judgments=())
    with pytest.raises(ValidationError):
        validate_matrix(m)


def _two_level():
    root = Node(
        "goal",
        children=(
            Node("A", children=(Node("A1"), Node("A2"))),
            Node("B", children=(Node("B1"), Node("B2"))),
        ),
    )
    matrices = {
        "goal": _m(("A", "B"), [("B", "A")], parent="goal"),
        "A": _m(("A1", "A2"), [("A2", "A1")], parent="A"),
        "B": _m(("B1", "B2"), [("B2", "B1")], parent="B"),
    }
    return Hierarchy(root=root, matrices=matrices)


def test_validate_hierarchy_accepts_two_level():
    h = _two_level()
    assert validate(h) is h


def test_hierarchy_walk_and_leaves():
    h = _two_level()
    ids = [n.id for n in h.walk()]
    assert ids == ["goal", "A", "A1", "A2", "B", "B1", "B2"]
    assert [n.id for n in h.leaves()] == ["A1", "A2", "B1", "B2"]
    assert [n.id for n in h.internal_nodes()] == ["goal", "A", "B"]
    assert h.node("B1").id == "B1"


def test_validate_hierarchy_rejects_duplicate_ids():
    root = Node("goal", children=(Node("A"), Node("A")))
    h = Hierarchy(root=root, matrices={"goal": _m(("A", "A"), [], parent="goal")})
    with pytest.raises(ValidationError):
        validate(h)


def test_validate_hierarchy_rejects_missing_matrix():
    h = _two_level()
    h.matrices.pop("B")
    with pytest.raises(ValidationError):
        validate(h)


def test_validate_hierarchy_rejects_item_mismatch():
    h = _two_level()
    h.matrices["A"] = _m(("A1", "B2"), [("B2", "A1")], parent="A")
    with pytest.raises(ValidationError):
        validate(h)


def test_validate_hierarchy_rejects_matrix_on_leaf():
    h = _two_level()
    h.matrices["A1"] = _m(("x", "y"), [("y", "x")], parent="A1")
    with pytest.raises(ValidationError):
        validate(h)


def test_validate_hierarchy_rejects_unknown_parent():
    h = _two_level()
    h.matrices["Z"] = _m(("x", "y"), [("y", "x")], parent="Z")
    with pytest.raises(ValidationError):
        validate(h)


def test_bundled_study_shape():
    h = paper_study()
    validate(h)
    assert h.root.id == "goal"
    assert [n.id for n in h.root.children] == ["W1", "W2", "W3"]
    leaves = [n.id for n in h.leaves()]
    assert leaves == [
        "W11", "W12", "W13", "W14",
        "W21", "W22", "W23", "W24",
        "W31", "W32",
    ]
    assert sorted(h.matrices) == ["W1", "W2", "W3", "goal"]
    total_judgments = sum(len(m.judgments) for m in h.matrices.values())
    assert total_judgments == 16
    # complete pairwise blocks upstairs, a single-judgment two-item block last
    assert len(h.matrices["goal"].judgments) == 3
    assert len(h.matrices["W1"].judgments) == 6
    assert len(h.matrices["W2"].judgments) == 6
    assert len(h.matrices["W3"].judgments) == 1


def test_bundled_study_labels_are_descriptive():
    h = paper_study()
    assert h.node("W13").label == "Security and privacy"
    assert h.node("W31").label == "Lack of knowledge and skills"
