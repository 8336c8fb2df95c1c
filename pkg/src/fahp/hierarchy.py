"""Decision hierarchy: nodes, pairwise comparison blocks, and validation.

A study is a tree of nodes. Every internal node with two or more children
carries exactly one comparison matrix over those children. Judgments are
stored in the orientation the analyst entered them (row over column); no
reciprocal flipping happens behind the analyst's back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import ValidationError
from .fuzzy import TriangularFuzzyNumber


@dataclass(frozen=True)
class Node:
    """A hierarchy node; leaves are the alternatives being ranked."""

    id: str
    label: str = ""
    children: tuple["Node", ...] = ()

    def __post_init__(self):
        if not self.id:
            raise ValidationError("node id must be a non-empty string")
        if not self.label:
            object.__setattr__(self, "label", self.id)

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class ComparisonJudgment:
    """One entered pairwise judgment: w_row / w_col is about `value`."""

    row: str
    col: str
    value: TriangularFuzzyNumber


@dataclass(frozen=True)
class ComparisonMatrix:
    """The judged pairs among the children of one parent node."""

    parent: str
    items: tuple[str, ...]
    judgments: tuple[ComparisonJudgment, ...]

    @property
    def size(self) -> int:
        return len(self.items)


def validate_matrix(m: ComparisonMatrix) -> ComparisonMatrix:
    """Check one comparison block in isolation.

    Enforces: at least two items, unique item ids, judgments referencing
    known items with row != col, at most one judgment per unordered pair,
    and a connected judgment graph (every item is tied to every other
    through some chain of judged pairs).
    """
    where = f"matrix {m.parent!r}"
    if len(m.items) < 2:
        raise ValidationError(f"{where}: needs at least two items")
    if len(set(m.items)) != len(m.items):
        raise ValidationError(f"{where}: duplicate item ids")
    seen_pairs: set[frozenset[str]] = set()
    index = {it: i for i, it in enumerate(m.items)}
    adjacency: dict[str, set[str]] = {it: set() for it in m.items}
    for j in m.judgments:
        if j.row not in index or j.col not in index:
            raise ValidationError(
                f"{where}: judgment ({j.row}, {j.col}) references an unknown item"
            )
        if j.row == j.col:
            raise ValidationError(f"{where}: judgment compares {j.row!r} with itself")
        pair = frozenset((j.row, j.col))
        if pair in seen_pairs:
            raise ValidationError(
                f"{where}: duplicated judgment for pair ({j.row}, {j.col})"
            )
        seen_pairs.add(pair)
        adjacency[j.row].add(j.col)
        adjacency[j.col].add(j.row)
    # connectivity via traversal from the first item
    stack, reached = [m.items[0]], {m.items[0]}
    while stack:
        for nxt in adjacency[stack.pop()]:
            if nxt not in reached:
                reached.add(nxt)
                stack.append(nxt)
    if len(reached) != len(m.items):
        loose = sorted(set(m.items) - reached)
        raise ValidationError(
            f"{where}: judgment graph is disconnected; no chain of judgments "
            f"reaches {', '.join(loose)}"
        )
    return m


@dataclass(frozen=True)
class Hierarchy:
    """A validated-on-demand decision tree plus its comparison blocks."""

    root: Node
    matrices: Mapping[str, ComparisonMatrix] = field(default_factory=dict)

    def walk(self) -> Iterator[Node]:
        """Nodes in depth-first pre-order, root first."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def leaves(self) -> list[Node]:
        return [n for n in self.walk() if n.is_leaf]

    def internal_nodes(self) -> list[Node]:
        return [n for n in self.walk() if not n.is_leaf]

    def node(self, node_id: str) -> Node:
        for n in self.walk():
            if n.id == node_id:
                return n
        raise KeyError(node_id)


def validate(h: Hierarchy) -> Hierarchy:
    """Validate the whole hierarchy and return it unchanged.

    Beyond per-matrix checks, enforces globally unique node ids, one matrix
    for every internal node with two or more children, matrix items equal to
    that node's children, and no matrices attached to unknown or leaf nodes.
    """
    ids = [n.id for n in h.walk()]
    dup = {i for i in ids if ids.count(i) > 1}
    if dup:
        raise ValidationError(f"duplicate node ids in hierarchy: {', '.join(sorted(dup))}")
    by_id = {n.id: n for n in h.walk()}
    for parent_id, m in h.matrices.items():
        node = by_id.get(parent_id)
        if node is None:
            raise ValidationError(f"matrix attached to unknown node {parent_id!r}")
        if node.is_leaf:
            raise ValidationError(f"matrix attached to leaf node {parent_id!r}")
        if m.parent != parent_id:
            raise ValidationError(
                f"matrix keyed {parent_id!r} declares parent {m.parent!r}"
            )
        child_ids = {c.id for c in node.children}
        if set(m.items) != child_ids:
            raise ValidationError(
                f"matrix {parent_id!r} must compare exactly the children of "
                f"{parent_id!r}: expected {sorted(child_ids)}, got {sorted(m.items)}"
            )
        validate_matrix(m)
    for n in h.internal_nodes():
        if len(n.children) >= 2 and n.id not in h.matrices:
            raise ValidationError(
                f"internal node {n.id!r} has {len(n.children)} children but no "
                "comparison matrix"
            )
    return h


def _tfn(l: float, m: float, u: float) -> TriangularFuzzyNumber:
    return TriangularFuzzyNumber(l, m, u)


def _j(row: str, col: str, l: float, m: float, u: float) -> ComparisonJudgment:
    return ComparisonJudgment(row, col, _tfn(l, m, u))


def paper_study() -> Hierarchy:
    """The bundled Supply Chain 4.0 challenge study.

    Ten implementation challenges in three categories, with aggregated
    expert judgments for the category block and each within-category block.
    """
    root = Node(
        id="goal",
        label="Supply Chain 4.0 implementation challenges",
        children=(
            Node(
                id="W1",
                label="Technical challenges",
                children=(
                    Node("W11", "System complexity"),
                    Node("W12", "Data analytics and computational load"),
                    Node("W13", "Security and privacy"),
                    Node("W14", "Connectivity"),
                ),
            ),
            Node(
                id="W2",
                label="Environmental, financial and cultural challenges",
                children=(
                    Node("W21", "Environmental risks"),
                    Node("W22", "Energy management"),
                    Node("W23", "Investment cost"),
                    Node("W24", "Lack of trust"),
                ),
            ),
            Node(
                id="W3",
                label="Technological challenges",
                children=(
                    Node("W31", "Lack of knowledge and skills"),
                    Node("W32", "Lack of suitable infrastructure"),
                ),
            ),
        ),
    )
    matrices = {
        "goal": ComparisonMatrix(
            parent="goal",
            items=("W1", "W2", "W3"),
            judgments=(
                _j("W2", "W1", 2.1, 2.7, 3.8),
                _j("W3", "W1", 1.5, 1.75, 2.5),
                _j("W3", "W2", 3.1, 3.95, 5.12),
            ),
        ),
        "W1": ComparisonMatrix(
            parent="W1",
            items=("W11", "W12", "W13", "W14"),
            judgments=(
                _j("W12", "W11", 3.1, 4.2, 5.1),
                _j("W13", "W11", 2.1, 2.8, 4.7),
                _j("W13", "W12", 2.3, 3.1, 4.2),
                _j("W14", "W11", 3.1, 3.5, 5.4),
                _j("W14", "W12", 3.1, 3.5, 4.5),
                _j("W14", "W13", 2.1, 2.45, 3.21),
            ),
        ),
        "W2": ComparisonMatrix(
            parent="W2",
            items=("W21", "W22", "W23", "W24"),
            judgments=(
                _j("W22", "W21", 2.5, 3.5, 4.2),
                _j("W23", "W21", 2.8, 3.1, 3.9),
                _j("W23", "W22", 2.25, 3.4, 4.9),
                _j("W24", "W21", 3.1, 3.25, 3.9),
                _j("W24", "W22", 2.35, 3.41, 4.25),
                _j("W24", "W23", 1.25, 2.47, 4.31),
            ),
        ),
        "W3": ComparisonMatrix(
            parent="W3",
            items=("W31", "W32"),
            judgments=(_j("W32", "W31", 2.5, 3.47, 4.25),),
        ),
    }
    return validate(Hierarchy(root=root, matrices=matrices))
