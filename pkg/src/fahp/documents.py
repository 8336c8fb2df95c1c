"""Study and results documents: the JSON formats the CLI reads and writes.

A study document holds a named hierarchy, its comparison matrices (numeric
triples or linguistic terms), an optional replacement scale, and optional
solver settings. A results document echoes the configuration and carries
per-block solver output plus the composed global ranking; serialization is
deterministic and round-trips losslessly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .composition import GlobalRanking, RankingRow
from .errors import ValidationError
from .fuzzy import DEFAULT_SCALE, LinguisticScale, TriangularFuzzyNumber, scale_lookup
from .hierarchy import (
    ComparisonJudgment,
    ComparisonMatrix,
    Hierarchy,
    Node,
    validate,
)
from .solver import SolveResult, SolverConfig

_STUDY_KEYS = {"name", "scale", "hierarchy", "matrices", "solver"}
_NODE_KEYS = {"id", "label", "children"}
_JUDGMENT_KEYS = {"row", "col", "judgment"}
_CONFIG_KEYS = {"lambda_lo", "lambda_cap", "bisection_tol", "weight_floor"}


@dataclass(frozen=True)
class StudyDocument:
    """A parsed and validated study, ready to solve."""

    name: str
    hierarchy: Hierarchy
    scale: LinguisticScale
    config: SolverConfig


@dataclass(frozen=True)
class ResultsDocument:
    """Solver output for one study run."""

    study: str
    tool_version: str
    config: SolverConfig
    generated_at: str | None
    blocks: dict[str, SolveResult]
    ranking: GlobalRanking


def _require(obj: Mapping[str, Any], key: str, where: str) -> Any:
    if key not in obj:
        raise ValidationError(f"{where}: missing required key {key!r}")
    return obj[key]


def _check_keys(obj: Mapping[str, Any], allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ValidationError(f"{where}: unknown keys: {', '.join(sorted(unknown))}")


def _parse_node(obj: Any, where: str) -> Node:
    if not isinstance(obj, dict):
        raise ValidationError(f"{where}: node must be an object")
    _check_keys(obj, _NODE_KEYS, where)
    node_id = _require(obj, "id", where)
    if not isinstance(node_id, str) or not node_id:
        raise ValidationError(f"{where}: node id must be a non-empty string")
    label = obj.get("label", "")
    if not isinstance(label, str):
        raise ValidationError(f"{where}: node label must be a string")
    children_raw = obj.get("children", [])
    if not isinstance(children_raw, list):
        raise ValidationError(f"{where}: children must be a list")
    children = tuple(
        _parse_node(c, f"{where} > {node_id}") for c in children_raw
    )
    return Node(id=node_id, label=label, children=children)


def _parse_judgment_value(
    value: Any, scale: LinguisticScale, where: str
) -> TriangularFuzzyNumber:
    if isinstance(value, list):
        if len(value) != 3:
            raise ValidationError(f"{where}: numeric judgment needs exactly [l, m, u]")
        try:
            return TriangularFuzzyNumber(*(float(v) for v in value))
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"{where}: {exc}") from exc
    if isinstance(value, dict):
        _check_keys(value, {"term"}, where)
        term = _require(value, "term", where)
        return scale_lookup(term, scale)
    raise ValidationError(
        f"{where}: judgment must be [l, m, u] or {{\"term\": ...}}"
    )


def _parse_matrix(
    parent: str, entries: Any, node: Node, scale: LinguisticScale
) -> ComparisonMatrix:
    where = f"matrix {parent!r}"
    if not isinstance(entries, list):
        raise ValidationError(f"{where}: must be a list of judgments")
    judgments = []
    for i, entry in enumerate(entries):
        at = f"{where}, judgment {i + 1}"
        if not isinstance(entry, dict):
            raise ValidationError(f"{at}: must be an object")
        _check_keys(entry, _JUDGMENT_KEYS, at)
        row = _require(entry, "row", at)
        col = _require(entry, "col", at)
        value = _parse_judgment_value(_require(entry, "judgment", at), scale, at)
        judgments.append(ComparisonJudgment(row=row, col=col, value=value))
    items = tuple(c.id for c in node.children)
    return ComparisonMatrix(parent=parent, items=items, judgments=tuple(judgments))


def _parse_scale(obj: Any) -> LinguisticScale:
    if not isinstance(obj, dict) or not obj:
        raise ValidationError("scale must be a non-empty object of term -> [l, m, u]")
    entries = []
    for term, triple in obj.items():
        if not isinstance(triple, list) or len(triple) != 3:
            raise ValidationError(f"scale term {term!r}: value must be [l, m, u]")
        try:
            entries.append((term, TriangularFuzzyNumber(*(float(v) for v in triple))))
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"scale term {term!r}: {exc}") from exc
    try:
        return LinguisticScale(entries=tuple(entries))
    except ValueError as exc:
        raise ValidationError(f"scale: {exc}") from exc


def _parse_config(obj: Any) -> SolverConfig:
    if not isinstance(obj, dict):
        raise ValidationError("solver settings must be an object")
    _check_keys(obj, _CONFIG_KEYS, "solver settings")
    kwargs = {}
    for key, value in obj.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ValidationError(f"solver setting {key!r} must be a number")
        kwargs[key] = float(value)
    try:
        return SolverConfig(**kwargs)
    except ValueError as exc:
        raise ValidationError(f"solver settings: {exc}") from exc


def parse_study(text: str, source: str = "study") -> StudyDocument:
    """Parse and validate a study document from JSON text."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise ValidationError(f"{source}: top level must be an object")
    _check_keys(data, _STUDY_KEYS, source)
    name = _require(data, "name", source)
    if not isinstance(name, str) or not name:
        raise ValidationError(f"{source}: name must be a non-empty string")
    scale = _parse_scale(data["scale"]) if "scale" in data else DEFAULT_SCALE
    config = _parse_config(data["solver"]) if "solver" in data else SolverConfig()
    root = _parse_node(_require(data, "hierarchy", source), f"{source} hierarchy")
    matrices_raw = _require(data, "matrices", source)
    if not isinstance(matrices_raw, dict):
        raise ValidationError(f"{source}: matrices must be an object")
    nodes = {}
    stack = [root]
    while stack:
        node = stack.pop()
        nodes[node.id] = node
        stack.extend(node.children)
    matrices = {}
    for parent, entries in matrices_raw.items():
        if parent not in nodes:
            raise ValidationError(
                f"{source}: matrix attached to unknown node {parent!r}"
            )
        matrices[parent] = _parse_matrix(parent, entries, nodes[parent], scale)
    hierarchy = validate(Hierarchy(root=root, matrices=matrices))
    return StudyDocument(name=name, hierarchy=hierarchy, scale=scale, config=config)


def load_study(path: str | Path) -> StudyDocument:
    """Read and parse a study document from a file."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read study file {p}: {exc}") from exc
    return parse_study(text, source=str(p))


def bundled_study_path() -> Path:
    """Filesystem path of the packaged supply-chain study document."""
    return Path(str(resources.files("fahp").joinpath("data/supply_chain_study.json")))


def _config_dict(config: SolverConfig) -> dict[str, float]:
    return {
        "lambda_lo": config.lambda_lo,
        "lambda_cap": config.lambda_cap,
        "bisection_tol": config.bisection_tol,
        "weight_floor": config.weight_floor,
    }


def results_to_dict(doc: ResultsDocument) -> dict[str, Any]:
    out: dict[str, Any] = {
        "study": doc.study,
        "tool_version": doc.tool_version,
        "config": _config_dict(doc.config),
    }
    if doc.generated_at is not None:
        out["generated_at"] = doc.generated_at
    out["blocks"] = {
        block: {
            "weights": {k: v for k, v in res.weights.items()},
            "lambda": res.lambda_,
            "consistent": res.consistent,
            "clamped": res.clamped,
            "iterations": res.iterations,
            "slack": res.slack,
        }
        for block, res in doc.blocks.items()
    }
    out["ranking"] = [
        {
            "leaf": r.leaf,
            "category": r.category,
            "category_weight": r.category_weight,
            "local_weight": r.local_weight,
            "global_weight": r.global_weight,
            "rank": r.rank,
        }
        for r in doc.ranking.rows
    ]
    return out


def serialize_results(doc: ResultsDocument) -> str:
    """Deterministic JSON for a results document (full float precision)."""
    return json.dumps(results_to_dict(doc), indent=2, ensure_ascii=False) + "\n"


def parse_results(text: str, source: str = "results") -> ResultsDocument:
    """Parse a results document; inverse of serialize_results."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise ValidationError(f"{source}: top level must be an object")
    try:
        config = SolverConfig(**{k: float(v) for k, v in data["config"].items()})
        blocks = {
            block: SolveResult(
                weights={k: float(v) for k, v in raw["weights"].items()},
                lambda_=float(raw["lambda"]),
                consistent=bool(raw["consistent"]),
                iterations=int(raw["iterations"]),
                clamped=bool(raw["clamped"]),
                slack=None if raw["slack"] is None else float(raw["slack"]),
            )
            for block, raw in data["blocks"].items()
        }
        rows = tuple(
            RankingRow(
                leaf=r["leaf"],
                category=r["category"],
                category_weight=float(r["category_weight"]),
                local_weight=float(r["local_weight"]),
                global_weight=float(r["global_weight"]),
                rank=int(r["rank"]),
            )
            for r in data["ranking"]
        )
        return ResultsDocument(
            study=data["study"],
            tool_version=data["tool_version"],
            config=config,
            generated_at=data.get("generated_at"),
            blocks=blocks,
            ranking=GlobalRanking(rows=rows),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"{source}: malformed results document: {exc}") from exc
