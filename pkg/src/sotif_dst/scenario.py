"""SOTIF scenario model: uncertainty sources, dependency DAG, scenario files, fusion.

Scenario files are JSON documents::

    {
      "version": 1,
      "title": "...", "description": "...",
      "frame": ["cyclist", "truck", ...],
      "normalize": false,
      "sources": [
        {"name": "RainIntensity", "category": "aleatoric",
         "states": ["Low", "Medium", "High"],
         "table": {"Low": {"cyclist": 0.6, "cyclist+truck": 0.1, "ANY": 0.3}, ...}}
      ],
      "edges": ["RainIntensity->WetRoadConditions"],
      "assignment": {"RainIntensity": "High"}
    }

A subset expression is a ``+``-joined list of outcome labels, or ``ANY`` for
the whole frame. Conditional tables are keyed by the source's own state; the
graph fixes the fusion order and records dependencies but does not alter
mass values.
"""

from __future__ import annotations

import enum
import heapq
import json
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .combination import CombinationRule, combine_many
from .errors import (
    CyclicGraph,
    DSTError,
    ParseError,
    SchemaError,
    TotalConflict,
    UnknownSource,
    UnknownState,
    ValidationError,
)
from .frame import Frame, SubsetMask, make_frame
from .mass import MassFunction, make_bpa, normalize

SCHEMA_VERSION = 1
ANY = "ANY"
EDGE_SEPARATOR = "->"


class Category(enum.Enum):
    ALEATORIC = "aleatoric"
    EPISTEMIC = "epistemic"
    BOTH = "both"


@dataclass(frozen=True)
class Finding:
    """One validation problem, located as precisely as the file allows."""

    field: str
    reason: str
    source: str | None = None
    state: str | None = None

    def __str__(self) -> str:
        where = [f"field={self.field}"]
        if self.source is not None:
            where.insert(0, f"source={self.source}")
        if self.state is not None:
            where.insert(1, f"state={self.state}")
        return f"{', '.join(where)}: {self.reason}"


@dataclass(frozen=True)
class UncertaintySource:
    name: str
    category: Category
    states: tuple[str, ...]
    table: Mapping[str, MassFunction]

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "table", dict(self.table))
        findings = []
        if len(set(self.states)) != len(self.states):
            findings.append(Finding("states", "duplicate state", self.name))
        missing = [s for s in self.states if s not in self.table]
        extra = [s for s in self.table if s not in self.states]
        for s in missing:
            findings.append(Finding("table", "no conditional BPA for state", self.name, s))
        for s in extra:
            findings.append(Finding("table", "table entry for undeclared state", self.name, s))
        frames = {m.frame for m in self.table.values()}
        if len(frames) > 1:
            findings.append(Finding("table", "table rows use different frames", self.name))
        if findings:
            raise ValidationError(findings)

    @property
    def frame(self) -> Frame:
        return self.table[self.states[0]].frame


def evidence_for(source: UncertaintySource, state: str) -> MassFunction:
    """Conditional BPA of ``source`` given that it is in ``state``."""
    try:
        return source.table[state]
    except KeyError:
        raise UnknownState(f"{source.name} has no state {state!r}") from None


# ---------------------------------------------------------------- graph

def validate_dag(nodes: Iterable[str], edges: Iterable[tuple[str, str]]) -> list[str] | None:
    """Return ``None`` if the graph is acyclic, else the node path of one cycle.

    The cycle is reported closed (first node repeated at the end) and rotated
    to start at its lexicographically smallest node. Search order is sorted,
    so the reported cycle is deterministic.
    """
    adjacency: dict[str, list[str]] = {n: [] for n in nodes}
    for parent, child in edges:
        adjacency.setdefault(parent, []).append(child)
        adjacency.setdefault(child, [])
    for children in adjacency.values():
        children.sort()

    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(adjacency, WHITE)
    for root in sorted(adjacency):
        if colour[root] != WHITE:
            continue
        path = [root]
        stack = [iter(adjacency[root])]
        colour[root] = GREY
        while stack:
            child = next(stack[-1], None)
            if child is None:
                colour[path.pop()] = BLACK
                stack.pop()
            elif colour[child] == GREY:
                cycle = path[path.index(child):]
                start = cycle.index(min(cycle))
                cycle = cycle[start:] + cycle[:start]
                return cycle + [cycle[0]]
            elif colour[child] == WHITE:
                colour[child] = GREY
                path.append(child)
                stack.append(iter(adjacency[child]))
    return None


@dataclass(frozen=True)
class DependencyGraph:
    """Acyclic dependency graph over source names; edges run parent -> child."""

    nodes: frozenset[str]
    edges: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        edges = tuple((p, c) for p, c in self.edges)
        object.__setattr__(self, "edges", edges)
        findings = _edge_findings(self.nodes, edges)
        if findings:
            raise ValidationError(findings)
        cycle = validate_dag(self.nodes, edges)
        if cycle is not None:
            raise CyclicGraph(cycle)

    def parents(self, node: str) -> list[str]:
        return sorted(p for p, c in self.edges if c == node)

    def children(self, node: str) -> list[str]:
        return sorted(c for p, c in self.edges if p == node)


def _edge_findings(nodes: frozenset[str], edges: Sequence[tuple[str, str]]) -> list[Finding]:
    findings = []
    seen = set()
    for parent, child in edges:
        text = f"{parent}{EDGE_SEPARATOR}{child}"
        if parent == child:
            findings.append(Finding("edges", f"self-loop {text}", parent))
        if (parent, child) in seen:
            findings.append(Finding("edges", f"duplicate edge {text}", parent))
        seen.add((parent, child))
        for end in (parent, child):
            if end not in nodes:
                findings.append(Finding("edges", f"edge {text} names undeclared source {end!r}"))
    return findings


def topological_order(graph: DependencyGraph) -> list[str]:
    """Kahn's algorithm; among ready nodes the lexicographically smallest goes first."""
    indegree = dict.fromkeys(graph.nodes, 0)
    children: dict[str, list[str]] = {n: [] for n in graph.nodes}
    for parent, child in graph.edges:
        indegree[child] += 1
        children[parent].append(child)
    ready = [n for n, d in indegree.items() if d == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        node = heapq.heappop(ready)
        order.append(node)
        for child in children[node]:
            indegree[child] -= 1
            if indegree[child] == 0:
                heapq.heappush(ready, child)
    if len(order) != len(graph.nodes):
        cycle = validate_dag(graph.nodes, graph.edges) or []
        raise CyclicGraph(cycle)
    return order


# ---------------------------------------------------------------- config

@dataclass(frozen=True)
class ScenarioConfig:
    frame: Frame
    sources: Mapping[str, UncertaintySource]
    graph: DependencyGraph
    assignment: Mapping[str, str]
    title: str = ""
    description: str = ""
    normalize: bool = False
    order: tuple[str, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sources", dict(self.sources))
        object.__setattr__(self, "assignment", dict(self.assignment))
        findings = []
        if set(self.graph.nodes) != set(self.sources):
            findings.append(Finding("edges", "graph nodes differ from declared sources"))
        for name, src in self.sources.items():
            if src.name != name:
                findings.append(Finding("sources", f"keyed as {name!r} but named {src.name!r}", name))
            if src.frame != self.frame:
                findings.append(Finding("table", "conditional BPAs use a different frame", name))
            if name not in self.assignment:
                findings.append(Finding("assignment", "no state assigned", name))
            elif self.assignment[name] not in src.states:
                findings.append(
                    Finding("assignment", "state not in the source's domain", name, self.assignment[name])
                )
        for name in self.assignment:
            if name not in self.sources:
                findings.append(Finding("assignment", "assignment for undeclared source", name))
        if findings:
            raise ValidationError(findings)
        object.__setattr__(self, "order", tuple(topological_order(self.graph)))

    def source(self, name: str) -> UncertaintySource:
        try:
            return self.sources[name]
        except KeyError:
            raise UnknownSource(f"no source named {name!r}") from None

    def with_assignment(self, name: str, state: str) -> ScenarioConfig:
        src = self.source(name)
        if state not in src.states:
            raise UnknownState(f"{name} has no state {state!r}")
        if self.assignment[name] == state:
            return self
        return replace(self, assignment={**self.assignment, name: state})


def fusion_inputs(config: ScenarioConfig) -> list[MassFunction]:
    """Evidence of every source under the config's assignment, in fusion order."""
    return [evidence_for(config.sources[n], config.assignment[n]) for n in config.order]


def fuse_scenario(
    config: ScenarioConfig, rule: CombinationRule | str = CombinationRule.YAGER
) -> MassFunction:
    """Fold the assigned evidence of all sources in topological order."""
    try:
        return combine_many(fusion_inputs(config), rule)
    except TotalConflict as exc:
        name = config.order[exc.step] if exc.step is not None else None
        raise TotalConflict(
            f"total conflict when folding in source {name!r} "
            f"(step {exc.step} of order {', '.join(config.order)})",
            step=exc.step,
            source=name,
        ) from exc


# ---------------------------------------------------------------- file format

def subset_expression(frame: Frame, subset: SubsetMask | int) -> str:
    bits = frame._bits(subset)
    if bits == frame.full_bits:
        return ANY
    return "+".join(frame.labels_of(bits))


def parse_subset_expression(frame: Frame, text: str) -> int:
    if text.strip() == ANY:
        return frame.full_bits
    bits = 0
    for part in text.split("+"):
        label = part.strip()
        if not label:
            raise ValueError(f"empty label in subset expression {text!r}")
        i = frame.index(label)
        if bits >> i & 1:
            raise ValueError(f"label {label!r} repeated in {text!r}")
        bits |= 1 << i
    return bits


_TOP_FIELDS = {"version", "title", "description", "frame", "sources", "edges", "assignment", "normalize"}
_REQUIRED_TOP = {"version", "frame", "sources", "edges", "assignment"}
_SOURCE_FIELDS = {"name", "category", "states", "table"}


def _reject_duplicate_keys(pairs: list[tuple[str, Any]]) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for key, value in pairs:
        if key in out:
            raise SchemaError(f"duplicate key {key!r}")
        out[key] = value
    return out


def _expect(value: Any, kind: type | tuple[type, ...], where: str) -> Any:
    kinds = kind if isinstance(kind, tuple) else (kind,)
    if not isinstance(value, kinds) or (isinstance(value, bool) and bool not in kinds):
        raise SchemaError(f"{where}: expected {_kind_name(kinds)}, got {type(value).__name__}")
    return value


def _kind_name(kinds: tuple[type, ...]) -> str:
    names = {dict: "object", list: "array", str: "string", int: "integer", float: "number", bool: "boolean"}
    return " or ".join(names.get(k, k.__name__) for k in kinds)


def _check_fields(obj: dict, allowed: set[str], required: set[str], where: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise SchemaError(f"{where}: unknown field(s) {', '.join(unknown)}")
    missing = sorted(required - set(obj))
    if missing:
        raise SchemaError(f"{where}: missing field(s) {', '.join(missing)}")


def loads_scenario(text: str) -> ScenarioConfig:
    """Parse and fully validate a scenario document."""
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    _expect(doc, dict, "document")
    _check_fields(doc, _TOP_FIELDS, _REQUIRED_TOP, "document")

    version = doc["version"]
    if isinstance(version, bool) or not isinstance(version, int) or version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported scenario version {version!r} (expected {SCHEMA_VERSION})")
    title = _expect(doc.get("title", ""), str, "title")
    description = _expect(doc.get("description", ""), str, "description")
    do_normalize = _expect(doc.get("normalize", False), bool, "normalize")
    labels = _expect(doc["frame"], list, "frame")
    for i, label in enumerate(labels):
        _expect(label, str, f"frame[{i}]")
    raw_sources = _expect(doc["sources"], list, "sources")
    raw_edges = _expect(doc["edges"], list, "edges")
    raw_assignment = _expect(doc["assignment"], dict, "assignment")
    for i, raw in enumerate(raw_sources):
        where = f"sources[{i}]"
        _expect(raw, dict, where)
        _check_fields(raw, _SOURCE_FIELDS, _SOURCE_FIELDS, where)
        _expect(raw["name"], str, f"{where}.name")
        _expect(raw["category"], str, f"{where}.category")
        for j, s in enumerate(_expect(raw["states"], list, f"{where}.states")):
            _expect(s, str, f"{where}.states[{j}]")
        for state, row in _expect(raw["table"], dict, f"{where}.table").items():
            for expr, value in _expect(row, dict, f"{where}.table.{state}").items():
                _expect(value, (int, float), f"{where}.table.{state}.{expr}")
    for i, e in enumerate(raw_edges):
        _expect(e, str, f"edges[{i}]")
    for name, state in raw_assignment.items():
        _expect(state, str, f"assignment.{name}")

    return _build(labels, raw_sources, raw_edges, raw_assignment, title, description, do_normalize)


def _build(labels, raw_sources, raw_edges, raw_assignment, title, description, do_normalize) -> ScenarioConfig:
    findings: list[Finding] = []
    try:
        frame = make_frame(labels)
    except DSTError as exc:
        raise ValidationError([Finding("frame", str(exc))]) from None
    for label in frame:
        if label == ANY or "+" in label:
            findings.append(Finding("frame", f"label {label!r} clashes with subset-expression syntax"))

    sources: dict[str, UncertaintySource] = {}
    for raw in raw_sources:
        name = raw["name"].strip()
        if not name or EDGE_SEPARATOR in name:
            findings.append(Finding("name", f"invalid source name {raw['name']!r}"))
            continue
        if name in sources:
            findings.append(Finding("name", "duplicate source name", name))
            continue
        try:
            category = Category(raw["category"].strip().lower())
        except ValueError:
            findings.append(Finding("category", f"unknown category {raw['category']!r}", name))
            category = None
        states = tuple(s.strip() for s in raw["states"])
        row_findings = []
        if not states:
            row_findings.append(Finding("states", "a source needs at least one state", name))
        if any(not s for s in states):
            row_findings.append(Finding("states", "empty state label", name))
        table: dict[str, MassFunction] = {}
        for state, row in raw["table"].items():
            state = state.strip()
            try:
                assignments: dict[int, float] = {}
                for expr, value in row.items():
                    bits = parse_subset_expression(frame, expr)
                    assignments[bits] = assignments.get(bits, 0.0) + float(value)
                builder = normalize if do_normalize else make_bpa
                table[state] = builder(frame, assignments)
            except (DSTError, ValueError) as exc:
                row_findings.append(Finding("table", str(exc), name, state))
        if not row_findings and category is not None:
            try:
                sources[name] = UncertaintySource(name, category, states, table)
            except ValidationError as exc:
                row_findings.extend(exc.findings)
        findings.extend(row_findings)
        if name not in sources:
            sources.setdefault(name, None)  # type: ignore[arg-type]  # reserve for edge checks

    edges: list[tuple[str, str]] = []
    for text in raw_edges:
        parts = text.split(EDGE_SEPARATOR)
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            findings.append(Finding("edges", f"malformed edge {text!r} (expected 'Parent->Child')"))
            continue
        edges.append((parts[0].strip(), parts[1].strip()))
    names = frozenset(sources)
    edge_findings = _edge_findings(names, edges)
    findings.extend(edge_findings)
    if not edge_findings:
        cycle = validate_dag(names, edges)
        if cycle is not None:
            findings.append(Finding("edges", "cycle " + EDGE_SEPARATOR.join(cycle)))

    assignment = {k.strip(): v.strip() for k, v in raw_assignment.items()}
    for name in sources:
        if name not in assignment:
            findings.append(Finding("assignment", "no state assigned", name))
    for name, state in assignment.items():
        if name not in sources:
            findings.append(Finding("assignment", "assignment for undeclared source", name))
        elif sources[name] is not None and state not in sources[name].states:
            findings.append(Finding("assignment", "state not in the source's domain", name, state))

    if findings:
        raise ValidationError(findings)
    return ScenarioConfig(
        frame=frame,
        sources=sources,
        graph=DependencyGraph(names, tuple(edges)),
        assignment=assignment,
        title=title,
        description=description,
        normalize=do_normalize,
    )


def load_scenario(path: str | os.PathLike) -> ScenarioConfig:
    return loads_scenario(Path(path).read_text(encoding="utf-8"))


def scenario_document(config: ScenarioConfig) -> dict[str, Any]:
    frame = config.frame
    sources = []
    for name in sorted(config.sources):
        src = config.sources[name]
        table = {
            state: {subset_expression(frame, b): v for b, v in src.table[state].as_bits().items()}
            for state in src.states
        }
        sources.append(
            {"name": name, "category": src.category.value, "states": list(src.states), "table": table}
        )
    return {
        "version": SCHEMA_VERSION,
        "title": config.title,
        "description": config.description,
        "frame": list(frame.elements),
        "normalize": config.normalize,
        "sources": sources,
        "edges": [f"{p}{EDGE_SEPARATOR}{c}" for p, c in sorted(config.graph.edges)],
        "assignment": dict(config.assignment),
    }


def dumps_scenario(config: ScenarioConfig) -> str:
    """Canonical text: keys sorted, sources and edges sorted, two-space indent."""
    return json.dumps(scenario_document(config), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save_scenario(config: ScenarioConfig, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps_scenario(config), encoding="utf-8")
