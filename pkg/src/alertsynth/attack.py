"""Multi-stage attack graphs and per-node admissible platforms.

An attack is a directed graph over wildcard node ids. Each edge is one attack
step carrying a stage number, a tactic and a technique. Exactly one root node
(no incoming edges) exists and is pinned to a single platform; every other
node's admissible platforms are the intersection of the target platforms of
all techniques on its incoming edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .docs import load_mapping, require_keys
from .errors import ParseError, ValidationError
from .kb import KnowledgeBase, platforms_for_technique

RESERVED_LABELS = {"", "FP"}  # "FP" names the false-positive class in stats


@dataclass(frozen=True)
class AttackStep:
    src: int
    dst: int
    step: int
    tactic: str
    technique: str


@dataclass(frozen=True)
class AttackGraph:
    label: str
    nodes: frozenset[int]
    root: int
    root_platform: str
    edges: tuple[AttackStep, ...]  # sorted by (step, config order)


def build_attack(config: dict, kb: KnowledgeBase) -> AttackGraph:
    """Build and validate an attack graph from a parsed config document."""
    require_keys(config, {"label", "root", "edges"}, set(), "attack config")
    label = config["label"]
    if not isinstance(label, str):
        raise ParseError("attack config: label must be a string")
    root_doc = config["root"]
    if not isinstance(root_doc, dict):
        raise ParseError("attack config: root must be a mapping")
    require_keys(root_doc, {"id", "platform"}, set(), "attack root")
    if not isinstance(config["edges"], list):
        raise ParseError("attack config: edges must be a list")

    problems: list[str] = []
    if label in RESERVED_LABELS:
        problems.append(f"attack label {label!r} is reserved")

    root = root_doc["id"]
    if not isinstance(root, int) or isinstance(root, bool) or root < 0:
        raise ParseError(f"attack root: id must be a natural number, got {root!r}")
    root_platform = root_doc["platform"]
    if root_platform not in kb.platforms:
        problems.append(f"root platform {root_platform!r} is not in the knowledge base")

    if not config["edges"]:
        problems.append("attack must define at least one edge")

    edges: list[AttackStep] = []
    for raw in config["edges"]:
        if not isinstance(raw, dict):
            raise ParseError("attack config: each edge must be a mapping")
        require_keys(raw, {"src", "dst", "step", "tactic", "technique"}, set(), "attack edge")
        for key in ("src", "dst", "step"):
            v = raw[key]
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ParseError(f"attack edge: {key} must be a natural number, got {v!r}")
        src, dst, step = raw["src"], raw["dst"], raw["step"]
        tactic, technique = raw["tactic"], raw["technique"]
        if src == dst:
            problems.append(f"edge ({src}, {dst}) at step {step}: a node cannot attack itself")
        if step < 1:
            problems.append(f"edge ({src}, {dst}): step numbers start at 1")
        if technique not in kb.techniques:
            problems.append(f"edge ({src}, {dst}): unknown technique {technique!r}")
        elif tactic not in kb.tactics:
            problems.append(f"edge ({src}, {dst}): unknown tactic {tactic!r}")
        elif tactic not in kb.technique_tactics[technique]:
            problems.append(f"edge ({src}, {dst}): tactic {tactic} is not associated with {technique}")
        edges.append(AttackStep(src, dst, step, tactic, technique))

    nodes = {root} | {e.src for e in edges} | {e.dst for e in edges}
    incoming: dict[int, int] = {n: 0 for n in nodes}
    for e in edges:
        incoming[e.dst] += 1

    if incoming[root] > 0:
        problems.append(f"root node {root} has an incoming edge")
    for n in sorted(nodes):
        if n != root and incoming[n] == 0:
            problems.append(f"node {n} has no incoming edge (second root candidate)")

    steps = sorted({e.step for e in edges})
    if edges and steps != list(range(1, len(steps) + 1)):
        problems.append(f"step numbers {steps} are not contiguous from 1")

    if edges and not problems:
        reached = {root}
        undirected: dict[int, set[int]] = {n: set() for n in nodes}
        for e in edges:
            undirected[e.src].add(e.dst)
            undirected[e.dst].add(e.src)
        frontier = [root]
        while frontier:
            for peer in undirected[frontier.pop()]:
                if peer not in reached:
                    reached.add(peer)
                    frontier.append(peer)
        if reached != nodes:
            missing = sorted(nodes - reached)
            problems.append(f"attack graph is not connected; detached nodes: {missing}")

    if problems:
        raise ValidationError(problems)
    ordered = sorted(range(len(edges)), key=lambda i: (edges[i].step, i))
    return AttackGraph(
        label=label,
        nodes=frozenset(nodes),
        root=root,
        root_platform=root_platform,
        edges=tuple(edges[i] for i in ordered),
    )


def load_attack(path: str | Path, kb: KnowledgeBase) -> AttackGraph:
    return build_attack(load_mapping(path), kb)


def derive_platforms(attack: AttackGraph, kb: KnowledgeBase) -> dict[int, frozenset[str]]:
    """Admissible platforms per attack node.

    The root is pinned; every other node gets the intersection of its incoming
    techniques' target platform sets. An empty intersection means the attack
    is not realizable on any network and is rejected.
    """
    assignment: dict[int, frozenset[str]] = {attack.root: frozenset({attack.root_platform})}
    incoming: dict[int, list[str]] = {}
    for e in attack.edges:
        incoming.setdefault(e.dst, []).append(e.technique)
    problems = []
    for node, techniques in sorted(incoming.items()):
        sets = [platforms_for_technique(kb, t) for t in techniques]
        merged = frozenset.intersection(*sets)
        if not merged:
            problems.append(
                f"node {node}: incoming techniques {sorted(set(techniques))} share no target platform"
            )
        assignment[node] = merged
    if problems:
        raise ValidationError(problems)
    return assignment
