"""Network graph model and the directional communication predicate.

Nodes are computers, routers, switches and firewalls, each identified by a
unique IP address and carrying a MITRE platform. Every edge must touch at
least one switch. Firewalls hold rules (initiator computer, switch before,
switch after); a simple path is *allowed* for a source node when every
firewall on it is flanked by switches holding a rule that matches the
original initiator. A firewall at either end of a path has no flanking pair,
so no rule can ever admit it: paths from or to a firewall are disallowed.
Communication is therefore directional in general.

`witness_path` returns the canonical allowed path, the shortest one with ties
broken by the lexicographically smallest IP sequence, so that downstream
alert generation is reproducible. Results are cached; the graph is immutable
after `build_network`.
"""

from __future__ import annotations

import ipaddress
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .docs import load_mapping, require_keys
from .errors import ParseError, ValidationError
from .kb import KnowledgeBase


class NodeKind(str, Enum):
    COMPUTER = "computer"
    ROUTER = "router"
    SWITCH = "switch"
    FIREWALL = "firewall"


@dataclass(frozen=True)
class FirewallRule:
    initiator_ip: str
    from_switch_ip: str
    to_switch_ip: str


@dataclass(frozen=True)
class NetNode:
    ip: str
    kind: NodeKind
    platform: str
    is_nids_active: bool = False
    rules: frozenset[FirewallRule] = field(default_factory=frozenset)


class NetworkGraph:
    """Validated, immutable network graph with cached path queries."""

    def __init__(self, nodes: dict[str, NetNode], edges: set[tuple[str, str]]):
        self.nodes = nodes
        self.edges = edges
        self._adjacency: dict[str, list[str]] = {ip: [] for ip in nodes}
        for a, b in edges:
            self._adjacency[a].append(b)
            self._adjacency[b].append(a)
        for neighbors in self._adjacency.values():
            neighbors.sort()
        self._path_cache: dict[tuple[str, str], tuple[str, ...] | None] = {}

    def neighbors(self, ip: str) -> list[str]:
        return self._adjacency[ip]

    def _require(self, ip: str) -> NetNode:
        node = self.nodes.get(ip)
        if node is None:
            raise KeyError(f"unknown node {ip!r}")
        return node

    def can_communicate(self, src: str, dst: str) -> bool:
        """True iff some simple path from src to dst passes every firewall on it."""
        return self.witness_path(src, dst) is not None

    def witness_path(self, src: str, dst: str) -> tuple[str, ...] | None:
        """Canonical allowed path: shortest, ties broken by smallest IP sequence."""
        if src == dst:
            raise ValueError("source and destination must differ")
        self._require(src)
        self._require(dst)
        key = (src, dst)
        if key not in self._path_cache:
            self._path_cache[key] = self._best_allowed_path(src, dst)
        return self._path_cache[key]

    def _best_allowed_path(self, src: str, dst: str) -> tuple[str, ...] | None:
        # Every firewall on a path must be flanked by switches and hold a rule
        # for the original initiator; an endpoint firewall has no flanking
        # pair, so no path to or from a firewall can ever be allowed.
        if self.nodes[src].kind is NodeKind.FIREWALL or self.nodes[dst].kind is NodeKind.FIREWALL:
            return None
        best: list[str] | None = None
        path = [src]
        on_path = {src}

        def may_extend(prev: str, cur: str, nxt: str) -> bool:
            cur_node = self.nodes[cur]
            if cur_node.kind is not NodeKind.FIREWALL:
                return True
            if self.nodes[prev].kind is not NodeKind.SWITCH:
                return False
            if self.nodes[nxt].kind is not NodeKind.SWITCH:
                return False
            return FirewallRule(src, prev, nxt) in cur_node.rules

        def dfs() -> None:
            nonlocal best
            cur = path[-1]
            if cur == dst:
                if best is None or (len(path), path) < (len(best), best):
                    best = list(path)
                return
            if best is not None and len(path) >= len(best):
                return  # any completion is strictly longer than the best found
            for nxt in self._adjacency[cur]:
                if nxt in on_path:
                    continue
                if len(path) >= 2 and not may_extend(path[-2], cur, nxt):
                    continue
                path.append(nxt)
                on_path.add(nxt)
                dfs()
                path.pop()
                on_path.remove(nxt)

        dfs()
        return tuple(best) if best is not None else None

    def sensor_on_path(self, path: tuple[str, ...] | list[str]) -> str | None:
        """IP of the first NIDS-active switch along the path, if any."""
        self._validate_path(path)
        for ip in path:
            node = self.nodes[ip]
            if node.kind is NodeKind.SWITCH and node.is_nids_active:
                return ip
        return None

    def _validate_path(self, path) -> None:
        if not path:
            raise ValueError("empty path")
        if len(set(path)) != len(path):
            raise ValueError("path repeats a node")
        for ip in path:
            self._require(ip)
        for a, b in zip(path, path[1:]):
            if tuple(sorted((a, b))) not in self.edges:
                raise ValueError(f"({a}, {b}) is not an edge of the graph")


def can_communicate(net: NetworkGraph, src: str, dst: str) -> bool:
    return net.can_communicate(src, dst)


def witness_path(net: NetworkGraph, src: str, dst: str) -> tuple[str, ...] | None:
    return net.witness_path(src, dst)


def sensor_on_path(net: NetworkGraph, path) -> str | None:
    return net.sensor_on_path(path)


def _parse_ip(value, problems: list[str], where: str) -> str | None:
    if not isinstance(value, str):
        problems.append(f"{where}: ip must be a string, got {value!r}")
        return None
    try:
        ipaddress.ip_address(value)
    except ValueError:
        problems.append(f"{where}: {value!r} is not a valid IPv4/IPv6 address")
        return None
    return value


def build_network(config: dict, kb: KnowledgeBase) -> NetworkGraph:
    """Build and validate a network graph from a parsed config document."""
    require_keys(config, {"nodes", "edges"}, set(), "network config")
    if not isinstance(config["nodes"], list) or not isinstance(config["edges"], list):
        raise ParseError("network config: nodes and edges must be lists")

    problems: list[str] = []
    nodes: dict[str, NetNode] = {}
    raw_rules: list[tuple[str, list[dict]]] = []

    for raw in config["nodes"]:
        if not isinstance(raw, dict):
            raise ParseError("network config: each node must be a mapping")
        require_keys(raw, {"ip", "kind", "platform"}, {"is_nids_active", "rules"}, "network node")
        ip = _parse_ip(raw.get("ip"), problems, "node")
        if ip is None:
            continue
        if ip in nodes:
            problems.append(f"duplicate ip {ip}")
            continue
        try:
            kind = NodeKind(raw["kind"])
        except ValueError:
            problems.append(f"node {ip}: unknown kind {raw['kind']!r}")
            continue
        platform = raw["platform"]
        if platform not in kb.platforms:
            problems.append(f"node {ip}: unknown platform {platform!r}")
        nids = bool(raw.get("is_nids_active", False))
        if nids and kind is not NodeKind.SWITCH:
            problems.append(f"node {ip}: is_nids_active is only valid on switches")
        rules = raw.get("rules", [])
        if rules and kind is not NodeKind.FIREWALL:
            problems.append(f"node {ip}: rules are only valid on firewalls")
        elif rules:
            raw_rules.append((ip, rules))
        nodes[ip] = NetNode(ip=ip, kind=kind, platform=platform, is_nids_active=nids)

    edges: set[tuple[str, str]] = set()
    for raw_edge in config["edges"]:
        if not (isinstance(raw_edge, list) and len(raw_edge) == 2):
            raise ParseError(f"network config: edge {raw_edge!r} must be a pair of ips")
        a, b = raw_edge
        if a not in nodes or b not in nodes:
            problems.append(f"edge ({a}, {b}): endpoint not defined as a node")
            continue
        if a == b:
            problems.append(f"edge ({a}, {b}): self-loop")
            continue
        edge = tuple(sorted((a, b)))
        if edge in edges:
            problems.append(f"edge ({a}, {b}): duplicate edge")
            continue
        if nodes[a].kind is not NodeKind.SWITCH and nodes[b].kind is not NodeKind.SWITCH:
            problems.append(f"edge ({a}, {b}): neither endpoint is a switch")
            continue
        edges.add(edge)

    # Firewall rules may only reference existing nodes of the right kinds.
    for fw_ip, rules in raw_rules:
        parsed = set()
        for rule in rules:
            if not isinstance(rule, dict):
                raise ParseError(f"node {fw_ip}: each rule must be a mapping")
            require_keys(
                rule, {"initiator_ip", "from_switch_ip", "to_switch_ip"}, set(), f"rule on {fw_ip}"
            )
            ok = True
            for key, want in (
                ("initiator_ip", NodeKind.COMPUTER),
                ("from_switch_ip", NodeKind.SWITCH),
                ("to_switch_ip", NodeKind.SWITCH),
            ):
                ref = rule[key]
                if ref not in nodes:
                    problems.append(f"rule on {fw_ip}: {key} {ref!r} is not a node")
                    ok = False
                elif nodes[ref].kind is not want:
                    problems.append(f"rule on {fw_ip}: {key} {ref!r} is not a {want.value}")
                    ok = False
            if ok:
                parsed.add(FirewallRule(rule["initiator_ip"], rule["from_switch_ip"], rule["to_switch_ip"]))
        if parsed:
            old = nodes[fw_ip]
            nodes[fw_ip] = NetNode(old.ip, old.kind, old.platform, old.is_nids_active, frozenset(parsed))

    if not problems and nodes:
        reached = {next(iter(nodes))}
        frontier = [next(iter(nodes))]
        adjacency: dict[str, list[str]] = {ip: [] for ip in nodes}
        for a, b in edges:
            adjacency[a].append(b)
            adjacency[b].append(a)
        while frontier:
            for peer in adjacency[frontier.pop()]:
                if peer not in reached:
                    reached.add(peer)
                    frontier.append(peer)
        if len(reached) != len(nodes):
            missing = sorted(set(nodes) - reached)
            problems.append(f"graph is not connected; unreachable nodes: {', '.join(missing)}")

    if problems:
        raise ValidationError(problems)
    return NetworkGraph(nodes, edges)


def load_network(path: str | Path, kb: KnowledgeBase) -> NetworkGraph:
    return build_network(load_mapping(path), kb)
