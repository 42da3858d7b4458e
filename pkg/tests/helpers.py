"""Shared test utilities: fixture builders, independent oracles, random models.

The path oracle here deliberately re-derives communication from first
principles (permutation enumeration over raw node/edge data) so it shares no
code with the graph's own search.
"""

from __future__ import annotations

import itertools
import random

from alertsynth import (
    AttackGraph,
    KnowledgeBase,
    NetworkGraph,
    NodeKind,
    ValidationError,
    build_attack,
    build_network,
    derive_platforms,
)


def mini_kb() -> KnowledgeBase:
    """Small hand-built KB for randomized tests."""
    platforms = frozenset({"Linux", "Windows", "Network", "Field Controller"})
    tp = {
        "T9001": frozenset({"Linux"}),
        "T9002": frozenset({"Windows"}),
        "T9003": frozenset({"Linux", "Windows"}),
        "T9004": frozenset({"Network"}),
        "T9005": frozenset({"Linux", "Windows", "Network", "Field Controller"}),
        "T9006": frozenset({"Field Controller"}),
        "T9007": frozenset({"Windows", "Network"}),
        "T9008": frozenset({"Linux", "Field Controller"}),
    }
    tt = {
        "T9001": frozenset({"TA0001"}),
        "T9002": frozenset({"TA0001", "TA0002"}),
        "T9003": frozenset({"TA0002"}),
        "T9004": frozenset({"TA0003"}),
        "T9005": frozenset({"TA0001"}),
        "T9006": frozenset({"TA0003"}),
        "T9007": frozenset({"TA0002", "TA0003"}),
        "T9008": frozenset({"TA0001"}),
    }
    return KnowledgeBase(
        platforms=platforms,
        tactics=frozenset({"TA0001", "TA0002", "TA0003"}),
        techniques=frozenset(tp),
        technique_platforms=tp,
        technique_tactics=tt,
    )


def oracle_allowed_paths(net: NetworkGraph, src: str, dst: str):
    """Every allowed simple path, found by brute permutation enumeration."""
    edges = net.edges
    others = sorted(ip for ip in net.nodes if ip not in (src, dst))
    for r in range(len(others) + 1):
        for mid in itertools.permutations(others, r):
            path = (src, *mid, dst)
            if any(tuple(sorted(pair)) not in edges for pair in zip(path, path[1:])):
                continue
            allowed = True
            for i, ip in enumerate(path):
                if net.nodes[ip].kind is not NodeKind.FIREWALL:
                    continue
                if i == 0 or i == len(path) - 1:
                    allowed = False
                    break
                prev, nxt = path[i - 1], path[i + 1]
                if net.nodes[prev].kind is not NodeKind.SWITCH:
                    allowed = False
                    break
                if net.nodes[nxt].kind is not NodeKind.SWITCH:
                    allowed = False
                    break
                if not any(
                    rule.initiator_ip == src
                    and rule.from_switch_ip == prev
                    and rule.to_switch_ip == nxt
                    for rule in net.nodes[ip].rules
                ):
                    allowed = False
                    break
            if allowed:
                yield path


def oracle_can_communicate(net: NetworkGraph, src: str, dst: str) -> bool:
    return next(oracle_allowed_paths(net, src, dst), None) is not None


def oracle_witness_path(net: NetworkGraph, src: str, dst: str):
    paths = list(oracle_allowed_paths(net, src, dst))
    if not paths:
        return None
    return min(paths, key=lambda p: (len(p), p))


def random_network(rnd: random.Random, kb: KnowledgeBase, max_nodes: int = 8,
                   max_firewalls: int = 2) -> NetworkGraph:
    """Random valid network: ≤ max_nodes nodes, ≥1 sensor, ≤ max_firewalls firewalls."""
    platforms = sorted(kb.platforms)
    nodes = []
    edges = []
    switches = [f"10.0.0.{i + 1}" for i in range(rnd.randint(1, 3))]
    for i, ip in enumerate(switches):
        nodes.append({"ip": ip, "kind": "switch", "platform": rnd.choice(platforms),
                      "is_nids_active": False})
        if i > 0:
            edges.append([rnd.choice(switches[:i]), ip])
    if len(switches) >= 3 and rnd.random() < 0.4:
        extra = [switches[0], switches[2]]  # cycle for path diversity
        if not any(sorted(e) == sorted(extra) for e in edges):
            edges.append(extra)
    nodes[rnd.randrange(len(switches))]["is_nids_active"] = True
    for node in nodes[: len(switches)]:
        if not node["is_nids_active"]:
            node["is_nids_active"] = rnd.random() < 0.4

    firewalls = []
    for i in range(rnd.randint(0, max_firewalls)):
        ip = f"10.0.1.{i + 1}"
        firewalls.append(ip)
        nodes.append({"ip": ip, "kind": "firewall", "platform": rnd.choice(platforms)})
        attach = rnd.sample(switches, min(len(switches), rnd.randint(1, 2)))
        for sw in attach:
            edges.append([sw, ip])

    budget = max_nodes - len(switches) - len(firewalls)
    computers = []
    for i in range(rnd.randint(1, max(1, budget))):
        ip = f"10.0.2.{i + 1}"
        kind = "computer" if i == 0 or rnd.random() < 0.85 else "router"
        if kind == "computer":
            computers.append(ip)
        nodes.append({"ip": ip, "kind": kind, "platform": rnd.choice(platforms)})
        edges.append([ip, rnd.choice(switches)])

    for node in nodes:
        if node["kind"] != "firewall" or node["ip"] not in firewalls:
            continue
        neighbors = sorted({e[0] if e[1] == node["ip"] else e[1] for e in edges
                            if node["ip"] in e})
        rules = []
        for _ in range(rnd.randint(0, 3)):
            if len(neighbors) >= 2 and rnd.random() < 0.8:
                s1, s2 = rnd.sample(neighbors, 2)
            else:
                s1, s2 = rnd.choice(switches), rnd.choice(switches)
            rules.append({
                "initiator_ip": rnd.choice(computers),
                "from_switch_ip": s1,
                "to_switch_ip": s2,
            })
        if rules:
            node["rules"] = rules
    return build_network({"nodes": nodes, "edges": edges}, kb)


def random_attack(rnd: random.Random, kb: KnowledgeBase, max_edges: int = 3) -> AttackGraph:
    """Random valid attack with a non-empty platform assignment."""
    techniques = sorted(kb.techniques)
    while True:
        n_edges = rnd.randint(1, max_edges)
        nodes = [1]
        edges = []
        step = 1
        for i in range(n_edges):
            src = rnd.choice(nodes)
            reusable = [n for n in nodes if n not in (src, 1)]
            if reusable and rnd.random() < 0.3:
                dst = rnd.choice(reusable)
            else:
                dst = max(nodes) + 1
                nodes.append(dst)
            if i > 0 and rnd.random() < 0.6:
                step += 1
            technique = rnd.choice(techniques)
            tactic = rnd.choice(sorted(kb.technique_tactics[technique]))
            edges.append({"src": src, "dst": dst, "step": step,
                          "tactic": tactic, "technique": technique})
        config = {
            "label": f"Rand-{rnd.randrange(10**6)}",
            "root": {"id": 1, "platform": rnd.choice(sorted(kb.platforms))},
            "edges": edges,
        }
        try:
            attack = build_attack(config, kb)
            derive_platforms(attack, kb)
            return attack
        except ValidationError:
            continue  # e.g. empty platform intersection; draw again
