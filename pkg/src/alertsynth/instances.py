"""Enumeration of attack instances on a network.

An instance is a total assignment of attack nodes to network nodes such that
every step's endpoints can communicate, every assigned node's platform is
admissible for its wildcard, and no step maps source and target to the same
node. `find_all_instances` runs the step-wise partial-assignment algorithm;
`brute_force_instances` is an independent exhaustive oracle used in tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .attack import AttackGraph, AttackStep, derive_platforms
from .errors import ValidationError
from .kb import KnowledgeBase
from .network import NetworkGraph

BRUTE_FORCE_GUARD = 10**7


@dataclass(frozen=True)
class AttackInstance:
    attack_label: str
    assignment: tuple[tuple[int, str], ...]  # (attack node id, network ip), sorted by id

    def ip_of(self, node: int) -> str:
        return dict(self.assignment)[node]

    def as_dict(self) -> dict[int, str]:
        return dict(self.assignment)


def _instance(attack: AttackGraph, mapping: dict[int, str]) -> AttackInstance:
    return AttackInstance(attack.label, tuple(sorted(mapping.items())))


def step_values(
    net: NetworkGraph, attack: AttackGraph, kb: KnowledgeBase
) -> list[list[tuple[str, str]]]:
    """Per attack edge, the (src ip, dst ip) pairs satisfying that step alone."""
    platforms = derive_platforms(attack, kb)
    ips = sorted(net.nodes)
    values = []
    for edge in attack.edges:
        src_ok = [ip for ip in ips if net.nodes[ip].platform in platforms[edge.src]]
        dst_ok = [ip for ip in ips if net.nodes[ip].platform in platforms[edge.dst]]
        pairs = [
            (a, b)
            for a in src_ok
            for b in dst_ok
            if a != b and net.can_communicate(a, b)
        ]
        values.append(pairs)
    return values


def solve_attack_step(
    edge: AttackStep,
    candidates: list[tuple[str, str]],
    partials: list[dict[int, str]],
) -> list[dict[int, str]]:
    """Extend partial assignments by one attack edge.

    A node missing from a partial is unassigned. Each candidate pair either
    fills unassigned endpoints or must match what an earlier step already
    fixed; mismatches drop the combination.
    """
    extended = []
    for partial in partials:
        src_ip = partial.get(edge.src)
        dst_ip = partial.get(edge.dst)
        for a, b in candidates:
            if src_ip is None and dst_ip is None:
                new = dict(partial)
                new[edge.src] = a
                new[edge.dst] = b
                extended.append(new)
            elif src_ip == a and dst_ip == b:
                extended.append(dict(partial))
            elif src_ip is None and dst_ip == b:
                new = dict(partial)
                new[edge.src] = a
                extended.append(new)
            elif dst_ip is None and src_ip == a:
                new = dict(partial)
                new[edge.dst] = b
                extended.append(new)
    return extended


def find_all_instances(
    net: NetworkGraph, attack: AttackGraph, kb: KnowledgeBase
) -> list[AttackInstance]:
    """All instances of the attack on the network, canonically ordered."""
    values = step_values(net, attack, kb)
    partials: list[dict[int, str]] = [{}]
    for edge, candidates in zip(attack.edges, values):
        partials = solve_attack_step(edge, candidates, partials)
        if not partials:
            return []
    instances = [_instance(attack, p) for p in partials]
    instances.sort(key=lambda inst: inst.assignment)
    return instances


def brute_force_instances(
    net: NetworkGraph, attack: AttackGraph, kb: KnowledgeBase
) -> list[AttackInstance]:
    """Exhaustive oracle: filter every total node assignment by the invariants."""
    attack_nodes = sorted(attack.nodes)
    ips = sorted(net.nodes)
    total = len(ips) ** len(attack_nodes)
    if total > BRUTE_FORCE_GUARD:
        raise ValueError(f"search space {total} exceeds the brute-force guard {BRUTE_FORCE_GUARD}")
    platforms = derive_platforms(attack, kb)
    instances = []
    for combo in itertools.product(ips, repeat=len(attack_nodes)):
        mapping = dict(zip(attack_nodes, combo))
        if not all(net.nodes[mapping[n]].platform in platforms[n] for n in attack_nodes):
            continue
        ok = True
        for e in attack.edges:
            a, b = mapping[e.src], mapping[e.dst]
            if a == b or not net.can_communicate(a, b):
                ok = False
                break
        if ok:
            instances.append(_instance(attack, mapping))
    instances.sort(key=lambda inst: inst.assignment)
    return instances


def validate_instance(
    net: NetworkGraph, attack: AttackGraph, kb: KnowledgeBase, instance: AttackInstance
) -> None:
    """Re-check every instance invariant; raises ValidationError on violation."""
    mapping = instance.as_dict()
    problems = []
    if set(mapping) != set(attack.nodes):
        problems.append(f"assignment covers {sorted(mapping)} but attack nodes are {sorted(attack.nodes)}")
    else:
        platforms = derive_platforms(attack, kb)
        for n in sorted(attack.nodes):
            ip = mapping[n]
            if ip not in net.nodes:
                problems.append(f"node {n}: {ip} is not in the network")
            elif net.nodes[ip].platform not in platforms[n]:
                problems.append(f"node {n}: platform of {ip} is not admissible")
        if not problems:
            for e in attack.edges:
                a, b = mapping[e.src], mapping[e.dst]
                if a == b:
                    problems.append(f"step {e.step}: source and target both map to {a}")
                elif not net.can_communicate(a, b):
                    problems.append(f"step {e.step}: {a} cannot communicate with {b}")
    if problems:
        raise ValidationError(problems)
