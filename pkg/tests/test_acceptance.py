"""Acceptance suite: one test per release criterion, at the stated tolerance.

Run with `pytest tests/test_acceptance.py -v` to get one pass/fail line per
criterion.
"""

import json
import random
import time
from pathlib import Path

from alertsynth import (
    SynthesisSpec,
    UnsatisfiableError,
    alerts_for_instance,
    assemble_dataset,
    brute_force_instances,
    find_all_instances,
)
from alertsynth.cli import main
from alertsynth.synth import round_half_away
from helpers import mini_kb, random_attack, random_network

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def test_worked_example_fidelity(kb, smallnet, attack1, capsys):
    start = time.perf_counter()

    assert main(["instances", "--manifest", str(CONFIGS / "smallnet" / "manifest.yaml")]) == 0
    listing = json.loads(capsys.readouterr().out)
    assert listing["instances"] == [
        {
            "attack_label": "Attack_1",
            "assignment": {"1": "192.168.0.21", "2": "192.168.0.20", "3": "192.168.0.22"},
        }
    ]

    instance = find_all_instances(smallnet, attack1, kb)[0]
    alerts = alerts_for_instance(smallnet, attack1, instance, kb)
    assert len(alerts) == 2
    assert [(a.source_ip, a.target_ip) for a in alerts] == [
        ("192.168.0.21", "192.168.0.20"),
        ("192.168.0.20", "192.168.0.22"),
    ]
    assert [(a.mitre_tactic, a.mitre_technique) for a in alerts] == [
        ("TA0001", "T1190"),
        ("TA0106", "T0836"),
    ]
    for alert in alerts:
        assert alert.sensor_ip == "192.168.0.2"
        assert alert.fp_flag is False
        assert alert.attack_label == "Attack_1"

    assert time.perf_counter() - start < 1.0


def test_oracle_equivalence():
    start = time.perf_counter()
    kb = mini_kb()
    rnd = random.Random(2024)
    mismatches = 0
    compared = 0
    nonempty = 0
    while compared < 100:
        net = random_network(rnd, kb, max_nodes=8, max_firewalls=2)
        attack = random_attack(rnd, kb, max_edges=3)
        fast = find_all_instances(net, attack, kb)
        slow = brute_force_instances(net, attack, kb)
        if set(fast) != set(slow) or fast != slow:
            mismatches += 1
        compared += 1
        nonempty += bool(fast)
    assert mismatches == 0
    assert compared >= 100
    assert nonempty >= 10
    assert time.perf_counter() - start < 60.0


def test_rate_control(kb, tmp_path):
    start = time.perf_counter()
    from alertsynth import load_attack, load_network

    net = load_network(CONFIGS / "icsgrid" / "network.yaml", kb)
    attacks = [
        load_attack(CONFIGS / "icsgrid" / name, kb)
        for name in ("stuxnet.yaml", "industroyer.yaml", "wannacry.yaml", "plcblaster.yaml")
    ]
    spec = SynthesisSpec(
        seed=424242,
        tp_counts=tuple((a.label, 2000) for a in attacks),
        fn_rate=0.0,
        fp_ratio=1.0,
        interleaving="sequential",
    )
    ds = assemble_dataset(net, attacks, spec, kb)
    tp = [a for a in ds.alerts if not a.fp_flag]
    fp = [a for a in ds.alerts if a.fp_flag]
    assert len(tp) == 8000
    assert len(fp) == 8000
    per_label = {}
    for a in tp:
        per_label[a.attack_label] = per_label.get(a.attack_label, 0) + 1
    assert per_label == {a.label: 2000 for a in attacks}

    spec_fn = SynthesisSpec(
        seed=424242,
        tp_counts=tuple((a.label, 2000) for a in attacks),
        fn_rate=0.3,
        fp_ratio=0.0,
        interleaving="sequential",
    )
    ds_fn = assemble_dataset(net, attacks, spec_fn, kb)
    assert len(ds_fn.alerts) == 8000 - round_half_away(0.3 * 8000)
    assert time.perf_counter() - start < 60.0


def test_determinism(tmp_path):
    manifest = str(CONFIGS / "icsgrid" / "manifest.yaml")
    out_a, out_b, out_c = (tmp_path / n for n in ("a", "b", "c"))
    assert main(["synth", "--manifest", manifest, "--out", str(out_a)]) == 0
    assert main(["synth", "--manifest", manifest, "--out", str(out_b)]) == 0
    assert main(["synth", "--manifest", manifest, "--seed", "31337", "--out", str(out_c)]) == 0
    bytes_a = (out_a / "alerts.csv").read_bytes()
    assert bytes_a == (out_b / "alerts.csv").read_bytes()
    assert bytes_a != (out_c / "alerts.csv").read_bytes()


def test_directional_firewall_semantics(smallnet):
    a, b = "192.168.0.20", "192.168.0.22"
    assert smallnet.can_communicate(a, b)
    assert not smallnet.can_communicate(b, a)


def test_dataset_revalidation():
    kb = mini_kb()
    rnd = random.Random(777)
    validated = 0
    rows_checked = 0
    while validated < 10:
        net = random_network(rnd, kb)
        attack = random_attack(rnd, kb)
        instances = find_all_instances(net, attack, kb)
        if not instances:
            continue
        if all(not alerts_for_instance(net, attack, inst, kb) for inst in instances):
            continue
        spec = SynthesisSpec(
            seed=rnd.randrange(2**64),
            tp_counts=((attack.label, rnd.randrange(10, 60)),),
            fn_rate=rnd.choice([0.0, 0.1, 0.3]),
            fp_ratio=rnd.choice([0.0, 0.5, 1.0, 2.0]),
            interleaving=rnd.choice(["sequential", "shuffled"]),
        )
        try:
            ds = assemble_dataset(net, [attack], spec, kb)
        except UnsatisfiableError:
            continue
        for alert in ds.alerts:
            path = net.witness_path(alert.source_ip, alert.target_ip)
            assert path is not None, "row references a non-communicating pair"
            assert net.sensor_on_path(path) == alert.sensor_ip
            assert alert.mitre_tactic in kb.technique_tactics[alert.mitre_technique]
            assert net.nodes[alert.source_ip].platform == alert.source_platform
            assert net.nodes[alert.target_ip].platform == alert.target_platform
            assert alert.fp_flag == (alert.attack_label == "")
            node = net.nodes[alert.sensor_ip]
            assert node.kind.value == "switch" and node.is_nids_active
            rows_checked += 1
        validated += 1
    assert rows_checked > 100
