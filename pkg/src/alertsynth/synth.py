"""Alert generation, FN/FP injection, dataset assembly and CSV output.

True-positive alerts come from attack instances: each step whose canonical
witness path passes a NIDS-active switch emits one alert; steps that no
sensor observes are structural false negatives. Injected false negatives
remove a controlled fraction of the generated TP rows, and false positives
are sampled from observable node pairs with a technique that can target the
destination platform.

Everything is driven by a single SplitMix64 stream seeded from the synthesis
spec and consumed in a fixed stage order (FN removal, then FP generation,
then the optional shuffle), so a spec and seed pin the dataset down to the
byte.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .attack import AttackGraph
from .docs import load_mapping, require_keys
from .errors import ParseError, UnsatisfiableError, ValidationError
from .instances import AttackInstance, find_all_instances, validate_instance
from .kb import KnowledgeBase
from .network import NetworkGraph
from .rng import SplitMix64

CSV_HEADER = [
    "source_ip",
    "target_ip",
    "source_platform",
    "target_platform",
    "mitre_tactic",
    "mitre_technique",
    "sensor_ip",
    "fp_flag",
    "attack_label",
]

INTERLEAVINGS = ("sequential", "shuffled")


@dataclass(frozen=True)
class Alert:
    source_ip: str
    target_ip: str
    source_platform: str
    target_platform: str
    mitre_tactic: str
    mitre_technique: str
    sensor_ip: str
    fp_flag: bool
    attack_label: str


@dataclass(frozen=True)
class SynthesisSpec:
    seed: int
    tp_counts: tuple[tuple[str, int], ...]  # (attack label, target TP alert count)
    fn_rate: float
    fp_ratio: float
    interleaving: str = "sequential"

    def count_for(self, label: str) -> int:
        return dict(self.tp_counts).get(label, 0)


@dataclass
class Dataset:
    alerts: list[Alert]
    provenance: dict = field(default_factory=dict)


def round_half_away(x: float) -> int:
    """Rounding used for every fractional count: halves round away from zero."""
    return int(math.floor(x + 0.5)) if x >= 0 else -int(math.floor(-x + 0.5))


def load_synthesis_spec(path: str | Path) -> SynthesisSpec:
    doc = load_mapping(path)
    require_keys(doc, {"seed", "tp_counts", "fn_rate", "fp_ratio"}, {"interleaving"}, str(path))
    return build_synthesis_spec(doc, where=str(path))


def build_synthesis_spec(doc: dict, where: str = "synthesis spec") -> SynthesisSpec:
    problems = []
    seed = doc.get("seed")
    if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 2**64:
        problems.append(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    counts = doc.get("tp_counts")
    if not isinstance(counts, dict):
        raise ParseError(f"{where}: tp_counts must map attack labels to counts")
    for label, n in counts.items():
        if not isinstance(label, str) or not label:
            problems.append(f"tp_counts: label {label!r} must be a non-empty string")
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            problems.append(f"tp_counts[{label!r}]: count must be a non-negative integer")
    fn_rate = doc.get("fn_rate")
    if not isinstance(fn_rate, (int, float)) or isinstance(fn_rate, bool) or not 0 <= fn_rate <= 1:
        problems.append(f"fn_rate must be a fraction in [0, 1], got {fn_rate!r}")
    fp_ratio = doc.get("fp_ratio")
    if not isinstance(fp_ratio, (int, float)) or isinstance(fp_ratio, bool) or fp_ratio < 0:
        problems.append(f"fp_ratio must be non-negative, got {fp_ratio!r}")
    interleaving = doc.get("interleaving", "sequential")
    if interleaving not in INTERLEAVINGS:
        problems.append(f"interleaving must be one of {INTERLEAVINGS}, got {interleaving!r}")
    if problems:
        raise ValidationError([f"{where}: {p}" for p in problems])
    return SynthesisSpec(
        seed=seed,
        tp_counts=tuple(counts.items()),
        fn_rate=float(fn_rate),
        fp_ratio=float(fp_ratio),
        interleaving=interleaving,
    )


def alerts_for_instance(
    net: NetworkGraph, attack: AttackGraph, instance: AttackInstance, kb: KnowledgeBase
) -> list[Alert]:
    """One TP alert per attack step observed by a sensor, in stage order.

    Steps whose canonical path passes no NIDS switch emit nothing (structural
    false negatives).
    """
    validate_instance(net, attack, kb, instance)
    mapping = instance.as_dict()
    alerts = []
    for edge in attack.edges:
        src, dst = mapping[edge.src], mapping[edge.dst]
        path = net.witness_path(src, dst)
        sensor = net.sensor_on_path(path)
        if sensor is None:
            continue
        alerts.append(
            Alert(
                source_ip=src,
                target_ip=dst,
                source_platform=net.nodes[src].platform,
                target_platform=net.nodes[dst].platform,
                mitre_tactic=edge.tactic,
                mitre_technique=edge.technique,
                sensor_ip=sensor,
                fp_flag=False,
                attack_label=attack.label,
            )
        )
    return alerts


def apply_false_negatives(alerts: list[Alert], fn_rate: float, rng: SplitMix64) -> list[Alert]:
    """Drop round(fn_rate * n) alerts, chosen uniformly; survivors keep order."""
    if not 0 <= fn_rate <= 1:
        raise ValueError(f"fn_rate must be in [0, 1], got {fn_rate}")
    k = round_half_away(fn_rate * len(alerts))
    if k == 0:
        return list(alerts)
    removed = set(rng.sample_indices(len(alerts), k))
    return [a for i, a in enumerate(alerts) if i not in removed]


def _observable_pairs(net: NetworkGraph) -> list[tuple[str, str]]:
    ips = sorted(net.nodes)
    pairs = []
    for a in ips:
        for b in ips:
            if a == b:
                continue
            path = net.witness_path(a, b)
            if path is not None and net.sensor_on_path(path) is not None:
                pairs.append((a, b))
    return pairs


def generate_false_positives(
    net: NetworkGraph, kb: KnowledgeBase, count: int, rng: SplitMix64
) -> list[Alert]:
    """Sample `count` FP alerts from observable node pairs.

    A pair is drawn uniformly and rejected unless it communicates, its witness
    path is observed by a sensor, and at least one technique targets the
    destination platform; the technique is then drawn uniformly from that set
    and the tactic from the technique's tactics.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    if count == 0:
        return []
    observable = _observable_pairs(net)
    if not observable:
        raise UnsatisfiableError("no communicating node pair is observed by any sensor")
    techniques_for = {
        platform: sorted(t for t in kb.techniques if platform in kb.technique_platforms[t])
        for platform in {net.nodes[b].platform for _, b in observable}
    }
    eligible = {(a, b) for a, b in observable if techniques_for[net.nodes[b].platform]}
    if not eligible:
        raise UnsatisfiableError("no reachable target platform is covered by any technique")

    ips = sorted(net.nodes)
    alerts = []
    for _ in range(count):
        while True:
            a = ips[rng.below(len(ips))]
            b = ips[rng.below(len(ips))]
            if (a, b) in eligible:
                break
        candidates = techniques_for[net.nodes[b].platform]
        technique = candidates[rng.below(len(candidates))]
        tactics = sorted(kb.technique_tactics[technique])
        tactic = tactics[rng.below(len(tactics))]
        sensor = net.sensor_on_path(net.witness_path(a, b))
        alerts.append(
            Alert(
                source_ip=a,
                target_ip=b,
                source_platform=net.nodes[a].platform,
                target_platform=net.nodes[b].platform,
                mitre_tactic=tactic,
                mitre_technique=technique,
                sensor_ip=sensor,
                fp_flag=True,
                attack_label="",
            )
        )
    return alerts


def assemble_dataset(
    net: NetworkGraph,
    attacks: list[AttackGraph],
    spec: SynthesisSpec,
    kb: KnowledgeBase,
) -> Dataset:
    """Generate a full labeled dataset per the synthesis spec.

    TP alerts are produced per attack by cycling round-robin through its
    instances in canonical order until the target count is met. FN removal
    runs over the concatenated TP rows, FP generation is sized from the
    surviving TP count, and the interleaving policy fixes the final row
    order.
    """
    labels = [a.label for a in attacks]
    if len(set(labels)) != len(labels):
        raise ValidationError("attack labels must be distinct within one dataset")
    unknown = [label for label, _ in spec.tp_counts if label not in set(labels)]
    if unknown:
        raise ValidationError([f"tp_counts references unknown attack {label!r}" for label in unknown])

    rng = SplitMix64(spec.seed)
    tp_alerts: list[Alert] = []
    structural_fn = 0
    for attack in attacks:
        target = spec.count_for(attack.label)
        if target == 0:
            continue
        instances = find_all_instances(net, attack, kb)
        if not instances:
            raise UnsatisfiableError(f"attack {attack.label!r} has no instance on this network")
        per_instance = [alerts_for_instance(net, attack, inst, kb) for inst in instances]
        if all(not alerts for alerts in per_instance):
            raise UnsatisfiableError(
                f"attack {attack.label!r}: no step of any instance is observed by a sensor"
            )
        misses = [len(attack.edges) - len(alerts) for alerts in per_instance]
        collected = 0
        idx = 0
        while collected < target:
            alerts = per_instance[idx % len(instances)]
            take = min(len(alerts), target - collected)
            tp_alerts.extend(alerts[:take])
            structural_fn += misses[idx % len(instances)]
            collected += take
            idx += 1

    survivors = apply_false_negatives(tp_alerts, spec.fn_rate, rng)
    fp_count = round_half_away(spec.fp_ratio * len(survivors))
    fp_alerts = generate_false_positives(net, kb, fp_count, rng)

    rows = survivors + fp_alerts
    if spec.interleaving == "shuffled":
        rng.shuffle(rows)

    provenance = {
        "generator": "alertsynth",
        "version": __version__,
        "seed": spec.seed,
        "fn_rate": spec.fn_rate,
        "fp_ratio": spec.fp_ratio,
        "interleaving": spec.interleaving,
        "tp_targets": dict(spec.tp_counts),
        "counts": {
            "tp_generated": len(tp_alerts),
            "fn_removed": len(tp_alerts) - len(survivors),
            "tp_rows": len(survivors),
            "fp_rows": len(fp_alerts),
            "structural_fn": structural_fn,
            "rows": len(rows),
        },
    }
    return Dataset(alerts=rows, provenance=provenance)


def write_csv(dataset: Dataset, path: str | Path) -> None:
    """Write the dataset in the fixed CSV schema (LF line endings, UTF-8)."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for a in dataset.alerts:
            writer.writerow(
                [
                    a.source_ip,
                    a.target_ip,
                    a.source_platform,
                    a.target_platform,
                    a.mitre_tactic,
                    a.mitre_technique,
                    a.sensor_ip,
                    "true" if a.fp_flag else "false",
                    a.attack_label,
                ]
            )


def read_csv(path: str | Path) -> list[Alert]:
    """Read alerts back from a CSV written by `write_csv`."""
    path = Path(path)
    try:
        handle = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file: {exc}") from exc
    with handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file, expected the alert CSV header") from None
        if header != CSV_HEADER:
            raise ParseError(f"{path}: unexpected header {header!r}")
        alerts = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(CSV_HEADER):
                raise ParseError(f"{path}: line {lineno}: expected {len(CSV_HEADER)} fields, got {len(row)}")
            if row[7] not in ("true", "false"):
                raise ParseError(f"{path}: line {lineno}: fp_flag must be 'true' or 'false'")
            alerts.append(
                Alert(
                    source_ip=row[0],
                    target_ip=row[1],
                    source_platform=row[2],
                    target_platform=row[3],
                    mitre_tactic=row[4],
                    mitre_technique=row[5],
                    sensor_ip=row[6],
                    fp_flag=row[7] == "true",
                    attack_label=row[8],
                )
            )
    return alerts


def dataset_stats(dataset: Dataset) -> dict:
    """Per-label and TP/FP/FN counts plus shares; pure function of the dataset."""
    per_label: dict[str, int] = {}
    tp_rows = 0
    fp_rows = 0
    for a in dataset.alerts:
        if a.fp_flag:
            fp_rows += 1
        else:
            tp_rows += 1
            per_label[a.attack_label] = per_label.get(a.attack_label, 0) + 1
    counts = dataset.provenance.get("counts", {})
    total = len(dataset.alerts)
    return {
        "rows": total,
        "tp_rows": tp_rows,
        "fp_rows": fp_rows,
        "per_label": {**dict(sorted(per_label.items())), "FP": fp_rows},
        "fp_share": fp_rows / total if total else 0.0,
        "tp_share": tp_rows / total if total else 0.0,
        "fn_removed": counts.get("fn_removed"),
        "structural_fn": counts.get("structural_fn"),
    }
