"""Command-line interface: validate configs, list instances, synthesize, stats.

A run manifest bundles one experiment: the knowledge base, one network, one
or more attacks, the synthesis spec and the output directory. Paths inside
the manifest are resolved relative to the manifest file. Exit codes are
stable for scripting: 0 success, 1 validation failure, 2 I/O or parse
failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .attack import load_attack
from .docs import load_mapping, require_keys
from .errors import ParseError, UnsatisfiableError, ValidationError
from .instances import find_all_instances
from .kb import load_knowledge_base
from .network import load_network
from .synth import assemble_dataset, dataset_stats, load_synthesis_spec, read_csv, write_csv, Dataset

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


@dataclass(frozen=True)
class RunManifest:
    kb_path: Path
    network_path: Path
    attack_paths: tuple[Path, ...]
    synthesis_path: Path
    out_dir: Path


def load_manifest(path: str | Path) -> RunManifest:
    path = Path(path)
    doc = load_mapping(path)
    require_keys(doc, {"kb", "network", "attacks", "synthesis", "out_dir"}, set(), str(path))
    attacks = doc["attacks"]
    if not isinstance(attacks, list) or not attacks:
        raise ParseError(f"{path}: attacks must be a non-empty list of paths")
    base = path.parent
    return RunManifest(
        kb_path=base / doc["kb"],
        network_path=base / doc["network"],
        attack_paths=tuple(base / p for p in attacks),
        synthesis_path=base / doc["synthesis"],
        out_dir=base / doc["out_dir"],
    )


def _load_models(manifest: RunManifest):
    kb = load_knowledge_base(manifest.kb_path)
    net = load_network(manifest.network_path, kb)
    attacks = [load_attack(p, kb) for p in manifest.attack_paths]
    spec = load_synthesis_spec(manifest.synthesis_path)
    return kb, net, attacks, spec


def cmd_validate(manifest: RunManifest) -> int:
    """Validate every referenced config; report all diagnostics on stderr."""
    diagnostics: list[str] = []
    parse_failed = False
    kb = None
    try:
        kb = load_knowledge_base(manifest.kb_path)
    except ParseError as exc:
        diagnostics.append(str(exc))
        parse_failed = True
    except ValidationError as exc:
        diagnostics.extend(f"{manifest.kb_path}: {p}" for p in exc.problems)

    checks = [(manifest.network_path, load_network)]
    checks += [(p, load_attack) for p in manifest.attack_paths]
    for file_path, loader in checks:
        if kb is None:
            diagnostics.append(f"{file_path}: skipped (knowledge base failed to load)")
            continue
        try:
            loader(file_path, kb)
        except ParseError as exc:
            diagnostics.append(str(exc))
            parse_failed = True
        except ValidationError as exc:
            diagnostics.extend(f"{file_path}: {p}" for p in exc.problems)
    try:
        load_synthesis_spec(manifest.synthesis_path)
    except ParseError as exc:
        diagnostics.append(str(exc))
        parse_failed = True
    except ValidationError as exc:
        diagnostics.extend(exc.problems)

    for line in diagnostics:
        print(line, file=sys.stderr)
    if not diagnostics:
        print("all configs valid", file=sys.stderr)
        return EXIT_OK
    return EXIT_IO if parse_failed else EXIT_VALIDATION


def cmd_instances(manifest: RunManifest, out: Path | None = None) -> int:
    kb, net, attacks, _ = _load_models(manifest)
    listing = {
        "instances": [
            {
                "attack_label": inst.attack_label,
                "assignment": {str(node): ip for node, ip in inst.assignment},
            }
            for attack in attacks
            for inst in find_all_instances(net, attack, kb)
        ]
    }
    text = json.dumps(listing, indent=2)
    if out is None:
        print(text)
    else:
        out.write_text(text + "\n", encoding="utf-8")
    return EXIT_OK


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def cmd_synth(manifest: RunManifest, seed: int | None = None, out_dir: Path | None = None) -> int:
    kb, net, attacks, spec = _load_models(manifest)
    if seed is not None:
        spec = dataclasses.replace(spec, seed=seed)
    dataset = assemble_dataset(net, attacks, spec, kb)
    dataset.provenance["config_digests"] = {
        "kb": _digest(manifest.kb_path),
        "network": _digest(manifest.network_path),
        "attacks": [_digest(p) for p in manifest.attack_paths],
        "synthesis": _digest(manifest.synthesis_path),
    }
    target = out_dir if out_dir is not None else manifest.out_dir
    target.mkdir(parents=True, exist_ok=True)
    csv_path = target / "alerts.csv"
    write_csv(dataset, csv_path)
    sidecar = target / "alerts.provenance.json"
    sidecar.write_text(json.dumps(dataset.provenance, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    counts = dataset.provenance["counts"]
    print(
        f"wrote {csv_path} ({counts['rows']} rows: {counts['tp_rows']} TP, "
        f"{counts['fp_rows']} FP; {counts['fn_removed']} FN removed)",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_stats(csv_path: str | Path) -> int:
    alerts = read_csv(csv_path)
    stats = dataset_stats(Dataset(alerts=alerts))
    print(json.dumps(stats, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alertsynth",
        description="Synthesize labeled, abstracted IDS-alert datasets from network and attack configs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check every config referenced by a manifest")
    p_validate.add_argument("--manifest", required=True)

    p_instances = sub.add_parser("instances", help="list all attack instances on the network")
    p_instances.add_argument("--manifest", required=True)
    p_instances.add_argument("--out", help="write the JSON listing to a file instead of stdout")

    p_synth = sub.add_parser("synth", help="generate the alert dataset CSV plus provenance sidecar")
    p_synth.add_argument("--manifest", required=True)
    p_synth.add_argument("--seed", type=int, help="override the synthesis spec seed")
    p_synth.add_argument("--out", help="override the manifest output directory")

    p_stats = sub.add_parser("stats", help="summarize an alert CSV")
    p_stats.add_argument("csv_path")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return cmd_validate(load_manifest(args.manifest))
        if args.command == "instances":
            out = Path(args.out) if args.out else None
            return cmd_instances(load_manifest(args.manifest), out=out)
        if args.command == "synth":
            out = Path(args.out) if args.out else None
            return cmd_synth(load_manifest(args.manifest), seed=args.seed, out_dir=out)
        if args.command == "stats":
            return cmd_stats(args.csv_path)
        raise AssertionError(f"unhandled command {args.command}")
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValidationError, UnsatisfiableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
