"""MITRE ATT&CK knowledge base: tactics, techniques, platforms and their mappings.

The KB document is a single YAML/JSON file:

    platforms: [Linux, Windows, ...]
    tactics: [TA0001, ...]
    techniques:
      - {id: T1190, platforms: [Linux, ...], tactics: [TA0001]}

`import_attack_export` converts the official ATT&CK STIX bundle into this
format so a KB can be refreshed offline from a downloaded export.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

import yaml

from .docs import load_mapping, require_keys, string_list
from .errors import ParseError, UnknownTechniqueError, ValidationError

TECHNIQUE_ID_RE = re.compile(r"^T\d{4}(\.\d{3})?$")
TACTIC_ID_RE = re.compile(r"^TA\d{4}$")


@dataclass(frozen=True)
class KnowledgeBase:
    platforms: frozenset[str]
    tactics: frozenset[str]
    techniques: frozenset[str]
    technique_platforms: dict[str, frozenset[str]]
    technique_tactics: dict[str, frozenset[str]]


def load_knowledge_base(path: str | Path) -> KnowledgeBase:
    """Load and validate a KB document; pure function of the file contents."""
    doc = load_mapping(path)
    require_keys(doc, {"platforms", "tactics", "techniques"}, set(), str(path))

    problems: list[str] = []
    platforms = string_list(doc["platforms"], f"{path}: platforms")
    tactics = string_list(doc["tactics"], f"{path}: tactics")
    for name, values in (("platforms", platforms), ("tactics", tactics)):
        seen = set()
        for v in values:
            if v in seen:
                problems.append(f"duplicate entry {v!r} in {name}")
            seen.add(v)
    for t in tactics:
        if not TACTIC_ID_RE.match(t):
            problems.append(f"tactic id {t!r} does not match TAnnnn")

    if not isinstance(doc["techniques"], list):
        raise ParseError(f"{path}: techniques must be a list")
    technique_platforms: dict[str, frozenset[str]] = {}
    technique_tactics: dict[str, frozenset[str]] = {}
    platform_set = set(platforms)
    tactic_set = set(tactics)
    for entry in doc["techniques"]:
        if not isinstance(entry, dict):
            raise ParseError(f"{path}: each technique must be a mapping")
        require_keys(entry, {"id", "platforms", "tactics"}, set(), f"{path}: technique entry")
        tid = entry["id"]
        if not isinstance(tid, str) or not TECHNIQUE_ID_RE.match(tid):
            problems.append(f"technique id {tid!r} does not match Tnnnn[.nnn]")
            continue
        if tid in technique_platforms:
            problems.append(f"duplicate technique {tid}")
            continue
        t_platforms = string_list(entry["platforms"], f"{path}: {tid} platforms")
        t_tactics = string_list(entry["tactics"], f"{path}: {tid} tactics")
        if not t_platforms:
            problems.append(f"technique {tid} has an empty platform list")
        if not t_tactics:
            problems.append(f"technique {tid} has an empty tactic list")
        for p in t_platforms:
            if p not in platform_set:
                problems.append(f"technique {tid} references unknown platform {p!r}")
        for ta in t_tactics:
            if ta not in tactic_set:
                problems.append(f"technique {tid} references unknown tactic {ta!r}")
        technique_platforms[tid] = frozenset(t_platforms)
        technique_tactics[tid] = frozenset(t_tactics)

    if problems:
        raise ValidationError(problems)
    return KnowledgeBase(
        platforms=frozenset(platforms),
        tactics=frozenset(tactics),
        techniques=frozenset(technique_platforms),
        technique_platforms=technique_platforms,
        technique_tactics=technique_tactics,
    )


def platforms_for_technique(kb: KnowledgeBase, technique: str) -> frozenset[str]:
    if technique not in kb.techniques:
        raise UnknownTechniqueError(f"unknown technique {technique!r}")
    return kb.technique_platforms[technique]


def tactics_for_technique(kb: KnowledgeBase, technique: str) -> frozenset[str]:
    if technique not in kb.techniques:
        raise UnknownTechniqueError(f"unknown technique {technique!r}")
    return kb.technique_tactics[technique]


def import_attack_export(stix_path: str | Path, out_path: str | Path) -> None:
    """Convert an official ATT&CK STIX 2.x bundle into a KB document.

    Deprecated and revoked objects are dropped. Tactic ids are resolved from
    the bundle's x-mitre-tactic objects via their kill-chain shortnames.
    """
    stix_path = Path(stix_path)
    try:
        bundle = json.loads(stix_path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"{stix_path}: cannot read file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{stix_path}: not valid JSON: {exc}") from exc
    objects = bundle.get("objects")
    if not isinstance(objects, list):
        raise ParseError(f"{stix_path}: expected a STIX bundle with an 'objects' list")

    def alive(obj: dict) -> bool:
        return not obj.get("revoked", False) and not obj.get("x_mitre_deprecated", False)

    def mitre_id(obj: dict) -> str | None:
        for ref in obj.get("external_references", []) or []:
            source = ref.get("source_name", "")
            if source.startswith("mitre") and ref.get("external_id"):
                return ref["external_id"]
        return None

    tactic_by_shortname: dict[str, str] = {}
    for obj in objects:
        if obj.get("type") != "x-mitre-tactic" or not alive(obj):
            continue
        ext_id = mitre_id(obj)
        shortname = obj.get("x_mitre_shortname")
        if ext_id and TACTIC_ID_RE.match(ext_id) and shortname:
            tactic_by_shortname[shortname] = ext_id

    platforms: set[str] = set()
    tactics: set[str] = set(tactic_by_shortname.values())
    techniques: list[dict] = []
    for obj in objects:
        if obj.get("type") != "attack-pattern" or not alive(obj):
            continue
        ext_id = mitre_id(obj)
        if not ext_id or not TECHNIQUE_ID_RE.match(ext_id):
            continue
        t_platforms = [p for p in obj.get("x_mitre_platforms", []) or [] if isinstance(p, str)]
        t_tactics = sorted(
            {
                tactic_by_shortname[phase["phase_name"]]
                for phase in obj.get("kill_chain_phases", []) or []
                if phase.get("phase_name") in tactic_by_shortname
            }
        )
        if not t_platforms or not t_tactics:
            # cannot satisfy the non-empty mapping invariants; skip
            continue
        platforms.update(t_platforms)
        techniques.append({"id": ext_id, "platforms": sorted(set(t_platforms)), "tactics": t_tactics})

    techniques.sort(key=lambda entry: entry["id"])
    document = {
        "platforms": sorted(platforms),
        "tactics": sorted(tactics),
        "techniques": techniques,
    }
    out_path = Path(out_path)
    try:
        out_path.write_text(
            yaml.safe_dump(document, sort_keys=False, default_flow_style=False),
            encoding="utf-8",
        )
    except OSError as exc:
        raise ParseError(f"{out_path}: cannot write file: {exc}") from exc
