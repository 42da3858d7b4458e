"""Graph-based synthesis of labeled, abstracted IDS-alert datasets.

Models a network (computers, routers, switches, firewalls) and multi-stage
attacks (directed wildcard graphs over MITRE tactics/techniques), enumerates
every instance of an attack on the network, and converts instances into
abstracted IDS alerts with controlled true-positive, false-negative and
false-positive content.
"""

__version__ = "0.1.0"

from .attack import AttackGraph, AttackStep, build_attack, derive_platforms, load_attack
from .errors import (
    ConfigError,
    ParseError,
    UnknownTechniqueError,
    UnsatisfiableError,
    ValidationError,
)
from .instances import (
    AttackInstance,
    brute_force_instances,
    find_all_instances,
    solve_attack_step,
    step_values,
    validate_instance,
)
from .kb import (
    KnowledgeBase,
    import_attack_export,
    load_knowledge_base,
    platforms_for_technique,
    tactics_for_technique,
)
from .network import (
    FirewallRule,
    NetNode,
    NetworkGraph,
    NodeKind,
    build_network,
    can_communicate,
    load_network,
    sensor_on_path,
    witness_path,
)
from .rng import SplitMix64
from .synth import (
    Alert,
    Dataset,
    SynthesisSpec,
    alerts_for_instance,
    apply_false_negatives,
    assemble_dataset,
    build_synthesis_spec,
    dataset_stats,
    generate_false_positives,
    load_synthesis_spec,
    read_csv,
    write_csv,
)

__all__ = [
    "Alert",
    "AttackGraph",
    "AttackInstance",
    "AttackStep",
    "ConfigError",
    "Dataset",
    "FirewallRule",
    "KnowledgeBase",
    "NetNode",
    "NetworkGraph",
    "NodeKind",
    "ParseError",
    "SplitMix64",
    "SynthesisSpec",
    "UnknownTechniqueError",
    "UnsatisfiableError",
    "ValidationError",
    "alerts_for_instance",
    "apply_false_negatives",
    "assemble_dataset",
    "brute_force_instances",
    "build_attack",
    "build_network",
    "build_synthesis_spec",
    "can_communicate",
    "dataset_stats",
    "derive_platforms",
    "find_all_instances",
    "generate_false_positives",
    "import_attack_export",
    "load_attack",
    "load_knowledge_base",
    "load_network",
    "load_synthesis_spec",
    "platforms_for_technique",
    "read_csv",
    "sensor_on_path",
    "solve_attack_step",
    "step_values",
    "tactics_for_technique",
    "validate_instance",
    "witness_path",
    "write_csv",
]
