"""Evaluation harness for ML-based alert classification and attack detection.

Trains MLP and LSTM baselines on synthesized IDS-alert CSVs (binary TP-vs-FP
classification and multi-class attack detection, on full or reduced feature
sets) and reports ROC curves, per-class precision/recall and a technique-only
leakage baseline.
"""

__version__ = "0.1.0"

from .encode import FeatureView, encode, read_alert_rows
from .evaluate import EvalReport, TechniqueBaseline, evaluate, technique_leakage_baseline
from .models import ModelSpec, TrainedModel, train
from .report import report

__all__ = [
    "EvalReport",
    "FeatureView",
    "ModelSpec",
    "TechniqueBaseline",
    "TrainedModel",
    "encode",
    "evaluate",
    "read_alert_rows",
    "report",
    "technique_leakage_baseline",
    "train",
]
