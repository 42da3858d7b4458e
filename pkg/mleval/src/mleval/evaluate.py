"""Evaluation: ROC for the binary task, per-class precision/recall otherwise.

Also provides the technique-only leakage baseline: a frequency classifier on
the raw MITRE technique column. If that alone separates classes well, the
models' headline numbers owe more to technique leakage than to anything
learned, so reports must carry it alongside the model metrics.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.metrics import auc, confusion_matrix, roc_curve

from .encode import FeatureView


@dataclass
class EvalReport:
    task: str
    model_kind: str
    mode: str
    classes: list[str]
    accuracy: float
    per_class: dict[str, dict[str, float]]   # label -> precision/recall/support
    confusion: list[list[int]]               # rows = true class, columns = predicted
    macro_precision: float
    macro_recall: float
    roc: dict | None = None                  # binary task only: fpr/tpr/auc

    def as_dict(self) -> dict:
        return {
            "task": self.task,
            "model_kind": self.model_kind,
            "mode": self.mode,
            "classes": self.classes,
            "accuracy": self.accuracy,
            "per_class": self.per_class,
            "confusion": self.confusion,
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "roc": self.roc,
        }


def _per_class_metrics(matrix: np.ndarray, classes: list[str]) -> dict[str, dict[str, float]]:
    out = {}
    for i, label in enumerate(classes):
        tp = matrix[i, i]
        support = matrix[i, :].sum()
        predicted = matrix[:, i].sum()
        out[label] = {
            "precision": float(tp / predicted) if predicted else 0.0,
            "recall": float(tp / support) if support else 0.0,
            "support": int(support),
        }
    return out


def evaluate(model, view: FeatureView) -> EvalReport:
    """Score a trained model on a view; model only needs `scores` and `classes`."""
    probs, true_labels = model.scores(view)
    classes = list(model.classes)
    predicted = [classes[i] for i in probs.argmax(axis=1)]
    all_labels = sorted(set(classes) | set(true_labels))
    matrix = confusion_matrix(true_labels, predicted, labels=all_labels)
    per_class = _per_class_metrics(matrix, all_labels)
    accuracy = float(np.trace(matrix) / matrix.sum()) if matrix.sum() else 0.0
    macro_precision = float(np.mean([m["precision"] for m in per_class.values()]))
    macro_recall = float(np.mean([m["recall"] for m in per_class.values()]))

    roc = None
    if view.task == "alert_classification" and "TP" in classes:
        positive = np.array([label == "TP" for label in true_labels])
        scores = probs[:, classes.index("TP")]
        fpr, tpr, _ = roc_curve(positive, scores)
        roc = {"fpr": fpr.tolist(), "tpr": tpr.tolist(), "auc": float(auc(fpr, tpr))}

    model_kind = model.spec.kind if hasattr(model, "spec") else getattr(model, "kind", "custom")
    return EvalReport(
        task=view.task,
        model_kind=model_kind,
        mode=view.mode,
        classes=all_labels,
        accuracy=accuracy,
        per_class=per_class,
        confusion=matrix.tolist(),
        macro_precision=macro_precision,
        macro_recall=macro_recall,
        roc=roc,
    )


@dataclass
class TechniqueBaseline:
    """Frequency classifier: P(class | technique) estimated on training rows."""

    table: dict[str, dict[str, float]] = field(default_factory=dict)
    prior: dict[str, float] = field(default_factory=dict)

    @classmethod
    def fit(cls, view: FeatureView) -> "TechniqueBaseline":
        counts: dict[str, dict[str, int]] = {}
        totals: dict[str, int] = {}
        for technique, label in zip(view.techniques, view.labels):
            counts.setdefault(technique, {})
            counts[technique][label] = counts[technique].get(label, 0) + 1
            totals[label] = totals.get(label, 0) + 1
        n = len(view.labels)
        table = {
            technique: {label: c / sum(dist.values()) for label, c in dist.items()}
            for technique, dist in counts.items()
        }
        return cls(table=table, prior={label: c / n for label, c in totals.items()})

    def score(self, view: FeatureView, positive: str = "TP") -> np.ndarray:
        default = self.prior.get(positive, 0.0)
        return np.array(
            [self.table.get(t, {}).get(positive, default) for t in view.techniques]
        )

    def auc(self, view: FeatureView, positive: str = "TP") -> float:
        truth = np.array([label == positive for label in view.labels])
        fpr, tpr, _ = roc_curve(truth, self.score(view, positive))
        return float(auc(fpr, tpr))

    def accuracy(self, view: FeatureView) -> float:
        hits = 0
        for technique, label in zip(view.techniques, view.labels):
            dist = self.table.get(technique, self.prior)
            guess = max(sorted(dist), key=lambda k: dist[k]) if dist else ""
            hits += guess == label
        return hits / len(view.labels) if view.labels else 0.0


def technique_leakage_baseline(train_view: FeatureView, test_view: FeatureView) -> dict:
    """Summary of how far the technique column alone takes a classifier."""
    baseline = TechniqueBaseline.fit(train_view)
    summary = {"accuracy": baseline.accuracy(test_view)}
    if train_view.task == "alert_classification":
        summary["auc"] = baseline.auc(test_view)
    return summary
