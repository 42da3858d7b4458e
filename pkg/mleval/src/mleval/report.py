"""Plots and the machine-readable metrics document."""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .evaluate import EvalReport


def report(reports: list[EvalReport], out_dir: str | Path, baselines: dict | None = None) -> dict:
    """Write ROC / precision-recall figures plus metrics.json; returns the doc."""
    if not reports:
        raise ValueError("nothing to report: the report list is empty")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    written: list[str] = []
    binary = [r for r in reports if r.roc is not None]
    if binary:
        fig, ax = plt.subplots(figsize=(6, 5))
        for r in binary:
            ax.plot(r.roc["fpr"], r.roc["tpr"], label=f"{r.model_kind}/{r.mode} (AUC {r.roc['auc']:.3f})")
        ax.plot([0, 1], [0, 1], linestyle=":", color="grey", linewidth=1)
        ax.set_xlabel("false positive rate")
        ax.set_ylabel("true positive rate")
        ax.set_title("Alert classification ROC")
        ax.legend(loc="lower right", fontsize=8)
        path = out_dir / "roc_alert_classification.png"
        fig.savefig(path, dpi=120, bbox_inches="tight")
        plt.close(fig)
        written.append(path.name)

    for r in reports:
        if r.task != "attack_detection":
            continue
        labels = r.classes
        precision = [r.per_class[c]["precision"] for c in labels]
        recall = [r.per_class[c]["recall"] for c in labels]
        x = range(len(labels))
        fig, ax = plt.subplots(figsize=(7, 4))
        ax.bar([i - 0.2 for i in x], precision, width=0.4, label="precision")
        ax.bar([i + 0.2 for i in x], recall, width=0.4, label="recall")
        ax.set_xticks(list(x))
        ax.set_xticklabels(labels, rotation=20, ha="right", fontsize=8)
        ax.set_ylim(0, 1.05)
        ax.set_title(f"Attack detection: {r.model_kind} ({r.mode} features)")
        ax.legend()
        path = out_dir / f"bars_attack_detection_{r.model_kind}_{r.mode}.png"
        fig.savefig(path, dpi=120, bbox_inches="tight")
        plt.close(fig)
        written.append(path.name)

    doc = {
        "reports": [r.as_dict() for r in reports],
        "baselines": baselines or {},
        "figures": written,
    }
    (out_dir / "metrics.json").write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return doc
