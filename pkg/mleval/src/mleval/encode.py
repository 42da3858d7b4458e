"""Feature encoding for abstracted IDS-alert CSVs.

Consumes the alert CSV schema produced by the synthesis tool (fixed 9-column
header). Categorical fields are one-hot encoded against a vocabulary built
from the training file; values unseen at training time map to a per-column
"unknown" bucket. Sequence views are sliding windows over row order with
stride 1, labeled by the final row.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

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

REDUCED_COLUMNS = ["source_ip", "target_ip", "source_platform", "target_platform"]
FULL_COLUMNS = REDUCED_COLUMNS + ["mitre_tactic", "mitre_technique"]

TASKS = ("alert_classification", "attack_detection")
MODES = ("full", "reduced")

NO_ATTACK = "n.A"
UNKNOWN = "<unknown>"


@dataclass
class FeatureView:
    task: str
    mode: str
    window: int
    features: np.ndarray          # [n_rows, width], float32
    labels: list[str]             # per row
    vocab: dict[str, list[str]]   # column -> category order (index 0 = unknown)
    techniques: list[str]         # raw technique column, for leakage baselines

    @property
    def classes(self) -> list[str]:
        return sorted(set(self.labels))

    def sequences(self) -> tuple[np.ndarray, list[str]]:
        """Sliding windows (stride 1) and the label of each window's last row."""
        n = len(self.labels)
        if n < self.window:
            raise ValueError(f"{n} rows cannot fill a window of {self.window}")
        windows = np.stack([self.features[i : i + self.window] for i in range(n - self.window + 1)])
        return windows, self.labels[self.window - 1 :]


def read_alert_rows(path: str | Path) -> list[dict[str, str]]:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != CSV_HEADER:
            raise ValueError(f"{path}: not an alert CSV (unexpected header {header!r})")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(CSV_HEADER):
                raise ValueError(f"{path}: line {lineno}: expected {len(CSV_HEADER)} fields")
            rows.append(dict(zip(CSV_HEADER, row)))
    return rows


def build_vocab(rows: list[dict[str, str]], columns: list[str]) -> dict[str, list[str]]:
    return {col: [UNKNOWN] + sorted({r[col] for r in rows}) for col in columns}


def encode(
    csv_path: str | Path,
    mode: str = "full",
    window: int = 10,
    task: str = "alert_classification",
    vocab: dict[str, list[str]] | None = None,
) -> FeatureView:
    """Encode an alert CSV into a FeatureView.

    Pass the training view's `vocab` when encoding a test file so both share
    one feature space.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if task not in TASKS:
        raise ValueError(f"task must be one of {TASKS}, got {task!r}")
    if window < 1:
        raise ValueError("window must be at least 1")
    rows = read_alert_rows(csv_path)
    columns = FULL_COLUMNS if mode == "full" else REDUCED_COLUMNS
    if vocab is None:
        vocab = build_vocab(rows, columns)
    elif sorted(vocab) != sorted(columns):
        raise ValueError(f"vocabulary covers {sorted(vocab)}, need {sorted(columns)}")

    index = {col: {value: i for i, value in enumerate(vocab[col])} for col in columns}
    width = sum(len(vocab[col]) for col in columns)
    features = np.zeros((len(rows), width), dtype=np.float32)
    for r, row in enumerate(rows):
        offset = 0
        for col in columns:
            features[r, offset + index[col].get(row[col], 0)] = 1.0
            offset += len(vocab[col])

    if task == "alert_classification":
        labels = ["FP" if row["fp_flag"] == "true" else "TP" for row in rows]
    else:
        labels = [row["attack_label"] or NO_ATTACK for row in rows]
    return FeatureView(
        task=task,
        mode=mode,
        window=window,
        features=features,
        labels=labels,
        vocab=vocab,
        techniques=[row["mitre_technique"] for row in rows],
    )
