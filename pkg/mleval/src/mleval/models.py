"""Model definitions and training.

Two baselines: an MLP with one 200-unit ReLU hidden layer, and an LSTM with
300 units and dropout 0.2 over sliding windows of alerts. Training is plain
cross-entropy with Adam; the budget (epochs, batch size, learning rate) is
configurable. Seeding makes runs repeatable up to framework-level numerics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch
from torch import nn

from .encode import FeatureView


@dataclass(frozen=True)
class ModelSpec:
    kind: str                     # "mlp" | "lstm"
    epochs: int = 20
    batch_size: int = 256
    learning_rate: float = 1e-3
    mlp_hidden: int = 200
    lstm_units: int = 300
    lstm_dropout: float = 0.2

    def __post_init__(self):
        if self.kind not in ("mlp", "lstm"):
            raise ValueError(f"kind must be 'mlp' or 'lstm', got {self.kind!r}")


class _Mlp(nn.Module):
    def __init__(self, width: int, hidden: int, n_classes: int):
        super().__init__()
        self.net = nn.Sequential(nn.Linear(width, hidden), nn.ReLU(), nn.Linear(hidden, n_classes))

    def forward(self, x):
        return self.net(x)


class _Lstm(nn.Module):
    def __init__(self, width: int, units: int, dropout: float, n_classes: int):
        super().__init__()
        self.lstm = nn.LSTM(input_size=width, hidden_size=units, batch_first=True)
        self.dropout = nn.Dropout(dropout)
        self.head = nn.Linear(units, n_classes)

    def forward(self, x):
        output, _ = self.lstm(x)
        return self.head(self.dropout(output[:, -1, :]))


class TrainedModel:
    """A fitted classifier plus everything needed to score a FeatureView."""

    def __init__(self, module: nn.Module, spec: ModelSpec, classes: list[str], window: int):
        self.module = module
        self.spec = spec
        self.classes = classes
        self.window = window

    def _inputs(self, view: FeatureView) -> tuple[np.ndarray, list[str]]:
        if self.spec.kind == "lstm":
            return view.sequences()
        return view.features, view.labels

    def scores(self, view: FeatureView) -> tuple[np.ndarray, list[str]]:
        """Class probabilities and the aligned true labels for a view."""
        inputs, labels = self._inputs(view)
        self.module.eval()
        with torch.no_grad():
            probs = []
            for start in range(0, len(inputs), 4096):
                batch = torch.from_numpy(inputs[start : start + 4096])
                probs.append(torch.softmax(self.module(batch), dim=1).numpy())
        return np.concatenate(probs), labels

    def predict(self, view: FeatureView) -> tuple[list[str], list[str]]:
        probs, labels = self.scores(view)
        return [self.classes[i] for i in probs.argmax(axis=1)], labels


def train(view: FeatureView, spec: ModelSpec, seed: int = 0) -> TrainedModel:
    classes = view.classes
    if len(classes) < 2:
        raise ValueError(f"degenerate training data: only class {classes} present")
    torch.manual_seed(seed)

    if spec.kind == "lstm":
        inputs, labels = view.sequences()
    else:
        inputs, labels = view.features, view.labels
    class_index = {c: i for i, c in enumerate(classes)}
    x = torch.from_numpy(np.ascontiguousarray(inputs))
    y = torch.tensor([class_index[label] for label in labels], dtype=torch.long)

    width = view.features.shape[1]
    if spec.kind == "mlp":
        module: nn.Module = _Mlp(width, spec.mlp_hidden, len(classes))
    else:
        module = _Lstm(width, spec.lstm_units, spec.lstm_dropout, len(classes))

    optimizer = torch.optim.Adam(module.parameters(), lr=spec.learning_rate)
    loss_fn = nn.CrossEntropyLoss()
    generator = torch.Generator().manual_seed(seed)
    module.train()
    for _ in range(spec.epochs):
        order = torch.randperm(len(x), generator=generator)
        for start in range(0, len(order), spec.batch_size):
            batch = order[start : start + spec.batch_size]
            optimizer.zero_grad()
            loss = loss_fn(module(x[batch]), y[batch])
            loss.backward()
            optimizer.step()
    return TrainedModel(module, spec, classes, view.window)
