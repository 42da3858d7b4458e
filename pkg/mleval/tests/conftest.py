from __future__ import annotations

import csv
from pathlib import Path

import pytest

from mleval.encode import CSV_HEADER

REPO_CONFIGS = Path(__file__).resolve().parent.parent.parent / "configs"


def alert_row(
    source_ip="10.0.0.1",
    target_ip="10.0.0.2",
    source_platform="Linux",
    target_platform="Windows",
    tactic="TA0001",
    technique="T1190",
    sensor_ip="10.0.0.9",
    fp="false",
    label="Attack_1",
):
    return [source_ip, target_ip, source_platform, target_platform, tactic, technique, sensor_ip, fp, label]


def write_alert_csv(path: Path, rows: list[list[str]]) -> Path:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(rows)
    return path


@pytest.fixture()
def two_row_csv(tmp_path):
    """Two TP alerts of one multi-stage attack sharing a technique id."""
    rows = [
        alert_row(source_ip="192.168.0.21", target_ip="192.168.0.20", technique="T0106"),
        alert_row(source_ip="192.168.0.20", target_ip="192.168.0.22", tactic="TA0106", technique="T0106"),
    ]
    return write_alert_csv(tmp_path / "two.csv", rows)


@pytest.fixture()
def toy_csv(tmp_path):
    """Small separable set: technique decides TP vs FP, 60 rows."""
    rows = []
    for i in range(30):
        rows.append(alert_row(source_ip=f"10.0.0.{i % 5}", technique="T1190", fp="false", label="Attack_1"))
        rows.append(alert_row(source_ip=f"10.0.1.{i % 5}", technique="T1059", fp="true", label=""))
    return write_alert_csv(tmp_path / "toy.csv", rows)
