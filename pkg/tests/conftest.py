from __future__ import annotations

from pathlib import Path

import pytest

from alertsynth import load_attack, load_knowledge_base, load_network

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture(scope="session")
def kb():
    return load_knowledge_base(CONFIGS / "kb.yaml")


@pytest.fixture(scope="session")
def smallnet(kb):
    return load_network(CONFIGS / "smallnet" / "network.yaml", kb)


@pytest.fixture(scope="session")
def attack1(kb):
    return load_attack(CONFIGS / "smallnet" / "attack1.yaml", kb)


@pytest.fixture()
def smallnet_manifest():
    return CONFIGS / "smallnet" / "manifest.yaml"


@pytest.fixture()
def icsgrid_manifest():
    return CONFIGS / "icsgrid" / "manifest.yaml"
