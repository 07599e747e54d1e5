"""Shared fixtures.

Every test that obtains a Feasible verdict records the (inner, outer) pair
in ``REGISTRY``; the soundness sweep in ``test_acceptance.py`` runs after
everything else and samples each recorded pair against the oracle.
"""

from __future__ import annotations

import dataclasses
import hashlib
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from cpzinc.fixtures import TABLE_CASES
from cpzinc.io import parse_set, serialize_set
from cpzinc.randsets import random_cz_pair

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

REPO = Path(__file__).resolve().parents[1]
FIXTURES = REPO / "fixtures"


class FeasibleRegistry:
    """Pairs for which some test saw a Feasible verdict, deduplicated by content."""

    def __init__(self):
        self.pairs = {}

    @staticmethod
    def _key(inner, outer) -> str:
        h = hashlib.sha256()
        h.update(serialize_set(dataclasses.replace(inner, name=None)).encode())
        h.update(b"|")
        h.update(serialize_set(dataclasses.replace(outer, name=None)).encode())
        return h.hexdigest()

    def add(self, inner, outer, origin: str):
        entry = self.pairs.setdefault(self._key(inner, outer), (inner, outer, []))
        entry[2].append(origin)

    def record(self, inner, outer, outcome, origin: str):
        if outcome.feasible:
            self.add(inner, outer, origin)
        return outcome


REGISTRY = FeasibleRegistry()
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture(scope="session")
def registry() -> FeasibleRegistry:
    return REGISTRY


@pytest.fixture(scope="session")
def criterion():
    """Record and print the PASS/FAIL line of one acceptance criterion."""
    def report(number: int, title: str, ok: bool, detail: str = ""):
        line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}"
        if detail:
            line += f" -- {detail}"
        ACCEPTANCE[number] = line
        print(line)
        return ok
    return report


@pytest.fixture(scope="session")
def table_sets():
    return {name: parse_set(FIXTURES / f"{name}.json") for name in ("P1", "P2", "P3")}


@pytest.fixture(scope="session")
def table_cases():
    return TABLE_CASES


@pytest.fixture(scope="session")
def cz_pairs():
    """100 constrained-zonotope pairs with inclusion by construction."""
    rng = np.random.default_rng(6)
    return [random_cz_pair(rng) for _ in range(100)]


def pytest_collection_modifyitems(config, items):
    last = [it for it in items if it.get_closest_marker("runs_last")]
    items[:] = [it for it in items if not it.get_closest_marker("runs_last")] + last


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
