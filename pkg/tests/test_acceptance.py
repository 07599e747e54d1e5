"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N [PASS|FAIL]`` line (also collected
in the terminal summary) before asserting. The soundness sweep runs last so
that it sees every Feasible verdict produced by the rest of the suite.
"""

import json
import time

import numpy as np
import pytest

from cpzinc.cli import main
from cpzinc.core import evaluate, linear_map
from cpzinc.encode import (
    cor1_size_formula,
    encode_cor1,
    encode_cz_lp,
    encode_prop1,
    prop1_size_formula,
    verify_certificate,
)
from cpzinc.io import document_to_set, parse_set, serialize_set
from cpzinc.oracle import max_outer_distance
from cpzinc.randsets import random_cpz, random_pair_with_dims
from cpzinc.solve import check_inclusion, solve_linear_feasibility

from conftest import FIXTURES

TIME_CAP_S = 120.0


def _cli_check(tmp_dir, inner, outer, *extra):
    out = tmp_dir / f"{inner}_{outer}{'_'.join(extra)}.json"
    t0 = time.perf_counter()
    code = main(["check", "--inner", str(FIXTURES / f"{inner}.json"),
                 "--outer", str(FIXTURES / f"{outer}.json"), "--json", str(out), *extra])
    elapsed = time.perf_counter() - t0
    return code, json.loads(out.read_text()), elapsed


@pytest.fixture(scope="module")
def table_runs(tmp_path_factory, table_cases, table_sets, registry):
    """The six table checks through the CLI with method cor1."""
    tmp = tmp_path_factory.mktemp("table")
    runs = {}
    for inner, outer, truth in table_cases:
        code, doc, elapsed = _cli_check(tmp, inner, outer, "--method", "cor1")
        if doc["status"] == "proven":
            registry.add(table_sets[inner], table_sets[outer], f"table {inner}<={outer}")
        runs[(inner, outer)] = (truth, code, doc["status"], elapsed)
    return runs


def test_criterion_1_table_verdicts(table_runs, criterion):
    wrong, slow = [], []
    for (inner, outer), (truth, code, status, elapsed) in table_runs.items():
        expected = "proven" if truth else "not_proven"
        if status != expected:
            wrong.append(f"{inner}<={outer}: {status} (expected {expected})")
        if elapsed > TIME_CAP_S:
            slow.append(f"{inner}<={outer}: {elapsed:.1f}s")
    worst = max(r[3] for r in table_runs.values())
    ok = not wrong and not slow
    detail = "; ".join(wrong + slow) or f"6/6 verdicts match, slowest {worst:.2f}s"
    criterion(1, "table verdicts via cor1", ok, detail)
    assert ok, detail


def test_criterion_2_falsification(tmp_path, table_cases, table_sets, registry, criterion):
    missing = []
    for inner, outer, truth in table_cases:
        if truth:
            continue
        code, doc, _ = _cli_check(tmp_path, inner, outer, "--falsify", "10000")
        if doc["status"] == "proven":
            registry.add(table_sets[inner], table_sets[outer], f"falsify run {inner}<={outer}")
        w = doc.get("witness")
        if code != 3 or w is None or not w["distance"] > 1e-2:
            missing.append(f"{inner}<={outer}: status {doc['status']}, exit {code}")
    ok = not missing
    detail = "; ".join(missing) or "witnesses for all three negatives"
    criterion(2, "falsification of ground-truth negatives", ok, detail)
    assert ok, detail


def test_criterion_3_identity_self_inclusion(registry, criterion):
    rng = np.random.default_rng(3)
    bad = []
    for k in range(50):
        S = random_cpz(rng, d_max=3, n_max=6, s_max=4, q_max=4)
        out = registry.record(S, S, check_inclusion(S, S, "cor1"), "criterion 3")
        if not out.feasible:
            bad.append(f"#{k} not proven")
            continue
        rep = verify_certificate(S, S, out.certificate, 1e-8, 1e-8)
        if not rep.passed or max(rep.eq_residuals.values()) > 1e-8:
            bad.append(f"#{k} residual check failed {rep.failed()}")
    ok = not bad
    detail = "; ".join(bad) or "50/50 feasible, residuals <= 1e-8"
    criterion(3, "self-inclusion of random CPZs", ok, detail)
    assert ok, detail


def test_criterion_4_size_formulas(criterion):
    rng = np.random.default_rng(44)
    bad = []
    for k in range(200):
        dims, inner, outer = random_pair_with_dims(rng)
        args = tuple(dims[key] for key in ("d", "n1", "n2", "p1", "p2", "q1", "q2", "s2"))
        if encode_prop1(inner, outer).size_report != prop1_size_formula(*args):
            bad.append(f"prop1 #{k} {dims}")
        if encode_cor1(inner, outer).size_report != cor1_size_formula(*args):
            bad.append(f"cor1 #{k} {dims}")
    ok = not bad
    detail = "; ".join(bad[:5]) or "200/200 tuples match for both encodings"
    criterion(4, "encoding-size formulas", ok, detail)
    assert ok, detail


def test_criterion_5_linear_map_exactness(criterion):
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(100):
        S = random_cpz(rng)
        M = rng.normal(size=(int(rng.integers(1, 5)), S.d))
        lam = rng.uniform(-1, 1, size=S.s)
        diff = evaluate(linear_map(M, S), lam)[0] - M @ evaluate(S, lam)[0]
        worst = max(worst, float(np.max(np.abs(diff))))
    ok = worst <= 1e-12
    criterion(5, "linear-map exactness", ok, f"max deviation {worst:.2e} over 100 triples")
    assert ok


def test_criterion_6_cz_consistency(cz_pairs, registry, criterion):
    bad = []
    for k, (inner, outer) in enumerate(cz_pairs):
        out = registry.record(inner, outer, solve_linear_feasibility(encode_cz_lp(inner, outer)),
                              "criterion 6")
        if not out.feasible:
            bad.append(f"#{k} LP not feasible")
            continue
        cert = out.certificate
        if not (np.array_equal(cert.Psi, cert.Gamma) and np.array_equal(cert.psi, cert.gamma)):
            bad.append(f"#{k} transport mismatch")
        if not verify_certificate(inner, outer, cert).passed:
            bad.append(f"#{k} transported certificate fails")
    ok = not bad
    detail = "; ".join(bad[:5]) or "100/100 LP feasible and transported certificates verify"
    criterion(6, "CZ specialization consistency", ok, detail)
    assert ok, detail


def test_criterion_8_round_trip_and_exit_codes(table_runs, criterion):
    problems = []
    for path in sorted(FIXTURES.glob("*.json")):
        S = parse_set(path)
        if not document_to_set(json.loads(serialize_set(S))).equals(S):
            problems.append(f"{path.name} does not round-trip")
    for (inner, outer), (truth, code, _, _) in table_runs.items():
        allowed = {0} if truth else {2, 3}
        if code not in allowed:
            problems.append(f"{inner}<={outer}: exit {code}, expected {sorted(allowed)}")
    ok = not problems
    codes = [table_runs[k][1] for k in table_runs]
    detail = "; ".join(problems) or f"fixtures round-trip, exit codes {codes}"
    criterion(8, "round-trip and exit codes", ok, detail)
    assert ok, detail


@pytest.mark.runs_last
def test_criterion_7_soundness_sweep(registry, criterion):
    violations, vacuous = [], []
    n_pairs = len(registry.pairs)
    for inner, outer, origins in registry.pairs.values():
        dist, seen = max_outer_distance(inner, outer, 10_000, stop_above=1e-3)
        if seen == 0:
            # no admissible inner point found: nothing can lie outside
            vacuous.append(origins[0])
        elif dist > 1e-3:
            violations.append(f"{origins[0]}: distance {dist:.3g}")
    ok = n_pairs > 0 and not violations
    detail = f"{n_pairs} certified pairs; "
    detail += "; ".join(violations) if violations else "all samples within 1e-3"
    if vacuous:
        detail += f"; empty inner sample for {', '.join(vacuous)}"
    criterion(7, "soundness cross-check of Feasible verdicts", ok, detail)
    assert ok, detail
