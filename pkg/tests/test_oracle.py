import dataclasses

import numpy as np
import pytest

from cpzinc.core import ConPolyZonotope, LambdaPoint, sample_points
from cpzinc.fixtures import example_set, scaled_set, unit_box
from cpzinc.oracle import (
    MembershipOracle,
    OracleOptions,
    Witness,
    check_witness,
    falsify_inclusion,
    membership_distance,
    seed_lambdas,
)
from cpzinc.solve import check_inclusion


def test_center_of_zonotope():
    Z = ConPolyZonotope([1.0, -2.0], [[1.0, 0.5], [0.0, 2.0]], np.eye(2, dtype=int))
    assert membership_distance([1.0, -2.0], Z) == 0.0


def test_known_member_of_example():
    assert membership_distance([1.0, 0.5], example_set()) <= 1e-6


def test_far_point_of_example():
    assert membership_distance([10.0, 10.0], example_set()) >= 5.0


def test_exterior_point_of_box_is_exact():
    assert membership_distance([2.0, 0.0], unit_box()) == pytest.approx(1.0, abs=1e-9)


def test_dimension_check():
    with pytest.raises(ValueError):
        MembershipOracle(unit_box()).distances(np.zeros((1, 3)))


def test_seed_grid_cap():
    opts = OracleOptions()
    assert seed_lambdas(3, opts).shape == (21 ** 3, 3)
    assert seed_lambdas(5, opts).shape[0] <= 10**6
    assert seed_lambdas(8, opts).shape[0] <= 10**6
    assert (seed_lambdas(3, opts) == 0).all(axis=1).any()


def test_grid_option_validated():
    with pytest.raises(ValueError):
        OracleOptions(grid_per_dim=1)


def test_upper_bound_property_on_example():
    S = example_set()
    draw = sample_points(S, 1000, tol_c=1e-10, seed=11)
    assert len(draw) == 1000
    dist = MembershipOracle(S).distances(draw.points)
    assert dist.max() <= 1e-3


def test_falsify_reverse_table_pair():
    inner, outer = scaled_set("P2"), scaled_set("P1")
    w = falsify_inclusion(inner, outer, 2000)
    assert w is not None and w.outer_distance > 1e-2
    assert check_witness(w, inner, outer) == []


def test_no_witness_for_forward_table_pair():
    assert falsify_inclusion(scaled_set("P1"), scaled_set("P2"), 10_000) is None


@pytest.mark.parametrize("count", [10, 1000])
def test_no_witness_for_self_inclusion(count):
    S = example_set()
    assert falsify_inclusion(S, S, count) is None


def test_witness_revalidation_catches_tampering():
    inner, outer = scaled_set("P3"), scaled_set("P1")
    w = falsify_inclusion(inner, outer, 2000)
    assert w is not None and check_witness(w, inner, outer) == []
    moved = dataclasses.replace(w, point=w.point + 1.0)
    assert check_witness(moved, inner, outer)
    outside = Witness(w.point, LambdaPoint(np.full(inner.s, 2.0)), w.outer_distance)
    assert "lambda outside the unit box" in check_witness(outside, inner, outer)


def test_falsify_dimension_mismatch():
    with pytest.raises(ValueError):
        falsify_inclusion(unit_box(2), unit_box(3), 10)


def test_deterministic_given_seed():
    a = falsify_inclusion(scaled_set("P3"), scaled_set("P2"), 500, OracleOptions(seed=4))
    b = falsify_inclusion(scaled_set("P3"), scaled_set("P2"), 500, OracleOptions(seed=4))
    np.testing.assert_array_equal(a.point, b.point)


def test_feasible_table_verdicts_admit_no_witness():
    """Certified inclusions must not be refuted by sampling."""
    refuted = []
    for a, b in [("P1", "P2"), ("P2", "P1"), ("P1", "P3"),
                 ("P3", "P1"), ("P2", "P3"), ("P3", "P2")]:
        inner, outer = scaled_set(a), scaled_set(b)
        if check_inclusion(inner, outer).feasible:
            w = falsify_inclusion(inner, outer, 10_000)
            if w is not None:
                refuted.append((a, b, round(w.outer_distance, 3)))
    assert not refuted
