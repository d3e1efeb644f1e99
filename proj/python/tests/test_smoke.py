import math
import pathlib

import numpy as np
import pytest

import cartonfold

DATA = pathlib.Path(__file__).resolve().parents[2] / "data" / "cartons"


def load(name):
    return cartonfold.KinematicTree(cartonfold.load_spec(str(DATA / name)))


def test_parse_and_connectivity():
    spec = cartonfold.parse_spec(
        """
panels:
  - {id: 1, dims_mm: [200, 300, 2]}
  - {id: 2, parent: 1, dims_mm: [100, 300, 2], crease_anchor_mm: [0, 201, 0],
     crease_dir: [1, 0, 0], theta_final_deg: 90}
"""
    )
    assert spec.panel_ids == [1, 2]
    tree = cartonfold.KinematicTree(spec)
    assert tree.connectivity() == [[0, 1], [0, 0]]
    assert tree.foldable_ids == [2]
    again = cartonfold.parse_spec(spec.to_yaml())
    assert again.panel_ids == [1, 2]


def test_invalid_spec_raises_value_error():
    with pytest.raises(ValueError, match="cycle"):
        cartonfold.parse_spec(
            """
panels:
  - {id: 1, dims_mm: [10, 10, 1]}
  - {id: 2, parent: 3, dims_mm: [10, 10, 1], theta_final_deg: 90}
  - {id: 3, parent: 2, dims_mm: [10, 10, 1], theta_final_deg: 90}
"""
        )


def test_forward_kinematics_raises_flap():
    tree = load("two_panel.yaml")
    poses = tree.forward_kinematics({2: math.pi / 2})
    flap = next(p for p in poses if p["id"] == 2)
    np.testing.assert_allclose(flap["center"], [150, 201, 51], atol=1e-9)
    np.testing.assert_allclose(flap["rotation"][:, 1], [0, 0, 1], atol=1e-12)


def test_enumerate_and_rank_case_study():
    tree = load("case_study.yaml")
    memo = cartonfold.enumerate_sequences(tree)
    assert len(memo) > 100
    assert memo == cartonfold.enumerate_sequences(tree, mode="naive")
    ranked = cartonfold.score_and_rank(tree, memo)
    assert len(ranked) == len(memo)
    keys = [(r["naf"], r["maxdim_mm"]) for r in ranked]
    assert keys == sorted(keys)
    assert len(ranked[0]["per_step"]) == 7


def test_blocking_pair_order():
    tree = load("blocking_pair.yaml")
    assert cartonfold.collision_check(tree, [], 3)
    assert not cartonfold.collision_check(tree, [2], 3)
    assert cartonfold.enumerate_sequences(tree) == [[3, 2]]


def test_obb_intersect():
    eye = np.eye(3)
    half = np.ones(3)
    assert cartonfold.obb_intersect([0, 0, 0], eye, half, [1.9, 0, 0], eye, half)
    assert not cartonfold.obb_intersect(
        [0, 0, 0], eye, half, [2.05, 0, 0], eye, half
    )
    assert cartonfold.obb_intersect(
        [0, 0, 0], eye, half, [2.05, 0, 0], eye, half, clearance=0.2
    )
