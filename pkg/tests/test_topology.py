import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from crd2d.config import ScenarioConfig
from crd2d.topology import (ArrivalProcess, CellGeometry, Region, classify_region, deploy_nodes,
                            draw_arrivals)

GEOM = CellGeometry((0.0, 0.0), 30.0, 500.0, 150.0, 350.0)


@pytest.mark.parametrize("dist, region", [
    (0.0, Region.A), (100.0, Region.A), (149.999, Region.A), (150.0, Region.B), (300.0, Region.B),
    (350.0, Region.C), (500.0, Region.C), (501.0, Region.OUTSIDE),
])
def test_classify_region_boundaries(dist, region):
    assert classify_region((dist, 0.0), GEOM) is region
    assert classify_region((0.0, -dist), GEOM) is region


@given(st.floats(-2000, 2000), st.floats(-2000, 2000))
def test_classification_is_a_partition(x, y):
    tag = classify_region((x, y), GEOM)
    r = math.hypot(x, y)
    hits = [r < 150, 150 <= r < 350, 350 <= r <= 500, r > 500]
    assert sum(hits) == 1
    assert tag is [Region.A, Region.B, Region.C, Region.OUTSIDE][hits.index(True)]


def test_geometry_rejects_empty_region_b():
    with pytest.raises(ValueError, match="Region B"):
        CellGeometry((0.0, 0.0), 30.0, 500.0, 350.0, 350.0)


def test_deploy_table_defaults():
    nodes = deploy_nodes(ScenarioConfig(), seed=3, d2d_demand=20)
    assert len(nodes.serving_ues) == 50 and len(nodes.neighbor_ues) == 50
    assert len(nodes.d2d_pairs) == 20


def test_deploy_zero_demand():
    nodes = deploy_nodes(ScenarioConfig(), seed=3, d2d_demand=0)
    assert nodes.d2d_pairs == () and nodes.cr_d2d_pairs == ()
    assert nodes.d2d_tx.shape == (0, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**63), st.integers(0, 40), st.sampled_from(["region_b", "cell"]))
def test_nodeset_invariants(seed, demand, placement):
    cfg = ScenarioConfig(d2d_placement=placement)
    nodes = deploy_nodes(cfg, seed, demand)
    for ue in nodes.serving_ues:
        assert math.dist(ue, nodes.serving_bs) <= cfg.coverage_radius_m
    for ue in nodes.neighbor_ues:
        assert math.dist(ue, nodes.neighbor_bs) <= cfg.coverage_radius_m
    for i, pair in enumerate(nodes.d2d_pairs):
        assert pair.region is classify_region(pair.tx, cfg.serving_geometry)
        assert pair.region is not Region.OUTSIDE
        assert cfg.d2d_dist_min_m - 1e-9 <= pair.separation <= cfg.d2d_dist_max_m + 1e-9
        assert (pair.region is not Region.B) == (i in nodes.cr_d2d_pairs)
    if placement == "region_b":
        assert all(p.region is Region.B for p in nodes.d2d_pairs)


def test_deploy_is_deterministic():
    cfg = ScenarioConfig()
    assert deploy_nodes(cfg, 11, 7) == deploy_nodes(cfg, 11, 7)
    assert deploy_nodes(cfg, 11, 7) != deploy_nodes(cfg, 12, 7)


def test_d2d_tx_fills_region_b_annulus_uniformly():
    nodes = deploy_nodes(ScenarioConfig(), 5, 20_000)
    r = np.hypot(*nodes.d2d_tx.T)
    # uniform over the annulus: F(r) = (r^2 - a^2) / (b^2 - a^2)
    p = stats.kstest(r, lambda x: (x**2 - 150.0**2) / (350.0**2 - 150.0**2)).pvalue
    assert p > 0.01


def test_arrivals_deterministic_and_seed_dependent():
    proc = ArrivalProcess(20.0, 99)
    assert draw_arrivals(proc, 5) == draw_arrivals(proc, 5)
    seq_a = [draw_arrivals(proc, t) for t in range(50)]
    seq_b = [draw_arrivals(ArrivalProcess(20.0, 100), t) for t in range(50)]
    assert seq_a != seq_b


def test_arrivals_vanishing_rate():
    proc = ArrivalProcess(1e-9, 1)
    assert all(draw_arrivals(proc, t) == 0 for t in range(1000))


def test_arrival_rate_must_be_positive():
    with pytest.raises(ValueError):
        ArrivalProcess(0.0)
