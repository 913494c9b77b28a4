import numpy as np
import pytest

from crd2d.config import ScenarioConfig
from crd2d.engine import CdfSeries, aggregate, build_scene, run_tti, simulate, sweep

from oracle import SceneOracle

CFG = ScenarioConfig(tti_count=300, seed=7)


@pytest.fixture(scope="module")
def records():
    return simulate(CFG, thresholds=[0.0, 6.0, 8.0])


def test_vanishing_demand_is_no_d2d_baseline():
    cfg = CFG.replace(d2d_arrival_rate=1e-9, tti_count=50)
    for rec in simulate(cfg, thresholds=[8.0])[8.0]:
        assert rec.arrivals == rec.d2d_served == rec.crd2d_served == rec.blocked == 0
        assert rec.ue_rate_bps == rec.ue_baseline_rate_bps
        assert rec.ue_sinr_db == rec.ue_snr_db


def test_run_tti_matches_sweep(records):
    for tti in (0, 17, 299):
        assert run_tti(CFG, tti, 8.0) == records[8.0][tti]


def test_determinism():
    a = simulate(CFG.replace(tti_count=40), thresholds=[4.0])
    b = simulate(CFG.replace(tti_count=40), thresholds=[4.0])
    assert a == b


def test_common_random_numbers(records):
    for r0, r8 in zip(records[0.0], records[8.0]):
        assert (r0.arrivals, r0.serving_ue, r0.ue_snr_db, r0.nbr_snr_db) == (r8.arrivals, r8.serving_ue, r8.ue_snr_db,
                                                                              r8.nbr_snr_db)


def test_conservation(records):
    for recs in records.values():
        for r in recs:
            assert r.d2d_served + r.crd2d_served + r.blocked == r.arrivals
            assert len(r.d2d_rates_bps) == r.d2d_served and len(r.crd2d_rates_bps) == r.crd2d_served


def test_round_robin_scheduling(records):
    assert [r.serving_ue for r in records[8.0][:52]] == [t % 50 for t in range(52)]


def test_cr_disabled_has_no_cr_links():
    recs = simulate(CFG.replace(cr_enabled=False, tti_count=100), thresholds=[8.0])[8.0]
    assert all(r.crd2d_served == 0 and r.stop_cr == "disabled" for r in recs)


def test_serving_phase_independent_of_cr(records):
    off = simulate(CFG.replace(cr_enabled=False), thresholds=[8.0])[8.0]
    assert [r.d2d_ids for r in off] == [r.d2d_ids for r in records[8.0]]
    assert aggregate(off).eta_mean == aggregate(records[8.0]).eta_serving_mean


def test_threshold_trends(records):
    b0, b6, b8 = (aggregate(records[t]) for t in (0.0, 6.0, 8.0))
    assert b8.eta_mean >= b6.eta_mean >= b0.eta_mean
    assert b8.eta_serving_mean >= b6.eta_serving_mean
    assert b0.median("ue") >= b8.median("ue")


def test_cr_beats_serving_only(records):
    b = aggregate(records[8.0])
    assert b.eta_mean > b.eta_serving_mean


def test_scene_sinr_matches_oracle():
    cfg = CFG.replace(d2d_arrival_rate=6.0)
    for tti in range(20):
        scene = build_scene(cfg, tti)
        ora = SceneOracle(scene, cfg)
        act = list(range(scene.arrivals))
        assert scene.serving.ue_sinr(act) == pytest.approx(ora.ue_sinr("serving", act), rel=1e-12)
        assert scene.neighbor.ue_sinr(act) == pytest.approx(ora.ue_sinr("neighbor", act), rel=1e-12)
        np.testing.assert_allclose(scene.serving.d2d_sinr(act), ora.d2d_sinr("serving", act), rtol=1e-12)


def test_uplink_interference_variant():
    cfg = CFG.replace(interference_source="uplink", d2d_arrival_rate=6.0)
    for tti in range(10):
        scene = build_scene(cfg, tti)
        act = list(range(scene.arrivals))
        np.testing.assert_allclose(scene.neighbor.d2d_sinr(act), SceneOracle(scene, cfg).d2d_sinr("neighbor", act),
                                   rtol=1e-12)


def test_fixed_drop_keeps_ues():
    cfg = CFG.replace(fixed_drop=True)
    a, b = build_scene(cfg, 1), build_scene(cfg, 2)
    assert a.nodes.serving_ues == b.nodes.serving_ues
    assert build_scene(CFG, 1).nodes.serving_ues != build_scene(CFG, 2).nodes.serving_ues


def test_random_scheduler_in_range():
    cfg = CFG.replace(scheduler="random")
    ids = {build_scene(cfg, t).serving_ue for t in range(200)}
    assert ids <= set(range(50)) and len(ids) > 30


def test_aggregate_trivial_cases(records):
    base = records[0.0][0]
    zero = [base.__class__(**{**base.__dict__, "d2d_served": 0, "crd2d_served": 0, "blocked": L, "arrivals": L,
                              "d2d_ids": (), "d2d_rates_bps": (), "d2d_sinr_db": (), "crd2d_ids": (),
                              "crd2d_rates_bps": (), "crd2d_sinr_db": ()})
            for L in (3, 5, 10)]
    b = aggregate(zero)
    assert b.eta_mean == 0.0 and b.blocking_mean == pytest.approx(6.0)
    one = [base.__class__(**{**base.__dict__, "d2d_served": 7, "arrivals": 7, "blocked": 0, "crd2d_served": 0})]
    assert aggregate(one).eta_mean == 7.0
    with pytest.raises(ValueError):
        aggregate([])


def test_cdf_series():
    c = CdfSeries.from_samples([3.0, 3.0, 3.0])
    assert c.values.tolist() == [3.0] * 3 and c.probabilities[-1] == 1.0
    assert c(2.999) == 0.0 and c(3.0) == 1.0
    c = CdfSeries.from_samples([5.0, 1.0, 3.0, 2.0])
    assert c.values.tolist() == [1.0, 2.0, 3.0, 5.0]
    assert c.probabilities.tolist() == [0.25, 0.5, 0.75, 1.0]
    assert len(CdfSeries.from_samples([])) == 0


def test_cdfs_well_formed(records):
    for recs in records.values():
        for cdf in aggregate(recs).cdfs.values():
            if len(cdf):
                assert np.all(np.diff(cdf.values) >= 0) and np.all(np.diff(cdf.probabilities) >= 0)
                assert cdf.probabilities[-1] == 1.0


def test_sweep_single_threshold():
    res = sweep(CFG.replace(tti_count=20), thresholds=[0.0])
    assert list(res) == [0.0]
