import math

import pytest

import pwlbif


def test_reduce_matches_known_values():
    rp = pwlbif.reduce(pwlbif.NormalFormParams(2, 0.75, -0.45, 1.4), m=2)
    assert rp.eta == pytest.approx(0.023125, abs=1e-12)
    assert rp.nu == pytest.approx(0.0875, abs=1e-12)
    assert rp.sigma == pytest.approx(1.5)


def test_locate_codim2():
    p = pwlbif.locate_codim2(pwlbif.NormalFormParams(2, 0.75, -0.45, 1.4))
    assert p.deltaR == pytest.approx(1.5, abs=1e-9)
    assert p.tauR == pytest.approx(-0.5, abs=1e-9)


def test_h_rescaling():
    rp = pwlbif.ReducedParams(0.05, 0.04, 1.5)
    small = pwlbif.ReducedParams(0.05 / 1.5, 0.04 / 1.5, 1.5)
    assert pwlbif.h(small, 0.03 / 1.5) == pytest.approx(pwlbif.h(rp, 0.03) / 1.5, rel=1e-12)
    assert pwlbif.branch_count(pwlbif.ReducedParams(0.023125, 0.0875, 1.5)) == 4


def test_cycle_and_classification():
    p = pwlbif.NormalFormParams(2, 0.75, -0.485, 1.455)
    c = pwlbif.solve_cycle(p, "L^8R^2")
    assert c["admissible"] and c["stable"]
    x, y = c["points"][0]
    cls = pwlbif.classify_2d(p, x + 1e-7, y)
    assert cls["label"] == "P10"
    assert cls["itinerary"] == "L^8R^2"


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        pwlbif.solve_cycle(pwlbif.NormalFormParams(2, 0.75, -0.5, 1.5), "LXR")
    with pytest.raises(ValueError):
        pwlbif.saddle(pwlbif.NormalFormParams(0.5, 0.75, -0.5, 1.5))


def test_small_scan_is_deterministic():
    a = pwlbif.scan_1d_csv(1.5, (0.0, 0.12, 8), (0.0, 0.12, 8), workers=1)
    b = pwlbif.scan_1d_csv(1.5, (0.0, 0.12, 8), (0.0, 0.12, 8), workers=2)
    assert a == b
    lines = a.strip().splitlines()
    assert lines[0] == "axis1,axis2,class,period,bands,eta,nu,N,delta,rho"
    assert len(lines) == 65


def test_band_count():
    assert pwlbif.boxcount_bands(pwlbif.ReducedParams(0.01236825, 0.00675, 1.5)) == 2
    assert math.isfinite(pwlbif.rotation_number(pwlbif.ReducedParams(0.0311, 0.7 * 0.0311, 1.5))["rho"])
