"""Smoke tests for the python module: a few closed-form values and one
small solve per surface."""

import math

import pytest

try:
    import ringq as rq
except ImportError:
    import _ringq as rq


def test_sphere_constants():
    assert rq.omega(2) == pytest.approx(2 * math.pi)
    assert rq.omega(3) == pytest.approx(4 * math.pi)
    assert rq.ball_volume(2) == pytest.approx(math.pi)
    for n in range(2, 6):
        assert rq.omega(n) / rq.ball_volume(n) == pytest.approx(n)


def test_chordal_metric():
    assert rq.chordal_distance([0.0, 0.0], None) == pytest.approx(1.0)
    assert rq.chordal_distance([1.0, 0.0], [-1.0, 0.0]) == pytest.approx(1.0)
    assert rq.chordal_distance([0.3, 0.4], [0.3, 0.4]) == 0.0
    assert rq.antipodal([0.0, 2.0]) == pytest.approx([0.0, -0.5])
    assert rq.antipodal([0.0, 0.0]) is None


def test_ring_capacity_matches_the_closed_form():
    result = rq.capacity_ring(2, 0.5, 1.0, grid=64)
    exact = rq.ring_modulus_exact(0.5, 1.0, 2)
    assert result["exact"] == pytest.approx(exact)
    assert result["value"] == pytest.approx(exact, rel=0.03)
    assert result["residual"] <= 1e-5


def test_profile_diagnostics():
    assert rq.q_mean("const:2", 2, 0.5) == pytest.approx(2.0)
    value, diverges = rq.dini("const:1", 2, 0.3)
    assert diverges
    value, diverges = rq.dini("log2", 2, 0.35)
    assert not diverges
    assert value == pytest.approx(1.0 / math.log(1.0 / 0.35), rel=0.02)
    sweep = rq.fmo_sweep("log", 2, 4, 8)
    assert all(o == pytest.approx(1.0 / math.e, rel=1e-2) for o in sweep)


def test_constant_pack():
    pack = rq.make_constants(2, 2 * math.pi, 1.0, 4.0)
    assert pack["alpha_n"] == pytest.approx(32.0)
    assert pack["beta_n"] == pytest.approx(1.0)
    assert pack["gamma_np"] == pytest.approx(1.0)
    # Envelope linearity for the unit profile.
    assert rq.mean_integral_envelope("const:1", 2, 0.25, 0.05) == pytest.approx(
        32.0 * 0.05 / 0.25, rel=1e-9
    )


def test_radial_family():
    assert rq.truncated_map_rho("const:1", 2, 4, 0.3) == pytest.approx(0.3, rel=1e-9)
    expected = math.exp(-2.0 + 1.0 / math.log(8.0))
    assert rq.truncated_map_rho("log2", 2, 8, 1.0 / 8.0) == pytest.approx(expected, rel=1e-6)
    r = 0.5
    assert rq.inner_dilatation("log2", 2, 8, r) == pytest.approx(
        max(1.0, math.log(1.0 / r) ** 2), rel=1e-6
    )
    rows = rq.family_experiment("log2", 2, 4, [0.25, 0.125])
    assert len(rows) == 8


def test_ring_inequality():
    report = rq.verify_eq2("const:1", 2, 0.2, 0.7, samples=25)
    assert report["violations"] == 0
    assert abs(report["extremal_slack"]) <= 1e-6 * report["lhs"]
    bad = rq.verify_eq2("const:0.5", 2, 0.2, 0.7, samples=25)
    assert bad["violations"] >= 1


def test_set_function():
    c, values = rq.c_set("ball 0 0 0.4", n=2, grid=48)
    cap = rq.omega(2) / math.log(math.sqrt(3.0))
    assert 0.0 < c <= cap * 1.05
    assert len(values) >= 26

    chain = rq.set_function_lower_bound(0.4, 0.9)
    assert chain["min_form"] == pytest.approx(0.4)
    assert chain["min_branch_is_fC"]
    assert rq.displacement_estimate(0.0, 0.5, 0.25) == 0.0
