import math

import numpy as np
import pytest

import fixpoint as fp


def test_projection_and_distance():
    ball = fp.Set.ball([0.0, 0.0], 1.0)
    assert ball.dim == 2
    assert ball.is_convex
    assert ball.distance([3.0, 4.0]) == pytest.approx(4.0)
    np.testing.assert_allclose(ball.project_one([3.0, 4.0]), [0.6, 0.8])
    pts = fp.Set.points(np.array([[1.0, 0.0], [-1.0, 0.0]]))
    ties = pts.project([0.0, 2.0])
    assert ties.shape == (2, 2)
    assert ties[0, 0] == -1.0


def test_json_round_trip():
    s = fp.Set.box([0.0, 0.0], [1.0, 2.0])
    back = fp.Set.from_json(s.to_json())
    assert back.to_json() == s.to_json()
    with pytest.raises(ValueError):
        fp.Set.from_json('{"variant": "blob"}')


def test_ap_on_two_lines():
    a = fp.Set.affine([0.0, 0.0], [[1.0, 0.0]])
    b = fp.Set.affine([0.0, 0.0], [[math.cos(math.pi / 3), math.sin(math.pi / 3)]])
    t = fp.run_ap(a, b, [1.0, 0.0])
    assert t["stop_reason"] == "fixed_point"
    assert fp.q_rate(t["x"], np.zeros(2)) == pytest.approx(0.25, abs=1e-9)
    c, gamma = fp.r_rate(t["x"], np.zeros(2))
    assert c == pytest.approx(0.25, abs=1e-6)
    origin = fp.Set.points(np.zeros((1, 2)))
    assert fp.sr_prime(a, b, origin, [0.0, 0.0], 1.0, samples=2000) == pytest.approx(2 / math.sqrt(3), abs=1e-9)


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        fp.Set.ball([0.0, 0.0], 1.0).distance([1.0, 2.0, 3.0])


def test_run_scenario_and_estimate():
    out = fp.run_scenario("two_lines_pi3", samples=5000)
    assert out["mismatches"] == []
    assert out["report"]["measured_q_rate"] == pytest.approx(0.25, abs=1e-6)
    assert out["trace_csv"].startswith("k,x_0,x_1")
    est = fp.estimate("sr_prime", "sawtooth", samples=5000)
    assert est["value"] == pytest.approx(math.sqrt(10), rel=1e-2)
    assert "sawtooth" in fp.scenario_names()
    assert fp.scenario("geometric_n2")["name"] == "geometric_n2"


def test_verify_quick_criteria():
    results = [r for r in fp.verify("paper_examples") if r["id"] in (1, 3, 4)]
    assert all(r["pass"] for r in results)
    with pytest.raises(ValueError):
        fp.suite_criteria("nope")
