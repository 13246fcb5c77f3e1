import json
import math

import pytest

import eavesim
from eavesim import closed_form


def half_phi(z):
    total = 0.0
    for t in (1 + z, 1 - z):
        if t > 0:
            total += t * math.log2(t)
    return total / 2


def test_delta_map_round_trip():
    assert eavesim.delta_from_d(0.1) == pytest.approx(0.2, abs=1e-12)
    assert eavesim.d_from_delta(0.2) == pytest.approx(0.1, abs=1e-12)


def test_single_eavesdropper_is_optimal():
    for k in range(11):
        d = 0.05 * k
        report = eavesim.analyze(eavesim.symmetric_scenario([d]))
        assert report.d_b == pytest.approx(d, abs=1e-12)
        assert report.eves[0].mutual_information == pytest.approx(half_phi(2 * math.sqrt(d * (1 - d))), abs=1e-12)
        assert report.i_opt == pytest.approx(report.eves[0].mutual_information, abs=1e-12)


def test_two_eavesdroppers_match_closed_form():
    report = eavesim.analyze(eavesim.symmetric_scenario([0.1, 0.2]))
    assert [e.gain for e in report.eves] == pytest.approx(closed_form.gains([0.1, 0.2]), abs=1e-12)
    assert report.d_b == pytest.approx(0.26, abs=1e-12)
    assert closed_form.bob_error_recursive([0.1, 0.2]) == pytest.approx(0.26, abs=1e-12)
    assert closed_form.bob_error_product([0.1, 0.2, 0.3]) == pytest.approx(0.404, abs=1e-12)


def test_asymmetric_scenario_and_capacity():
    scenario = eavesim.AttackScenario([eavesim.EveParams(0.3, 0.05)])
    report = eavesim.analyze(scenario)
    assert not report.symmetric
    assert report.i_ab >= 0
    with pytest.raises(eavesim.CapacityError):
        eavesim.analyze(eavesim.AttackScenario([eavesim.EveParams.from_disturbance(0.1)] * 3, max_qubits=5))
    with pytest.raises(ValueError):
        eavesim.symmetric_scenario([0.7])


def test_crossover():
    d = closed_form.crossover_disturbance()
    assert abs(d - 0.146447) < 1e-6
    assert closed_form.optimal_information(d) == pytest.approx(closed_form.receiver_information(d), abs=1e-9)


def test_diagram_rows_from_config_text():
    rows = eavesim.diagram_rows("d = 0.1\nsweep.eve = 2\nsweep.step = 0.1\n")
    assert [r.d_var for r in rows] == pytest.approx([0.0, 0.1, 0.2, 0.3, 0.4, 0.5])
    assert rows[1].d_b == pytest.approx(0.18, abs=1e-12)
    assert all(len(r.i_ae) == 2 for r in rows)
    with pytest.raises(eavesim.ConfigError, match="<string>:2:"):
        eavesim.diagram_rows("d = 0.1\nbasis = zz\n")


def test_analysis_json():
    doc = json.loads(eavesim.analysis_json("d = 0.1, 0.1\n"))
    assert doc["report"]["d_b"] == pytest.approx(0.18, abs=1e-12)


def test_verification_and_negative_control():
    ok = eavesim.run_verification(samples=500, brute_force_draws=5, seed=7)
    assert ok.passed
    broken = eavesim.run_verification(
        samples=500, brute_force_draws=5, fault=eavesim.CircuitFault.swapped_signal_cnot, seed=7
    )
    assert not broken.passed
    assert not broken.find("gain_product_law").passed
