"""Cost-model tests.

The rotational rule is checked against an independent brute-force oracle
(literally stepping the platter forward one sector at a time) before any
frozen values, so a regression in the modular arithmetic can't hide.
"""

import pytest
from hypothesis import given, strategies as st

from plattersim.geometry import DiskGeometry, PhysicalAddress
from plattersim.metrics import (
    AccessTotals,
    EnergyModel,
    ServiceStep,
    energy_saved,
    improvement,
    parse_trace_csv,
    replay,
    rotational_delta,
    totals,
    totals_csv,
    trace_csv,
    transfer_cost,
)


def _spin_forward(prev, nxt, sectors):
    """Independent oracle: rotate one sector at a time until we arrive."""
    steps = 0
    cur = prev
    while cur != nxt:
        cur = (cur + 1) % sectors
        steps += 1
    return steps


def test_rotational_delta_matches_brute_force_everywhere():
    for prev in range(8):
        for nxt in range(8):
            assert rotational_delta(prev, nxt, 8) == _spin_forward(prev, nxt, 8)


def test_rotational_delta_examples():
    assert rotational_delta(4, 4, 8) == 0  # same sector costs nothing
    assert rotational_delta(6, 4, 8) == 6
    assert rotational_delta(7, 2, 8) == 3


@given(
    sectors=st.integers(min_value=1, max_value=32),
    data=st.data(),
)
def test_rotational_delta_bounds_and_oracle(sectors, data):
    prev = data.draw(st.integers(min_value=0, max_value=sectors - 1))
    nxt = data.draw(st.integers(min_value=0, max_value=sectors - 1))
    delta = rotational_delta(prev, nxt, sectors)
    assert 0 <= delta < sectors
    assert delta == _spin_forward(prev, nxt, sectors)


def test_rotational_delta_rejects_out_of_range():
    with pytest.raises(ValueError):
        rotational_delta(8, 0, 8)
    with pytest.raises(ValueError):
        rotational_delta(0, -1, 8)


def test_transfer_cost():
    assert transfer_cost(1, 1) == 1
    assert transfer_cost(1, 2) == 2
    assert transfer_cost(1, 4) == 4
    assert transfer_cost(4, 1) == 4
    with pytest.raises(ValueError):
        transfer_cost(0, 1)


def test_replay_hand_example():
    # Worked by hand: head 50t1p0s then 52t1p1s, 52t1p3s, 40t1p0s.
    geom = DiskGeometry(4, 100, 8)
    head = PhysicalAddress(50, 1, 0)
    visits = [
        PhysicalAddress(52, 1, 1),
        PhysicalAddress(52, 1, 3),
        PhysicalAddress(40, 1, 0),
    ]
    steps = replay(geom, head, visits)
    assert [(s.seek, s.latency, s.transfer) for s in steps] == [
        (2, 1, 1),
        (0, 2, 1),
        (12, 5, 1),
    ]
    t = totals(steps)
    assert (t.tskt, t.trl, t.tdtt, t.tdat) == (14, 8, 3, 25)
    assert t.request_count == 3


def test_replay_rejects_out_of_bounds():
    geom = DiskGeometry(1, 10, 8)
    with pytest.raises(ValueError):
        replay(geom, PhysicalAddress(0, 1, 0), [PhysicalAddress(10, 1, 0)])


def test_totals_identity_and_adat_formatting():
    t = AccessTotals(tskt=204, trl=62, tdtt=20, request_count=20)
    assert t.tdat == 286
    assert t.adat_text == "14.30"
    assert AccessTotals(223, 75, 49, 20).adat_text == "17.35"
    assert AccessTotals(223, 51, 45, 20).adat_text == "15.95"
    assert AccessTotals(0, 0, 22, 22).adat_text == "1.00"


def test_adat_is_exact_internally():
    from fractions import Fraction

    assert AccessTotals(204, 62, 20, 20).adat == Fraction(286, 20)


def test_improvement_examples():
    vs_traditional = improvement([38.66, 18.03, 20.02, 24.61, 18.48, 21.99], 15.72)
    assert round(vs_traditional, 1) == 33.5
    vs_referred = improvement([16.55, 16.73, 18.60, 16.55, 16.53], 15.72)
    assert round(vs_referred, 1) == 7.5
    with pytest.raises(ValueError):
        improvement([], 1.0)


def test_energy_saved():
    assert energy_saved(5) == (300.0, 3.0)
    assert energy_saved(2) == (0.0, 0.0)
    assert energy_saved(10) == (800.0, 8.0)
    assert energy_saved(4, EnergyModel(energy_per_access=50.0, heat_per_access=0.5)) == (100.0, 1.0)
    with pytest.raises(ValueError):
        energy_saved(1)


def test_trace_csv_round_trip():
    geom = DiskGeometry(4, 100, 8)
    steps = replay(
        geom,
        PhysicalAddress(50, 1, 0),
        [PhysicalAddress(52, 1, 1), PhysicalAddress(40, 2, 3)],
    )
    text = trace_csv(steps)
    assert text.splitlines()[0] == "step,track,platter,sector,seek,latency,transfer,access"
    assert parse_trace_csv(text) == steps


def test_totals_csv_shape():
    t = AccessTotals(204, 78, 20, 20)
    text = totals_csv([("look", t)])
    assert text == "algorithm,tskt,trl,tdtt,tdat,adat\nlook,204,78,20,302,15.10\n"


def test_same_inputs_same_bytes():
    geom = DiskGeometry(2, 50, 8)
    visits = [PhysicalAddress(i, 1 + i % 2, (3 * i) % 8) for i in range(10)]
    first = trace_csv(replay(geom, PhysicalAddress(25, 1, 0), visits))
    second = trace_csv(replay(geom, PhysicalAddress(25, 1, 0), visits))
    assert first == second


@given(st.integers(min_value=1, max_value=500), st.integers(min_value=1, max_value=500))
def test_steps_compose(a, b):
    step = ServiceStep(PhysicalAddress(a, 1, b % 8), seek=a, latency=b % 8, transfer=1)
    assert step.access == step.seek + step.latency + step.transfer
