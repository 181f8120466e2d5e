"""Tests for the cylinder-ordered scheduler and its bad-sector lifecycle."""

import dataclasses

import pytest

from plattersim.faults import FaultModel, FaultSpec
from plattersim.geometry import DiskGeometry, PhysicalAddress, parse_index
from plattersim.metrics import replay, totals
from plattersim.modsbsm import (
    ASCENDING,
    DESCENDING,
    BadSectorEntry,
    arrange,
    bsm,
    decide_direction,
    execute,
)
from plattersim.workload import MemoryRequest, Scenario, builtin_case


def test_decide_direction_prefers_nearer_extreme():
    d = decide_direction(75, [28, 42, 65, 106, 185])
    assert (d.to_min, d.to_max, d.chosen, d.tie) == (47, 110, ASCENDING, False)
    d = decide_direction(140, [18, 95, 197])
    assert (d.to_min, d.to_max) == (122, 57)
    assert d.chosen == DESCENDING


def test_decide_direction_signed_distances_when_head_outside_span():
    # Head above every pending track: to_max is negative, so descending wins.
    d = decide_direction(185, [65])
    assert (d.to_min, d.to_max, d.chosen) == (120, -120, DESCENDING)
    d = decide_direction(5, [65])
    assert (d.to_min, d.to_max, d.chosen) == (-60, 60, ASCENDING)


def test_decide_direction_tie_resumes_against_recent_movement():
    assert decide_direction(90, [15, 165]).chosen == ASCENDING  # no history
    assert decide_direction(90, [15, 165], last_move="down").chosen == ASCENDING
    assert decide_direction(90, [15, 165], last_move="up").chosen == DESCENDING
    assert decide_direction(90, [15, 165], last_move="up").tie


def test_decide_direction_needs_tracks():
    with pytest.raises(ValueError):
        decide_direction(10, [])


def _reqs(triples):
    return tuple(
        MemoryRequest(address=PhysicalAddress(*t), arrival_rank=i)
        for i, t in enumerate(triples)
    )


def test_arrange_keeps_sectors_ascending_both_ways():
    reqs = _reqs([(10, 1, 6), (10, 1, 1), (20, 1, 4), (20, 1, 0)])
    up = arrange(reqs, ASCENDING)
    assert [(r.address.track, r.address.sector) for r in up] == [
        (10, 1), (10, 6), (20, 0), (20, 4),
    ]
    down = arrange(reqs, DESCENDING)
    assert [(r.address.track, r.address.sector) for r in down] == [
        (20, 0), (20, 4), (10, 1), (10, 6),
    ]


def test_arrange_finishes_a_cylinder_platter_by_platter():
    reqs = _reqs([(10, 3, 2), (10, 1, 2), (10, 2, 5), (10, 2, 2)])
    ordered = arrange(reqs, ASCENDING)
    assert [(r.address.sector, r.address.platter) for r in ordered] == [
        (2, 1), (2, 2), (2, 3), (5, 2),
    ]


def test_arrange_rejects_nonsense_direction():
    with pytest.raises(ValueError):
        arrange(_reqs([(1, 1, 1)]), "diagonally")


def test_case2_run_and_latency_sequence():
    result = execute(builtin_case(2))
    assert result.passes == 1
    assert result.totals.as_tuple() == (204, 62, 20, 286)
    assert result.totals.adat_text == "14.30"
    assert [s.latency for s in result.steps] == [
        0, 3, 3, 1, 5, 2, 2, 5, 6, 3, 1, 2, 2, 2, 5, 5, 3, 3, 3, 6,
    ]
    # ascending: jump to 28 first (seek 47), nothing serviced on the way
    assert result.steps[0].address.track == 28
    assert result.steps[0].seek == 47


def test_case6_first_pass_tie_goes_ascending():
    result = execute(builtin_case(6))
    assert result.decisions[0].tie
    assert result.decisions[0].chosen == ASCENDING
    assert result.totals.as_tuple() == (225, 57, 47, 329)
    assert result.totals.adat_text == "16.45"


def test_totals_equal_replay_of_the_visit_sequence():
    for case_id in (1, 2, 3, 4, 5, 6):
        scenario = builtin_case(case_id)
        result = execute(scenario)
        replayed = totals(replay(scenario.geometry, scenario.initial_head, result.visits))
        assert result.totals == replayed


def _with_fault(scenario, index_text, true_bit):
    address = parse_index(index_text)
    return dataclasses.replace(scenario, faults=(FaultSpec(address, true_bit),)), address


def test_bad_sector_three_pass_lifecycle():
    scenario, bad = _with_fault(builtin_case(2), "65t1p3s", 1)
    fault_model = FaultModel(scenario.faults)
    result = execute(scenario, fault_model)

    assert result.passes == 3
    assert len(result.steps) == 22  # 20 requests + 2 failed probes re-visited
    assert fault_model.probe_count(bad) == 3
    assert result.totals.request_count == 22

    entry = result.bad_sector_table[0]
    assert entry.index == bad
    assert entry.bsi == 2
    assert entry.classification == "permanent"
    assert entry.prescribed_bit == 1  # corrected to the true bit
    assert entry.finalized == 1
    assert result.resolved == (bad,)

    # pass 2: only the bad request is pending, head finished pass 1 at 185
    assert result.decisions[1].chosen == DESCENDING
    assert result.steps[20].seek == 120
    # pass 3: stationary tie, resolved ascending, zero-cost seek
    assert result.decisions[2].tie
    assert result.steps[21].seek == 0
    # every request got served exactly once
    assert sorted(result.order) == list(range(20))


def test_prescribed_bit_kept_when_it_already_matches():
    scenario, bad = _with_fault(builtin_case(2), "65t1p3s", 0)
    fault_model = FaultModel(scenario.faults)
    result = execute(scenario, fault_model)
    entry = result.bad_sector_table[0]
    assert entry.prescribed_bit == 0
    assert entry.finalized == 1
    assert fault_model.probe_count(bad) == 3


def test_bsm_serves_finalized_entries_without_probing():
    address = PhysicalAddress(5, 1, 1)
    faults = FaultModel([FaultSpec(address, 1)])
    entry = BadSectorEntry(
        index=address, bsi=2, classification="permanent", prescribed_bit=1, finalized=1
    )
    outcome = bsm(entry, faults)
    assert outcome.served and not outcome.probed
    assert outcome.bit == 1
    assert faults.probe_count(address) == 0


def test_bsm_finalizes_on_first_call_when_unfinalized():
    address = PhysicalAddress(5, 1, 1)
    faults = FaultModel([FaultSpec(address, 0)])
    entry = BadSectorEntry(
        index=address, bsi=2, classification="temporary", prescribed_bit=1, finalized=0
    )
    outcome = bsm(entry, faults)
    assert outcome.served and outcome.probed
    assert entry.prescribed_bit == 0  # inverted to match the platter
    assert entry.classification == "permanent"
    assert faults.probe_count(address) == 1


def test_multiple_bad_sectors_resolve_independently():
    scenario = builtin_case(5)
    bad_a = parse_index("98t4p6s")
    bad_b = parse_index("63t1p7s")
    faulty = dataclasses.replace(
        scenario, faults=(FaultSpec(bad_a, 1), FaultSpec(bad_b, 0))
    )
    fault_model = FaultModel(faulty.faults)
    result = execute(faulty, fault_model)
    assert result.passes == 3
    assert len(result.steps) == 24
    assert fault_model.probe_count(bad_a) == 3
    assert fault_model.probe_count(bad_b) == 3
    assert {e.index for e in result.bad_sector_table} == {bad_a, bad_b}
    assert all(e.finalized for e in result.bad_sector_table)
    assert sorted(result.order) == list(range(20))


def test_head_state_persists_across_passes():
    # Pass 2 pricing starts exactly where pass 1 parked the head, including
    # the rotational reference.
    scenario, bad = _with_fault(builtin_case(2), "65t1p3s", 1)
    result = execute(scenario)
    last_clean = result.steps[19].address  # 185t1p5s ends pass 1
    assert last_clean == parse_index("185t1p5s")
    expected = replay(scenario.geometry, last_clean, [bad])[0]
    assert result.steps[20] == expected


def test_single_request_on_head_track():
    geom = DiskGeometry(1, 10, 8)
    sc = Scenario(
        geometry=geom,
        initial_head=PhysicalAddress(5, 1, 2),
        requests=_reqs([(5, 1, 6)]),
    )
    result = execute(sc)
    assert result.totals.as_tuple() == (0, 4, 1, 5)
    assert result.decisions[0].tie
