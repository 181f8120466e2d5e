"""Service-order policies for the classic and peer disk schedulers.

Every policy emits an order over arrival ranks; pricing is
:func:`plattersim.metrics.replay` plus, for the boundary-touching sweeps,
the extra track distance the arm actually covers — SCAN turns at the
physical edge of the disk and C-SCAN additionally rides the full-stroke
return (``num_tracks - 1``) before continuing in its original direction.
LOOK and C-LOOK reverse (or jump) at the extreme request, so the direct
replay distance already prices them.

Same-track requests follow the queue convention described in
:mod:`plattersim.workload`: the pending queue is a track-sorted list kept
in the arrival sequence's direction, and the arm reads a track's group
forward when it crosses the track moving with that direction, backward
when it crosses against it.  FCFS ignores all of this and services the
queue as it arrived.

The peer policies are all LOOK variants differing only in how the initial
direction is picked:

* ``odsa``/``hdsa`` — toward the nearer extreme track (tie: downward);
* ``smcc`` — downward when the head sits below the midpoint of the
  pending span, upward otherwise;
* ``rp10`` — downward when the head position is at least the span width
  (``max - min``), upward otherwise;
* ``mrsa`` — SSTF when the head lies inside the median window of the
  pending tracks (the two middle values of the sorted track list),
  otherwise LOOK toward the nearer extreme.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace as dc_replace
from typing import Sequence

from . import modsbsm
from .faults import FaultModel, ProbeOutcome
from .geometry import PhysicalAddress
from .metrics import AccessTotals, ServiceStep, replay, totals
from .workload import Scenario

SWEEP_NAMES = ("scan", "cscan", "look", "clook")
BASELINE_NAMES = ("fcfs", "sstf") + SWEEP_NAMES + ("odsa", "hdsa", "rp10", "smcc", "mrsa")
ALGORITHM_NAMES = BASELINE_NAMES + ("modsbsm",)

DEFAULT_SWEEP_DIRECTION = "down"
DEFAULT_RETRY_LIMIT = 3


def _groups(scenario: Scenario) -> list[tuple[int, list[int]]]:
    """Pending queue as (track, arrival ranks) groups, tracks ascending."""
    by_track: dict[int, list[int]] = {}
    for req in scenario.requests:
        by_track.setdefault(req.address.track, []).append(req.arrival_rank)
    return sorted(by_track.items())


def _serve(ranks: Sequence[int], moving_up: bool, queue_ascending: bool) -> list[int]:
    # Crossing the track with the queue's sort direction reads the group
    # forward; crossing against it reads the group from the other end.
    if moving_up == queue_ascending:
        return list(ranks)
    return list(reversed(ranks))


def _fcfs_plan(scenario: Scenario) -> tuple[list[int], dict[int, int]]:
    return list(range(len(scenario.requests))), {}


def _sstf_plan(scenario: Scenario) -> tuple[list[int], dict[int, int]]:
    qa = scenario.queue_ascending
    remaining = dict(_groups(scenario))
    order: list[int] = []
    cur = scenario.initial_head.track
    moving_up = qa  # zero movement counts as moving with the queue
    while remaining:
        # nearest pending track; ties go to the lower track
        t = min(remaining, key=lambda x: (abs(x - cur), x))
        if t != cur:
            moving_up = t > cur
        order.extend(_serve(remaining.pop(t), moving_up, qa))
        cur = t
    return order, {}


def _sweep_plan(
    scenario: Scenario, variant: str, direction: str
) -> tuple[list[int], dict[int, int]]:
    groups = _groups(scenario)
    qa = scenario.queue_ascending
    head_track = scenario.initial_head.track
    top = scenario.geometry.num_tracks - 1
    down = direction == "down"

    if down:
        first = [g for g in groups if g[0] <= head_track][::-1]
        rest = [g for g in groups if g[0] > head_track]
        first_moving = False
    else:
        first = [g for g in groups if g[0] >= head_track]
        rest = [g for g in groups if g[0] < head_track][::-1]
        first_moving = True
    if variant in ("scan", "look"):
        second, second_moving = rest, not first_moving
    else:  # cscan / clook continue in the original direction
        second, second_moving = rest[::-1], first_moving

    order: list[int] = []
    for _, ranks in first:
        order.extend(_serve(ranks, first_moving, qa))
    boundary_at = len(order)
    for _, ranks in second:
        order.extend(_serve(ranks, second_moving, qa))

    overrides: dict[int, int] = {}
    if second and variant in ("scan", "cscan"):
        last_track = first[-1][0] if first else head_track
        next_track = second[0][0]
        if variant == "scan":
            seek = (
                last_track + next_track
                if down
                else (top - last_track) + (top - next_track)
            )
        else:
            seek = (
                last_track + top + (top - next_track)
                if down
                else (top - last_track) + top + next_track
            )
        overrides[boundary_at] = seek
    return order, overrides


def _nearer_extreme_direction(scenario: Scenario) -> str:
    tracks = scenario.tracks
    head_track = scenario.initial_head.track
    to_min = head_track - min(tracks)
    to_max = max(tracks) - head_track
    if to_max < to_min:
        return "up"
    return "down"  # includes the tie


def _mrsa_plan(scenario: Scenario) -> tuple[list[int], dict[int, int]]:
    tracks = sorted(scenario.tracks)
    n = len(tracks)
    low, high = tracks[(n - 1) // 2], tracks[n // 2]
    if low <= scenario.initial_head.track <= high:
        return _sstf_plan(scenario)
    return _sweep_plan(scenario, "look", _nearer_extreme_direction(scenario))


def _smcc_direction(scenario: Scenario) -> str:
    tracks = scenario.tracks
    midpoint = (min(tracks) + max(tracks)) / 2
    return "down" if scenario.initial_head.track < midpoint else "up"


def _rp10_direction(scenario: Scenario) -> str:
    tracks = scenario.tracks
    span = max(tracks) - min(tracks)
    return "down" if scenario.initial_head.track >= span else "up"


def resolve_direction(
    scenario: Scenario,
    algorithm: str,
    direction: str | None = None,
    use_hints: bool = False,
) -> str:
    """Sweep direction: explicit argument, then scenario hint, then default."""
    if direction is not None:
        if direction not in ("up", "down"):
            raise ValueError(f"direction must be up or down, got {direction!r}")
        return direction
    if use_hints:
        hinted = scenario.hint(algorithm)
        if hinted is not None:
            return hinted
    return DEFAULT_SWEEP_DIRECTION


def _plan(
    scenario: Scenario,
    algorithm: str,
    direction: str | None,
    use_hints: bool,
) -> tuple[list[int], dict[int, int]]:
    if not scenario.requests:
        raise ValueError("scenario has no requests")
    if algorithm in SWEEP_NAMES:
        resolved = resolve_direction(scenario, algorithm, direction, use_hints)
        return _sweep_plan(scenario, algorithm, resolved)
    if direction is not None:
        raise ValueError(f"direction only applies to {', '.join(SWEEP_NAMES)}")
    if algorithm == "fcfs":
        return _fcfs_plan(scenario)
    if algorithm == "sstf":
        return _sstf_plan(scenario)
    if algorithm in ("odsa", "hdsa"):
        return _sweep_plan(scenario, "look", _nearer_extreme_direction(scenario))
    if algorithm == "smcc":
        return _sweep_plan(scenario, "look", _smcc_direction(scenario))
    if algorithm == "rp10":
        return _sweep_plan(scenario, "look", _rp10_direction(scenario))
    if algorithm == "mrsa":
        return _mrsa_plan(scenario)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def service_order(
    scenario: Scenario,
    algorithm: str,
    *,
    direction: str | None = None,
    use_hints: bool = False,
) -> list[int]:
    """Planned fault-free service order (arrival ranks) for any algorithm."""
    if algorithm == "modsbsm":
        clean = dc_replace(scenario, faults=())
        return list(modsbsm.execute(clean).order)
    return _plan(scenario, algorithm, direction, use_hints)[0]


def retry_at_tail(
    order: Sequence[int],
    scenario: Scenario,
    faults: FaultModel,
    limit: int = DEFAULT_RETRY_LIMIT,
) -> tuple[list[int], list[int], list[int]]:
    """Drive a planned order against a fault table, retrying failures at the tail.

    Each failed visit re-queues the request at the end of the queue until it
    has been attempted ``limit`` times, then it is abandoned.  Returns
    (visit ranks, served ranks, abandoned ranks).  This is a simple
    extrapolation for the baseline schedulers, which have no bad-sector
    handling of their own; every attempt is a physical probe.
    """
    if limit < 1:
        raise ValueError("retry limit must be >= 1")
    queue = deque(order)
    attempts: dict[int, int] = {}
    visits: list[int] = []
    served: list[int] = []
    abandoned: list[int] = []
    while queue:
        rank = queue.popleft()
        visits.append(rank)
        address = scenario.requests[rank].address
        if faults.access(address) is ProbeOutcome.READABLE:
            served.append(rank)
            continue
        attempts[rank] = attempts.get(rank, 0) + 1
        if attempts[rank] < limit:
            queue.append(rank)
        else:
            abandoned.append(rank)
    return visits, served, abandoned


@dataclass(frozen=True)
class SchedulerRun:
    """Everything one scheduler did on one scenario."""

    algorithm: str
    order: tuple[int, ...]
    visits: tuple[PhysicalAddress, ...]
    steps: tuple[ServiceStep, ...]
    totals: AccessTotals
    passes: int = 1
    bad_sector_table: tuple[modsbsm.BadSectorEntry, ...] = ()
    abandoned: tuple[int, ...] = ()
    note: str = ""


def run_scheduler(
    scenario: Scenario,
    algorithm: str,
    *,
    direction: str | None = None,
    use_hints: bool = False,
    retry_limit: int = DEFAULT_RETRY_LIMIT,
) -> SchedulerRun:
    """Plan and price one scheduler over one scenario.

    Fault-free baselines are priced by replay plus the sweep boundary
    extras; on a faulty scenario the baselines fall back to the
    retry-at-tail policy with direct-travel pricing, while ``modsbsm``
    runs its own multi-pass engine.
    """
    if algorithm not in ALGORITHM_NAMES:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if algorithm == "modsbsm":
        if direction is not None:
            raise ValueError("modsbsm picks its own direction each pass")
        result = modsbsm.execute(scenario)
        return SchedulerRun(
            algorithm=algorithm,
            order=result.order,
            visits=result.visits,
            steps=result.steps,
            totals=result.totals,
            passes=result.passes,
            bad_sector_table=result.bad_sector_table,
        )

    order, overrides = _plan(scenario, algorithm, direction, use_hints)
    geometry = scenario.geometry
    head = scenario.initial_head
    if scenario.faults:
        fault_model = FaultModel(scenario.faults)
        visit_ranks, _, abandoned = retry_at_tail(order, scenario, fault_model, retry_limit)
        addresses = [scenario.requests[rank].address for rank in visit_ranks]
        steps = replay(geometry, head, addresses)
        return SchedulerRun(
            algorithm=algorithm,
            order=tuple(order),
            visits=tuple(addresses),
            steps=tuple(steps),
            totals=totals(steps),
            abandoned=tuple(abandoned),
            note="failed visits retried at queue tail; travel priced direct",
        )

    addresses = [scenario.requests[rank].address for rank in order]
    steps = replay(geometry, head, addresses)
    for position, seek in overrides.items():
        steps[position] = ServiceStep(
            address=steps[position].address,
            seek=seek,
            latency=steps[position].latency,
            transfer=steps[position].transfer,
        )
    return SchedulerRun(
        algorithm=algorithm,
        order=tuple(order),
        visits=tuple(addresses),
        steps=tuple(steps),
        totals=totals(steps),
    )
