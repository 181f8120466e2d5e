"""Cylinder-ordered servicing with staged bad-sector retirement (MODSBSM).

The scheduler sorts the pending queue by track, jumps to whichever extreme
track is closer (no service on the way there), then sweeps once across the
span servicing whole cylinders.  Unreadable sectors are not retried in
place: the request is carried to the next pass, and after a second failed
probe the address enters a prescribed-bit table.  The third visit resolves
it — one last probe fixes the stored bit, the entry is finalized, and any
later read of that address is answered from the table without touching the
platter.  No bad address is ever probed more than three times.

Direction choice per pass: with LD = head − min(track) and RD =
max(track) − head (both signed), LD < RD picks the ascending sweep and
RD < LD the descending one.  A tie resumes against the arm's recent
movement — if it was last moving from high to low tracks the sweep goes
ascending, otherwise descending; with no history it goes ascending.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Protocol, Sequence

from .faults import FaultModel, ProbeOutcome
from .geometry import PhysicalAddress
from .metrics import (
    AccessTotals,
    ServiceStep,
    rotational_delta,
    totals,
    transfer_cost,
)
from .workload import MemoryRequest, Scenario

ASCENDING = "ascending"
DESCENDING = "descending"

TEMPORARY = "temporary"
PERMANENT = "permanent"


@dataclass(frozen=True)
class DirectionDecision:
    """Signed extreme distances and the sweep they selected for one pass."""

    to_min: int
    to_max: int
    chosen: str
    tie: bool


def decide_direction(
    head_track: int, tracks: Iterable[int], last_move: str | None = None
) -> DirectionDecision:
    """Pick the sweep direction for one pass (see module doc for the rule)."""
    tracks = list(tracks)
    if not tracks:
        raise ValueError("no pending tracks")
    to_min = head_track - min(tracks)
    to_max = max(tracks) - head_track
    if to_min < to_max:
        return DirectionDecision(to_min, to_max, ASCENDING, tie=False)
    if to_max < to_min:
        return DirectionDecision(to_min, to_max, DESCENDING, tie=False)
    chosen = DESCENDING if last_move == "up" else ASCENDING
    return DirectionDecision(to_min, to_max, chosen, tie=True)


class _Addressed(Protocol):
    address: PhysicalAddress


def arrange(requests: Sequence[_Addressed], direction: str) -> list:
    """Order pending requests for one sweep.

    Tracks follow the sweep direction; within a track, sectors stay in
    ascending rotation order regardless of sweep direction (the platter
    only spins one way, so ascending prices cheapest either way), and
    platters ascend within a sector so a whole cylinder is finished before
    the arm moves on.  Exact duplicates keep their queue order.
    """
    if direction == ASCENDING:
        key = lambda r: (r.address.track, r.address.sector, r.address.platter)
    elif direction == DESCENDING:
        key = lambda r: (-r.address.track, r.address.sector, r.address.platter)
    else:
        raise ValueError(f"direction must be {ASCENDING} or {DESCENDING}, got {direction!r}")
    return sorted(requests, key=key)


@dataclass
class BadSectorEntry:
    """Lifecycle record for one address that failed two probes."""

    index: PhysicalAddress
    bsi: int
    classification: str
    prescribed_bit: int
    finalized: int


@dataclass(frozen=True)
class ServeOutcome:
    served: bool
    probed: bool
    bit: int | None


def bsm(entry: BadSectorEntry, faults: FaultModel, op: str = "r") -> ServeOutcome:
    """Serve a tabled bad address, finalizing it on its third (last) probe.

    A finalized entry is answered straight from the table.  Otherwise the
    address is probed once more; if the prescribed bit disagrees with the
    sector's true content it is corrected, and either way the entry is
    finalized and reclassified as permanent.
    """
    if entry.finalized:
        return ServeOutcome(served=True, probed=False, bit=entry.prescribed_bit)
    faults.access(entry.index)
    true_bit = faults.true_bit(entry.index)
    if entry.prescribed_bit != true_bit:
        entry.prescribed_bit = true_bit
    entry.finalized = 1
    entry.classification = PERMANENT
    return ServeOutcome(served=True, probed=True, bit=entry.prescribed_bit)


@dataclass(frozen=True)
class RunResult:
    steps: tuple[ServiceStep, ...]
    totals: AccessTotals
    order: tuple[int, ...]
    visits: tuple[PhysicalAddress, ...]
    visit_ranks: tuple[int, ...]
    passes: int
    decisions: tuple[DirectionDecision, ...]
    bad_sector_table: tuple[BadSectorEntry, ...]

    @property
    def resolved(self) -> tuple[PhysicalAddress, ...]:
        return tuple(e.index for e in self.bad_sector_table if e.finalized)


def execute(scenario: Scenario, fault_model: FaultModel | None = None) -> RunResult:
    """Run the scheduler over a scenario until the pending queue drains.

    Every physical visit — including failed probes — is priced as a normal
    step, and the head position, rotation and platter reference persist
    across passes.  ``order`` lists arrival ranks in the order requests were
    actually served; a request answered from a finalized table entry is
    served without a physical step.
    """
    if not scenario.requests:
        raise ValueError("scenario has no requests")
    faults = fault_model if fault_model is not None else FaultModel(scenario.faults)
    geometry = scenario.geometry
    pos = scenario.initial_head
    bsi = {req.arrival_rank: req.bsi for req in scenario.requests}
    pending: list[MemoryRequest] = list(scenario.requests)
    table: dict[PhysicalAddress, BadSectorEntry] = {}
    steps: list[ServiceStep] = []
    visits: list[PhysicalAddress] = []
    visit_ranks: list[int] = []
    served: list[int] = []
    decisions: list[DirectionDecision] = []
    last_move: str | None = None
    passes = 0

    while pending:
        passes += 1
        decision = decide_direction(
            pos.track, (req.address.track for req in pending), last_move
        )
        decisions.append(decision)
        carry: list[MemoryRequest] = []
        for req in arrange(pending, decision.chosen):
            addr = req.address
            rank = req.arrival_rank
            entry = table.get(addr)
            if entry is not None and entry.finalized:
                bsm(entry, faults, req.op)
                served.append(rank)
                continue
            steps.append(
                ServiceStep(
                    address=addr,
                    seek=abs(addr.track - pos.track),
                    latency=rotational_delta(
                        pos.sector, addr.sector, geometry.sectors_per_track
                    ),
                    transfer=transfer_cost(pos.platter, addr.platter),
                )
            )
            visits.append(addr)
            visit_ranks.append(rank)
            if addr.track != pos.track:
                last_move = "up" if addr.track > pos.track else "down"
            pos = addr
            if bsi[rank] >= 2:
                bsm(table[addr], faults, req.op)
                served.append(rank)
            elif faults.access(addr) is ProbeOutcome.READABLE:
                served.append(rank)
            else:
                bsi[rank] += 1
                if bsi[rank] == 2 and addr not in table:
                    table[addr] = BadSectorEntry(
                        index=addr,
                        bsi=2,
                        classification=TEMPORARY,
                        prescribed_bit=0,
                        finalized=0,
                    )
                carry.append(req)
        pending = carry

    return RunResult(
        steps=tuple(steps),
        totals=totals(steps),
        order=tuple(served),
        visits=tuple(visits),
        visit_ranks=tuple(visit_ranks),
        passes=passes,
        decisions=tuple(decisions),
        bad_sector_table=tuple(table.values()),
    )
