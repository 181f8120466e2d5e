"""Pricing model for disk service sequences.

Every serviced request costs three integer components, all in abstract
device units:

* ``seek`` — track distance the arm travelled since the previous service;
* ``latency`` — forward rotation from the previously read sector to the
  target sector.  The platter spins one way only, so this is
  ``(next - prev) mod sectors_per_track``; landing on the same sector
  costs nothing;
* ``transfer`` — one unit for the read/write itself plus the number of
  platter surfaces switched across, i.e. ``|Δplatter| + 1``.

``replay`` prices a visit sequence from a fixed start position and is the
single pricing authority in this package: schedulers, the comparison
report and the exhaustive oracle all sit on top of it.  Aggregates follow
the usual naming — TSKT (total seek), TRL (total rotational latency),
TDTT (total data transfer), TDAT (their sum) and ADAT (TDAT per request).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry import DiskGeometry, PhysicalAddress, validate


def rotational_delta(prev_sector: int, next_sector: int, sectors_per_track: int) -> int:
    """Forward rotation steps from prev_sector to next_sector (0 if equal)."""
    if sectors_per_track < 1:
        raise ValueError(f"sectors_per_track must be >= 1, got {sectors_per_track}")
    for name, value in (("prev_sector", prev_sector), ("next_sector", next_sector)):
        if not 0 <= value < sectors_per_track:
            raise ValueError(f"{name} {value} out of range 0..{sectors_per_track - 1}")
    return (next_sector - prev_sector) % sectors_per_track


def transfer_cost(prev_platter: int, next_platter: int) -> int:
    """Unit transfer plus the platter distance switched across."""
    if prev_platter < 1 or next_platter < 1:
        raise ValueError("platters are numbered from 1")
    return abs(next_platter - prev_platter) + 1


@dataclass(frozen=True)
class ServiceStep:
    """Cost breakdown for one serviced (or probed) address."""

    address: PhysicalAddress
    seek: int
    latency: int
    transfer: int

    @property
    def access(self) -> int:
        return self.seek + self.latency + self.transfer


def replay(
    geometry: DiskGeometry,
    head: PhysicalAddress,
    visits: Iterable[PhysicalAddress],
) -> list[ServiceStep]:
    """Price a visit sequence step by step from the given head position.

    The reference position for each step is the previously visited address
    (the head starts at ``head``); seek is the direct track distance.
    """
    validate(geometry, head)
    steps: list[ServiceStep] = []
    pos = head
    for addr in visits:
        validate(geometry, addr)
        steps.append(
            ServiceStep(
                address=addr,
                seek=abs(addr.track - pos.track),
                latency=rotational_delta(pos.sector, addr.sector, geometry.sectors_per_track),
                transfer=transfer_cost(pos.platter, addr.platter),
            )
        )
        pos = addr
    return steps


@dataclass(frozen=True)
class AccessTotals:
    """Aggregate cost of a run: tskt + trl + tdtt = tdat, adat = tdat / requests."""

    tskt: int
    trl: int
    tdtt: int
    request_count: int

    def __post_init__(self):
        if self.request_count < 1:
            raise ValueError("request_count must be >= 1")

    @property
    def tdat(self) -> int:
        return self.tskt + self.trl + self.tdtt

    @property
    def adat(self) -> Fraction:
        return Fraction(self.tdat, self.request_count)

    @property
    def adat_text(self) -> str:
        # Integer half-up rounding to two decimals; floats never enter the model.
        cents = (self.tdat * 100 * 2 + self.request_count) // (self.request_count * 2)
        return f"{cents // 100}.{cents % 100:02d}"

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.tskt, self.trl, self.tdtt, self.tdat)


def totals(steps: Sequence[ServiceStep], request_count: int | None = None) -> AccessTotals:
    """Sum a step sequence into AccessTotals.

    ``request_count`` defaults to the number of steps, which is also the
    convention for runs with failed probes: every physical visit counts.
    """
    if request_count is None:
        request_count = len(steps)
    return AccessTotals(
        tskt=sum(s.seek for s in steps),
        trl=sum(s.latency for s in steps),
        tdtt=sum(s.transfer for s in steps),
        request_count=request_count,
    )


def improvement(baseline_adats: Iterable[float], candidate_adat: float) -> float:
    """Percentage improvement of candidate over the mean of the baselines."""
    values = [float(v) for v in baseline_adats]
    if not values:
        raise ValueError("need at least one baseline ADAT")
    mean = sum(values) / len(values)
    if mean == 0:
        raise ValueError("baseline mean is zero")
    return 100.0 * (mean - float(candidate_adat)) / mean


@dataclass(frozen=True)
class EnergyModel:
    """Per-access energy (femtojoules) and heat (arbitrary units) constants."""

    energy_per_access: float = 100.0
    heat_per_access: float = 1.0


def energy_saved(projected_accesses: int, model: EnergyModel = EnergyModel()) -> tuple[float, float]:
    """(energy, heat) avoided once a bad sector's content is pinned down.

    Of ``projected_accesses`` reads of the address, the first two probes hit
    the platter; the remaining ``n - 2`` are answered from the prescribed-bit
    table, so their cost is saved.
    """
    if projected_accesses < 2:
        raise ValueError(
            f"projected_accesses must be >= 2, got {projected_accesses}"
        )
    avoided = projected_accesses - 2
    return (model.energy_per_access * avoided, model.heat_per_access * avoided)


TRACE_CSV_HEADER = "step,track,platter,sector,seek,latency,transfer,access"
TOTALS_CSV_HEADER = "algorithm,tskt,trl,tdtt,tdat,adat"


def trace_csv(steps: Sequence[ServiceStep]) -> str:
    """Render steps as CSV, one row per visit, 1-based step numbers."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TRACE_CSV_HEADER.split(","))
    for k, s in enumerate(steps, 1):
        writer.writerow(
            [k, s.address.track, s.address.platter, s.address.sector,
             s.seek, s.latency, s.transfer, s.access]
        )
    return out.getvalue()


def totals_csv_row(algorithm: str, t: AccessTotals) -> str:
    return f"{algorithm},{t.tskt},{t.trl},{t.tdtt},{t.tdat},{t.adat_text}"


def totals_csv(rows: Iterable[tuple[str, AccessTotals]]) -> str:
    lines = [TOTALS_CSV_HEADER]
    lines.extend(totals_csv_row(name, t) for name, t in rows)
    return "\n".join(lines) + "\n"


def parse_trace_csv(text: str) -> list[ServiceStep]:
    """Inverse of :func:`trace_csv` (step numbers are checked, then dropped)."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != TRACE_CSV_HEADER.split(","):
        raise ValueError(f"unexpected trace header: {header!r}")
    steps = []
    for k, row in enumerate(reader, 1):
        if not row:
            continue
        step, track, platter, sector, seek, latency, transfer, access = map(int, row)
        if step != k:
            raise ValueError(f"trace rows out of order at step {step}")
        s = ServiceStep(PhysicalAddress(track, platter, sector), seek, latency, transfer)
        if s.access != access:
            raise ValueError(f"step {k}: access {access} != seek+latency+transfer")
        steps.append(s)
    return steps
