"""Request queues: the scenario text format, built-in workloads, generator.

A scenario is a disk geometry, an initial head position, an arrival-ordered
request queue, an optional fault table and optional per-scheduler sweep
direction hints.  The text form is line oriented::

    # comment
    geometry platters=4 tracks=200 sectors=8
    head 65t1p4s
    direction scan=down
    request 15t1p2s
    request 48t1p7s op=w
    bad 48t1p0s bit=1

``geometry`` and ``head`` appear exactly once; ``request`` lines are kept in
file order (that order *is* the arrival order); ``op`` defaults to ``r`` and
is omitted by the renderer when it is ``r``.  Parse errors carry the line
number; bounds errors name the offending component.

The arrival order also fixes how same-track requests are queued: the pending
queue is a track-sorted list kept in the direction the queue arrived in.  A
queue whose tracks never increase (and decrease at least once) sorts
descending; anything else sorts ascending.  Schedulers read same-track groups
forward or backward depending on which way the head crosses the track.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .faults import FaultSpec
from .geometry import (
    DiskGeometry,
    GeometryBoundsError,
    IndexSyntaxError,
    PhysicalAddress,
    parse_index,
    render_index,
    validate,
)

DIRECTION_HINT_NAMES = ("scan", "cscan", "look", "clook")
DIRECTIONS = ("up", "down")
OPS = ("r", "w")


class ScenarioError(ValueError):
    """Malformed scenario text; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class MemoryRequest:
    """One queued access: an address, read/write, and its place in the queue.

    ``bsi`` is the bad-sector indicator maintained by the scheduler: 0 until
    a probe fails, then counts failures up to 2.
    """

    address: PhysicalAddress
    op: str = "r"
    bsi: int = 0
    arrival_rank: int = 0

    def __post_init__(self):
        if self.op not in OPS:
            raise ValueError(f"op must be one of {OPS}, got {self.op!r}")
        if self.bsi not in (0, 1, 2):
            raise ValueError(f"bsi must be 0, 1 or 2, got {self.bsi}")
        if self.arrival_rank < 0:
            raise ValueError("arrival_rank must be >= 0")


@dataclass(frozen=True)
class Scenario:
    geometry: DiskGeometry
    initial_head: PhysicalAddress
    requests: tuple[MemoryRequest, ...]
    faults: tuple[FaultSpec, ...] = ()
    direction_hints: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "requests", tuple(self.requests))
        object.__setattr__(self, "faults", tuple(self.faults))
        object.__setattr__(self, "direction_hints", tuple(self.direction_hints))
        validate(self.geometry, self.initial_head)
        for i, req in enumerate(self.requests):
            validate(self.geometry, req.address)
            if req.arrival_rank != i:
                raise ValueError(
                    f"request {i} carries arrival_rank {req.arrival_rank}"
                )
        seen = set()
        for spec in self.faults:
            validate(self.geometry, spec.address)
            if spec.address in seen:
                raise ValueError(f"duplicate fault entry for {spec.address}")
            seen.add(spec.address)
        names = set()
        for name, direction in self.direction_hints:
            if name not in DIRECTION_HINT_NAMES:
                raise ValueError(f"direction hint for unknown scheduler {name!r}")
            if direction not in DIRECTIONS:
                raise ValueError(f"direction must be up or down, got {direction!r}")
            if name in names:
                raise ValueError(f"duplicate direction hint for {name}")
            names.add(name)

    def hint(self, algorithm: str) -> str | None:
        for name, direction in self.direction_hints:
            if name == algorithm:
                return direction
        return None

    @property
    def tracks(self) -> tuple[int, ...]:
        return tuple(req.address.track for req in self.requests)

    @property
    def queue_ascending(self) -> bool:
        """Direction the pending queue is kept sorted in (see module doc)."""
        t = self.tracks
        descending = all(a >= b for a, b in zip(t, t[1:])) and any(
            a > b for a, b in zip(t, t[1:])
        )
        return not descending


GENERATOR_ORDERS = ("ascending", "descending", "random")


@dataclass(frozen=True)
class GeneratorParams:
    request_count: int
    order: str = "random"
    seed: int = 0
    bad_count: int = 0

    def __post_init__(self):
        if self.request_count < 1:
            raise ValueError("request_count must be >= 1")
        if self.order not in GENERATOR_ORDERS:
            raise ValueError(f"order must be one of {GENERATOR_ORDERS}, got {self.order!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if not 0 <= self.bad_count <= self.request_count:
            raise ValueError("bad_count must be between 0 and request_count")


def _decode(geometry: DiskGeometry, address_id: int) -> PhysicalAddress:
    sector = address_id % geometry.sectors_per_track
    rest = address_id // geometry.sectors_per_track
    platter = rest % geometry.num_platters + 1
    track = rest // geometry.num_platters
    return PhysicalAddress(track, platter, sector)


def generate(geometry: DiskGeometry, params: GeneratorParams) -> Scenario:
    """Deterministically generate a scenario from the given seed.

    Request addresses are sampled without replacement from the whole disk,
    then ordered: ``ascending``/``descending`` apply a stable track sort to
    the sampled queue, ``random`` keeps sampling order.  Bad addresses are
    drawn from the generated requests.
    """
    if params.request_count > geometry.address_count:
        raise ValueError(
            f"request_count {params.request_count} exceeds the "
            f"{geometry.address_count} addressable sectors"
        )
    rng = random.Random(params.seed)
    addresses = [_decode(geometry, i) for i in rng.sample(range(geometry.address_count), params.request_count)]
    if params.order == "ascending":
        addresses.sort(key=lambda a: a.track)
    elif params.order == "descending":
        addresses.sort(key=lambda a: -a.track)
    head = _decode(geometry, rng.randrange(geometry.address_count))
    faults = tuple(
        FaultSpec(addresses[pos], rng.randrange(2))
        for pos in rng.sample(range(params.request_count), params.bad_count)
    )
    requests = tuple(
        MemoryRequest(address=a, arrival_rank=i) for i, a in enumerate(addresses)
    )
    return Scenario(geometry=geometry, initial_head=head, requests=requests, faults=faults)


def _parse_kv(token: str, line: int) -> tuple[str, str]:
    key, sep, value = token.partition("=")
    if not sep or not key or not value:
        raise ScenarioError(f"expected key=value, got {token!r}", line)
    return key, value


def _parse_int(value: str, what: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ScenarioError(f"{what} must be an integer, got {value!r}", line) from None


def _parse_address(text: str, line: int) -> PhysicalAddress:
    try:
        return parse_index(text)
    except IndexSyntaxError as exc:
        raise ScenarioError(str(exc), line) from None


def parse_scenario(text: str) -> Scenario:
    """Parse scenario text; raises :class:`ScenarioError` with line numbers."""
    geometry: DiskGeometry | None = None
    head: tuple[PhysicalAddress, int] | None = None
    requests: list[tuple[MemoryRequest, int]] = []
    faults: list[tuple[FaultSpec, int]] = []
    hints: list[tuple[str, str]] = []
    hint_names: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        directive, args = tokens[0], tokens[1:]
        if directive == "geometry":
            if geometry is not None:
                raise ScenarioError("geometry declared twice", lineno)
            fields = dict(_parse_kv(tok, lineno) for tok in args)
            if set(fields) != {"platters", "tracks", "sectors"}:
                raise ScenarioError(
                    "geometry needs exactly platters=, tracks= and sectors=", lineno
                )
            try:
                geometry = DiskGeometry(
                    num_platters=_parse_int(fields["platters"], "platters", lineno),
                    num_tracks=_parse_int(fields["tracks"], "tracks", lineno),
                    sectors_per_track=_parse_int(fields["sectors"], "sectors", lineno),
                )
            except ValueError as exc:
                raise ScenarioError(str(exc), lineno) from None
        elif directive == "head":
            if head is not None:
                raise ScenarioError("head declared twice", lineno)
            if len(args) != 1:
                raise ScenarioError("head takes exactly one address", lineno)
            head = (_parse_address(args[0], lineno), lineno)
        elif directive == "request":
            if not 1 <= len(args) <= 2:
                raise ScenarioError("request takes an address and optional op=", lineno)
            address = _parse_address(args[0], lineno)
            op = "r"
            if len(args) == 2:
                key, value = _parse_kv(args[1], lineno)
                if key != "op" or value not in OPS:
                    raise ScenarioError(f"expected op=r or op=w, got {args[1]!r}", lineno)
                op = value
            requests.append(
                (MemoryRequest(address=address, op=op, arrival_rank=len(requests)), lineno)
            )
        elif directive == "bad":
            if len(args) != 2:
                raise ScenarioError("bad takes an address and bit=", lineno)
            address = _parse_address(args[0], lineno)
            key, value = _parse_kv(args[1], lineno)
            if key != "bit" or value not in ("0", "1"):
                raise ScenarioError(f"expected bit=0 or bit=1, got {args[1]!r}", lineno)
            if any(spec.address == address for spec, _ in faults):
                raise ScenarioError(f"duplicate bad entry for {args[0]}", lineno)
            faults.append((FaultSpec(address, int(value)), lineno))
        elif directive == "direction":
            if len(args) != 1:
                raise ScenarioError("direction takes one scheduler=up|down pair", lineno)
            name, value = _parse_kv(args[0], lineno)
            if name not in DIRECTION_HINT_NAMES:
                raise ScenarioError(
                    f"direction hint for unknown scheduler {name!r} "
                    f"(expected one of {', '.join(DIRECTION_HINT_NAMES)})",
                    lineno,
                )
            if value not in DIRECTIONS:
                raise ScenarioError(f"direction must be up or down, got {value!r}", lineno)
            if name in hint_names:
                raise ScenarioError(f"duplicate direction hint for {name}", lineno)
            hint_names.add(name)
            hints.append((name, value))
        else:
            raise ScenarioError(f"unknown directive {directive!r}", lineno)

    if geometry is None:
        raise ScenarioError("missing geometry declaration")
    if head is None:
        raise ScenarioError("missing head declaration")

    head_address, head_line = head
    try:
        validate(geometry, head_address)
    except GeometryBoundsError as exc:
        raise ScenarioError(f"head: {exc}", head_line) from None
    for req, lineno in requests:
        try:
            validate(geometry, req.address)
        except GeometryBoundsError as exc:
            raise ScenarioError(f"request: {exc}", lineno) from None
    for spec, lineno in faults:
        try:
            validate(geometry, spec.address)
        except GeometryBoundsError as exc:
            raise ScenarioError(f"bad: {exc}", lineno) from None

    return Scenario(
        geometry=geometry,
        initial_head=head_address,
        requests=tuple(req for req, _ in requests),
        faults=tuple(spec for spec, _ in faults),
        direction_hints=tuple(hints),
    )


def render_scenario(scenario: Scenario) -> str:
    """Render a scenario to canonical text (parse ∘ render is the identity)."""
    g = scenario.geometry
    lines = [
        f"geometry platters={g.num_platters} tracks={g.num_tracks} sectors={g.sectors_per_track}",
        f"head {render_index(scenario.initial_head)}",
    ]
    for name, direction in scenario.direction_hints:
        lines.append(f"direction {name}={direction}")
    for req in scenario.requests:
        suffix = "" if req.op == "r" else f" op={req.op}"
        lines.append(f"request {render_index(req.address)}{suffix}")
    for spec in scenario.faults:
        lines.append(f"bad {render_index(spec.address)} bit={spec.true_bit}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Built-in workloads.  Six fixed 20-request queues on a 4x200x8 disk; the
# direction hints record the sweep directions their reference totals assume.

_CASE_GEOMETRY = DiskGeometry(num_platters=4, num_tracks=200, sectors_per_track=8)

_DOWN_HINTS = tuple((name, "down") for name in DIRECTION_HINT_NAMES)
_UP_HINTS = tuple((name, "up") for name in DIRECTION_HINT_NAMES)

# (track, platter, sector) triples in arrival order.
_CASE_DATA: dict[int, tuple[tuple[int, int, int], tuple[tuple[int, int, int], ...], tuple[tuple[str, str], ...]]] = {
    1: (
        (65, 1, 4),
        (
            (15, 1, 2), (48, 1, 7), (48, 1, 0), (48, 1, 4), (48, 1, 6),
            (60, 1, 1), (90, 1, 6), (90, 1, 1), (90, 1, 4), (108, 1, 7),
            (108, 1, 2), (108, 1, 5), (126, 1, 7), (168, 1, 1), (168, 1, 5),
            (168, 1, 4), (179, 1, 4), (179, 1, 2), (179, 1, 6), (196, 1, 7),
        ),
        _DOWN_HINTS,
    ),
    2: (
        (75, 1, 7),
        (
            (185, 1, 5), (167, 1, 7), (167, 1, 1), (167, 1, 4), (143, 1, 1),
            (143, 1, 6), (129, 1, 0), (129, 1, 4), (129, 1, 2), (118, 1, 6),
            (118, 1, 2), (118, 1, 5), (106, 1, 4), (65, 1, 3), (65, 1, 7),
            (65, 1, 5), (42, 1, 5), (42, 1, 2), (42, 1, 6), (28, 1, 7),
        ),
        _DOWN_HINTS,
    ),
    3: (
        (165, 1, 7),
        (
            (45, 1, 5), (98, 1, 2), (15, 1, 3), (98, 1, 6), (160, 1, 2),
            (198, 1, 1), (15, 1, 0), (45, 1, 0), (98, 1, 4), (160, 1, 7),
            (198, 1, 6), (65, 1, 2), (45, 1, 6), (160, 1, 6), (198, 1, 4),
            (113, 1, 4), (15, 1, 6), (59, 1, 0), (15, 1, 4), (5, 1, 2),
        ),
        _DOWN_HINTS,
    ),
    4: (
        (140, 1, 0),
        (
            (18, 1, 3), (25, 2, 6), (25, 2, 4), (25, 3, 0), (32, 2, 2),
            (46, 1, 4), (46, 4, 7), (46, 1, 2), (78, 3, 5), (95, 4, 2),
            (95, 2, 5), (95, 1, 1), (95, 2, 6), (123, 4, 2), (148, 1, 0),
            (156, 3, 6), (156, 3, 7), (156, 3, 5), (156, 2, 1), (197, 2, 7),
        ),
        _UP_HINTS,
    ),
    5: (
        (65, 1, 4),
        (
            (196, 4, 7), (167, 1, 4), (167, 2, 7), (167, 1, 2), (167, 2, 3),
            (143, 4, 2), (143, 2, 0), (126, 3, 1), (126, 4, 6), (126, 4, 4),
            (98, 4, 6), (98, 2, 5), (98, 1, 2), (63, 1, 7), (63, 4, 0),
            (63, 1, 6), (42, 3, 4), (19, 4, 6), (19, 1, 2), (19, 2, 4),
        ),
        _UP_HINTS,
    ),
    6: (
        (90, 1, 6),
        (
            (55, 3, 1), (15, 4, 6), (105, 2, 4), (48, 4, 2), (83, 1, 6),
            (165, 2, 3), (39, 4, 6), (83, 4, 7), (22, 4, 7), (165, 4, 5),
            (105, 3, 1), (15, 2, 4), (83, 3, 3), (165, 2, 7), (39, 1, 2),
            (15, 2, 0), (105, 2, 6), (39, 4, 7), (22, 2, 0), (165, 1, 6),
        ),
        _UP_HINTS,
    ),
}

BUILTIN_CASE_IDS = tuple(sorted(_CASE_DATA))


def builtin_case(case_id: int) -> Scenario:
    """One of the six bundled 20-request workloads."""
    if case_id not in _CASE_DATA:
        raise ValueError(f"case_id must be one of {BUILTIN_CASE_IDS}, got {case_id}")
    head, triples, hints = _CASE_DATA[case_id]
    return Scenario(
        geometry=_CASE_GEOMETRY,
        initial_head=PhysicalAddress(*head),
        requests=tuple(
            MemoryRequest(address=PhysicalAddress(*t), arrival_rank=i)
            for i, t in enumerate(triples)
        ),
        direction_hints=hints,
    )
