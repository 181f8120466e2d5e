"""Deterministic multi-platter disk scheduling simulator.

Models a disk as tracks x platters x sectors with an abstract integer cost
model (seek = track distance, latency = forward rotation, transfer = platter
distance + 1), implements eleven classic and peer schedulers plus a
cylinder-ordered scheduler with staged bad-sector retirement, and ships an
exhaustive-search oracle, a seeded workload generator, six built-in
workloads with bundled reference totals, and a CLI (``plattersim``).
"""

from .faults import FaultModel, FaultSpec, ProbeOutcome, SavingsReport, savings_report
from .geometry import (
    DiskGeometry,
    GeometryBoundsError,
    IndexSyntaxError,
    PhysicalAddress,
    parse_index,
    render_index,
    validate,
)
from .metrics import (
    AccessTotals,
    EnergyModel,
    ServiceStep,
    energy_saved,
    improvement,
    replay,
    rotational_delta,
    totals,
    totals_csv,
    trace_csv,
    transfer_cost,
)
from .modsbsm import (
    BadSectorEntry,
    DirectionDecision,
    RunResult,
    arrange,
    bsm,
    decide_direction,
    execute,
)
from .oracle import (
    MAX_ORACLE_REQUESTS,
    OracleResult,
    OracleSizeError,
    optimal_order,
    verify_trace,
)
from .report import (
    REFERENCE_TOTALS,
    REFERRED_ALGORITHMS,
    TRADITIONAL_ALGORITHMS,
    ComparisonReport,
    Discrepancy,
    compare_builtin_suite,
    compare_scenario,
    identify_builtin,
)
from .schedulers import (
    ALGORITHM_NAMES,
    SchedulerRun,
    retry_at_tail,
    run_scheduler,
    service_order,
)
from .workload import (
    BUILTIN_CASE_IDS,
    GeneratorParams,
    MemoryRequest,
    Scenario,
    ScenarioError,
    builtin_case,
    generate,
    parse_scenario,
    render_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHM_NAMES",
    "AccessTotals",
    "BUILTIN_CASE_IDS",
    "BadSectorEntry",
    "ComparisonReport",
    "DirectionDecision",
    "Discrepancy",
    "DiskGeometry",
    "EnergyModel",
    "FaultModel",
    "FaultSpec",
    "GeneratorParams",
    "GeometryBoundsError",
    "IndexSyntaxError",
    "MAX_ORACLE_REQUESTS",
    "MemoryRequest",
    "OracleResult",
    "OracleSizeError",
    "PhysicalAddress",
    "ProbeOutcome",
    "REFERENCE_TOTALS",
    "REFERRED_ALGORITHMS",
    "RunResult",
    "SavingsReport",
    "Scenario",
    "ScenarioError",
    "SchedulerRun",
    "ServiceStep",
    "TRADITIONAL_ALGORITHMS",
    "arrange",
    "bsm",
    "builtin_case",
    "compare_builtin_suite",
    "compare_scenario",
    "decide_direction",
    "energy_saved",
    "execute",
    "generate",
    "identify_builtin",
    "improvement",
    "optimal_order",
    "parse_index",
    "parse_scenario",
    "render_index",
    "render_scenario",
    "replay",
    "retry_at_tail",
    "rotational_delta",
    "run_scheduler",
    "savings_report",
    "service_order",
    "totals",
    "totals_csv",
    "trace_csv",
    "transfer_cost",
    "validate",
    "verify_trace",
]
