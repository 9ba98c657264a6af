"""Downlink cell simulator comparing two base-station sleep-mode policies."""

from ._core import (  # noqa: F401
    DomainError,
    Error,
    IllegalTransition,
    InsufficientData,
    InternalError,
    IoError,
    ModeOccupancy,
    OrderingError,
    Packet,
    ParseError,
    RunMetrics,
    ScenarioConfig,
    TradeoffPoint,
    ValidationError,
    antenna_gain_dbi,
    classify,
    default_scenario,
    ee,
    fec,
    generate_arrivals,
    iec,
    load_scenario,
    load_scenario_file,
    mop_dominates,
    noise_power_mw,
    optimize_power,
    pareto_sweep,
    path_loss_db,
    run,
    se_total,
    se_user,
    serialize_scenario,
    sop,
    sweep_and_emit,
    total_traffic_energy_j,
    validate,
    window_from_energy,
)

__all__ = [name for name in dir() if not name.startswith("_")]
