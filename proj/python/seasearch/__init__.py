"""Python interface to the seasearch multi-UAV maritime search simulator."""

from ._core import (
    BenchResult,
    LinkParams,
    Pattern,
    ResultRow,
    ResultTable,
    RunMetrics,
    Scenario,
    ScenarioError,
    Strategy,
    bit_error_ratio,
    drop_probability,
    expected_drop_probability,
    generate_pattern,
    load_scenario,
    localization_bench,
    monte_carlo,
    parse_scenario,
    run_mission,
    run_mission_logged,
    rx_power_mean,
    strategy_from_string,
)

__all__ = [name for name in dir() if not name.startswith("_")]
