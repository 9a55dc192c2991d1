"""Python interface to the syndrome-extraction schedule compiler."""

from _louvre import (
    Code,
    CodeParseError,
    Schedule,
    ScheduleError,
    build_schedule,
    emit,
    hypergraph_product_params,
    load_code,
    metrics,
    parse_code,
    parse_table,
    route,
    verify,
)

__all__ = [
    "Code",
    "CodeParseError",
    "Schedule",
    "ScheduleError",
    "build_schedule",
    "emit",
    "hypergraph_product_params",
    "load_code",
    "metrics",
    "parse_code",
    "parse_table",
    "route",
    "verify",
]
