from reach.schemas.run import (
    SCHEMA_VERSION,
    Algorithm,
    HorizonSpec,
    InlineSystem,
    PolytopeSpec,
    ProjectionPayload,
    RunConfig,
    RunReport,
    SetPayload,
    ValidationSpec,
    VerdictPayload,
    ZonotopeSpec,
    payload_to_set,
    read_config,
    read_report,
    set_to_payload,
    verdict_to_payload,
    write_report,
)

__all__ = [
    "SCHEMA_VERSION",
    "Algorithm",
    "HorizonSpec",
    "InlineSystem",
    "PolytopeSpec",
    "ProjectionPayload",
    "RunConfig",
    "RunReport",
    "SetPayload",
    "ValidationSpec",
    "VerdictPayload",
    "ZonotopeSpec",
    "payload_to_set",
    "read_config",
    "read_report",
    "set_to_payload",
    "verdict_to_payload",
    "write_report",
]
