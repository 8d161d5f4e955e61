"""Compare a user's pose against a stored reference pose, limb by limb."""

from ._core import (
    BODY_PARTS,
    ComparisonConfig,
    Feedback,
    FittutorError,
    Frame,
    PairFeedback,
    PairTally,
    Reference,
    Session,
    SessionReport,
    compare,
    compute_slope,
    extract_profile,
    make_reference,
    process_stream,
)

__all__ = [
    "BODY_PARTS",
    "ComparisonConfig",
    "Feedback",
    "FittutorError",
    "Frame",
    "PairFeedback",
    "PairTally",
    "Reference",
    "Session",
    "SessionReport",
    "compare",
    "compute_slope",
    "extract_profile",
    "make_reference",
    "process_stream",
]
