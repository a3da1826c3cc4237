"""Exact influences of events on finite product probability spaces.

Thin re-export of the compiled core. All exact quantities cross the boundary
as ``fractions.Fraction``; floats are accepted nowhere a lossless value is
expected.
"""

from ._core import (
    Box,
    BoxEvent,
    Event,
    GroundSpace,
    HFunction,
    InfluenceReport,
    InputError,
    InternalError,
    Interval,
    MarkedBoxEvent,
    McEstimate,
    NullSlice,
    ProductSpace,
    RatioField,
    Transport,
    VerificationRecord,
    add_null_slice,
    bkkkl_influence,
    bkkkl_influence_vector,
    bkkkl_line_influence,
    box_h_influence,
    box_influence,
    box_measure,
    build_transport,
    check_fibre_preservation,
    event_measure,
    h_influence,
    h_influence_vector,
    influence,
    influence_report,
    influence_vector,
    mc_influence,
    normalize,
    parse_event_spec,
    push_event,
    serialize_event_json,
    verify_transport,
)

__all__ = [
    "Box",
    "BoxEvent",
    "Event",
    "GroundSpace",
    "HFunction",
    "InfluenceReport",
    "InputError",
    "InternalError",
    "Interval",
    "MarkedBoxEvent",
    "McEstimate",
    "NullSlice",
    "ProductSpace",
    "RatioField",
    "Transport",
    "VerificationRecord",
    "add_null_slice",
    "bkkkl_influence",
    "bkkkl_influence_vector",
    "bkkkl_line_influence",
    "box_h_influence",
    "box_influence",
    "box_measure",
    "build_transport",
    "check_fibre_preservation",
    "event_measure",
    "h_influence",
    "h_influence_vector",
    "influence",
    "influence_report",
    "influence_vector",
    "mc_influence",
    "normalize",
    "parse_event_spec",
    "push_event",
    "serialize_event_json",
    "verify_transport",
]
