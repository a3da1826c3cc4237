#pragma once

#include "prodinfluence/boxes.hpp"
#include "prodinfluence/core_model.hpp"

#include <vector>

// Brute-force reference implementations, written directly from the defining
// formulas and sharing no code with the engine: full enumeration of outcomes
// regrouped by fibre, hand-coded h evaluation, and inclusion-exclusion for
// box unions. Slow on purpose; used only to cross-check the engine.
namespace prodinfluence::oracles {

Rational oracle_event_measure(const Event& event);
Rational oracle_influence(const Event& event, std::size_t coord);
Rational oracle_bkkkl_influence(const Event& event, std::size_t coord);

enum class OracleH { Indicator01, QuadXOneMinusX };
Rational oracle_h_influence(const Event& event, std::size_t coord, OracleH h);

/// Measure of a raw (possibly overlapping) union by inclusion-exclusion over
/// all subsets; exponential in the box count, intended for <= 20 boxes.
Rational oracle_union_measure(const std::vector<Box>& boxes, std::size_t dimension);

} // namespace prodinfluence::oracles
