#pragma once

#include "prodinfluence/core_model.hpp"
#include "prodinfluence/hfunction.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace prodinfluence {

/// Influence of coordinate `coord` on the event: the probability, over the
/// remaining coordinates, that the fibre's conditional measure is strictly
/// between 0 and 1. Invariant under changes on null sets.
Rational influence(const Event& event, std::size_t coord);

/// Classical line-based influence: the probability that the indicator is
/// non-constant along the coordinate line, with constancy quantified over
/// every atom including zero-weight ones. Never smaller than influence();
/// strictly larger exactly when zero-weight atoms break constancy.
Rational bkkkl_influence(const Event& event, std::size_t coord);

/// h-influence: the expectation of h applied to the fibre section measure.
/// h = indicator01 recovers influence() exactly.
Rational h_influence(const Event& event, std::size_t coord, const HFunction& h);

std::vector<Rational> influence_vector(const Event& event);
std::vector<Rational> bkkkl_influence_vector(const Event& event);
std::vector<Rational> h_influence_vector(const Event& event, const HFunction& h);

/// A float ratio that may be inapplicable; `reason` is set exactly when
/// `value` is empty.
struct RatioField {
    std::optional<long double> value;
    std::string reason;

    bool applicable() const { return value.has_value(); }
};

struct InfluenceReport {
    Rational measure;                  // p
    std::vector<Rational> influences;  // per coordinate
    Rational max_influence;            // m
    Rational total_influence;          // sum over coordinates
    bool degenerate = false;           // p in {0, 1}
    /// total / (p(1-p) ln(1/(2m))); inapplicable when p degenerate or m >= 1/2.
    RatioField sum_ratio;
    /// m / (p(1-p) ln(n)/n); inapplicable when p degenerate or n = 1.
    RatioField max_ratio;
};

InfluenceReport influence_report(const Event& event);

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

using OutcomePredicate = std::function<bool(std::span<const AtomId>)>;

/// Monte-Carlo estimate of influence(): samples fibre assignments i.i.d. from
/// the product weights and evaluates the exact non-constancy indicator per
/// sample. Deterministic for a given seed; each sample draws from its own
/// derived stream, so evaluation order does not matter.
McEstimate mc_influence(const Event& event, std::size_t coord, std::uint64_t samples,
                        std::uint64_t seed);

/// Predicate-backed variant for spaces too large to materialize.
McEstimate mc_influence(const GroundSpace& ground, std::size_t dimension,
                        const OutcomePredicate& accepts, std::size_t coord,
                        std::uint64_t samples, std::uint64_t seed);

} // namespace prodinfluence
