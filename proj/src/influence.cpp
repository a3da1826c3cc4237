#include "prodinfluence/influence.hpp"

#include "prodinfluence/errors.hpp"
#include "prodinfluence/rng.hpp"

#include <algorithm>
#include <cmath>

namespace prodinfluence {

Rational influence(const Event& event, std::size_t coord) {
    Rational total = 0;
    for_each_fibre_assignment(event.space(), coord,
                              [&](const FibreAssignment& psi, const Rational& weight) {
                                  if (weight == 0) {
                                      return;
                                  }
                                  const Rational section = fibre_measure(event, psi);
                                  if (section > 0 && section < 1) {
                                      total += weight;
                                  }
                              });
    return total;
}

Rational bkkkl_influence(const Event& event, std::size_t coord) {
    const ProductSpace& space = event.space();
    const std::size_t k = space.atom_count();
    Rational total = 0;
    for_each_fibre_assignment(space, coord,
                              [&](const FibreAssignment& psi, const Rational& weight) {
                                  if (weight == 0) {
                                      return;
                                  }
                                  bool inside = false;
                                  bool outside = false;
                                  for (AtomId t = 0; t < k && !(inside && outside); ++t) {
                                      const auto rank = completed_rank(space, psi, t);
                                      (event.accepts_rank(rank) ? inside : outside) = true;
                                  }
                                  if (inside && outside) {
                                      total += weight;
                                  }
                              });
    return total;
}

Rational h_influence(const Event& event, std::size_t coord, const HFunction& h) {
    Rational total = 0;
    for_each_fibre_assignment(event.space(), coord,
                              [&](const FibreAssignment& psi, const Rational& weight) {
                                  if (weight == 0) {
                                      return;
                                  }
                                  total += weight * h(fibre_measure(event, psi));
                              });
    return total;
}

namespace {

template <typename Fn>
std::vector<Rational> per_coordinate(const Event& event, Fn&& fn) {
    std::vector<Rational> values;
    values.reserve(event.space().dimension());
    for (std::size_t e = 0; e < event.space().dimension(); ++e) {
        values.push_back(fn(event, e));
    }
    return values;
}

} // namespace

std::vector<Rational> influence_vector(const Event& event) {
    return per_coordinate(event, [](const Event& a, std::size_t e) { return influence(a, e); });
}

std::vector<Rational> bkkkl_influence_vector(const Event& event) {
    return per_coordinate(event,
                          [](const Event& a, std::size_t e) { return bkkkl_influence(a, e); });
}

std::vector<Rational> h_influence_vector(const Event& event, const HFunction& h) {
    return per_coordinate(event,
                          [&h](const Event& a, std::size_t e) { return h_influence(a, e, h); });
}

InfluenceReport influence_report(const Event& event) {
    InfluenceReport report;
    report.measure = event_measure(event);
    report.influences = influence_vector(event);
    report.max_influence = *std::max_element(report.influences.begin(), report.influences.end());
    report.total_influence = 0;
    for (const Rational& v : report.influences) {
        report.total_influence += v;
    }
    report.degenerate = report.measure == 0 || report.measure == 1;
    if (report.degenerate) {
        report.sum_ratio.reason = "event measure is degenerate (p in {0,1})";
        report.max_ratio.reason = report.sum_ratio.reason;
        return report;
    }
    if (report.max_influence == 0) {
        // A non-degenerate event on a finite space always has a split fibre.
        throw InternalError("max influence 0 with 0 < p < 1");
    }

    const long double p = to_long_double(report.measure);
    const long double pq = p * (1.0L - p);
    const long double m = to_long_double(report.max_influence);
    const std::size_t n = event.space().dimension();

    if (report.max_influence >= Rational(1, 2)) {
        report.sum_ratio.reason = "max influence >= 1/2, so ln(1/(2m)) <= 0";
    } else {
        const long double denom = pq * std::log(1.0L / (2.0L * m));
        report.sum_ratio.value = to_long_double(report.total_influence) / denom;
    }

    if (n == 1) {
        report.max_ratio.reason = "single coordinate, so ln(n) = 0";
    } else {
        const long double denom = pq * std::log(static_cast<long double>(n)) /
                                  static_cast<long double>(n);
        report.max_ratio.value = m / denom;
    }
    return report;
}

namespace {

// floor(cumulative weight * 2^64) per atom; the final bucket is implicit.
std::vector<std::uint64_t> sampling_thresholds(const GroundSpace& ground) {
    const Integer two64 = Integer(1) << 64;
    std::vector<std::uint64_t> thresholds;
    thresholds.reserve(ground.atom_count());
    Rational cumulative = 0;
    for (std::size_t j = 0; j + 1 < ground.atom_count(); ++j) {
        cumulative += ground.weight(static_cast<AtomId>(j));
        const Integer scaled = numerator(cumulative) * two64 / denominator(cumulative);
        thresholds.push_back(scaled.convert_to<std::uint64_t>());
    }
    return thresholds;
}

AtomId draw_atom(const std::vector<std::uint64_t>& thresholds, std::uint64_t u) {
    for (std::size_t j = 0; j < thresholds.size(); ++j) {
        if (u < thresholds[j]) {
            return static_cast<AtomId>(j);
        }
    }
    return static_cast<AtomId>(thresholds.size());
}

} // namespace

McEstimate mc_influence(const GroundSpace& ground, std::size_t dimension,
                        const OutcomePredicate& accepts, std::size_t coord,
                        std::uint64_t samples, std::uint64_t seed) {
    if (dimension == 0 || coord >= dimension) {
        throw InputError("coordinate " + std::to_string(coord) + " out of range (n = " +
                         std::to_string(dimension) + ")");
    }
    if (samples == 0) {
        throw InputError("sample count must be positive");
    }
    const std::size_t k = ground.atom_count();
    const auto thresholds = sampling_thresholds(ground);
    std::vector<AtomId> outcome(dimension, 0);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        SplitMix64 gen(SplitMix64::derive(seed, i));
        for (std::size_t f = 0; f < dimension; ++f) {
            if (f != coord) {
                outcome[f] = draw_atom(thresholds, gen.next());
            }
        }
        // The section measure lies strictly in (0,1) iff some positive-weight
        // atom completes into the event and another positive-weight atom
        // completes outside it; this evaluates the indicator exactly.
        bool inside = false;
        bool outside = false;
        for (AtomId t = 0; t < k && !(inside && outside); ++t) {
            if (ground.weight(t) == 0) {
                continue;
            }
            outcome[coord] = t;
            (accepts(outcome) ? inside : outside) = true;
        }
        if (inside && outside) {
            ++hits;
        }
    }
    McEstimate result;
    result.samples = samples;
    result.seed = seed;
    result.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    result.std_error =
        std::sqrt(result.estimate * (1.0 - result.estimate) / static_cast<double>(samples));
    return result;
}

McEstimate mc_influence(const Event& event, std::size_t coord, std::uint64_t samples,
                        std::uint64_t seed) {
    const ProductSpace& space = event.space();
    return mc_influence(
        space.ground(), space.dimension(),
        [&event](std::span<const AtomId> coords) { return event.accepts(coords); }, coord,
        samples, seed);
}

} // namespace prodinfluence
