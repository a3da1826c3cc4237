#pragma once

#include "prodinfluence/rational.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace prodinfluence {

using AtomId = std::uint32_t;

/// Finite probability space on atoms 0..K-1 with exact rational weights.
/// Weights are nonnegative and sum to exactly 1; zero weights are legal and
/// preserved, they are the finite analogue of null sets.
class GroundSpace {
public:
    explicit GroundSpace(std::vector<Rational> weights);

    static GroundSpace uniform(std::size_t atom_count);
    /// Fair bit: two atoms of weight 1/2.
    static GroundSpace fair_bit() { return uniform(2); }

    std::size_t atom_count() const { return weights_.size(); }
    const Rational& weight(AtomId atom) const { return weights_.at(atom); }
    const std::vector<Rational>& weights() const { return weights_; }

    bool operator==(const GroundSpace&) const = default;

private:
    std::vector<Rational> weights_;
};

/// Homogeneous product of one ground space over coordinates 0..n-1.
class ProductSpace {
public:
    ProductSpace(GroundSpace ground, std::size_t dimension);

    const GroundSpace& ground() const { return ground_; }
    std::size_t dimension() const { return dimension_; }
    std::size_t atom_count() const { return ground_.atom_count(); }

    /// K^n. Throws InputError once the count leaves the exactly-representable
    /// desk scale (2^24 outcomes); callers wanting larger spaces must sample.
    std::uint64_t outcome_count() const;

    /// Mixed-radix rank with coordinate 0 most significant:
    /// rank = sum coords[i] * K^(n-1-i). This order is part of the
    /// serialized-event contract and must not change.
    std::uint64_t rank(std::span<const AtomId> coords) const;
    std::vector<AtomId> unrank(std::uint64_t rank) const;

    bool operator==(const ProductSpace&) const = default;

private:
    GroundSpace ground_;
    std::size_t dimension_;
};

/// Assignment of atoms to every coordinate except one; identifies the fibre
/// of outcomes that agree with it off the omitted coordinate.
struct FibreAssignment {
    std::size_t omitted_coord = 0;
    std::vector<AtomId> values; // coordinates != omitted_coord, increasing order

    bool operator==(const FibreAssignment&) const = default;
};

/// Measurable event on a product space, stored as an acceptance bitset over
/// outcome ranks.
class Event {
public:
    Event(ProductSpace space, std::vector<bool> accepted);

    static Event empty_event(ProductSpace space);
    static Event full_event(ProductSpace space);
    static Event from_outcomes(ProductSpace space,
                               const std::vector<std::vector<AtomId>>& outcomes);
    static Event from_predicate(ProductSpace space,
                                const std::function<bool(std::span<const AtomId>)>& accepts);
    /// Parses a '0'/'1' string of length K^n in rank order.
    static Event from_bits(ProductSpace space, std::string_view bits);

    const ProductSpace& space() const { return space_; }
    bool accepts_rank(std::uint64_t rank) const { return accepted_[rank]; }
    bool accepts(std::span<const AtomId> coords) const;
    const std::vector<bool>& accepted() const { return accepted_; }

    std::string bits_string() const;
    Event complement() const;

    bool operator==(const Event&) const = default;

private:
    ProductSpace space_;
    std::vector<bool> accepted_;
};

/// Probability of the event under the product measure.
Rational event_measure(const Event& event);

/// Conditional measure of the event on the fibre named by `assignment`:
/// the weighted fraction of completions landing inside the event.
Rational fibre_measure(const Event& event, const FibreAssignment& assignment);

/// Visits all K^(n-1) fibre assignments omitting `omitted_coord`, each with
/// its product weight. Weights sum to exactly 1.
void for_each_fibre_assignment(
    const ProductSpace& space, std::size_t omitted_coord,
    const std::function<void(const FibreAssignment&, const Rational&)>& visit);

std::vector<std::pair<FibreAssignment, Rational>>
enumerate_fibre_assignments(const ProductSpace& space, std::size_t omitted_coord);

/// Rank of the outcome obtained by inserting `atom` at the omitted coordinate.
std::uint64_t completed_rank(const ProductSpace& space, const FibreAssignment& assignment,
                             AtomId atom);

} // namespace prodinfluence
