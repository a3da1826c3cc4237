#include "prodinfluence/core_model.hpp"

#include "prodinfluence/errors.hpp"

#include <algorithm>
#include <limits>

namespace prodinfluence {

namespace {

// Exact mode keeps the full acceptance bitset in memory; beyond this the CLI
// offers Monte-Carlo sampling instead.
constexpr std::uint64_t kMaxExactOutcomes = std::uint64_t{1} << 24;

} // namespace

GroundSpace::GroundSpace(std::vector<Rational> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw InputError("ground space needs at least one atom");
    }
    Rational total = 0;
    for (const Rational& w : weights_) {
        if (w < 0) {
            throw InputError("atom weight " + to_fraction_string(w) + " is negative");
        }
        total += w;
    }
    if (total != 1) {
        throw InputError("atom weights sum to " + to_fraction_string(total) + ", expected 1");
    }
}

GroundSpace GroundSpace::uniform(std::size_t atom_count) {
    if (atom_count == 0) {
        throw InputError("ground space needs at least one atom");
    }
    std::vector<Rational> weights(atom_count,
                                  Rational(1, static_cast<unsigned long>(atom_count)));
    return GroundSpace(std::move(weights));
}

ProductSpace::ProductSpace(GroundSpace ground, std::size_t dimension)
    : ground_(std::move(ground)), dimension_(dimension) {
    if (dimension_ == 0) {
        throw InputError("product space needs at least one coordinate");
    }
}

std::uint64_t ProductSpace::outcome_count() const {
    const std::uint64_t k = ground_.atom_count();
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < dimension_; ++i) {
        if (k != 0 && count > kMaxExactOutcomes / k) {
            throw InputError("outcome space exceeds the exact-mode limit of 2^24; "
                             "use Monte-Carlo sampling (--mc) instead");
        }
        count *= k;
    }
    if (count > kMaxExactOutcomes) {
        throw InputError("outcome space exceeds the exact-mode limit of 2^24; "
                         "use Monte-Carlo sampling (--mc) instead");
    }
    return count;
}

std::uint64_t ProductSpace::rank(std::span<const AtomId> coords) const {
    if (coords.size() != dimension_) {
        throw InputError("outcome has " + std::to_string(coords.size()) +
                         " coordinates, expected " + std::to_string(dimension_));
    }
    const std::uint64_t k = ground_.atom_count();
    std::uint64_t value = 0;
    for (AtomId atom : coords) {
        if (atom >= k) {
            throw InputError("atom id " + std::to_string(atom) + " out of range (K = " +
                             std::to_string(k) + ")");
        }
        value = value * k + atom;
    }
    return value;
}

std::vector<AtomId> ProductSpace::unrank(std::uint64_t rank) const {
    const std::uint64_t k = ground_.atom_count();
    std::vector<AtomId> coords(dimension_);
    for (std::size_t i = dimension_; i-- > 0;) {
        coords[i] = static_cast<AtomId>(rank % k);
        rank /= k;
    }
    return coords;
}

Event::Event(ProductSpace space, std::vector<bool> accepted)
    : space_(std::move(space)), accepted_(std::move(accepted)) {
    if (accepted_.size() != space_.outcome_count()) {
        throw InputError("acceptance bitset has length " + std::to_string(accepted_.size()) +
                         ", expected K^n = " + std::to_string(space_.outcome_count()));
    }
}

Event Event::empty_event(ProductSpace space) {
    std::vector<bool> bits(space.outcome_count(), false);
    return Event(std::move(space), std::move(bits));
}

Event Event::full_event(ProductSpace space) {
    std::vector<bool> bits(space.outcome_count(), true);
    return Event(std::move(space), std::move(bits));
}

Event Event::from_outcomes(ProductSpace space,
                           const std::vector<std::vector<AtomId>>& outcomes) {
    std::vector<bool> bits(space.outcome_count(), false);
    for (const auto& coords : outcomes) {
        bits[space.rank(coords)] = true;
    }
    return Event(std::move(space), std::move(bits));
}

Event Event::from_predicate(ProductSpace space,
                            const std::function<bool(std::span<const AtomId>)>& accepts) {
    const std::uint64_t count = space.outcome_count();
    std::vector<bool> bits(count, false);
    for (std::uint64_t r = 0; r < count; ++r) {
        const auto coords = space.unrank(r);
        bits[r] = accepts(coords);
    }
    return Event(std::move(space), std::move(bits));
}

Event Event::from_bits(ProductSpace space, std::string_view bits) {
    const std::uint64_t count = space.outcome_count();
    if (bits.size() != count) {
        throw InputError("bits string has length " + std::to_string(bits.size()) +
                         ", expected K^n = " + std::to_string(count));
    }
    std::vector<bool> accepted(count, false);
    for (std::uint64_t r = 0; r < count; ++r) {
        const char c = bits[r];
        if (c != '0' && c != '1') {
            throw InputError(std::string("bits string may contain only '0'/'1', found '") + c +
                             "'");
        }
        accepted[r] = c == '1';
    }
    return Event(std::move(space), std::move(accepted));
}

bool Event::accepts(std::span<const AtomId> coords) const {
    return accepted_[space_.rank(coords)];
}

std::string Event::bits_string() const {
    std::string bits(accepted_.size(), '0');
    for (std::size_t i = 0; i < accepted_.size(); ++i) {
        if (accepted_[i]) {
            bits[i] = '1';
        }
    }
    return bits;
}

Event Event::complement() const {
    std::vector<bool> bits(accepted_.size());
    for (std::size_t i = 0; i < accepted_.size(); ++i) {
        bits[i] = !accepted_[i];
    }
    return Event(space_, std::move(bits));
}

Rational event_measure(const Event& event) {
    const ProductSpace& space = event.space();
    const auto& weights = space.ground().weights();
    const std::uint64_t count = space.outcome_count();
    const std::uint64_t k = space.atom_count();
    Rational total = 0;
    for (std::uint64_t r = 0; r < count; ++r) {
        if (!event.accepts_rank(r)) {
            continue;
        }
        Rational w = 1;
        std::uint64_t rest = r;
        for (std::size_t i = 0; i < space.dimension(); ++i) {
            w *= weights[rest % k];
            rest /= k;
        }
        total += w;
    }
    return total;
}

std::uint64_t completed_rank(const ProductSpace& space, const FibreAssignment& assignment,
                             AtomId atom) {
    const std::size_t n = space.dimension();
    const std::uint64_t k = space.atom_count();
    if (assignment.omitted_coord >= n) {
        throw InputError("omitted coordinate " + std::to_string(assignment.omitted_coord) +
                         " out of range (n = " + std::to_string(n) + ")");
    }
    if (assignment.values.size() + 1 != n) {
        throw InputError("fibre assignment has " + std::to_string(assignment.values.size()) +
                         " values, expected n-1 = " + std::to_string(n - 1));
    }
    std::uint64_t value = 0;
    std::size_t next_value = 0;
    for (std::size_t f = 0; f < n; ++f) {
        const AtomId atom_here = f == assignment.omitted_coord ? atom
                                                               : assignment.values[next_value++];
        if (atom_here >= k) {
            throw InputError("atom id " + std::to_string(atom_here) + " out of range (K = " +
                             std::to_string(k) + ")");
        }
        value = value * k + atom_here;
    }
    return value;
}

Rational fibre_measure(const Event& event, const FibreAssignment& assignment) {
    const ProductSpace& space = event.space();
    const auto& weights = space.ground().weights();
    const std::uint64_t base = completed_rank(space, assignment, 0);
    // Stride of the omitted coordinate in rank order.
    std::uint64_t stride = 1;
    for (std::size_t i = assignment.omitted_coord + 1; i < space.dimension(); ++i) {
        stride *= space.atom_count();
    }
    Rational section = 0;
    for (AtomId t = 0; t < space.atom_count(); ++t) {
        if (event.accepts_rank(base + t * stride)) {
            section += weights[t];
        }
    }
    return section;
}

void for_each_fibre_assignment(
    const ProductSpace& space, std::size_t omitted_coord,
    const std::function<void(const FibreAssignment&, const Rational&)>& visit) {
    const std::size_t n = space.dimension();
    if (omitted_coord >= n) {
        throw InputError("omitted coordinate " + std::to_string(omitted_coord) +
                         " out of range (n = " + std::to_string(n) + ")");
    }
    const std::size_t k = space.atom_count();
    const auto& weights = space.ground().weights();
    FibreAssignment assignment{omitted_coord, std::vector<AtomId>(n - 1, 0)};
    for (;;) {
        Rational weight = 1;
        for (AtomId v : assignment.values) {
            weight *= weights[v];
        }
        visit(assignment, weight);
        // Odometer over the n-1 retained coordinates, last coordinate fastest.
        std::size_t pos = assignment.values.size();
        while (pos > 0) {
            --pos;
            if (++assignment.values[pos] < k) {
                break;
            }
            assignment.values[pos] = 0;
            if (pos == 0) {
                return;
            }
        }
        if (assignment.values.empty()) {
            return;
        }
    }
}

std::vector<std::pair<FibreAssignment, Rational>>
enumerate_fibre_assignments(const ProductSpace& space, std::size_t omitted_coord) {
    std::vector<std::pair<FibreAssignment, Rational>> result;
    for_each_fibre_assignment(space, omitted_coord,
                              [&result](const FibreAssignment& a, const Rational& w) {
                                  result.emplace_back(a, w);
                              });
    return result;
}

} // namespace prodinfluence
