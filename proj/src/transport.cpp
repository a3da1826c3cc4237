#include "prodinfluence/transport.hpp"

#include "prodinfluence/errors.hpp"
#include "prodinfluence/influence.hpp"

#include <algorithm>
#include <sstream>

namespace prodinfluence {

Transport::Transport(GroundSpace ground) : ground_(std::move(ground)) {
    const std::size_t k = ground_.atom_count();
    cantor_points_.reserve(k);
    Integer power = 3;
    for (std::size_t j = 0; j < k; ++j) {
        cantor_points_.emplace_back(Integer(2), power);
        power *= 3;
    }
    // Points 2*3^-(j+1) decrease in j, so increasing point order reverses the
    // atom ids. Getting this order wrong flips every interval assignment.
    order_.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        order_[j] = static_cast<AtomId>(k - 1 - j);
    }
    kappa_table_.reserve(k);
    atom_intervals_.resize(k);
    Rational cumulative = 0;
    for (AtomId atom : order_) {
        const Rational lo = cumulative;
        cumulative += ground_.weight(atom);
        kappa_table_.push_back(cumulative);
        atom_intervals_[atom] = Interval{lo, cumulative};
    }
    if (cumulative != 1) {
        throw InternalError("atom intervals do not tile [0,1)");
    }
}

Transport build_transport(const GroundSpace& ground) {
    return Transport(ground);
}

BoxEvent push_event(const Transport& transport, const Event& event) {
    const ProductSpace& space = event.space();
    if (space.ground() != transport.ground()) {
        throw InputError("event and transport use different ground spaces");
    }
    const std::size_t n = space.dimension();
    std::vector<Box> boxes;
    const std::uint64_t count = space.outcome_count();
    for (std::uint64_t r = 0; r < count; ++r) {
        if (!event.accepts_rank(r)) {
            continue;
        }
        const auto coords = space.unrank(r);
        Box box;
        box.intervals.reserve(n);
        bool empty = false;
        for (AtomId atom : coords) {
            const Interval& iv = transport.atom_interval(atom);
            empty = empty || iv.empty();
            box.intervals.push_back(iv);
        }
        if (!empty) {
            boxes.push_back(std::move(box));
        }
    }
    return normalize(BoxEvent(n, std::move(boxes)));
}

std::string VerificationRecord::failure_report() const {
    std::ostringstream out;
    for (const TransportComparison& c : comparisons) {
        if (c.equal) {
            continue;
        }
        out << c.quantity;
        if (c.quantity != "measure") {
            out << " at coordinate " << c.coord;
        }
        out << ": event side " << to_fraction_string(c.event_side) << " != box side "
            << to_fraction_string(c.box_side) << '\n';
    }
    return out.str();
}

VerificationRecord verify_transport(const Transport& transport, const Event& event,
                                    const BoxEvent& pushed, std::vector<HFunction> hs) {
    if (event.space().ground() != transport.ground()) {
        throw InputError("event and transport use different ground spaces");
    }
    const bool has_indicator =
        std::any_of(hs.begin(), hs.end(), [](const HFunction& h) {
            return h.kind() == HFunction::Kind::Indicator01;
        });
    if (!has_indicator) {
        hs.insert(hs.begin(), HFunction::indicator01());
    }

    VerificationRecord record;
    record.passed = true;
    auto compare = [&record](std::string quantity, std::size_t coord, Rational lhs,
                             Rational rhs) {
        TransportComparison c{std::move(quantity), coord, std::move(lhs), std::move(rhs), false};
        c.equal = c.event_side == c.box_side;
        record.passed = record.passed && c.equal;
        record.comparisons.push_back(std::move(c));
    };

    compare("measure", 0, event_measure(event), box_measure(pushed));
    for (std::size_t e = 0; e < event.space().dimension(); ++e) {
        for (const HFunction& h : hs) {
            compare(h.name(), e, h_influence(event, e, h), box_h_influence(pushed, e, h));
        }
    }
    return record;
}

bool check_fibre_preservation(const Transport& transport, const Event& event,
                              std::size_t coord) {
    const ProductSpace& space = event.space();
    const BoxEvent pushed = push_event(transport, event);
    bool all_equal = true;
    for_each_fibre_assignment(
        space, coord, [&](const FibreAssignment& psi, const Rational& weight) {
            if (!all_equal || weight == 0) {
                // Zero-weight assignments own empty cells with no section.
                return;
            }
            std::vector<Rational> base;
            base.reserve(psi.values.size());
            for (AtomId atom : psi.values) {
                base.push_back(transport.atom_interval(atom).lo);
            }
            const Rational box_side = line_section_measure(pushed, coord, base);
            all_equal = box_side == fibre_measure(event, psi);
        });
    return all_equal;
}

} // namespace prodinfluence
