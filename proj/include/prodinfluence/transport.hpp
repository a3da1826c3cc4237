#pragma once

#include "prodinfluence/boxes.hpp"
#include "prodinfluence/core_model.hpp"
#include "prodinfluence/hfunction.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace prodinfluence {

/// Measure-preserving correspondence between a finite ground space and the
/// unit interval, built through the Cantor set: atom j (0-based) is encoded
/// at the Cantor point 2*3^-(j+1), the cumulative distribution of the induced
/// atomic measure is tabulated in increasing point order, and its generalized
/// inverse assigns each atom the half-open interval whose length is the
/// atom's weight. Zero-weight atoms receive empty intervals.
class Transport {
public:
    explicit Transport(GroundSpace ground);

    const GroundSpace& ground() const { return ground_; }

    /// Encoding point of an atom; distinct for every atom regardless of weight.
    const Rational& cantor_point(AtomId atom) const { return cantor_points_.at(atom); }

    /// Atom ids sorted by increasing Cantor point (i.e. decreasing atom id).
    const std::vector<AtomId>& increasing_point_order() const { return order_; }

    /// Cumulative weights in increasing point order; non-decreasing, ends at 1.
    const std::vector<Rational>& kappa_table() const { return kappa_table_; }

    /// Interval on [0,1) carried to the atom by the inverse-CDF map.
    const Interval& atom_interval(AtomId atom) const { return atom_intervals_.at(atom); }

private:
    GroundSpace ground_;
    std::vector<Rational> cantor_points_;
    std::vector<AtomId> order_;
    std::vector<Rational> kappa_table_;
    std::vector<Interval> atom_intervals_;
};

Transport build_transport(const GroundSpace& ground);

/// Pushes an event forward coordinate-wise: each accepted outcome becomes the
/// product of its atoms' intervals, and the resulting union is normalized.
/// The push preserves measure and every h-influence exactly.
BoxEvent push_event(const Transport& transport, const Event& event);

struct TransportComparison {
    std::string quantity;      // "measure" or the h-function name
    std::size_t coord = 0;     // unused for "measure"
    Rational event_side;
    Rational box_side;
    bool equal = false;
};

struct VerificationRecord {
    bool passed = false;
    std::vector<TransportComparison> comparisons;

    /// Human-readable account of every mismatch (empty when passed).
    std::string failure_report() const;
};

/// Compares measure and h-influences of the event and its pushed image, for
/// every coordinate and every h in `hs` (the indicator is always included).
/// Any inequality signals an implementation bug and is returned in detail.
VerificationRecord verify_transport(const Transport& transport, const Event& event,
                                    const BoxEvent& pushed, std::vector<HFunction> hs);

/// Checks that the push preserves every fibre: the section measure of the
/// pushed event over each positive-weight fibre assignment's cell equals the
/// fibre's conditional measure in the ground product. True iff all agree.
bool check_fibre_preservation(const Transport& transport, const Event& event,
                              std::size_t coord);

} // namespace prodinfluence
