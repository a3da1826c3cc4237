#pragma once

#include "prodinfluence/hfunction.hpp"
#include "prodinfluence/rational.hpp"

#include <functional>
#include <span>
#include <vector>

namespace prodinfluence {

/// Half-open interval [lo, hi) with rational endpoints in [0,1].
struct Interval {
    Rational lo;
    Rational hi;

    bool empty() const { return lo == hi; }
    Rational length() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x < hi; }

    bool operator==(const Interval&) const = default;
    bool operator<(const Interval& other) const {
        if (lo != other.lo) {
            return lo < other.lo;
        }
        return hi < other.hi;
    }
};

/// Axis-aligned product of half-open intervals.
struct Box {
    std::vector<Interval> intervals;

    bool empty() const;
    Rational volume() const;
    bool operator==(const Box&) const = default;
};

/// Event on the Lebesgue cube given as a finite union of boxes. Construction
/// validates shape and endpoint range; disjointness is established by
/// normalize().
class BoxEvent {
public:
    BoxEvent(std::size_t dimension, std::vector<Box> boxes);

    static BoxEvent empty_event(std::size_t dimension) { return BoxEvent(dimension, {}); }
    static BoxEvent full_cube(std::size_t dimension);

    std::size_t dimension() const { return dimension_; }
    const std::vector<Box>& boxes() const { return boxes_; }

    bool operator==(const BoxEvent&) const = default;

private:
    std::size_t dimension_;
    std::vector<Box> boxes_;
};

/// Rewrites the union as pairwise disjoint boxes covering the same point set:
/// the endpoint grid is swept for covered cells, which are then coalesced
/// along each coordinate until stable. Idempotent; drops empty boxes; output
/// is sorted, so equal point sets built from grid-compatible inputs compare
/// equal structurally.
BoxEvent normalize(const BoxEvent& event);

/// Lebesgue measure of a disjoint union (sum of box volumes).
Rational box_measure(const BoxEvent& event);

/// Influence of coordinate `coord`: the measure of base points whose section
/// along `coord` has length strictly between 0 and 1. Expects a normalized
/// event.
Rational box_influence(const BoxEvent& event, std::size_t coord);

/// Expectation of h over section lengths, weighted by base-cell volume.
Rational box_h_influence(const BoxEvent& event, std::size_t coord, const HFunction& h);

/// Visits every cell of the product partition of the coordinates other than
/// `coord` (cut at 0, 1 and every box endpoint) with its volume and constant
/// section length.
void for_each_section_cell(const BoxEvent& event, std::size_t coord,
                           const std::function<void(const Rational& cell_volume,
                                                    const Rational& section_measure)>& visit);

/// Section length along `coord` over the single base point `base`
/// (coordinates != coord, increasing order).
Rational line_section_measure(const BoxEvent& event, std::size_t coord,
                              std::span<const Rational> base);

/// A single hyperplane slice {x_coord = at}, tracked symbolically as added to
/// (included) or removed from (excluded) an event. Slices are null sets.
struct NullSlice {
    std::size_t coord = 0;
    Rational at;
    bool included = true;

    bool operator==(const NullSlice&) const = default;
};

/// Box event together with marked null slices. Measure and influence read
/// only the base event; the line-nonconstancy evaluator also sees the slices.
struct MarkedBoxEvent {
    BoxEvent base;
    std::vector<NullSlice> slices;
};

MarkedBoxEvent add_null_slice(BoxEvent base, std::size_t coord, Rational at,
                              bool included = true);
MarkedBoxEvent add_null_slice(MarkedBoxEvent event, std::size_t coord, Rational at,
                              bool included = true);

Rational box_measure(const MarkedBoxEvent& event);
Rational box_influence(const MarkedBoxEvent& event, std::size_t coord);
Rational box_h_influence(const MarkedBoxEvent& event, std::size_t coord, const HFunction& h);

/// Classical line-based evaluator on the marked representation: the measure
/// of base points whose slice-modified section along `coord` is neither empty
/// nor all of [0,1). Unlike box_influence this reacts to the null slices.
Rational bkkkl_line_influence(const MarkedBoxEvent& event, std::size_t coord);

} // namespace prodinfluence
