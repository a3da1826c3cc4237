#include "prodinfluence/boxes.hpp"

#include "prodinfluence/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace prodinfluence {

namespace {

constexpr std::uint64_t kMaxGridCells = std::uint64_t{1} << 24;

} // namespace

bool Box::empty() const {
    return std::any_of(intervals.begin(), intervals.end(),
                       [](const Interval& iv) { return iv.empty(); });
}

Rational Box::volume() const {
    Rational v = 1;
    for (const Interval& iv : intervals) {
        v *= iv.length();
    }
    return v;
}

BoxEvent::BoxEvent(std::size_t dimension, std::vector<Box> boxes)
    : dimension_(dimension), boxes_(std::move(boxes)) {
    if (dimension_ == 0) {
        throw InputError("box event needs at least one coordinate");
    }
    for (const Box& box : boxes_) {
        if (box.intervals.size() != dimension_) {
            throw InputError("box has " + std::to_string(box.intervals.size()) +
                             " intervals, expected " + std::to_string(dimension_));
        }
        for (const Interval& iv : box.intervals) {
            if (iv.lo < 0 || iv.hi > 1) {
                throw InputError("box endpoint outside [0,1]: [" + to_fraction_string(iv.lo) +
                                 ", " + to_fraction_string(iv.hi) + ")");
            }
            if (iv.lo > iv.hi) {
                throw InputError("box interval has lo > hi: [" + to_fraction_string(iv.lo) +
                                 ", " + to_fraction_string(iv.hi) + ")");
            }
        }
    }
}

BoxEvent BoxEvent::full_cube(std::size_t dimension) {
    Box box;
    box.intervals.assign(dimension, Interval{0, 1});
    return BoxEvent(dimension, {std::move(box)});
}

namespace {

std::vector<std::vector<Rational>> endpoint_cuts(const std::vector<Box>& boxes,
                                                 std::size_t dimension, bool cover_unit) {
    std::vector<std::vector<Rational>> cuts(dimension);
    for (std::size_t f = 0; f < dimension; ++f) {
        std::set<Rational> values;
        if (cover_unit) {
            values.insert(Rational(0));
            values.insert(Rational(1));
        }
        for (const Box& box : boxes) {
            values.insert(box.intervals[f].lo);
            values.insert(box.intervals[f].hi);
        }
        cuts[f].assign(values.begin(), values.end());
    }
    return cuts;
}

std::uint64_t cell_count(const std::vector<std::vector<Rational>>& cuts) {
    std::uint64_t total = 1;
    for (const auto& c : cuts) {
        const std::uint64_t cells = c.size() < 2 ? 0 : c.size() - 1;
        if (cells == 0) {
            return 0;
        }
        if (total > kMaxGridCells / cells) {
            throw InputError("endpoint grid exceeds the desk-scale cell limit");
        }
        total *= cells;
    }
    return total;
}

// Walks the product of consecutive-cut cells; `index[f]` selects
// [cuts[f][i], cuts[f][i+1]).
template <typename Visit>
void for_each_cell(const std::vector<std::vector<Rational>>& cuts, Visit&& visit) {
    if (cell_count(cuts) == 0) {
        return;
    }
    std::vector<std::size_t> index(cuts.size(), 0);
    for (;;) {
        visit(index);
        bool advanced = false;
        std::size_t pos = index.size();
        while (pos > 0) {
            --pos;
            if (++index[pos] + 1 < cuts[pos].size()) {
                advanced = true;
                break;
            }
            index[pos] = 0;
        }
        if (!advanced) {
            return;
        }
    }
}

bool box_contains_cell(const Box& box, const std::vector<std::vector<Rational>>& cuts,
                       const std::vector<std::size_t>& index) {
    for (std::size_t f = 0; f < cuts.size(); ++f) {
        const Interval& iv = box.intervals[f];
        if (iv.lo > cuts[f][index[f]] || cuts[f][index[f] + 1] > iv.hi) {
            return false;
        }
    }
    return true;
}

// Merges adjacent boxes that agree on every coordinate except `coord`.
bool merge_along(std::vector<Box>& boxes, std::size_t coord) {
    if (boxes.size() < 2) {
        return false;
    }
    std::sort(boxes.begin(), boxes.end(), [coord](const Box& a, const Box& b) {
        for (std::size_t f = 0; f < a.intervals.size(); ++f) {
            if (f == coord) {
                continue;
            }
            if (a.intervals[f] != b.intervals[f]) {
                return a.intervals[f] < b.intervals[f];
            }
        }
        return a.intervals[coord].lo < b.intervals[coord].lo;
    });
    bool merged = false;
    std::vector<Box> out;
    out.reserve(boxes.size());
    out.push_back(std::move(boxes.front()));
    for (std::size_t i = 1; i < boxes.size(); ++i) {
        Box& prev = out.back();
        Box& next = boxes[i];
        bool same_others = true;
        for (std::size_t f = 0; f < next.intervals.size() && same_others; ++f) {
            same_others = f == coord || prev.intervals[f] == next.intervals[f];
        }
        if (same_others && prev.intervals[coord].hi == next.intervals[coord].lo) {
            prev.intervals[coord].hi = next.intervals[coord].hi;
            merged = true;
        } else {
            out.push_back(std::move(next));
        }
    }
    boxes = std::move(out);
    return merged;
}

} // namespace

BoxEvent normalize(const BoxEvent& event) {
    const std::size_t n = event.dimension();
    std::vector<Box> boxes;
    for (const Box& box : event.boxes()) {
        if (!box.empty()) {
            boxes.push_back(box);
        }
    }
    if (boxes.empty()) {
        return BoxEvent(n, {});
    }
    const auto cuts = endpoint_cuts(boxes, n, /*cover_unit=*/false);
    std::vector<Box> cells;
    for_each_cell(cuts, [&](const std::vector<std::size_t>& index) {
        const bool covered = std::any_of(boxes.begin(), boxes.end(), [&](const Box& box) {
            return box_contains_cell(box, cuts, index);
        });
        if (!covered) {
            return;
        }
        Box cell;
        cell.intervals.reserve(n);
        for (std::size_t f = 0; f < n; ++f) {
            cell.intervals.push_back(Interval{cuts[f][index[f]], cuts[f][index[f] + 1]});
        }
        cells.push_back(std::move(cell));
    });
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t f = n; f-- > 0;) {
            merged = merge_along(cells, f) || merged;
        }
    }
    std::sort(cells.begin(), cells.end(),
              [](const Box& a, const Box& b) { return a.intervals < b.intervals; });
    return BoxEvent(n, std::move(cells));
}

Rational box_measure(const BoxEvent& event) {
    Rational total = 0;
    for (const Box& box : event.boxes()) {
        total += box.volume();
    }
    return total;
}

void for_each_section_cell(const BoxEvent& event, std::size_t coord,
                           const std::function<void(const Rational&, const Rational&)>& visit) {
    const std::size_t n = event.dimension();
    if (coord >= n) {
        throw InputError("coordinate " + std::to_string(coord) + " out of range (n = " +
                         std::to_string(n) + ")");
    }
    // Partition of [0,1) per retained coordinate; base coordinates are the
    // coordinates != coord in increasing order.
    std::vector<std::vector<Rational>> cuts(n - 1);
    {
        std::size_t b = 0;
        for (std::size_t f = 0; f < n; ++f) {
            if (f == coord) {
                continue;
            }
            std::set<Rational> values{Rational(0), Rational(1)};
            for (const Box& box : event.boxes()) {
                values.insert(box.intervals[f].lo);
                values.insert(box.intervals[f].hi);
            }
            cuts[b++].assign(values.begin(), values.end());
        }
    }
    // n = 1: a single empty base cell of volume 1.
    for_each_cell(cuts, [&](const std::vector<std::size_t>& index) {
        Rational volume = 1;
        for (std::size_t b = 0; b < cuts.size(); ++b) {
            volume *= cuts[b][index[b] + 1] - cuts[b][index[b]];
        }
        Rational section = 0;
        for (const Box& box : event.boxes()) {
            bool contains = true;
            std::size_t b = 0;
            for (std::size_t f = 0; f < n && contains; ++f) {
                if (f == coord) {
                    continue;
                }
                const Interval& iv = box.intervals[f];
                contains = iv.lo <= cuts[b][index[b]] && cuts[b][index[b] + 1] <= iv.hi;
                ++b;
            }
            if (contains) {
                section += box.intervals[coord].length();
            }
        }
        visit(volume, section);
    });
}

Rational box_influence(const BoxEvent& event, std::size_t coord) {
    Rational total = 0;
    for_each_section_cell(event, coord, [&](const Rational& volume, const Rational& section) {
        if (section > 0 && section < 1) {
            total += volume;
        }
    });
    return total;
}

Rational box_h_influence(const BoxEvent& event, std::size_t coord, const HFunction& h) {
    Rational total = 0;
    for_each_section_cell(event, coord, [&](const Rational& volume, const Rational& section) {
        total += volume * h(section);
    });
    return total;
}

Rational line_section_measure(const BoxEvent& event, std::size_t coord,
                              std::span<const Rational> base) {
    const std::size_t n = event.dimension();
    if (coord >= n || base.size() + 1 != n) {
        throw InputError("line_section_measure: bad coordinate or base point arity");
    }
    Rational section = 0;
    for (const Box& box : event.boxes()) {
        bool contains = true;
        std::size_t b = 0;
        for (std::size_t f = 0; f < n && contains; ++f) {
            if (f == coord) {
                continue;
            }
            contains = box.intervals[f].contains(base[b++]);
        }
        if (contains) {
            section += box.intervals[coord].length();
        }
    }
    return section;
}

MarkedBoxEvent add_null_slice(BoxEvent base, std::size_t coord, Rational at, bool included) {
    return add_null_slice(MarkedBoxEvent{std::move(base), {}}, coord, std::move(at), included);
}

MarkedBoxEvent add_null_slice(MarkedBoxEvent event, std::size_t coord, Rational at,
                              bool included) {
    if (coord >= event.base.dimension()) {
        throw InputError("slice coordinate " + std::to_string(coord) + " out of range");
    }
    if (at < 0 || at > 1) {
        throw InputError("slice position " + to_fraction_string(at) + " outside [0,1]");
    }
    event.slices.push_back(NullSlice{coord, std::move(at), included});
    return event;
}

Rational box_measure(const MarkedBoxEvent& event) {
    return box_measure(event.base);
}

Rational box_influence(const MarkedBoxEvent& event, std::size_t coord) {
    return box_influence(event.base, coord);
}

Rational box_h_influence(const MarkedBoxEvent& event, std::size_t coord, const HFunction& h) {
    return box_h_influence(event.base, coord, h);
}

Rational bkkkl_line_influence(const MarkedBoxEvent& event, std::size_t coord) {
    if (coord >= event.base.dimension()) {
        throw InputError("coordinate " + std::to_string(coord) + " out of range");
    }
    // Only slices along `coord` touch a non-null set of lines: a slice along
    // another coordinate alters lines over a null set of base points, which
    // the outer measure cannot see. Later slices override earlier ones at the
    // same position, and a point at 1 lies outside every line's domain [0,1).
    std::map<Rational, bool> final_state;
    for (const NullSlice& slice : event.slices) {
        if (slice.coord == coord && slice.at < 1) {
            final_state[slice.at] = slice.included;
        }
    }
    const bool any_added = std::any_of(final_state.begin(), final_state.end(),
                                       [](const auto& kv) { return kv.second; });
    const bool any_removed = std::any_of(final_state.begin(), final_state.end(),
                                         [](const auto& kv) { return !kv.second; });
    Rational total = 0;
    for_each_section_cell(event.base, coord,
                          [&](const Rational& volume, const Rational& section) {
                              // Degenerate sections stay constant only if no
                              // effective point survives the slices: removing
                              // a point from a full section (or adding one to
                              // an empty section) breaks constancy.
                              const bool constant_zero = section == 0 && !any_added;
                              const bool constant_one = section == 1 && !any_removed;
                              if (!constant_zero && !constant_one) {
                                  total += volume;
                              }
                          });
    return total;
}

} // namespace prodinfluence
