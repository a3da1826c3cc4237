#include "oracles.hpp"

namespace prodinfluence::oracles {

namespace {

// Digits of `rank` in base K, most significant digit = coordinate 0. Kept
// deliberately separate from the engine's unrank.
std::vector<AtomId> digits_of(std::uint64_t rank, std::size_t base, std::size_t length) {
    std::vector<AtomId> out(length, 0);
    for (std::size_t i = length; i-- > 0;) {
        out[i] = static_cast<AtomId>(rank % base);
        rank /= base;
    }
    return out;
}

std::uint64_t pow_u64(std::uint64_t base, std::size_t exponent) {
    std::uint64_t result = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        result *= base;
    }
    return result;
}

struct FibreTable {
    std::vector<Rational> weight;          // product weight of the assignment
    std::vector<Rational> section;         // sum of accepted atom weights
    std::vector<bool> any_accepted;        // over all atoms, weights ignored
    std::vector<bool> any_rejected;
};

// Walks every outcome once and regroups by the fibre obtained by deleting
// `coord` from the digit string.
FibreTable build_fibre_table(const Event& event, std::size_t coord) {
    const std::size_t k = event.space().atom_count();
    const std::size_t n = event.space().dimension();
    const std::uint64_t total = pow_u64(k, n);
    const std::uint64_t keys = pow_u64(k, n - 1);

    FibreTable table;
    table.weight.assign(keys, Rational(1));
    table.section.assign(keys, Rational(0));
    table.any_accepted.assign(keys, false);
    table.any_rejected.assign(keys, false);

    std::vector<bool> weight_filled(keys, false);
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        const std::vector<AtomId> coords = digits_of(rank, k, n);
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i != coord) {
                key = key * k + coords[i];
            }
        }
        const bool in_event = event.accepts_rank(rank);
        if (in_event) {
            table.section[key] += event.space().ground().weight(coords[coord]);
            table.any_accepted[key] = true;
        } else {
            table.any_rejected[key] = true;
        }
        if (!weight_filled[key]) {
            Rational w = 1;
            for (std::size_t i = 0; i < n; ++i) {
                if (i != coord) {
                    w *= event.space().ground().weight(coords[i]);
                }
            }
            table.weight[key] = w;
            weight_filled[key] = true;
        }
    }
    return table;
}

} // namespace

Rational oracle_event_measure(const Event& event) {
    const std::size_t k = event.space().atom_count();
    const std::size_t n = event.space().dimension();
    const std::uint64_t total = pow_u64(k, n);
    Rational sum = 0;
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        if (!event.accepts_rank(rank)) {
            continue;
        }
        Rational w = 1;
        for (AtomId atom : digits_of(rank, k, n)) {
            w *= event.space().ground().weight(atom);
        }
        sum += w;
    }
    return sum;
}

Rational oracle_influence(const Event& event, std::size_t coord) {
    const FibreTable table = build_fibre_table(event, coord);
    Rational sum = 0;
    for (std::size_t key = 0; key < table.weight.size(); ++key) {
        if (table.section[key] > 0 && table.section[key] < 1) {
            sum += table.weight[key];
        }
    }
    return sum;
}

Rational oracle_bkkkl_influence(const Event& event, std::size_t coord) {
    const FibreTable table = build_fibre_table(event, coord);
    Rational sum = 0;
    for (std::size_t key = 0; key < table.weight.size(); ++key) {
        if (table.any_accepted[key] && table.any_rejected[key]) {
            sum += table.weight[key];
        }
    }
    return sum;
}

Rational oracle_h_influence(const Event& event, std::size_t coord, OracleH h) {
    const FibreTable table = build_fibre_table(event, coord);
    Rational sum = 0;
    for (std::size_t key = 0; key < table.weight.size(); ++key) {
        const Rational& x = table.section[key];
        switch (h) {
        case OracleH::Indicator01:
            if (x > 0 && x < 1) {
                sum += table.weight[key];
            }
            break;
        case OracleH::QuadXOneMinusX:
            sum += table.weight[key] * x * (1 - x);
            break;
        }
    }
    return sum;
}

Rational oracle_union_measure(const std::vector<Box>& boxes, std::size_t dimension) {
    Rational total = 0;
    const std::size_t count = boxes.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << count); ++mask) {
        Rational volume = 1;
        for (std::size_t f = 0; f < dimension && volume != 0; ++f) {
            Rational lo = 0;
            Rational hi = 1;
            for (std::size_t b = 0; b < count; ++b) {
                if (mask & (std::uint64_t{1} << b)) {
                    if (boxes[b].intervals[f].lo > lo) {
                        lo = boxes[b].intervals[f].lo;
                    }
                    if (boxes[b].intervals[f].hi < hi) {
                        hi = boxes[b].intervals[f].hi;
                    }
                }
            }
            volume *= (hi > lo) ? hi - lo : Rational(0);
        }
        const int bits = __builtin_popcountll(mask);
        if (bits % 2 == 1) {
            total += volume;
        } else {
            total -= volume;
        }
    }
    return total;
}

} // namespace prodinfluence::oracles
