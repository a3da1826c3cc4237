#pragma once

#include "prodinfluence/core_model.hpp"
#include "prodinfluence/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace prodinfluence {

/// Deterministic test corpus: the built-in families at every compatible size
/// plus seeded random events over random ground spaces (zero weights forced
/// in periodically). Identical options always produce identical items.
struct CorpusOptions {
    std::vector<std::string> families; // empty = all deterministic families
    std::size_t random_events = 0;
    std::uint64_t seed = 0;
    std::size_t max_atom_count = 3;
    std::size_t max_dimension = 3;
};

struct CorpusItem {
    std::string id;   // zero-padded sequence prefix; sorting = generation order
    std::string kind; // family name or "random"
    Event event;
};

std::vector<CorpusItem> generate_corpus(const CorpusOptions& options);

/// Random exact weights summing to 1 (denominator <= 16 + K). With
/// `force_zero_weight`, one atom's weight is moved onto a neighbour so the
/// space carries a genuine null atom.
GroundSpace random_ground_space(SplitMix64& gen, std::size_t atom_count,
                                bool force_zero_weight);

/// Each outcome accepted independently with a density drawn from {1/8..7/8}.
Event random_event(SplitMix64& gen, ProductSpace space);

struct CheckOutcome {
    bool ok = true;
    std::string detail;
};

/// All exact cross-checks for one item. Every check is an exact rational
/// identity; a failure is an implementation bug.
struct ItemChecks {
    std::string id;
    CheckOutcome fubini;                 // fibre weights integrate to the measure
    CheckOutcome definition_inequality;  // line-based influence dominates
    CheckOutcome indicator_consistency;  // indicator h-influence == influence
    CheckOutcome transport_round_trip;   // pushed box event preserves measure + h-influences
    CheckOutcome fibre_preservation;     // sections agree fibre by fibre

    bool all_ok() const;
};

ItemChecks run_item_checks(const CorpusItem& item);

} // namespace prodinfluence
