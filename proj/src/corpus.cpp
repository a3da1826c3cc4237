#include "prodinfluence/corpus.hpp"

#include "prodinfluence/errors.hpp"
#include "prodinfluence/event_spec.hpp"
#include "prodinfluence/influence.hpp"
#include "prodinfluence/transport.hpp"

#include <algorithm>
#include <cstdio>

namespace prodinfluence {

GroundSpace random_ground_space(SplitMix64& gen, std::size_t atom_count,
                                bool force_zero_weight) {
    if (atom_count == 0) {
        throw InputError("ground space needs at least one atom");
    }
    const std::uint64_t denominator = 1 + gen.below(16 + atom_count);
    // Stars and bars: K-1 sorted cuts in [0, D] make K nonnegative weights
    // summing to exactly D/D = 1. Repeated cuts produce zero weights.
    std::vector<std::uint64_t> cuts;
    cuts.reserve(atom_count + 1);
    cuts.push_back(0);
    for (std::size_t i = 0; i + 1 < atom_count; ++i) {
        cuts.push_back(gen.below(denominator + 1));
    }
    cuts.push_back(denominator);
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> weights;
    weights.reserve(atom_count);
    for (std::size_t i = 0; i < atom_count; ++i) {
        weights.emplace_back(Integer(cuts[i + 1] - cuts[i]), Integer(denominator));
    }
    if (force_zero_weight && atom_count >= 2) {
        const std::size_t from = gen.below(atom_count);
        const std::size_t to = (from + 1) % atom_count;
        weights[to] += weights[from];
        weights[from] = 0;
    }
    return GroundSpace(std::move(weights));
}

Event random_event(SplitMix64& gen, ProductSpace space) {
    const std::uint64_t density_eighths = 1 + gen.below(7);
    const std::uint64_t threshold = density_eighths << 61; // density * 2^64
    const std::uint64_t count = space.outcome_count();
    std::vector<bool> accepted(count, false);
    for (std::uint64_t r = 0; r < count; ++r) {
        accepted[r] = gen.next() < threshold;
    }
    return Event(std::move(space), std::move(accepted));
}

namespace {

std::string item_id(std::size_t index, const std::string& kind, std::size_t atom_count,
                    std::size_t dimension) {
    char buffer[96];
    std::snprintf(buffer, sizeof(buffer), "%05zu-%s-k%zu-n%zu", index, kind.c_str(), atom_count,
                  dimension);
    return buffer;
}

nlohmann::json family_document(const std::string& name, std::size_t dimension,
                               nlohmann::json params) {
    return nlohmann::json{
        {"ground", nlohmann::json::array({"1/2", "1/2"})},
        {"n", dimension},
        {"event", {{"family", {{"name", name}, {"params", std::move(params)}}}}},
    };
}

} // namespace

std::vector<CorpusItem> generate_corpus(const CorpusOptions& options) {
    std::vector<std::string> families = options.families;
    if (families.empty()) {
        families = {"dictator", "parity", "majority", "threshold", "tribes", "and_all", "or_all"};
    }
    std::vector<CorpusItem> items;
    std::size_t index = 0;

    auto add_family = [&](const std::string& name, std::size_t n, nlohmann::json params) {
        const EventSpec spec = parse_event_spec_document(family_document(name, n, std::move(params)));
        items.push_back(CorpusItem{item_id(index++, name, 2, n), name, materialize_event(spec)});
    };

    for (const std::string& name : families) {
        const auto& known = family_names();
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            throw InputError("unknown family \"" + name + "\"");
        }
        if (name == "random") {
            continue; // covered by random_events below
        }
        for (std::size_t n = 1; n <= options.max_dimension; ++n) {
            if (name == "majority" && n % 2 == 0) {
                continue;
            }
            if (name == "tribes") {
                // All genuine block splits width*count == n with both >= 2.
                for (std::size_t width = 2; width * 2 <= n; ++width) {
                    if (n % width == 0) {
                        add_family(name, n,
                                   {{"width", width}, {"tribes", n / width}});
                    }
                }
                continue;
            }
            if (name == "threshold") {
                add_family(name, n, {{"t", (n + 1) / 2}});
                continue;
            }
            add_family(name, n, nlohmann::json::object());
        }
    }

    for (std::size_t i = 0; i < options.random_events; ++i) {
        SplitMix64 gen(SplitMix64::derive(options.seed, i));
        const std::size_t k = 1 + gen.below(options.max_atom_count);
        const std::size_t n = 1 + gen.below(options.max_dimension);
        const bool force_zero = k >= 2 && i % 4 == 0;
        GroundSpace ground = random_ground_space(gen, k, force_zero);
        Event event = random_event(gen, ProductSpace(std::move(ground), n));
        items.push_back(CorpusItem{item_id(index++, "random", k, n), "random", std::move(event)});
    }
    return items;
}

bool ItemChecks::all_ok() const {
    return fubini.ok && definition_inequality.ok && indicator_consistency.ok &&
           transport_round_trip.ok && fibre_preservation.ok;
}

ItemChecks run_item_checks(const CorpusItem& item) {
    const Event& event = item.event;
    const std::size_t n = event.space().dimension();
    ItemChecks checks;
    checks.id = item.id;

    const Rational measure = event_measure(event);
    for (std::size_t e = 0; e < n; ++e) {
        Rational integrated = 0;
        for_each_fibre_assignment(event.space(), e,
                                  [&](const FibreAssignment& psi, const Rational& w) {
                                      if (w != 0) {
                                          integrated += w * fibre_measure(event, psi);
                                      }
                                  });
        if (integrated != measure) {
            checks.fubini = {false, "coordinate " + std::to_string(e) + ": fibre integral " +
                                        to_fraction_string(integrated) + " != measure " +
                                        to_fraction_string(measure)};
            break;
        }
    }

    for (std::size_t e = 0; e < n; ++e) {
        const Rational revised = influence(event, e);
        const Rational line_based = bkkkl_influence(event, e);
        if (line_based < revised) {
            checks.definition_inequality = {
                false, "coordinate " + std::to_string(e) + ": line influence " +
                           to_fraction_string(line_based) + " < influence " +
                           to_fraction_string(revised)};
            break;
        }
        const Rational via_indicator = h_influence(event, e, HFunction::indicator01());
        if (via_indicator != revised) {
            checks.indicator_consistency = {
                false, "coordinate " + std::to_string(e) + ": indicator h-influence " +
                           to_fraction_string(via_indicator) + " != influence " +
                           to_fraction_string(revised)};
            break;
        }
    }

    const Transport transport = build_transport(event.space().ground());
    const BoxEvent pushed = push_event(transport, event);
    const VerificationRecord record = verify_transport(
        transport, event, pushed, {HFunction::indicator01(), HFunction::quad_x_one_minus_x()});
    if (!record.passed) {
        checks.transport_round_trip = {false, record.failure_report()};
    }

    for (std::size_t e = 0; e < n; ++e) {
        if (!check_fibre_preservation(transport, event, e)) {
            checks.fibre_preservation = {false,
                                         "section mismatch at coordinate " + std::to_string(e)};
            break;
        }
    }
    return checks;
}

} // namespace prodinfluence
