#pragma once

#include "prodinfluence/corpus.hpp"
#include "prodinfluence/event_spec.hpp"
#include "prodinfluence/influence.hpp"
#include "prodinfluence/transport.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace prodinfluence {

/// One h-influence column: function name plus exact per-coordinate values.
struct HInfluenceTable {
    std::string h_name;
    std::vector<Rational> values;
};

/// {"applicable": bool, "value": float or null, "reason": string when n/a}.
nlohmann::json ratio_field_to_json(const RatioField& field);

/// Document for the `influence` command. Exact quantities are "p/q" strings;
/// fields suffixed `_float` are convenience renderings of the same value.
nlohmann::json influence_document(const EventSpec& spec, const InfluenceReport& report,
                                  const std::vector<HInfluenceTable>& h_tables);

/// Document for `influence --mc`: per-coordinate estimates and standard errors.
nlohmann::json mc_influence_document(const EventSpec& spec, std::uint64_t samples,
                                     std::uint64_t seed,
                                     const std::vector<McEstimate>& estimates);

/// CSV rendering of an influence document (exact or Monte-Carlo), columns
/// quantity,coord,h,exact,float. Derived from the JSON document itself, so
/// every exact string and float rendering agrees with it by construction.
std::string influence_csv(const nlohmann::json& document);

nlohmann::json compare_definitions_document(const EventSpec& spec, const Event& event);

nlohmann::json transport_document(const EventSpec& spec, const Transport& transport,
                                  const BoxEvent& pushed,
                                  const std::optional<VerificationRecord>& verification);

nlohmann::json bound_document(const EventSpec& spec, const InfluenceReport& report,
                              std::size_t dimension);

nlohmann::json corpus_document(const std::vector<ItemChecks>& results);

/// Machine-readable failure object: {"error": {"type": ..., "message": ...}}.
nlohmann::json error_document(const std::string& type, const std::string& message);

} // namespace prodinfluence
