#include "prodinfluence/report.hpp"

#include <sstream>
#include <utility>

namespace prodinfluence {

namespace {

nlohmann::json exact(const Rational& value) { return to_fraction_string(value); }

std::string csv_escape(const std::string& field) {
    // "p/q" strings and the fixed quantity names never need quoting, but h
    // names can come from user files; keep the renderer safe regardless.
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

nlohmann::json ratio_field_to_json(const RatioField& field) {
    nlohmann::json out;
    out["applicable"] = field.applicable();
    if (field.applicable()) {
        out["value"] = static_cast<double>(*field.value);
    } else {
        out["value"] = nullptr;
        out["reason"] = field.reason;
    }
    return out;
}

nlohmann::json influence_document(const EventSpec& spec, const InfluenceReport& report,
                                  const std::vector<HInfluenceTable>& h_tables) {
    nlohmann::json doc;
    doc["command"] = "influence";
    doc["mode"] = "exact";
    doc["input"] = spec.source;
    doc["measure"] = exact(report.measure);
    doc["measure_float"] = to_double(report.measure);
    doc["degenerate"] = report.degenerate;
    nlohmann::json influences = nlohmann::json::array();
    for (std::size_t e = 0; e < report.influences.size(); ++e) {
        influences.push_back({{"coord", e},
                              {"exact", exact(report.influences[e])},
                              {"float", to_double(report.influences[e])}});
    }
    doc["influences"] = std::move(influences);
    doc["max_influence"] = exact(report.max_influence);
    doc["max_influence_float"] = to_double(report.max_influence);
    doc["total_influence"] = exact(report.total_influence);
    doc["total_influence_float"] = to_double(report.total_influence);
    nlohmann::json tables = nlohmann::json::array();
    for (const HInfluenceTable& table : h_tables) {
        nlohmann::json values = nlohmann::json::array();
        for (std::size_t e = 0; e < table.values.size(); ++e) {
            values.push_back({{"coord", e},
                              {"exact", exact(table.values[e])},
                              {"float", to_double(table.values[e])}});
        }
        tables.push_back({{"h", table.h_name}, {"values", std::move(values)}});
    }
    doc["h_influences"] = std::move(tables);
    return doc;
}

nlohmann::json mc_influence_document(const EventSpec& spec, std::uint64_t samples,
                                     std::uint64_t seed,
                                     const std::vector<McEstimate>& estimates) {
    nlohmann::json doc;
    doc["command"] = "influence";
    doc["mode"] = "mc";
    doc["input"] = spec.source;
    doc["samples"] = samples;
    doc["seed"] = seed;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t e = 0; e < estimates.size(); ++e) {
        rows.push_back({{"coord", e},
                        {"estimate", estimates[e].estimate},
                        {"std_error", estimates[e].std_error},
                        {"samples", estimates[e].samples},
                        {"seed", estimates[e].seed}});
    }
    doc["estimates"] = std::move(rows);
    return doc;
}

std::string influence_csv(const nlohmann::json& document) {
    std::ostringstream out;
    out << "quantity,coord,h,exact,float\n";
    auto row = [&](const std::string& quantity, const std::string& coord, const std::string& h,
                   const std::string& exact_text, const std::string& float_text) {
        out << csv_escape(quantity) << ',' << coord << ',' << csv_escape(h) << ','
            << csv_escape(exact_text) << ',' << float_text << '\n';
    };
    if (document.at("mode").get<std::string>() == "mc") {
        for (const auto& entry : document.at("estimates")) {
            const std::string coord = entry.at("coord").dump();
            row("mc_influence", coord, "", "", entry.at("estimate").dump());
            row("mc_std_error", coord, "", "", entry.at("std_error").dump());
        }
        return out.str();
    }
    row("measure", "", "", document.at("measure").get<std::string>(),
        document.at("measure_float").dump());
    for (const auto& entry : document.at("influences")) {
        row("influence", entry.at("coord").dump(), "", entry.at("exact").get<std::string>(),
            entry.at("float").dump());
    }
    row("max_influence", "", "", document.at("max_influence").get<std::string>(),
        document.at("max_influence_float").dump());
    row("total_influence", "", "", document.at("total_influence").get<std::string>(),
        document.at("total_influence_float").dump());
    for (const auto& table : document.at("h_influences")) {
        for (const auto& entry : table.at("values")) {
            row("h_influence", entry.at("coord").dump(), table.at("h").get<std::string>(),
                entry.at("exact").get<std::string>(), entry.at("float").dump());
        }
    }
    return out.str();
}

nlohmann::json compare_definitions_document(const EventSpec& spec, const Event& event) {
    nlohmann::json doc;
    doc["command"] = "compare-definitions";
    doc["input"] = spec.source;
    nlohmann::json rows = nlohmann::json::array();
    bool all_hold = true;
    for (std::size_t e = 0; e < event.space().dimension(); ++e) {
        const Rational revised = influence(event, e);
        const Rational line_based = bkkkl_influence(event, e);
        const bool holds = line_based >= revised;
        all_hold = all_hold && holds;
        rows.push_back({{"coord", e},
                        {"influence", exact(revised)},
                        {"bkkkl_influence", exact(line_based)},
                        {"equal", revised == line_based},
                        {"inequality_holds", holds}});
    }
    doc["coordinates"] = std::move(rows);
    doc["inequality_holds"] = all_hold;
    return doc;
}

nlohmann::json transport_document(const EventSpec& spec, const Transport& transport,
                                  const BoxEvent& pushed,
                                  const std::optional<VerificationRecord>& verification) {
    nlohmann::json doc;
    doc["command"] = "transport";
    doc["input"] = spec.source;
    doc["transport"] = transport_to_json(transport);
    doc["box_event"] = box_event_to_json(pushed);
    if (verification) {
        nlohmann::json rows = nlohmann::json::array();
        for (const TransportComparison& cmp : verification->comparisons) {
            nlohmann::json entry{{"quantity", cmp.quantity},
                                 {"event_side", exact(cmp.event_side)},
                                 {"box_side", exact(cmp.box_side)},
                                 {"equal", cmp.equal}};
            if (cmp.quantity != "measure") {
                entry["coord"] = cmp.coord;
            }
            rows.push_back(std::move(entry));
        }
        doc["verification"] = {{"passed", verification->passed}, {"comparisons", std::move(rows)}};
    }
    return doc;
}

nlohmann::json bound_document(const EventSpec& spec, const InfluenceReport& report,
                              std::size_t dimension) {
    nlohmann::json doc;
    doc["command"] = "bound";
    doc["input"] = spec.source;
    doc["n"] = dimension;
    doc["p"] = exact(report.measure);
    doc["p_float"] = to_double(report.measure);
    doc["m"] = exact(report.max_influence);
    doc["m_float"] = to_double(report.max_influence);
    doc["total"] = exact(report.total_influence);
    doc["total_float"] = to_double(report.total_influence);
    doc["degenerate"] = report.degenerate;
    doc["sum_ratio"] = ratio_field_to_json(report.sum_ratio);
    doc["max_ratio"] = ratio_field_to_json(report.max_ratio);
    return doc;
}

nlohmann::json corpus_document(const std::vector<ItemChecks>& results) {
    auto check_json = [](const CheckOutcome& outcome) {
        nlohmann::json out{{"ok", outcome.ok}};
        if (!outcome.ok) {
            out["detail"] = outcome.detail;
        }
        return out;
    };
    nlohmann::json items = nlohmann::json::array();
    std::size_t failures = 0;
    for (const ItemChecks& checks : results) {
        const bool ok = checks.all_ok();
        if (!ok) {
            ++failures;
        }
        items.push_back(
            {{"id", checks.id},
             {"all_ok", ok},
             {"checks",
              {{"fubini", check_json(checks.fubini)},
               {"definition_inequality", check_json(checks.definition_inequality)},
               {"indicator_consistency", check_json(checks.indicator_consistency)},
               {"transport_round_trip", check_json(checks.transport_round_trip)},
               {"fibre_preservation", check_json(checks.fibre_preservation)}}}});
    }
    return nlohmann::json{{"command", "corpus"},
                          {"items", std::move(items)},
                          {"total", results.size()},
                          {"failures", failures}};
}

nlohmann::json error_document(const std::string& type, const std::string& message) {
    return nlohmann::json{{"error", {{"type", type}, {"message", message}}}};
}

} // namespace prodinfluence
