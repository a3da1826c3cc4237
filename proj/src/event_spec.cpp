#include "prodinfluence/event_spec.hpp"

#include "prodinfluence/errors.hpp"
#include "prodinfluence/rng.hpp"

#include <algorithm>
#include <cstdint>

namespace prodinfluence {

namespace {

using nlohmann::json;

std::uint64_t get_uint(const json& value, const std::string& what) {
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
        throw InputError(what + " must be a nonnegative integer");
    }
    return value.get<std::uint64_t>();
}

GroundSpace parse_ground(const json& document) {
    if (!document.contains("ground") || !document["ground"].is_array()) {
        throw InputError("event spec needs a \"ground\" array of weight strings");
    }
    std::vector<Rational> weights;
    for (const json& w : document["ground"]) {
        if (!w.is_string()) {
            throw InputError("ground weights must be rational strings like \"1/2\"");
        }
        weights.push_back(parse_rational(w.get<std::string>()));
    }
    return GroundSpace(std::move(weights));
}

} // namespace

EventSpec parse_event_spec_document(const json& document) {
    if (!document.is_object()) {
        throw InputError("event spec must be a JSON object");
    }
    EventSpec spec{parse_ground(document), 0, EventSpec::Kind::Bits, {}, json::object(), {}, {},
                   document};
    if (!document.contains("n")) {
        throw InputError("event spec needs \"n\", the number of coordinates");
    }
    spec.dimension = static_cast<std::size_t>(get_uint(document["n"], "\"n\""));
    if (spec.dimension == 0) {
        throw InputError("\"n\" must be at least 1");
    }

    if (!document.contains("event") || !document["event"].is_object()) {
        throw InputError("event spec needs an \"event\" object");
    }
    const json& event = document["event"];
    const bool has_family = event.contains("family");
    const bool has_bits = event.contains("bits");
    const bool has_tuples = event.contains("tuples");
    if (int(has_family) + int(has_bits) + int(has_tuples) != 1) {
        throw InputError("\"event\" must contain exactly one of family, bits, tuples");
    }

    if (has_family) {
        const json& family = event["family"];
        if (!family.is_object() || !family.contains("name") || !family["name"].is_string()) {
            throw InputError("\"family\" must be an object with a \"name\"");
        }
        spec.kind = EventSpec::Kind::Family;
        spec.family_name = family["name"].get<std::string>();
        spec.family_params = family.value("params", json::object());
        const auto& names = family_names();
        if (std::find(names.begin(), names.end(), spec.family_name) == names.end()) {
            throw InputError("unknown family \"" + spec.family_name + "\"");
        }
    } else if (has_bits) {
        if (!event["bits"].is_string()) {
            throw InputError("\"bits\" must be a string of '0'/'1'");
        }
        spec.kind = EventSpec::Kind::Bits;
        spec.bits = event["bits"].get<std::string>();
    } else {
        if (!event["tuples"].is_array()) {
            throw InputError("\"tuples\" must be an array of outcomes");
        }
        spec.kind = EventSpec::Kind::Tuples;
        for (const json& tuple : event["tuples"]) {
            if (!tuple.is_array()) {
                throw InputError("each tuple must be an array of atom ids");
            }
            std::vector<AtomId> coords;
            for (const json& c : tuple) {
                coords.push_back(static_cast<AtomId>(get_uint(c, "atom id")));
            }
            spec.tuples.push_back(std::move(coords));
        }
    }
    // Fail early on family/param problems instead of at materialization time.
    spec_predicate(spec);
    return spec;
}

EventSpec parse_event_spec_text(const std::string& text) {
    json document;
    try {
        document = json::parse(text);
    } catch (const json::parse_error& err) {
        throw InputError(std::string("event spec is not valid JSON: ") + err.what());
    }
    return parse_event_spec_document(document);
}

ProductSpace spec_space(const EventSpec& spec) {
    return ProductSpace(spec.ground, spec.dimension);
}

namespace {

void require_two_atoms(const EventSpec& spec, const std::string& family) {
    if (spec.ground.atom_count() != 2) {
        throw InputError("family \"" + family + "\" needs a two-atom ground space (K = 2)");
    }
}

std::uint64_t params_uint(const nlohmann::json& params, const std::string& key,
                          std::uint64_t fallback) {
    if (!params.contains(key)) {
        return fallback;
    }
    return get_uint(params[key], "family parameter \"" + key + "\"");
}

OutcomePredicate family_predicate(const EventSpec& spec) {
    const std::size_t n = spec.dimension;
    const std::size_t k = spec.ground.atom_count();
    const std::string& name = spec.family_name;
    const nlohmann::json& params = spec.family_params;

    if (name == "dictator") {
        const std::size_t coord = params_uint(params, "coord", 0);
        const AtomId atom = static_cast<AtomId>(params_uint(params, "atom", 1));
        if (coord >= n) {
            throw InputError("dictator coord " + std::to_string(coord) + " out of range");
        }
        if (atom >= k) {
            throw InputError("dictator atom " + std::to_string(atom) + " out of range");
        }
        return [coord, atom](std::span<const AtomId> w) { return w[coord] == atom; };
    }
    if (name == "parity") {
        require_two_atoms(spec, name);
        return [](std::span<const AtomId> w) {
            unsigned ones = 0;
            for (AtomId c : w) {
                ones ^= c;
            }
            return ones == 1;
        };
    }
    if (name == "majority") {
        require_two_atoms(spec, name);
        if (n % 2 == 0) {
            throw InputError("majority needs an odd number of coordinates, got n = " +
                             std::to_string(n));
        }
        const std::size_t needed = n / 2 + 1;
        return [needed](std::span<const AtomId> w) {
            std::size_t ones = 0;
            for (AtomId c : w) {
                ones += c;
            }
            return ones >= needed;
        };
    }
    if (name == "threshold") {
        if (!params.contains("t")) {
            throw InputError("threshold needs parameter \"t\"");
        }
        const std::uint64_t t = get_uint(params["t"], "threshold parameter \"t\"");
        return [t](std::span<const AtomId> w) {
            std::uint64_t total = 0;
            for (AtomId c : w) {
                total += c;
            }
            return total >= t;
        };
    }
    if (name == "tribes") {
        require_two_atoms(spec, name);
        const std::size_t width = params_uint(params, "width", 0);
        const std::size_t tribes = params_uint(params, "tribes", 0);
        if (width == 0 || tribes == 0 || width * tribes != n) {
            throw InputError("tribes needs width * tribes == n with both positive");
        }
        return [width, tribes](std::span<const AtomId> w) {
            for (std::size_t b = 0; b < tribes; ++b) {
                bool all = true;
                for (std::size_t i = b * width; i < (b + 1) * width && all; ++i) {
                    all = w[i] == 1;
                }
                if (all) {
                    return true;
                }
            }
            return false;
        };
    }
    if (name == "and_all") {
        require_two_atoms(spec, name);
        return [](std::span<const AtomId> w) {
            return std::all_of(w.begin(), w.end(), [](AtomId c) { return c == 1; });
        };
    }
    if (name == "or_all") {
        require_two_atoms(spec, name);
        return [](std::span<const AtomId> w) {
            return std::any_of(w.begin(), w.end(), [](AtomId c) { return c == 1; });
        };
    }
    if (name == "random") {
        const std::uint64_t seed = params_uint(params, "seed", 0);
        if (params.contains("density") && !params["density"].is_string()) {
            throw InputError("random density must be a rational string like \"1/2\"");
        }
        Rational density = parse_rational(
            params.contains("density") ? params["density"].get<std::string>() : "1/2");
        if (density < 0 || density > 1) {
            throw InputError("random density must lie in [0,1]");
        }
        const Integer scaled = numerator(density) * (Integer(1) << 64) / denominator(density);
        const bool all = density == 1;
        const std::uint64_t threshold =
            all ? ~std::uint64_t{0} : scaled.convert_to<std::uint64_t>();
        const std::size_t kk = k;
        return [seed, threshold, all, kk](std::span<const AtomId> w) {
            std::uint64_t rank = 0;
            for (AtomId c : w) {
                rank = rank * kk + c;
            }
            return all || SplitMix64::derive(seed, rank) < threshold;
        };
    }
    throw InputError("unknown family \"" + name + "\"");
}

} // namespace

const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names = {
        "dictator", "parity", "majority", "threshold", "tribes", "and_all", "or_all", "random",
    };
    return names;
}

OutcomePredicate spec_predicate(const EventSpec& spec) {
    switch (spec.kind) {
    case EventSpec::Kind::Family:
        return family_predicate(spec);
    case EventSpec::Kind::Bits: {
        // Validates lazily against K^n, which may exceed the exact-mode cap.
        const ProductSpace space = spec_space(spec);
        const Event event = Event::from_bits(space, spec.bits);
        return [event](std::span<const AtomId> w) { return event.accepts(w); };
    }
    case EventSpec::Kind::Tuples: {
        const ProductSpace space = spec_space(spec);
        const Event event = Event::from_outcomes(space, spec.tuples);
        return [event](std::span<const AtomId> w) { return event.accepts(w); };
    }
    }
    throw InternalError("unreachable event-spec kind");
}

Event materialize_event(const EventSpec& spec) {
    ProductSpace space = spec_space(spec);
    switch (spec.kind) {
    case EventSpec::Kind::Bits:
        return Event::from_bits(std::move(space), spec.bits);
    case EventSpec::Kind::Tuples:
        return Event::from_outcomes(std::move(space), spec.tuples);
    case EventSpec::Kind::Family:
        return Event::from_predicate(std::move(space), family_predicate(spec));
    }
    throw InternalError("unreachable event-spec kind");
}

std::pair<ProductSpace, Event> parse_event_spec(const std::string& text) {
    const EventSpec spec = parse_event_spec_text(text);
    Event event = materialize_event(spec);
    ProductSpace space = event.space();
    return {std::move(space), std::move(event)};
}

nlohmann::json serialize_event(const Event& event) {
    json weights = json::array();
    for (const Rational& w : event.space().ground().weights()) {
        weights.push_back(to_fraction_string(w));
    }
    return json{{"ground", weights},
                {"n", event.space().dimension()},
                {"event", json{{"bits", event.bits_string()}}}};
}

nlohmann::json box_event_to_json(const BoxEvent& event) {
    json boxes = json::array();
    for (const Box& box : event.boxes()) {
        json intervals = json::array();
        for (const Interval& iv : box.intervals) {
            intervals.push_back(json::array({to_fraction_string(iv.lo),
                                             to_fraction_string(iv.hi)}));
        }
        boxes.push_back(std::move(intervals));
    }
    return json{{"dimension", event.dimension()}, {"boxes", std::move(boxes)}};
}

BoxEvent box_event_from_json(const nlohmann::json& document) {
    if (!document.is_object() || !document.contains("dimension") ||
        !document.contains("boxes") || !document["boxes"].is_array()) {
        throw InputError("box event document needs \"dimension\" and a \"boxes\" array");
    }
    const std::size_t dimension =
        static_cast<std::size_t>(get_uint(document["dimension"], "\"dimension\""));
    std::vector<Box> boxes;
    for (const json& intervals : document["boxes"]) {
        if (!intervals.is_array()) {
            throw InputError("each box must be an array of [lo, hi) endpoint pairs");
        }
        Box box;
        for (const json& pair : intervals) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
                !pair[1].is_string()) {
                throw InputError("each interval must be a pair of rational strings");
            }
            box.intervals.push_back(Interval{parse_rational(pair[0].get<std::string>()),
                                             parse_rational(pair[1].get<std::string>())});
        }
        boxes.push_back(std::move(box));
    }
    return BoxEvent(dimension, std::move(boxes));
}

nlohmann::json transport_to_json(const Transport& transport) {
    json atoms = json::array();
    for (std::size_t j = 0; j < transport.ground().atom_count(); ++j) {
        const auto atom = static_cast<AtomId>(j);
        const Interval& iv = transport.atom_interval(atom);
        atoms.push_back(json{{"atom", j},
                             {"weight", to_fraction_string(transport.ground().weight(atom))},
                             {"cantor_point", to_fraction_string(transport.cantor_point(atom))},
                             {"interval", json::array({to_fraction_string(iv.lo),
                                                       to_fraction_string(iv.hi)})}});
    }
    json kappa = json::array();
    for (const Rational& value : transport.kappa_table()) {
        kappa.push_back(to_fraction_string(value));
    }
    return json{{"atoms", std::move(atoms)}, {"kappa", std::move(kappa)}};
}

HFunction h_function_from_json(const nlohmann::json& document) {
    if (!document.is_object() || !document.contains("breakpoints") ||
        !document.contains("pieces")) {
        throw InputError("h-function document needs \"breakpoints\" and \"pieces\"");
    }
    std::vector<Rational> breakpoints;
    for (const json& b : document["breakpoints"]) {
        if (!b.is_string()) {
            throw InputError("breakpoints must be rational strings");
        }
        breakpoints.push_back(parse_rational(b.get<std::string>()));
    }
    std::vector<std::vector<Rational>> pieces;
    for (const json& piece : document["pieces"]) {
        if (!piece.is_array()) {
            throw InputError("each piece must be an array of rational coefficients");
        }
        std::vector<Rational> coeffs;
        for (const json& c : piece) {
            if (!c.is_string()) {
                throw InputError("piece coefficients must be rational strings");
            }
            coeffs.push_back(parse_rational(c.get<std::string>()));
        }
        pieces.push_back(std::move(coeffs));
    }
    return HFunction::piecewise_polynomial(std::move(breakpoints), std::move(pieces));
}

} // namespace prodinfluence
