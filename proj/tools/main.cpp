#include "prodinfluence/corpus.hpp"
#include "prodinfluence/errors.hpp"
#include "prodinfluence/event_spec.hpp"
#include "prodinfluence/influence.hpp"
#include "prodinfluence/report.hpp"
#include "prodinfluence/transport.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace prodinfluence;

constexpr int kExitSuccess = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open \"" + path + "\"");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

EventSpec load_spec(const std::string& path) {
    return parse_event_spec_text(read_input(path));
}

HFunction resolve_h(const std::string& token) {
    if (token == "indicator" || token == "indicator01") {
        return HFunction::indicator01();
    }
    if (token == "quad" || token == "quad_x_one_minus_x") {
        return HFunction::quad_x_one_minus_x();
    }
    nlohmann::json document;
    try {
        document = nlohmann::json::parse(read_input(token));
    } catch (const nlohmann::json::parse_error& err) {
        throw InputError("h-function file \"" + token + "\": " + err.what());
    }
    return h_function_from_json(document);
}

void emit(const nlohmann::json& document) { std::cout << document.dump(2) << "\n"; }

struct InfluenceArgs {
    std::string spec_path;
    std::uint64_t mc_samples = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> h_tokens;
    std::string format = "json";
};

int run_influence(const InfluenceArgs& args) {
    const EventSpec spec = load_spec(args.spec_path);
    nlohmann::json document;
    if (args.mc_samples > 0) {
        if (!args.h_tokens.empty()) {
            throw InputError("h-influence tables are exact-mode only; drop --h or --mc");
        }
        const ProductSpace space = spec_space(spec);
        const OutcomePredicate accepts = spec_predicate(spec);
        std::vector<McEstimate> estimates;
        estimates.reserve(space.dimension());
        for (std::size_t e = 0; e < space.dimension(); ++e) {
            estimates.push_back(mc_influence(space.ground(), space.dimension(), accepts, e,
                                             args.mc_samples,
                                             SplitMix64::derive(args.seed, e)));
        }
        document = mc_influence_document(spec, args.mc_samples, args.seed, estimates);
    } else {
        const Event event = materialize_event(spec);
        const InfluenceReport report = influence_report(event);
        std::vector<HFunction> hs;
        if (args.h_tokens.empty()) {
            hs = {HFunction::indicator01(), HFunction::quad_x_one_minus_x()};
        } else {
            for (const std::string& token : args.h_tokens) {
                hs.push_back(resolve_h(token));
            }
        }
        std::vector<HInfluenceTable> tables;
        for (const HFunction& h : hs) {
            tables.push_back(HInfluenceTable{h.name(), h_influence_vector(event, h)});
        }
        document = influence_document(spec, report, tables);
    }
    if (args.format == "csv") {
        std::cout << influence_csv(document);
    } else {
        emit(document);
    }
    return kExitSuccess;
}

int run_compare_definitions(const std::string& spec_path) {
    const EventSpec spec = load_spec(spec_path);
    const Event event = materialize_event(spec);
    const nlohmann::json document = compare_definitions_document(spec, event);
    emit(document);
    return document.at("inequality_holds").get<bool>() ? kExitSuccess
                                                       : kExitVerificationFailure;
}

struct TransportArgs {
    std::string spec_path;
    std::string emit_boxes_path;
    bool verify = false;
};

int run_transport(const TransportArgs& args) {
    const EventSpec spec = load_spec(args.spec_path);
    const Event event = materialize_event(spec);
    const Transport transport = build_transport(event.space().ground());
    const BoxEvent pushed = push_event(transport, event);
    std::optional<VerificationRecord> record;
    if (args.verify) {
        record = verify_transport(transport, event, pushed,
                                  {HFunction::indicator01(), HFunction::quad_x_one_minus_x()});
    }
    if (!args.emit_boxes_path.empty()) {
        std::ofstream out(args.emit_boxes_path, std::ios::binary);
        if (!out) {
            throw InputError("cannot write \"" + args.emit_boxes_path + "\"");
        }
        out << box_event_to_json(pushed).dump(2) << "\n";
    }
    emit(transport_document(spec, transport, pushed, record));
    if (record && !record->passed) {
        return kExitVerificationFailure;
    }
    return kExitSuccess;
}

int run_bound(const std::string& spec_path) {
    const EventSpec spec = load_spec(spec_path);
    const Event event = materialize_event(spec);
    emit(bound_document(spec, influence_report(event), event.space().dimension()));
    return kExitSuccess;
}

struct CorpusArgs {
    std::vector<std::string> families;
    std::size_t random_events = 0;
    std::uint64_t seed = 0;
    std::size_t max_n = 3;
    std::size_t max_k = 3;
    bool run_all = false;
};

std::vector<ItemChecks> run_checks_parallel(const std::vector<CorpusItem>& items) {
    std::vector<ItemChecks> results(items.size());
    std::atomic<std::size_t> next{0};
    const std::size_t worker_count =
        std::min<std::size_t>(items.size(),
                              std::max(1u, std::thread::hardware_concurrency()));
    // Results land at their item's index, so output order is the (sorted)
    // generation order no matter how the items are scheduled.
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < items.size(); i = next.fetch_add(1)) {
                results[i] = run_item_checks(items[i]);
            }
        });
    }
    for (std::thread& worker : workers) {
        worker.join();
    }
    return results;
}

int run_corpus(const CorpusArgs& args) {
    CorpusOptions options;
    options.families = args.families;
    options.random_events = args.random_events;
    options.seed = args.seed;
    options.max_dimension = args.max_n;
    options.max_atom_count = args.max_k;
    const std::vector<CorpusItem> items = generate_corpus(options);
    if (!args.run_all) {
        nlohmann::json listed = nlohmann::json::array();
        for (const CorpusItem& item : items) {
            listed.push_back({{"id", item.id},
                              {"kind", item.kind},
                              {"event", serialize_event(item.event)}});
        }
        emit(nlohmann::json{{"command", "corpus"},
                            {"items", std::move(listed)},
                            {"total", items.size()}});
        return kExitSuccess;
    }
    const std::vector<ItemChecks> results = run_checks_parallel(items);
    const nlohmann::json document = corpus_document(results);
    emit(document);
    return document.at("failures").get<std::size_t>() == 0 ? kExitSuccess
                                                           : kExitVerificationFailure;
}

const char* const kFormatNotes = R"(Event spec documents are JSON:
  {"ground": ["1/2", "1/2"], "n": 3, "event": ...}
where "event" is exactly one of
  {"family": {"name": "majority", "params": {}}}
  {"bits": "01101001"}
  {"tuples": [[0, 1, 1], [1, 0, 1]]}
Weights and all exact outputs are rational strings "p/q". Bits strings list
outcomes in rank order with coordinate 0 most significant:
  rank = sum_i coords[i] * K^(n-1-i).
Families: dictator(coord), parity, majority (odd n), threshold(t),
tribes(width, tribes), and_all, or_all, random(seed, density).
Exit codes: 0 success, 1 verification failure, 2 input error.
Errors are emitted to stderr as {"error": {"type", "message"}}.)";

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Influences and h-influences of events on finite product spaces, "
                 "with exact transport to box events on the Lebesgue cube."};
    app.footer(kFormatNotes);
    app.require_subcommand(1);

    InfluenceArgs influence_args;
    CLI::App* influence_cmd = app.add_subcommand(
        "influence", "Influence vector, h-influence tables, and bound ratios");
    // --h would collide with the default -h help alias on this subcommand.
    influence_cmd->set_help_flag("--help", "Print this help message and exit");
    influence_cmd->add_option("spec", influence_args.spec_path, "Event spec file (- for stdin)")
        ->required();
    influence_cmd->add_option("--mc", influence_args.mc_samples,
                              "Estimate by Monte-Carlo with this many samples per coordinate");
    influence_cmd->add_option("--seed", influence_args.seed, "Monte-Carlo seed (default 0)");
    influence_cmd->add_option("--h", influence_args.h_tokens,
                              "h-function: indicator, quad, or a JSON file (repeatable; "
                              "default both built-ins)");
    influence_cmd
        ->add_option("--format", influence_args.format, "Output format (default json)")
        ->check(CLI::IsMember({"json", "csv"}));

    std::string compare_spec_path;
    CLI::App* compare_cmd = app.add_subcommand(
        "compare-definitions",
        "Revised influence next to the line-based influence, per coordinate");
    compare_cmd->add_option("spec", compare_spec_path, "Event spec file (- for stdin)")
        ->required();

    TransportArgs transport_args;
    CLI::App* transport_cmd = app.add_subcommand(
        "transport", "Carry the event to an equivalent box event on the unit cube");
    transport_cmd->add_option("spec", transport_args.spec_path, "Event spec file (- for stdin)")
        ->required();
    transport_cmd->add_option("--emit-boxes", transport_args.emit_boxes_path,
                              "Also write the box event to this file");
    transport_cmd->add_flag("--verify", transport_args.verify,
                            "Check measure and h-influence equalities exactly");

    std::string bound_spec_path;
    CLI::App* bound_cmd =
        app.add_subcommand("bound", "Bound ratios with applicability flags");
    bound_cmd->add_option("spec", bound_spec_path, "Event spec file (- for stdin)")->required();

    CorpusArgs corpus_args;
    CLI::App* corpus_cmd = app.add_subcommand(
        "corpus", "Generate the reproducible test corpus; --run-all checks every item");
    corpus_cmd->add_option("--families", corpus_args.families,
                           "Families to include (default: all deterministic families)");
    corpus_cmd->add_option("--random-events", corpus_args.random_events,
                           "Number of seeded random items");
    corpus_cmd->add_option("--seed", corpus_args.seed, "Corpus seed (default 0)");
    corpus_cmd->add_option("--max-n", corpus_args.max_n, "Maximum dimension (default 3)");
    corpus_cmd->add_option("--max-k", corpus_args.max_k, "Maximum atom count (default 3)");
    corpus_cmd->add_flag("--run-all", corpus_args.run_all,
                         "Run every exact check on every item");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) {
            return app.exit(err); // --help and friends
        }
        std::cerr << error_document("input", err.what()).dump(2) << "\n";
        return kExitInputError;
    }

    try {
        if (influence_cmd->parsed()) {
            return run_influence(influence_args);
        }
        if (compare_cmd->parsed()) {
            return run_compare_definitions(compare_spec_path);
        }
        if (transport_cmd->parsed()) {
            return run_transport(transport_args);
        }
        if (bound_cmd->parsed()) {
            return run_bound(bound_spec_path);
        }
        if (corpus_cmd->parsed()) {
            return run_corpus(corpus_args);
        }
        std::cerr << error_document("input", "no subcommand selected").dump(2) << "\n";
        return kExitInputError;
    } catch (const InputError& err) {
        std::cerr << error_document("input", err.what()).dump(2) << "\n";
        return kExitInputError;
    } catch (const InternalError& err) {
        std::cerr << error_document("internal", err.what()).dump(2) << "\n";
        return kExitVerificationFailure;
    } catch (const std::exception& err) {
        std::cerr << error_document("internal", err.what()).dump(2) << "\n";
        return kExitVerificationFailure;
    }
}
