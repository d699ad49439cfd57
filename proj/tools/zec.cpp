#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "zec/bss.hpp"
#include "zec/io.hpp"
#include "zec/search.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitBudget = 4;

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        zec::save_json_file(out_path, j);
}

unsigned default_precision() {
    if (const char* env = std::getenv("ZEC_PRECISION")) {
        unsigned long v = std::strtoul(env, nullptr, 10);
        if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
    }
    return 30;
}

std::vector<zec::Rational> parse_args_list(const std::string& text) {
    std::vector<zec::Rational> args;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) args.push_back(zec::parse_rational(item));
    return args;
}

int run(int argc, char** argv) {
    CLI::App app{"Exact zero-error capacity and remote state estimation toolkit"};
    app.require_subcommand(1);

    std::string channel_path, plant_path, config_path, registry_path, out_path;
    std::string program_path, args_text, csv_path;
    unsigned depth = 2;
    unsigned precision = default_precision();
    unsigned max_block = 4;
    unsigned long budget = 100000;
    std::string threshold_text;
    unsigned trials_override = 0;
    bool have_seed = false;
    std::uint64_t seed_override = 0;

    auto* classify = app.add_subcommand("classify", "Zero pattern and confusability graph");
    classify->add_option("--channel", channel_path)->required();
    classify->add_option("--out", out_path);

    auto* capacity = app.add_subcommand("capacity", "Certified capacity bounds");
    capacity->add_option("--channel", channel_path)->required();
    capacity->add_option("--depth", depth);
    capacity->add_option("--registry", registry_path);
    capacity->add_option("--out", out_path);

    auto* decide = app.add_subcommand("decide", "Solvability verdict with certificate");
    decide->add_option("--plant", plant_path)->required();
    decide->add_option("--channel", channel_path)->required();
    decide->add_option("--depth", depth);
    decide->add_option("--precision", precision);
    decide->add_option("--registry", registry_path);
    decide->add_option("--out", out_path);

    auto* find_code = app.add_subcommand("find-code", "Independent-set code construction");
    find_code->add_option("--plant", plant_path)->required();
    find_code->add_option("--channel", channel_path)->required();
    find_code->add_option("--max-block", max_block);
    find_code->add_option("--precision", precision);
    find_code->add_option("--out", out_path);

    auto* search_gamma = app.add_subcommand("search-gamma", "Minimal-index code search");
    search_gamma->add_option("--plant", plant_path)->required();
    search_gamma->add_option("--channel", channel_path)->required();
    search_gamma->add_option("--budget", budget);
    search_gamma->add_option("--precision", precision);
    search_gamma->add_option("--out", out_path);

    auto* simulate = app.add_subcommand("simulate", "Closed-loop estimation trials");
    simulate->add_option("--config", config_path)->required();
    simulate->add_option("--trials", trials_override);
    auto* seed_opt = simulate->add_option("--seed", seed_override);
    simulate->add_option("--csv", csv_path);
    simulate->add_option("--threshold", threshold_text);
    simulate->add_option("--out", out_path);

    auto* bss_eval = app.add_subcommand("bss-eval", "Evaluate a program file on arguments");
    bss_eval->add_option("--program", program_path)->required();
    bss_eval->add_option("--args", args_text);
    bss_eval->add_option("--budget", budget);
    bss_eval->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);
    have_seed = seed_opt->count() > 0;

    auto load_registry = [&]() {
        if (registry_path.empty()) return zec::KnownValuesRegistry::builtin();
        return zec::registry_from_json(zec::load_json_file(registry_path));
    };

    if (classify->parsed()) {
        zec::Channel channel = zec::channel_from_json(zec::load_json_file(channel_path));
        zec::ZeroPattern pattern = zec::zero_pattern(channel);
        json cells = json::array();
        for (const auto& [x, y] : pattern.omega())
            cells.push_back(json::array({channel.alphabets().inputs().symbol(x),
                                         channel.alphabets().outputs().symbol(y)}));
        zec::Graph g = zec::confusability_graph(pattern, channel.alphabets());
        emit(json{{"zero_pattern", std::move(cells)},
                  {"confusability_graph", zec::graph_to_json(g)},
                  {"dimacs", zec::graph_to_dimacs(g)}},
             out_path);
        return kExitOk;
    }
    if (capacity->parsed()) {
        zec::Channel channel = zec::channel_from_json(zec::load_json_file(channel_path));
        auto bounds = zec::capacity_bounds(zec::zero_pattern(channel), channel.alphabets(), depth,
                                           load_registry());
        emit(zec::bounds_to_json(bounds), out_path);
        return kExitOk;
    }
    if (decide->parsed()) {
        zec::Plant plant = zec::plant_from_json(zec::load_json_file(plant_path));
        zec::Channel channel = zec::channel_from_json(zec::load_json_file(channel_path));
        auto verdict = zec::decide_solvability(plant, channel, depth, load_registry(), precision);
        emit(zec::verdict_to_json(verdict), out_path);
        return kExitOk;
    }
    if (find_code->parsed() || search_gamma->parsed()) {
        zec::Plant plant = zec::plant_from_json(zec::load_json_file(plant_path));
        zec::Channel channel = zec::channel_from_json(zec::load_json_file(channel_path));
        zec::ZeroPattern pattern = zec::zero_pattern(channel);
        auto exponent = zec::instability_exponent(plant, precision);
        auto describe = [&](const zec::SearchResult& result) {
            auto cert = zec::verify_code(result.code, pattern, channel.alphabets(), exponent);
            json j{{"code", zec::code_to_json(result.code, channel.alphabets())},
                   {"mode", result.mode == zec::SearchMode::FaithfulGamma ? "faithful-gamma"
                                                                          : "independent-set"},
                   {"n_examined", result.n_examined},
                   {"certificate",
                    json{{"zero_error", cert.zero_error},
                         {"rate_ok", cert.rate_ok},
                         {"message_count", cert.message_count},
                         {"block_length", cert.block_length},
                         {"base_hi", zec::to_string(cert.base_hi)},
                         {"lhs", zec::to_string(cert.lhs)},
                         {"rhs", zec::to_string(cert.rhs)}}}};
            if (result.gamma_index > 0) j["gamma"] = zec::to_string(result.gamma_index);
            return j;
        };
        if (find_code->parsed()) {
            auto result = zec::construct_code(pattern, channel.alphabets(), exponent, max_block);
            if (std::holds_alternative<zec::NotFound>(result)) {
                std::cerr << "no qualifying code up to block length " << max_block << "\n";
                return kExitBudget;
            }
            emit(describe(std::get<zec::SearchResult>(result)), out_path);
        } else {
            auto result =
                zec::search_minimal_gamma(pattern, channel.alphabets(), exponent, budget);
            if (std::holds_alternative<zec::Exhausted>(result)) {
                std::cerr << "search budget " << budget << " exhausted\n";
                return kExitBudget;
            }
            emit(describe(std::get<zec::SearchResult>(result)), out_path);
        }
        return kExitOk;
    }
    if (simulate->parsed()) {
        zec::SimConfig config = zec::sim_config_from_json(zec::load_json_file(config_path));
        if (trials_override > 0) config.trials = trials_override;
        if (have_seed) config.seed = seed_override;
        auto traces = zec::run_trials(config);
        if (!csv_path.empty() && !traces.empty()) {
            std::ofstream csv(csv_path);
            if (!csv) throw zec::FileError("cannot write " + csv_path);
            zec::trace_to_csv(traces.front(), csv);
        }
        json summaries = json::array();
        for (const auto& t : traces) summaries.push_back(zec::summary_to_json(t.summary));
        json out{{"summaries", std::move(summaries)}};
        if (!threshold_text.empty())
            out["report"] = zec::report_to_json(
                zec::boundedness_report(traces, zec::parse_rational(threshold_text)));
        emit(out, out_path);
        return kExitOk;
    }
    if (bss_eval->parsed()) {
        std::ifstream in(program_path);
        if (!in) throw zec::FileError("cannot open " + program_path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        zec::BssProgram program = zec::BssProgram::parse_sexpr(buffer.str());
        auto outcome = zec::evaluate(program, parse_args_list(args_text), budget);
        json j{{"steps_used", outcome.steps_used}};
        switch (outcome.kind) {
            case zec::EvalOutcome::Kind::Value:
                j["kind"] = "value";
                j["value"] = zec::to_string(outcome.value);
                break;
            case zec::EvalOutcome::Kind::Diverged:
                j["kind"] = "diverged";
                break;
            case zec::EvalOutcome::Kind::DomainError:
                j["kind"] = "domain-error";
                break;
        }
        emit(j, out_path);
        return outcome.kind == zec::EvalOutcome::Kind::Diverged ? kExitBudget : kExitOk;
    }
    return kExitParse;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const zec::ParseError& e) {
        std::cerr << json{{"error", "parse"}, {"message", e.what()}}.dump() << "\n";
        return kExitParse;
    } catch (const zec::FileError& e) {
        std::cerr << json{{"error", "file"}, {"message", e.what()}}.dump() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "domain"}, {"message", e.what()}}.dump() << "\n";
        return kExitDomain;
    }
}
