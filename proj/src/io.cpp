#include "zec/io.hpp"

#include <fstream>
#include <sstream>

namespace zec {

using nlohmann::json;

namespace {

Rational rat(const json& j) {
    if (!j.is_string()) throw FileError("expected a rational string, got " + j.dump());
    return parse_rational(j.get<std::string>());
}

std::vector<std::string> strings(const json& j) {
    if (!j.is_array()) throw FileError("expected an array of symbols");
    return j.get<std::vector<std::string>>();
}

AlphabetPair alphabets_from(const json& j) {
    return AlphabetPair(Alphabet(strings(j.at("inputs"))), Alphabet(strings(j.at("outputs"))));
}

json word_to_json(const Word& w, const Alphabet& alphabet) {
    json out = json::array();
    for (std::size_t i : w) out.push_back(alphabet.symbol(i));
    return out;
}

Word word_from_json(const json& j, const Alphabet& alphabet) {
    Word w;
    for (const auto& s : strings(j)) w.push_back(alphabet.index(s));
    return w;
}

}  // namespace

json channel_to_json(const Channel& channel) {
    json rows = json::array();
    for (const auto& row : channel.entries()) {
        json r = json::array();
        for (const auto& v : row) r.push_back(to_string(v));
        rows.push_back(std::move(r));
    }
    return json{{"inputs", channel.alphabets().inputs().symbols()},
                {"outputs", channel.alphabets().outputs().symbols()},
                {"rows", std::move(rows)}};
}

Channel channel_from_json(const json& j) {
    AlphabetPair alphabets = alphabets_from(j);
    std::vector<std::vector<Rational>> entries;
    for (const auto& row : j.at("rows")) {
        std::vector<Rational> r;
        for (const auto& v : row) r.push_back(rat(v));
        entries.push_back(std::move(r));
    }
    return validate_channel(std::move(entries), std::move(alphabets));
}

json plant_to_json(const Plant& plant) {
    json matrix = json::array();
    for (const auto& row : plant.matrix) {
        json r = json::array();
        for (const auto& v : row) r.push_back(to_string(v));
        matrix.push_back(std::move(r));
    }
    json out{{"matrix", std::move(matrix)}};
    if (plant.eigen_moduli) {
        json moduli = json::array();
        for (const auto& [lo, hi] : *plant.eigen_moduli)
            moduli.push_back(json::array({to_string(lo), to_string(hi)}));
        out["eigen_moduli"] = std::move(moduli);
    }
    return out;
}

Plant plant_from_json(const json& j) {
    Plant plant;
    for (const auto& row : j.at("matrix")) {
        std::vector<Rational> r;
        for (const auto& v : row) r.push_back(rat(v));
        plant.matrix.push_back(std::move(r));
    }
    if (j.contains("eigen_moduli")) {
        std::vector<std::pair<Rational, Rational>> moduli;
        for (const auto& pair : j.at("eigen_moduli")) moduli.push_back({rat(pair.at(0)), rat(pair.at(1))});
        plant.eigen_moduli = std::move(moduli);
    }
    plant.validate();
    return plant;
}

json code_to_json(const Code& code, const AlphabetPair& alphabets) {
    json pairs = json::array();
    for (const auto& [x, y] : code.pairs())
        pairs.push_back(json::array(
            {word_to_json(x, alphabets.inputs()), word_to_json(y, alphabets.outputs())}));
    return json{{"inputs", alphabets.inputs().symbols()},
                {"outputs", alphabets.outputs().symbols()},
                {"block_length", code.block_length()},
                {"pairs", std::move(pairs)}};
}

CodeFile code_from_json(const json& j) {
    CodeFile out;
    out.alphabets = alphabets_from(j);
    std::vector<std::pair<Word, Word>> pairs;
    for (const auto& pair : j.at("pairs"))
        pairs.push_back({word_from_json(pair.at(0), out.alphabets.inputs()),
                         word_from_json(pair.at(1), out.alphabets.outputs())});
    out.code = Code(j.at("block_length").get<std::size_t>(), std::move(pairs), out.alphabets);
    return out;
}

json graph_to_json(const Graph& graph) {
    json edges = json::array();
    for (const auto& [u, v] : graph.edges()) edges.push_back(json::array({u, v}));
    return json{{"vertices", graph.vertices()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const json& j) {
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : j.at("edges"))
        edges.insert({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()});
    return Graph(j.at("vertices").get<std::vector<std::string>>(), std::move(edges));
}

std::string graph_to_dimacs(const Graph& graph) {
    std::ostringstream os;
    os << "p edge " << graph.size() << " " << graph.edges().size() << "\n";
    for (const auto& [u, v] : graph.edges()) os << "e " << (u + 1) << " " << (v + 1) << "\n";
    return os.str();
}

json bounds_to_json(const CapacityBound& bounds) {
    json points = json::array();
    for (const auto& p : bounds.alpha_points)
        points.push_back(json{{"alpha", to_string(p.alpha)}, {"n", p.n}, {"witness", p.witness}});
    json out{{"alpha_points", std::move(points)},
             {"best_lower", json{{"alpha", to_string(bounds.best_lower.alpha)},
                                 {"n", bounds.best_lower.n}}},
             {"clique_cover", to_string(bounds.clique_cover)}};
    if (bounds.exact) {
        out["exact"] = bounds.exact->str();
        out["provenance"] =
            bounds.provenance == Provenance::PerfectMatch ? "perfect-match" : "table";
    }
    return out;
}

namespace {

json int_to_json(const Int& v) { return to_string(v); }
Int int_from_json(const json& j) { return Int(j.get<std::string>()); }

}  // namespace

json certificate_to_json(const Certificate& c) {
    json out{{"outcome", outcome_name(c.outcome)},
             {"base_lo", to_string(c.base_lo)},
             {"base_hi", to_string(c.base_hi)},
             {"alpha", int_to_json(c.alpha)},
             {"n", c.n},
             {"clique_cover", int_to_json(c.clique_cover)},
             {"lhs", int_to_json(c.lhs)},
             {"rhs", int_to_json(c.rhs)}};
    if (c.capacity) out["capacity"] = c.capacity->str();
    if (!c.note.empty()) out["note"] = c.note;
    return out;
}

Certificate certificate_from_json(const json& j) {
    Certificate c;
    const std::string name = j.at("outcome").get<std::string>();
    if (name == "SOLVABLE") c.outcome = Outcome::Solvable;
    else if (name == "UNSOLVABLE") c.outcome = Outcome::Unsolvable;
    else if (name == "BOUNDARY") c.outcome = Outcome::Boundary;
    else if (name == "UNDETERMINED_BOUNDS") c.outcome = Outcome::UndeterminedBounds;
    else throw FileError("unknown outcome: " + name);
    c.base_lo = rat(j.at("base_lo"));
    c.base_hi = rat(j.at("base_hi"));
    c.alpha = int_from_json(j.at("alpha"));
    c.n = j.at("n").get<unsigned>();
    c.clique_cover = int_from_json(j.at("clique_cover"));
    c.lhs = int_from_json(j.at("lhs"));
    c.rhs = int_from_json(j.at("rhs"));
    if (j.contains("capacity")) c.capacity = ExactValue::parse(j.at("capacity").get<std::string>());
    if (j.contains("note")) c.note = j.at("note").get<std::string>();
    return c;
}

json verdict_to_json(const Verdict& v) {
    return json{{"outcome", outcome_name(v.outcome)},
                {"certificate", certificate_to_json(v.certificate)},
                {"bounds", bounds_to_json(v.bounds)},
                {"base", json{{"lo", to_string(v.exponent.lo)},
                              {"hi", to_string(v.exponent.hi)},
                              {"boundary_flag", v.exponent.boundary_flag}}}};
}

json sim_config_to_json(const SimConfig& config) {
    json box = json::array();
    for (const auto& [lo, hi] : config.initial_box.bounds)
        box.push_back(json::array({to_string(lo), to_string(hi)}));
    return json{{"plant", plant_to_json(config.plant)},
                {"channel", channel_to_json(config.channel)},
                {"code", code_to_json(config.code, config.channel.alphabets())},
                {"noise_bound", to_string(config.noise_bound)},
                {"initial_box", std::move(box)},
                {"horizon", config.horizon},
                {"seed", config.seed},
                {"trials", config.trials},
                {"noise_bits", config.noise_bits},
                {"exact", config.exact},
                {"record_steps", config.record_steps}};
}

SimConfig sim_config_from_json(const json& j) {
    SimConfig config;
    config.plant = plant_from_json(j.at("plant"));
    config.channel = channel_from_json(j.at("channel"));
    config.code = code_from_json(j.at("code")).code;
    config.noise_bound = rat(j.at("noise_bound"));
    for (const auto& pair : j.at("initial_box"))
        config.initial_box.bounds.push_back({rat(pair.at(0)), rat(pair.at(1))});
    config.horizon = j.at("horizon").get<unsigned long>();
    config.seed = j.at("seed").get<std::uint64_t>();
    config.trials = j.at("trials").get<unsigned>();
    if (j.contains("noise_bits")) config.noise_bits = j.at("noise_bits").get<unsigned>();
    if (j.contains("exact")) config.exact = j.at("exact").get<bool>();
    if (j.contains("record_steps")) config.record_steps = j.at("record_steps").get<bool>();
    config.validate();
    return config;
}

json registry_to_json(const std::vector<std::pair<Graph, ExactValue>>& entries) {
    json out = json::array();
    for (const auto& [graph, value] : entries)
        out.push_back(json{{"graph", graph_to_json(graph)}, {"value", value.str()}});
    return out;
}

KnownValuesRegistry registry_from_json(const json& j) {
    KnownValuesRegistry registry = KnownValuesRegistry::builtin();
    for (const auto& entry : j)
        registry.add(graph_from_json(entry.at("graph")),
                     ExactValue::parse(entry.at("value").get<std::string>()));
    return registry;
}

void trace_to_csv(const Trace& trace, std::ostream& os) {
    const std::size_t dim = trace.records.empty() ? 0 : trace.records.front().state.size();
    os << "t,error,log2_error,x,y";
    for (std::size_t i = 0; i < dim; ++i) os << ",state" << i;
    for (std::size_t i = 0; i < dim; ++i) os << ",estimate" << i;
    os << "\n";
    for (const auto& r : trace.records) {
        os << r.t << "," << r.error << "," << r.log2_error << "," << r.x << "," << r.y;
        for (double v : r.state) os << "," << v;
        for (double v : r.estimate) os << "," << v;
        os << "\n";
    }
}

json summary_to_json(const TraceSummary& s) {
    return json{{"sup_error", s.sup_error},       {"sup_log2_error", s.sup_log2_error},
                {"slope", s.slope},               {"diverging", s.diverging},
                {"horizon", s.horizon},           {"seed", s.seed},
                {"trial", s.trial}};
}

json report_to_json(const BoundednessReport& report) {
    json trials = json::array();
    for (const auto& t : report.trials)
        trials.push_back(json{{"trial", t.trial},
                              {"sup_error", t.sup_error},
                              {"slope", t.slope},
                              {"below_threshold", t.below_threshold},
                              {"diverging", t.diverging}});
    return json{{"trials", std::move(trials)},
                {"fraction_below", report.fraction_below},
                {"bounded_consistent", report.bounded_consistent},
                {"diverging", report.diverging}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw FileError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw FileError("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace zec
