#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "zec/capacity.hpp"
#include "zec/channel.hpp"
#include "zec/code.hpp"
#include "zec/decide.hpp"
#include "zec/graph.hpp"
#include "zec/sim.hpp"

namespace zec {

struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rationals travel as strings ("3/4", "2"), never as floats.

nlohmann::json channel_to_json(const Channel& channel);
Channel channel_from_json(const nlohmann::json& j);

nlohmann::json plant_to_json(const Plant& plant);
Plant plant_from_json(const nlohmann::json& j);

// Codes are stored with their alphabets so the file is self-contained.
struct CodeFile {
    Code code;
    AlphabetPair alphabets;
};
nlohmann::json code_to_json(const Code& code, const AlphabetPair& alphabets);
CodeFile code_from_json(const nlohmann::json& j);

nlohmann::json graph_to_json(const Graph& graph);
Graph graph_from_json(const nlohmann::json& j);
std::string graph_to_dimacs(const Graph& graph);

nlohmann::json bounds_to_json(const CapacityBound& bounds);

nlohmann::json certificate_to_json(const Certificate& certificate);
Certificate certificate_from_json(const nlohmann::json& j);
nlohmann::json verdict_to_json(const Verdict& verdict);

nlohmann::json sim_config_to_json(const SimConfig& config);
SimConfig sim_config_from_json(const nlohmann::json& j);

nlohmann::json registry_to_json(const std::vector<std::pair<Graph, ExactValue>>& entries);
KnownValuesRegistry registry_from_json(const nlohmann::json& j);

void trace_to_csv(const Trace& trace, std::ostream& os);
nlohmann::json summary_to_json(const TraceSummary& summary);
nlohmann::json report_to_json(const BoundednessReport& report);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace zec
