#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zec/channel.hpp"

namespace zec {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooLarge : GraphError {
    using GraphError::GraphError;
};

// Simple undirected graph with an ordered vertex list.
class Graph {
  public:
    Graph() = default;
    Graph(std::vector<std::string> vertices, std::set<std::pair<std::size_t, std::size_t>> edges);

    std::size_t size() const { return vertices_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::set<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
    bool adjacent(std::size_t u, std::size_t v) const;
    std::size_t degree(std::size_t v) const;
    bool operator==(const Graph&) const = default;

    static Graph empty(std::size_t n);
    static Graph complete(std::size_t n);
    static Graph cycle(std::size_t n);

  private:
    std::vector<std::string> vertices_;
    std::set<std::pair<std::size_t, std::size_t>> edges_;  // each pair (u < v)
};

// Confusability graph on X: u ~ v iff some output column has both entries
// outside the zero pattern.
Graph confusability_graph(const ZeroPattern& pattern, const AlphabetPair& alphabets);

// Strong product. Product vertex (i, j) sits at index i*|H| + j, named
// "u|v"; callers recover coordinates from the mixed-radix index.
Graph strong_product(const Graph& g, const Graph& h);

// n-fold strong product of g with itself; power >= 1.
Graph strong_power(const Graph& g, std::size_t power);

struct IndependentSet {
    std::size_t size = 0;
    std::vector<std::size_t> witness;
};

inline constexpr std::size_t kDefaultVertexLimit = 64;

// Exact maximum independent set, branch and bound with a greedy clique
// partition bound. Deterministic regardless of thread schedule.
IndependentSet independence_number(const Graph& g, std::size_t limit = kDefaultVertexLimit);

// Serial reference implementations kept for testing the parallel kernel.
IndependentSet independence_number_serial(const Graph& g, std::size_t limit = kDefaultVertexLimit);
IndependentSet independence_number_exhaustive(const Graph& g);  // <= 25 vertices

// Exact minimum clique cover (chromatic number of the complement).
std::size_t clique_cover_number(const Graph& g, std::size_t limit = kDefaultVertexLimit);

// Lexicographically smallest adjacency bit-matrix over all vertex orderings.
// Practical for graphs of about 10 vertices; used as registry key.
std::vector<std::uint8_t> canonical_form(const Graph& g, std::size_t limit = 10);

}  // namespace zec
