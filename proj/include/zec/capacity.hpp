#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zec/graph.hpp"
#include "zec/rational.hpp"

namespace zec {

// An exactly known value of 2^C0: either a rational or the square root of
// one (the pentagon's sqrt(5) is stored symbolically, never as a float).
struct ExactValue {
    Rational radicand;  // the value itself when !is_sqrt
    bool is_sqrt = false;

    static ExactValue rational(Rational v) { return ExactValue{std::move(v), false}; }
    static ExactValue sqrt(Rational v) { return ExactValue{std::move(v), true}; }

    // Compare against a nonnegative rational r. Square roots are compared by
    // squaring both sides.
    int compare(const Rational& r) const;
    std::string str() const;  // "2", "sqrt(5)", ...

    static ExactValue parse(const std::string& text);
    bool operator==(const ExactValue&) const = default;
};

enum class Provenance { PerfectMatch, Table, BoundsOnly };

struct AlphaPoint {
    Int alpha;      // alpha(G^(boxtimes n))
    unsigned n = 1;
    std::vector<std::size_t> witness;  // independent set in the power graph
};

// Certified bracket for 2^C0. Lower bounds are kept unevaluated as
// (alpha, n) pairs; all comparisons cross-multiply integers.
struct CapacityBound {
    std::vector<AlphaPoint> alpha_points;   // one per examined power
    AlphaPoint best_lower;                  // maximizes alpha^(1/n)
    Int clique_cover = 0;                   // upper bound on 2^C0
    std::optional<ExactValue> exact;        // 2^C0 when known
    Provenance provenance = Provenance::BoundsOnly;

    // best_lower is at least `value` in the 1/n-normalized sense:
    // alpha >= value^n.
    bool lower_at_least(const Rational& value) const;
    // Some examined power certifies alpha(G^n) > value^n strictly.
    std::optional<AlphaPoint> lower_exceeds(const Rational& value) const;
};

// Extensible registry of exactly known capacities, keyed by canonical graph
// isomorphism class. Seeded with the pentagon; empty/complete/perfect graphs
// resolve through the alpha == clique-cover test instead.
class KnownValuesRegistry {
  public:
    static KnownValuesRegistry builtin();

    void add(const Graph& graph, ExactValue value);
    std::optional<ExactValue> lookup(const Graph& graph) const;
    std::size_t size() const { return entries_.size(); }

  private:
    struct Entry {
        std::vector<std::uint8_t> key;
        ExactValue value;
    };
    std::vector<Entry> entries_;
};

struct TableIncomplete : GraphError {
    using GraphError::GraphError;
};

struct CapacityOptions {
    std::size_t vertex_limit = kDefaultVertexLimit;
    std::size_t canonical_limit = 10;
};

CapacityBound capacity_bounds(const ZeroPattern& pattern, const AlphabetPair& alphabets,
                              unsigned depth, const KnownValuesRegistry& registry,
                              const CapacityOptions& options = {});

inline CapacityBound capacity_bounds(const ZeroPattern& pattern, const AlphabetPair& alphabets,
                                     unsigned depth) {
    return capacity_bounds(pattern, alphabets, depth, KnownValuesRegistry::builtin());
}

}  // namespace zec
