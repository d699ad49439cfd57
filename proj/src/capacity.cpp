#include "zec/capacity.hpp"

#include <algorithm>

namespace zec {

int ExactValue::compare(const Rational& r) const {
    if (!is_sqrt) return cmp(radicand, r);
    if (r < 0) return 1;
    return cmp(radicand, r * r);
}

std::string ExactValue::str() const {
    if (is_sqrt) return "sqrt(" + to_string(radicand) + ")";
    return to_string(radicand);
}

ExactValue ExactValue::parse(const std::string& text) {
    if (text.rfind("sqrt(", 0) == 0 && text.back() == ')')
        return ExactValue::sqrt(parse_rational(text.substr(5, text.size() - 6)));
    return ExactValue::rational(parse_rational(text));
}

bool CapacityBound::lower_at_least(const Rational& value) const {
    if (value <= 0) return true;
    return Rational(best_lower.alpha) >= pow(value, best_lower.n);
}

std::optional<AlphaPoint> CapacityBound::lower_exceeds(const Rational& value) const {
    for (const auto& p : alpha_points)
        if (value <= 0 || Rational(p.alpha) > pow(value, p.n)) return p;
    return std::nullopt;
}

KnownValuesRegistry KnownValuesRegistry::builtin() {
    KnownValuesRegistry reg;
    reg.add(Graph::cycle(5), ExactValue::sqrt(Rational(5)));
    return reg;
}

void KnownValuesRegistry::add(const Graph& graph, ExactValue value) {
    entries_.push_back({canonical_form(graph), std::move(value)});
}

std::optional<ExactValue> KnownValuesRegistry::lookup(const Graph& graph) const {
    if (graph.size() > 10) return std::nullopt;
    auto key = canonical_form(graph);
    for (const auto& e : entries_)
        if (e.key == key) return e.value;
    return std::nullopt;
}

CapacityBound capacity_bounds(const ZeroPattern& pattern, const AlphabetPair& alphabets,
                              unsigned depth, const KnownValuesRegistry& registry,
                              const CapacityOptions& options) {
    if (depth < 1) throw GraphError("depth must be >= 1");
    const Graph g = confusability_graph(pattern, alphabets);

    CapacityBound bound;
    Graph power = g;
    for (unsigned n = 1; n <= depth; ++n) {
        if (n > 1) power = strong_product(power, g);
        auto mis = independence_number(power, options.vertex_limit);
        AlphaPoint point{Int(static_cast<unsigned long>(mis.size)), n, mis.witness};
        // Keep the best normalized lower bound: alpha1^(1/n1) vs
        // alpha2^(1/n2) compares as alpha1^n2 vs alpha2^n1.
        if (bound.alpha_points.empty() ||
            pow(point.alpha, bound.best_lower.n) > pow(bound.best_lower.alpha, point.n))
            bound.best_lower = point;
        bound.alpha_points.push_back(std::move(point));
    }
    bound.clique_cover = Int(static_cast<unsigned long>(clique_cover_number(g, options.vertex_limit)));

    if (bound.alpha_points.front().alpha == bound.clique_cover) {
        // Perfect match: alpha(G) = clique cover forces 2^C0 = alpha(G).
        bound.exact = ExactValue::rational(Rational(bound.alpha_points.front().alpha));
        bound.provenance = Provenance::PerfectMatch;
    } else if (g.size() <= options.canonical_limit) {
        if (auto known = registry.lookup(g)) {
            bound.exact = *known;
            bound.provenance = Provenance::Table;
        }
    }
    return bound;
}

}  // namespace zec
