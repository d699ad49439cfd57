#include "zec/graph.hpp"

#include <algorithm>
#include <bit>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zec {

namespace {

// Fixed-width bitset sized at runtime; one per solver invocation.
struct Bits {
    std::vector<std::uint64_t> w;

    explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(std::size_t i) { w[i / 64] |= (std::uint64_t{1} << (i % 64)); }
    void reset(std::size_t i) { w[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1u; }
    bool any() const {
        for (auto x : w)
            if (x) return true;
        return false;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w) c += static_cast<std::size_t>(std::popcount(x));
        return c;
    }
    Bits& operator&=(const Bits& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
        return *this;
    }
    Bits andnot(const Bits& o) const {
        Bits r = *this;
        for (std::size_t i = 0; i < w.size(); ++i) r.w[i] &= ~o.w[i];
        return r;
    }
    std::size_t first() const {  // first set bit; undefined when empty
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w[i]));
        return SIZE_MAX;
    }
};

std::vector<Bits> adjacency_bits(const Graph& g) {
    std::vector<Bits> adj(g.size(), Bits(g.size()));
    for (const auto& [u, v] : g.edges()) {
        adj[u].set(v);
        adj[v].set(u);
    }
    return adj;
}

// Greedy clique partition of the candidate set; its size bounds alpha from
// above.
std::size_t clique_partition_bound(const std::vector<Bits>& adj, const Bits& candidates,
                                   std::size_t n) {
    std::vector<Bits> cliques;  // common neighborhoods of clique members
    std::size_t count = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (!candidates.test(v)) continue;
        bool placed = false;
        for (auto& common : cliques)
            if (common.test(v)) {
                common &= adj[v];
                placed = true;
                break;
            }
        if (!placed) {
            Bits common = adj[v];
            common &= candidates;
            cliques.push_back(std::move(common));
            ++count;
        }
    }
    return count;
}

struct MisState {
    const std::vector<Bits>* adj;
    std::size_t n;
    std::size_t best_size;
    std::vector<std::size_t> best_witness;
    std::vector<std::size_t> current;
};

std::size_t pick_branch_vertex(const std::vector<Bits>& adj, const Bits& candidates,
                               std::size_t n) {
    std::size_t best = SIZE_MAX, best_deg = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (!candidates.test(v)) continue;
        Bits nb = adj[v];
        nb &= candidates;
        std::size_t d = nb.count();
        if (best == SIZE_MAX || d > best_deg) {
            best = v;
            best_deg = d;
        }
    }
    return best;
}

void mis_expand(MisState& st, Bits candidates) {
    if (!candidates.any()) {
        if (st.current.size() > st.best_size) {
            st.best_size = st.current.size();
            st.best_witness = st.current;
            std::sort(st.best_witness.begin(), st.best_witness.end());
        }
        return;
    }
    if (st.current.size() + clique_partition_bound(*st.adj, candidates, st.n) <= st.best_size)
        return;
    std::size_t v = pick_branch_vertex(*st.adj, candidates, st.n);
    // Include v.
    Bits included = candidates.andnot((*st.adj)[v]);
    included.reset(v);
    st.current.push_back(v);
    mis_expand(st, included);
    st.current.pop_back();
    // Exclude v.
    candidates.reset(v);
    mis_expand(st, candidates);
}

IndependentSet mis_branch_and_bound(const Graph& g) {
    MisState st;
    auto adj = adjacency_bits(g);
    st.adj = &adj;
    st.n = g.size();
    st.best_size = 0;
    Bits all(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) all.set(v);
    mis_expand(st, all);
    return IndependentSet{st.best_size, st.best_witness};
}

std::size_t exhaustive_recurse(const std::vector<Bits>& adj, Bits candidates,
                               std::vector<std::size_t>& current,
                               std::vector<std::size_t>& best_witness) {
    if (!candidates.any()) {
        if (current.size() > best_witness.size()) best_witness = current;
        return current.size();
    }
    std::size_t v = candidates.first();
    Bits without = candidates;
    without.reset(v);
    Bits with = candidates.andnot(adj[v]);
    with.reset(v);
    current.push_back(v);
    std::size_t a = exhaustive_recurse(adj, with, current, best_witness);
    current.pop_back();
    std::size_t b = exhaustive_recurse(adj, without, current, best_witness);
    return std::max(a, b);
}

}  // namespace

Graph::Graph(std::vector<std::string> vertices, std::set<std::pair<std::size_t, std::size_t>> edges)
    : vertices_(std::move(vertices)) {
    for (auto [u, v] : edges) {
        if (u == v) throw GraphError("self-loop");
        if (u >= vertices_.size() || v >= vertices_.size())
            throw GraphError("edge references missing vertex");
        edges_.insert({std::min(u, v), std::max(u, v)});
    }
}

bool Graph::adjacent(std::size_t u, std::size_t v) const {
    if (u == v) return false;
    return edges_.count({std::min(u, v), std::max(u, v)}) > 0;
}

std::size_t Graph::degree(std::size_t v) const {
    std::size_t d = 0;
    for (const auto& [a, b] : edges_)
        if (a == v || b == v) ++d;
    return d;
}

Graph Graph::empty(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
    return Graph(std::move(names), {});
}

Graph Graph::complete(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.insert({i, j});
    return Graph(std::move(names), std::move(edges));
}

Graph Graph::cycle(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i) edges.insert({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
    return Graph(std::move(names), std::move(edges));
}

Graph confusability_graph(const ZeroPattern& pattern, const AlphabetPair& alphabets) {
    if (pattern.n_inputs() != alphabets.inputs().size() ||
        pattern.n_outputs() != alphabets.outputs().size())
        throw GraphError("pattern alphabets do not match");
    const std::size_t nx = pattern.n_inputs();
    const std::size_t ny = pattern.n_outputs();
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t u = 0; u < nx; ++u)
        for (std::size_t v = u + 1; v < nx; ++v)
            for (std::size_t y = 0; y < ny; ++y)
                if (!pattern.contains(u, y) && !pattern.contains(v, y)) {
                    edges.insert({u, v});
                    break;
                }
    return Graph(alphabets.inputs().symbols(), std::move(edges));
}

Graph strong_product(const Graph& g, const Graph& h) {
    const std::size_t ng = g.size(), nh = h.size();
    std::vector<std::string> names;
    names.reserve(ng * nh);
    for (std::size_t i = 0; i < ng; ++i)
        for (std::size_t j = 0; j < nh; ++j)
            names.push_back(g.vertices()[i] + "|" + h.vertices()[j]);
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i1 = 0; i1 < ng; ++i1)
        for (std::size_t j1 = 0; j1 < nh; ++j1)
            for (std::size_t i2 = i1; i2 < ng; ++i2)
                for (std::size_t j2 = 0; j2 < nh; ++j2) {
                    std::size_t a = i1 * nh + j1, b = i2 * nh + j2;
                    if (b <= a) continue;
                    bool ok1 = (i1 == i2) || g.adjacent(i1, i2);
                    bool ok2 = (j1 == j2) || h.adjacent(j1, j2);
                    if (ok1 && ok2) edges.insert({a, b});
                }
    return Graph(std::move(names), std::move(edges));
}

Graph strong_power(const Graph& g, std::size_t power) {
    if (power == 0) throw GraphError("strong power requires power >= 1");
    Graph result = g;
    for (std::size_t i = 1; i < power; ++i) result = strong_product(result, g);
    return result;
}

IndependentSet independence_number_serial(const Graph& g, std::size_t limit) {
    if (g.size() > limit)
        throw TooLarge("graph has " + std::to_string(g.size()) + " vertices, limit " +
                       std::to_string(limit));
    if (g.size() == 0) return IndependentSet{0, {}};
    return mis_branch_and_bound(g);
}

IndependentSet independence_number(const Graph& g, std::size_t limit) {
    if (g.size() > limit)
        throw TooLarge("graph has " + std::to_string(g.size()) + " vertices, limit " +
                       std::to_string(limit));
    const std::size_t n = g.size();
    if (n == 0) return IndependentSet{0, {}};
#ifdef _OPENMP
    if (n >= 24) {
        // Split on the first branch vertex: each subproblem fixes a prefix of
        // include/exclude decisions. Subproblems are solved independently and
        // combined in a fixed order, so the result does not depend on the
        // schedule.
        auto adj = adjacency_bits(g);
        Bits all(n);
        for (std::size_t v = 0; v < n; ++v) all.set(v);
        std::size_t v0 = pick_branch_vertex(adj, all, n);
        Bits inc = all.andnot(adj[v0]);
        inc.reset(v0);
        Bits exc = all;
        exc.reset(v0);
        struct Sub {
            Bits candidates;
            std::vector<std::size_t> chosen;
        };
        std::vector<Sub> subs{{inc, {v0}}, {exc, {}}};
        std::vector<IndependentSet> results(subs.size());
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < subs.size(); ++i) {
            MisState st;
            st.adj = &adj;
            st.n = n;
            st.best_size = 0;
            st.current = subs[i].chosen;
            mis_expand(st, subs[i].candidates);
            results[i] = IndependentSet{st.best_size, st.best_witness};
        }
        IndependentSet best;
        for (const auto& r : results)
            if (r.size > best.size) best = r;
        return best;
    }
#endif
    return mis_branch_and_bound(g);
}

IndependentSet independence_number_exhaustive(const Graph& g) {
    if (g.size() > 25) throw TooLarge("exhaustive oracle limited to 25 vertices");
    if (g.size() == 0) return IndependentSet{0, {}};
    auto adj = adjacency_bits(g);
    Bits all(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) all.set(v);
    std::vector<std::size_t> current, witness;
    std::size_t size = exhaustive_recurse(adj, all, current, witness);
    std::sort(witness.begin(), witness.end());
    return IndependentSet{size, witness};
}

namespace {

// Backtracking k-colorability with symmetry breaking on color indices.
bool colorable(const std::vector<Bits>& adj, std::size_t n, std::size_t k,
               std::vector<std::size_t>& colors, std::size_t v, std::size_t used) {
    if (v == n) return true;
    std::size_t tryable = std::min(used + 1, k);
    for (std::size_t c = 0; c < tryable; ++c) {
        bool ok = true;
        for (std::size_t u = 0; u < v; ++u)
            if (colors[u] == c && adj[v].test(u)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        colors[v] = c;
        if (colorable(adj, n, k, colors, v + 1, std::max(used, c + 1))) return true;
    }
    return false;
}

}  // namespace

std::size_t clique_cover_number(const Graph& g, std::size_t limit) {
    if (g.size() > limit)
        throw TooLarge("graph has " + std::to_string(g.size()) + " vertices, limit " +
                       std::to_string(limit));
    const std::size_t n = g.size();
    if (n == 0) return 0;
    // Minimum clique cover = chromatic number of the complement.
    std::vector<Bits> comp(n, Bits(n));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (u != v && !g.adjacent(u, v)) comp[u].set(v);
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::size_t> colors(n, 0);
        if (colorable(comp, n, k, colors, 0, 0)) return k;
    }
    return n;
}

namespace {

void canon_search(const Graph& g, std::vector<std::size_t>& perm, std::vector<bool>& used,
                  std::vector<std::uint8_t>& bits, std::vector<std::uint8_t>& best,
                  bool& have_best) {
    const std::size_t n = g.size();
    const std::size_t k = perm.size();
    if (have_best && bits.size() <= best.size() &&
        !std::equal(bits.begin(), bits.end(), best.begin()))
        if (std::lexicographical_compare(best.begin(), best.begin() + bits.size(), bits.begin(),
                                         bits.end()))
            return;  // prefix already worse than best
    if (k == n) {
        if (!have_best || bits < best) {
            best = bits;
            have_best = true;
        }
        return;
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (used[v]) continue;
        used[v] = true;
        perm.push_back(v);
        std::size_t added = 0;
        for (std::size_t i = 0; i < k; ++i, ++added)
            bits.push_back(g.adjacent(perm[i], v) ? 1 : 0);
        canon_search(g, perm, used, bits, best, have_best);
        bits.resize(bits.size() - added);
        perm.pop_back();
        used[v] = false;
    }
}

}  // namespace

std::vector<std::uint8_t> canonical_form(const Graph& g, std::size_t limit) {
    if (g.size() > limit)
        throw TooLarge("canonical form limited to " + std::to_string(limit) + " vertices");
    std::vector<std::size_t> perm;
    std::vector<bool> used(g.size(), false);
    std::vector<std::uint8_t> bits, best;
    bool have_best = false;
    canon_search(g, perm, used, bits, best, have_best);
    best.insert(best.begin(), static_cast<std::uint8_t>(g.size()));
    return best;
}

}  // namespace zec
