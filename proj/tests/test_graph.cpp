#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "zec/capacity.hpp"
#include "zec/channel.hpp"
#include "zec/graph.hpp"

using namespace zec;

namespace {

Graph random_graph(std::mt19937_64& rng, std::size_t n, int edge_pct) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (static_cast<int>(rng() % 100) < edge_pct) edges.insert({u, v});
    return Graph(names, edges);
}

bool independent_in(const Graph& g, const std::vector<std::size_t>& set) {
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (g.adjacent(set[i], set[j])) return false;
    return true;
}

}  // namespace

TEST_CASE("graph constructors") {
    Graph c5 = Graph::cycle(5);
    CHECK(c5.size() == 5);
    CHECK(c5.edges().size() == 5);
    CHECK(c5.adjacent(0, 1));
    CHECK(c5.adjacent(4, 0));
    CHECK(!c5.adjacent(0, 2));
    CHECK(c5.degree(3) == 2);
    CHECK(Graph::complete(4).edges().size() == 6);
    CHECK(Graph::empty(4).edges().empty());
}

TEST_CASE("independence numbers of stock graphs") {
    CHECK(independence_number(Graph::cycle(5)).size == 2);
    CHECK(independence_number(Graph::complete(6)).size == 1);
    CHECK(independence_number(Graph::empty(6)).size == 6);
    CHECK(independence_number(Graph::cycle(7)).size == 3);

    auto r = independence_number(strong_power(Graph::cycle(5), 2));
    CHECK(r.size == 5);
    CHECK(r.witness.size() == 5);
}

TEST_CASE("branch-and-bound agrees with the exhaustive and serial oracles") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 40; ++rep) {
        std::size_t n = 4 + rng() % 15;  // up to 18
        Graph g = random_graph(rng, n, 10 + static_cast<int>(rng() % 70));
        auto bb = independence_number(g);
        auto serial = independence_number_serial(g);
        auto brute = independence_number_exhaustive(g);
        CHECK(bb.size == brute.size);
        CHECK(serial.size == brute.size);
        CHECK(bb.witness.size() == bb.size);
        CHECK(independent_in(g, bb.witness));
    }
}

TEST_CASE("clique cover numbers") {
    CHECK(clique_cover_number(Graph::cycle(5)) == 3);
    CHECK(clique_cover_number(Graph::complete(5)) == 1);
    CHECK(clique_cover_number(Graph::empty(5)) == 5);
}

TEST_CASE("alpha supermultiplicativity and clique-cover bound on C5") {
    Graph c5 = Graph::cycle(5);
    std::vector<Int> alpha;
    for (std::size_t n = 1; n <= 3; ++n)
        alpha.push_back(independence_number(strong_power(c5, n), 125).size);
    CHECK(alpha[0] == 2);
    CHECK(alpha[1] == 5);
    // alpha(m+n) >= alpha(m) * alpha(n)
    CHECK(alpha[1] >= alpha[0] * alpha[0]);
    CHECK(alpha[2] >= alpha[1] * alpha[0]);
    // alpha(G^n) <= cc(G)^n
    Int cc = clique_cover_number(c5);
    for (std::size_t n = 1; n <= 3; ++n) CHECK(alpha[n - 1] <= pow(cc, static_cast<unsigned>(n)));
}

TEST_CASE("strong product structure") {
    Graph k2 = Graph::complete(2);
    Graph p = strong_product(k2, k2);
    CHECK(p.size() == 4);
    CHECK(p.edges() == Graph::complete(4).edges());  // K2 boxtimes K2 = K4 up to labels
    CHECK(independence_number(strong_product(Graph::empty(3), Graph::empty(2))).size == 6);
}

TEST_CASE("confusability graph depends only on the zero pattern") {
    Channel pent = pentagon_channel();
    auto pat = zero_pattern(pent);
    Graph g = confusability_graph(pat, pent.alphabets());
    CHECK(g.size() == 5);
    CHECK(g.edges().size() == 5);  // the 5-cycle
    CHECK(independence_number(g).size == 2);

    // A different channel with the same pattern gives the same graph.
    auto rows = pent.entries();
    for (auto& row : rows)
        for (auto& e : row)
            if (e > 0) e = Rational(1, 2);  // already 1/2, keep exact form
    rows[0][0] = Rational(3, 4);
    rows[0][1] = Rational(1, 4);
    Channel other = validate_channel(rows, pent.alphabets());
    CHECK(zero_pattern(other) == pat);
    CHECK(confusability_graph(zero_pattern(other), other.alphabets()) == g);

    Channel bsc = binary_symmetric_channel(Rational(1, 4));
    CHECK(confusability_graph(zero_pattern(bsc), bsc.alphabets()).edges() ==
          Graph::complete(2).edges());
    Channel clean = noiseless_channel(3);
    CHECK(confusability_graph(zero_pattern(clean), clean.alphabets()).edges().empty());
}

TEST_CASE("canonical form is isomorphism invariant") {
    Graph c5 = Graph::cycle(5);
    // Relabel C5 by the permutation i -> 2i mod 5 (still a 5-cycle).
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (auto [u, v] : c5.edges()) {
        std::size_t a = (2 * u) % 5, b = (2 * v) % 5;
        edges.insert({std::min(a, b), std::max(a, b)});
    }
    Graph shuffled(c5.vertices(), edges);
    CHECK(canonical_form(c5) == canonical_form(shuffled));
    CHECK(canonical_form(c5) != canonical_form(Graph::complete(5)));
}

TEST_CASE("known-values registry") {
    auto reg = KnownValuesRegistry::builtin();
    auto v = reg.lookup(Graph::cycle(5));
    REQUIRE(v.has_value());
    CHECK(*v == ExactValue::sqrt(5));
    CHECK(!reg.lookup(Graph::cycle(7)).has_value());

    KnownValuesRegistry mine;
    mine.add(Graph::cycle(7), ExactValue::rational(Rational(7, 2)));
    auto w = mine.lookup(Graph::cycle(7));
    REQUIRE(w.has_value());
    CHECK(w->radicand == Rational(7, 2));
}

TEST_CASE("exact value comparisons square the sqrt side") {
    ExactValue s5 = ExactValue::sqrt(5);
    CHECK(s5.compare(2) > 0);       // 5 > 4
    CHECK(s5.compare(Rational(9, 4)) < 0);  // 5 < 81/16
    CHECK(s5.compare(3) < 0);
    CHECK(ExactValue::rational(2).compare(2) == 0);
    CHECK(ExactValue::parse("sqrt(5)") == s5);
    CHECK(ExactValue::parse("3/2") == ExactValue::rational(Rational(3, 2)));
    CHECK(s5.str() == "sqrt(5)");
}

TEST_CASE("capacity bounds on the stock channels") {
    Channel clean = noiseless_channel(3);
    auto b = capacity_bounds(zero_pattern(clean), clean.alphabets(), 2);
    REQUIRE(b.exact.has_value());
    CHECK(*b.exact == ExactValue::rational(3));
    CHECK(b.provenance == Provenance::PerfectMatch);

    Channel bsc = binary_symmetric_channel(Rational(1, 4));
    auto full = capacity_bounds(zero_pattern(bsc), bsc.alphabets(), 2);
    REQUIRE(full.exact.has_value());
    CHECK(*full.exact == ExactValue::rational(1));

    Channel pent = pentagon_channel();
    auto pb = capacity_bounds(zero_pattern(pent), pent.alphabets(), 2);
    CHECK(pb.best_lower.alpha == 5);
    CHECK(pb.best_lower.n == 2);
    CHECK(pb.clique_cover == 3);
    REQUIRE(pb.exact.has_value());
    CHECK(*pb.exact == ExactValue::sqrt(5));
    CHECK(pb.provenance == Provenance::Table);

    // Exact sits inside [best lower, clique cover] under cross-multiplication.
    // lower: alpha >= exact^n <=> alpha^2 >= 5^n; upper: exact <= cc.
    CHECK(pb.best_lower.alpha * pb.best_lower.alpha >= pow(Int(5), pb.best_lower.n));
    CHECK(pb.exact->compare(Rational(pb.clique_cover)) <= 0);
    CHECK(pb.lower_at_least(2));
    CHECK(pb.lower_exceeds(Rational(11, 5)).has_value());
    CHECK(!pb.lower_exceeds(Rational(9, 4)).has_value());
}

TEST_CASE("vertex limit raises TooLarge") {
    CHECK_THROWS_AS(independence_number(Graph::empty(10), 5), TooLarge);
}
