#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "zec/capacity.hpp"
#include "zec/search.hpp"

using namespace zec;

namespace {

AlphabetPair pair22() {
    return AlphabetPair(Alphabet({"a", "b"}), Alphabet({"c", "d"}));
}

InstabilityExponent exact_exp(const Rational& v) { return InstabilityExponent{v, v, false}; }

ZeroPattern noiseless22() { return ZeroPattern({{0, 1}, {1, 0}}, 2, 2); }

}  // namespace

TEST_CASE("faithful gamma search finds the minimal index") {
    AlphabetPair p = pair22();
    auto out = search_minimal_gamma(noiseless22(), p, exact_exp(Rational(3, 2)), 1000);
    auto* hit = std::get_if<SearchResult>(&out);
    REQUIRE(hit != nullptr);
    CHECK(hit->gamma_index == 566);
    CHECK(hit->mode == SearchMode::FaithfulGamma);
    CHECK(hit->code.message_count() == 2);
    CHECK(hit->code.block_length() == 1);

    // Exhaustive confirmation: no smaller index qualifies.
    for (GammaIndex n = 1; n < 566; ++n) {
        if (delta(n, noiseless22(), p) != 1) continue;
        std::size_t M = theta_m(n, p), N = theta_n(n, p);
        // M > (3/2)^N <=> M * 2^N > 3^N
        CHECK(!(Int(M) * pow(Int(2), static_cast<unsigned>(N)) >
                pow(Int(3), static_cast<unsigned>(N))));
    }
}

TEST_CASE("faithful search exhausts on hopeless patterns") {
    AlphabetPair p = pair22();
    ZeroPattern empty({}, 2, 2);  // complete confusability graph, C0 = 0
    auto out = search_minimal_gamma(empty, p, exact_exp(Rational(3, 2)), 5000);
    auto* miss = std::get_if<Exhausted>(&out);
    REQUIRE(miss != nullptr);
    CHECK(miss->n_examined == 5000);
}

TEST_CASE("single-message codes never qualify at base >= 1") {
    AlphabetPair p = pair22();
    // Base 1: M must exceed 1, so gamma 16 (the single-pair code) is skipped;
    // the first qualifying index is the two-message code.
    auto out = search_minimal_gamma(noiseless22(), p, exact_exp(1), 1000);
    auto* hit = std::get_if<SearchResult>(&out);
    REQUIRE(hit != nullptr);
    CHECK(hit->gamma_index == 566);
}

TEST_CASE("construct_code on the pentagon") {
    Channel pent = pentagon_channel();
    auto pat = zero_pattern(pent);
    auto out = construct_code(pat, pent.alphabets(), exact_exp(Rational(11, 5)), 3);
    auto* hit = std::get_if<SearchResult>(&out);
    REQUIRE(hit != nullptr);
    CHECK(hit->mode == SearchMode::IndependentSet);
    CHECK(hit->code.block_length() == 2);
    CHECK(hit->code.message_count() == 5);

    auto cert = verify_code(hit->code, pat, pent.alphabets(), exact_exp(Rational(11, 5)));
    CHECK(cert.valid());
    CHECK(cert.lhs == 125);  // 5 * 5^2
    CHECK(cert.rhs == 121);  // 11^2

    // Independence witness re-checked: message words pairwise non-confusable.
    Graph g = confusability_graph(pat, pent.alphabets());
    Graph g2 = strong_power(g, 2);
    const auto& msgs = hit->code.message_set();
    for (std::size_t i = 0; i < msgs.size(); ++i)
        for (std::size_t j = i + 1; j < msgs.size(); ++j) {
            std::size_t u = msgs[i][0] * 5 + msgs[i][1];
            std::size_t v = msgs[j][0] * 5 + msgs[j][1];
            CHECK(!g2.adjacent(u, v));
        }
}

TEST_CASE("construct_code reports NotFound past the block budget") {
    Channel bsc = binary_symmetric_channel(Rational(1, 4));
    auto out = construct_code(zero_pattern(bsc), bsc.alphabets(), exact_exp(Rational(3, 2)), 3);
    auto* miss = std::get_if<NotFound>(&out);
    REQUIRE(miss != nullptr);
    CHECK(miss->max_block == 3);
}

TEST_CASE("verify_code rejects bad inputs") {
    AlphabetPair p = pair22();
    Code matched(1, {{{0}, {0}}, {{1}, {1}}}, p);
    // Not zero-error for the empty pattern.
    auto c1 = verify_code(matched, ZeroPattern({}, 2, 2), p, exact_exp(Rational(3, 2)));
    CHECK(!c1.zero_error);
    CHECK(!c1.valid());
    // Base too large: 2 > (5/2)^1 fails.
    auto c2 = verify_code(matched, noiseless22(), p, exact_exp(Rational(5, 2)));
    CHECK(c2.zero_error);
    CHECK(!c2.rate_ok);
    // Good case.
    auto c3 = verify_code(matched, noiseless22(), p, exact_exp(Rational(3, 2)));
    CHECK(c3.valid());
    CHECK(c3.lhs == 4);
    CHECK(c3.rhs == 3);
}

TEST_CASE("emitted codes are zero-error for random channels in the class") {
    Channel pent = pentagon_channel();
    auto pat = zero_pattern(pent);
    auto out = construct_code(pat, pent.alphabets(), exact_exp(Rational(11, 5)), 2);
    auto* hit = std::get_if<SearchResult>(&out);
    REQUIRE(hit != nullptr);

    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> weight(1, 9);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<std::vector<Rational>> rows(5, std::vector<Rational>(5, 0));
        for (std::size_t x = 0; x < 5; ++x) {
            Int a = weight(rng), b = weight(rng);
            rows[x][x] = Rational(a, a + b);
            rows[x][(x + 1) % 5] = Rational(b, a + b);
            rows[x][x].canonicalize();
            rows[x][(x + 1) % 5].canonicalize();
        }
        Channel w = validate_channel(rows, pent.alphabets());
        REQUIRE(zero_pattern(w) == pat);
        CHECK(s_min(w, hit->code) == 1);
    }
}

TEST_CASE("every emitted faithful-search code passes verify_code") {
    AlphabetPair p = pair22();
    for (const Rational& base : {Rational(1), Rational(6, 5), Rational(3, 2)}) {
        auto out = search_minimal_gamma(noiseless22(), p, exact_exp(base), 1000);
        auto* hit = std::get_if<SearchResult>(&out);
        REQUIRE(hit != nullptr);
        CHECK(verify_code(hit->code, noiseless22(), p, exact_exp(base)).valid());
    }
}
