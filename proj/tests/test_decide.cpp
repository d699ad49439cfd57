#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "zec/decide.hpp"
#include "zec/polynomial.hpp"

using namespace zec;

namespace {

Plant scalar(const Rational& a) { return Plant{{{a}}, std::nullopt}; }

Poly from_roots(const std::vector<Rational>& roots) {
    Poly p({1});
    for (const auto& r : roots) p = p * Poly({-r, 1});
    return p;
}

}  // namespace

TEST_CASE("poly arithmetic basics") {
    Poly p({1, 2, 1});  // 1 + 2x + x^2
    Poly q({-1, 1});    // x - 1
    CHECK(p.degree() == 2);
    CHECK(p.eval(2) == 9);
    CHECK((p * q).eval(3) == 16 * 2);
    CHECK((p + q).eval(1) == 4);
    CHECK((p - q).eval(1) == 4);
    CHECK(p.derivative() == Poly({2, 2}));
    CHECK(Poly({0, 0, 3}).reversed() == Poly({3}));
    CHECK(p.compose_scale(2) == Poly({1, 4, 4}));
    auto [quo, rem] = divmod(p, q);
    CHECK(quo * q + rem == p);
    CHECK(poly_gcd(p, Poly({1, 1})) == Poly({1, 1}));
}

TEST_CASE("charpoly on hand-checked matrices") {
    CHECK(charpoly({{Rational(2)}}) == Poly({-2, 1}));
    // [[0, -2], [1, 0]] -> x^2 + 2
    CHECK(charpoly({{0, -2}, {1, 0}}) == Poly({2, 0, 1}));
    // Triangular: (x - 3/2)(x - 1/2) = x^2 - 2x + 3/4.
    CHECK(charpoly({{Rational(3, 2), 7}, {0, Rational(1, 2)}}) ==
          Poly({Rational(3, 4), -2, 1}));
}

TEST_CASE("squarefree decomposition") {
    Poly p = from_roots({1, 1, 2});  // (x-1)^2 (x-2)
    auto parts = squarefree_decomposition(p);
    REQUIRE(parts.size() == 2);
    // Reassemble.
    Poly acc({1});
    for (const auto& [f, mult] : parts)
        for (unsigned i = 0; i < mult; ++i) acc = acc * f;
    CHECK(acc == p.monic());
}

TEST_CASE("rational roots") {
    Poly p = from_roots({Rational(1, 2), -3, -3});
    auto rr = rational_roots(p);
    CHECK(rr.complete);
    REQUIRE(rr.roots.size() == 2);
    std::map<Rational, unsigned> m(rr.roots.begin(), rr.roots.end());
    CHECK(m[Rational(1, 2)] == 1);
    CHECK(m[Rational(-3)] == 2);
    // x^2 + 2 has none.
    CHECK(rational_roots(Poly({2, 0, 1})).roots.empty());
}

TEST_CASE("sturm counts on half-open intervals") {
    Poly p = from_roots({Rational(1, 3), Rational(1, 2), 3});
    CHECK(sturm_count(p, 0, 1) == 2);
    CHECK(sturm_count(p, 0, Rational(1, 2)) == 2);  // (0, 1/2] includes 1/2
    CHECK(sturm_count(p, Rational(1, 2), 4) == 1);  // excludes 1/2, includes 3
    CHECK(sturm_count(p, 4, 10) == 0);
}

TEST_CASE("roots in open disks") {
    CHECK(roots_in_open_disk(Poly({-2, 1}), 1) == 0);   // root 2
    CHECK(roots_in_open_disk(Poly({-2, 1}), 3) == 1);
    Poly mixed = from_roots({Rational(1, 2), 3});
    CHECK(roots_in_open_disk(mixed, 1) == 1);
    CHECK(roots_in_open_disk(mixed, 4) == 2);
    CHECK(roots_in_open_disk(Poly({2, 0, 1}), 2) == 2);  // |roots| = sqrt(2)
    CHECK(roots_in_open_disk(Poly({2, 0, 1}), 1) == 0);
    // Degenerate radius (hits the root modulus) reports nullopt.
    CHECK(!roots_in_open_disk(Poly({-2, 1}), 2).has_value());
}

TEST_CASE("unit circle root counts") {
    CHECK(unit_circle_roots(Poly({1, 0, 1})) == 2);       // z^2 + 1
    CHECK(unit_circle_roots(Poly({-1, 1})) == 1);         // z - 1
    CHECK(unit_circle_roots(Poly({1, 1})) == 1);          // z + 1
    CHECK(unit_circle_roots(from_roots({2, Rational(1, 2)})) == 0);
    CHECK(unit_circle_roots(Poly({1, 1, 1})) == 2);       // primitive cube roots
    CHECK(unit_circle_roots(from_roots({-1, 1, 3})) == 2);
}

TEST_CASE("cauchy bound dominates every root") {
    Poly p = from_roots({5, -7, Rational(1, 3)});
    Rational b = cauchy_bound(p);
    CHECK(b > 7);
    CHECK(roots_in_open_disk(p, b) == 3);
}

TEST_CASE("instability exponent exact cases") {
    CHECK(instability_exponent(scalar(Rational(3, 2))).lo == Rational(3, 2));
    CHECK(instability_exponent(scalar(Rational(3, 2))).exact());
    CHECK(instability_exponent(scalar(2)).lo == 2);
    CHECK(instability_exponent(scalar(Rational(1, 2))).lo == 1);  // stable: empty product
    CHECK(instability_exponent(scalar(Rational(-5, 2))).lo == Rational(5, 2));

    auto unit = instability_exponent(scalar(1));
    CHECK(unit.lo == 1);
    CHECK(unit.hi == 1);
    CHECK(unit.boundary_flag);

    // [[0, -2], [1, 0]]: both moduli sqrt(2), product exactly 2.
    auto rot = instability_exponent(Plant{{{0, -2}, {1, 0}}, std::nullopt});
    CHECK(rot.exact());
    CHECK(rot.lo == 2);

    // Triangular: eigenvalues 2 and 3 and 1/2.
    auto tri = instability_exponent(
        Plant{{{2, 1, 0}, {0, 3, 5}, {0, 0, Rational(1, 2)}}, std::nullopt});
    CHECK(tri.exact());
    CHECK(tri.lo == 6);
}

TEST_CASE("instability exponent is similarity invariant") {
    // P A P^-1 with unimodular integer P keeps the charpoly, hence the
    // exponent. P = [[1, 1], [1, 2]], P^-1 = [[2, -1], [-1, 1]].
    std::vector<std::vector<Rational>> A{{Rational(5, 2), 0}, {0, Rational(1, 3)}};
    std::vector<std::vector<Rational>> P{{1, 1}, {1, 2}};
    std::vector<std::vector<Rational>> Pi{{2, -1}, {-1, 1}};
    auto mul = [](const auto& a, const auto& b) {
        std::vector<std::vector<Rational>> c(2, std::vector<Rational>(2, 0));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) c[i][j] += a[i][k] * b[k][j];
        return c;
    };
    auto conj = mul(mul(P, A), Pi);
    CHECK(charpoly(conj) == charpoly(A));
    auto ea = instability_exponent(Plant{A, std::nullopt});
    auto ec = instability_exponent(Plant{conj, std::nullopt});
    CHECK(ea.lo == ec.lo);
    CHECK(ea.hi == ec.hi);
    CHECK(ea.lo == Rational(5, 2));
}

TEST_CASE("companion matrices with irrational moduli refine to precision") {
    // Companion of x^2 - x - 1: moduli phi and 1/phi, product phi ~ 1.618.
    Plant fib{{{0, 1}, {1, 1}}, std::nullopt};
    auto e = instability_exponent(fib, 40);
    CHECK(e.lo <= e.hi);
    CHECK(!e.boundary_flag);
    // phi in the interval, width within tolerance.
    Rational phi_lo(161803398874, 100000000000), phi_hi(161803398875, 100000000000);
    CHECK(e.lo <= phi_hi);
    CHECK(e.hi >= phi_lo);
    CHECK((e.hi - e.lo) <= e.lo * Rational(1, Int(1) << 40));
}

TEST_CASE("supplied eigenvalue moduli bypass the enclosure") {
    Plant p{{{0, 1}, {1, 1}}, std::vector<std::pair<Rational, Rational>>{
                                  {Rational(8, 5), Rational(13, 8)},
                                  {Rational(3, 5), Rational(5, 8)}}};
    auto e = instability_exponent(p);
    CHECK(e.lo == Rational(8, 5));
    CHECK(e.hi == Rational(13, 8));
    CHECK(!e.boundary_flag);

    // An interval straddling 1 contributes [1, hi] and flags the boundary.
    Plant q{{{1, 0}, {0, Rational(1, 2)}},
            std::vector<std::pair<Rational, Rational>>{{Rational(9, 10), Rational(11, 10)},
                                                       {Rational(1, 2), Rational(1, 2)}}};
    auto f = instability_exponent(q);
    CHECK(f.lo == 1);
    CHECK(f.hi == Rational(11, 10));
    CHECK(f.boundary_flag);
}

TEST_CASE("decide on the canonical cases") {
    Channel clean = noiseless_channel(2);
    Channel bsc = binary_symmetric_channel(Rational(1, 4));
    Channel pent = pentagon_channel();

    auto v1 = decide_solvability(scalar(Rational(3, 2)), clean, 2);
    CHECK(v1.outcome == Outcome::Solvable);
    CHECK(verify_certificate(v1.certificate));

    auto v2 = decide_solvability(scalar(3), bsc, 2);
    CHECK(v2.outcome == Outcome::Unsolvable);
    CHECK(verify_certificate(v2.certificate));
    auto v2b = decide_solvability(scalar(3), clean, 2);
    CHECK(v2b.outcome == Outcome::Unsolvable);

    auto v3 = decide_solvability(scalar(2), clean, 2);
    CHECK(v3.outcome == Outcome::Boundary);
    CHECK(verify_certificate(v3.certificate));

    auto v4 = decide_solvability(scalar(Rational(11, 5)), pent, 2);
    CHECK(v4.outcome == Outcome::Solvable);
    CHECK(verify_certificate(v4.certificate));
    CHECK(v4.certificate.alpha == 5);
    CHECK(v4.certificate.n == 2);
    CHECK(v4.certificate.lhs > v4.certificate.rhs);

    // 9/4 > sqrt(5): unsolvable through the exact table value.
    auto v5 = decide_solvability(scalar(Rational(9, 4)), pent, 2);
    CHECK(v5.outcome == Outcome::Unsolvable);
    CHECK(verify_certificate(v5.certificate));
}

TEST_CASE("tampered certificates fail verification") {
    auto v = decide_solvability(scalar(Rational(3, 2)), noiseless_channel(2), 2);
    auto cert = v.certificate;
    cert.lhs = cert.rhs - 1;
    CHECK(!verify_certificate(cert));
}

TEST_CASE("solvable verdicts are monotone in depth") {
    Channel clean = noiseless_channel(2);
    for (unsigned depth = 1; depth <= 3; ++depth)
        CHECK(decide_solvability(scalar(Rational(3, 2)), clean, depth).outcome ==
              Outcome::Solvable);
}

TEST_CASE("scalar scale sweep crosses the capacity") {
    Channel clean = noiseless_channel(2);  // 2^C0 = 2
    CHECK(decide_solvability(scalar(1), clean, 2).outcome == Outcome::Solvable);
    CHECK(decide_solvability(scalar(Rational(3, 2)), clean, 2).outcome == Outcome::Solvable);
    CHECK(decide_solvability(scalar(2), clean, 2).outcome == Outcome::Boundary);
    CHECK(decide_solvability(scalar(Rational(5, 2)), clean, 2).outcome == Outcome::Unsolvable);
    CHECK(decide_solvability(scalar(4), clean, 2).outcome == Outcome::Unsolvable);
}

TEST_CASE("undetermined when bounds cannot separate") {
    // Pentagon without the table entry: bounds [5^(1/2-ish), 3] cannot place
    // 9/4 at depth 2.
    KnownValuesRegistry empty;
    auto v = decide_solvability(scalar(Rational(9, 4)), pentagon_channel(), 2, empty);
    CHECK(v.outcome == Outcome::UndeterminedBounds);
    CHECK(!v.certificate.note.empty());
}

TEST_CASE("membership indicators") {
    Channel clean = noiseless_channel(2);
    Channel bsc = binary_symmetric_channel(Rational(1, 4));
    CHECK(indicator_s(scalar(Rational(3, 2)), clean, 2) == 1);
    CHECK(indicator_u(scalar(Rational(3, 2)), clean, 2) == 0);
    CHECK(indicator_s(scalar(3), bsc, 2) == 0);
    CHECK(indicator_u(scalar(3), bsc, 2) == 1);
    // Boundary: both indicators are 0.
    CHECK(indicator_s(scalar(2), clean, 2) == 0);
    CHECK(indicator_u(scalar(2), clean, 2) == 0);
    // Undetermined: no answer. The heptagon typewriter channel has no
    // registry entry and its depth-2 bounds leave a gap around 7/2.
    std::vector<std::string> xs, ys;
    for (int i = 0; i < 7; ++i) {
        xs.push_back("x" + std::to_string(i + 1));
        ys.push_back("y" + std::to_string(i + 1));
    }
    std::vector<std::vector<Rational>> rows(7, std::vector<Rational>(7, 0));
    for (int i = 0; i < 7; ++i) {
        rows[i][i] = Rational(1, 2);
        rows[i][(i + 1) % 7] = Rational(1, 2);
    }
    Channel hept = validate_channel(rows, AlphabetPair(Alphabet(xs), Alphabet(ys)));
    CHECK(!indicator_s(scalar(Rational(7, 2)), hept, 2).has_value());
    CHECK(!indicator_u(scalar(Rational(7, 2)), hept, 2).has_value());
}

TEST_CASE("plant validation") {
    CHECK_THROWS_AS(Plant({{1, 2}}, std::nullopt).validate(), DecideError);
    CHECK_THROWS_AS(
        Plant({{1}}, std::vector<std::pair<Rational, Rational>>{{2, 1}}).validate(),
        DecideError);
    CHECK_THROWS_AS(instability_exponent(Plant{{}, std::nullopt}), DecideError);
}
