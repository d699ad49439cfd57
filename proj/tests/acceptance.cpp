// Acceptance gate: one pass/fail line per criterion, exit 0 only when all
// seven hold.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "zec/bss.hpp"
#include "zec/capacity.hpp"
#include "zec/channel.hpp"
#include "zec/code.hpp"
#include "zec/decide.hpp"
#include "zec/graph.hpp"
#include "zec/search.hpp"
#include "zec/sim.hpp"

using namespace zec;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, double seconds) {
    std::printf("%s criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                seconds);
    if (!ok) ++failures;
}

AlphabetPair make_pair_xy(std::size_t nx, std::size_t ny) {
    std::vector<std::string> xs, ys;
    for (std::size_t i = 0; i < nx; ++i) xs.push_back("x" + std::to_string(i + 1));
    for (std::size_t i = 0; i < ny; ++i) ys.push_back("y" + std::to_string(i + 1));
    return AlphabetPair(Alphabet(xs), Alphabet(ys));
}

Code random_code(std::mt19937_64& rng, const AlphabetPair& p, std::size_t N) {
    const std::size_t nx = p.inputs().size();
    const std::size_t ny = p.outputs().size();
    std::map<Word, Word> claims;
    std::set<std::pair<Word, Word>> pairs;
    std::size_t want = 1 + rng() % 4;
    for (std::size_t k = 0; k < 4 * want && pairs.size() < want; ++k) {
        Word x(N), y(N);
        for (auto& s : x) s = rng() % nx;
        for (auto& s : y) s = rng() % ny;
        auto it = claims.find(y);
        if (it != claims.end() && it->second != x) continue;
        claims[y] = x;
        pairs.insert({x, y});
    }
    return Code(N, {pairs.begin(), pairs.end()}, p);
}

std::vector<ZeroPattern> all_patterns(std::size_t nx, std::size_t ny) {
    std::vector<ZeroPattern> out;
    for (unsigned mask = 0; mask < (1u << (nx * ny)); ++mask) {
        std::set<std::pair<std::size_t, std::size_t>> omega;
        for (unsigned cell = 0; cell < nx * ny; ++cell)
            if (mask & (1u << cell)) omega.insert({cell % nx, cell / nx});
        out.emplace_back(std::move(omega), nx, ny);
    }
    return out;
}

bool pattern_feasible(const ZeroPattern& pat) {
    for (std::size_t x = 0; x < pat.n_inputs(); ++x) {
        bool has = false;
        for (std::size_t y = 0; y < pat.n_outputs(); ++y)
            if (!pat.contains(x, y)) has = true;
        if (!has) return false;
    }
    return true;
}

Channel random_channel_for(std::mt19937_64& rng, const ZeroPattern& pat, const AlphabetPair& p) {
    const std::size_t nx = p.inputs().size(), ny = p.outputs().size();
    std::vector<std::vector<Rational>> rows(nx, std::vector<Rational>(ny, 0));
    for (std::size_t x = 0; x < nx; ++x) {
        Int total = 0;
        std::vector<Int> w(ny, 0);
        for (std::size_t y = 0; y < ny; ++y)
            if (!pat.contains(x, y)) {
                w[y] = 1 + static_cast<long>(rng() % 19);
                total += w[y];
            }
        for (std::size_t y = 0; y < ny; ++y)
            if (w[y] != 0) {
                rows[x][y] = Rational(w[y], total);
                rows[x][y].canonicalize();
            }
    }
    return validate_channel(rows, p);
}

// 1: pentagon end to end.
void criterion1() {
    auto t0 = Clock::now();
    bool ok = true;
    try {
        Channel pent = pentagon_channel();
        auto pat = zero_pattern(pent);
        Graph g = confusability_graph(pat, pent.alphabets());
        ok &= g.size() == 5 && g.edges().size() == 5;
        ok &= independence_number(g).size == 2;
        Graph g2 = strong_power(g, 2);
        auto bb = independence_number(g2);
        auto brute = independence_number_exhaustive(g2);
        ok &= bb.size == 5 && brute.size == 5;
        auto b = capacity_bounds(pat, pent.alphabets(), 2);
        ok &= b.best_lower.alpha == 5 && b.best_lower.n == 2;
        ok &= b.clique_cover == 3;
        ok &= b.exact.has_value() && *b.exact == ExactValue::sqrt(5);
    } catch (...) {
        ok = false;
    }
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    report(1, "pentagon pipeline: alpha 2/5, bounds (5,n=2)/3, exact sqrt(5)", ok && s < 10, s);
}

// 2: numbering round-trip plus minimal-gamma search against a full scan.
void criterion2() {
    auto t0 = Clock::now();
    bool ok = true;
    try {
        std::mt19937_64 rng(20260823);
        for (int built = 0; built < 1000; ++built) {
            std::size_t nx = 2 + rng() % 3, ny = 2 + rng() % 3;
            AlphabetPair p = make_pair_xy(nx, ny);
            std::size_t N = 1 + rng() % 3;
            Code c = random_code(rng, p, N);
            auto back = gamma_inverse(gamma(c, p), p);
            if (!back || !(*back == c)) {
                ok = false;
                break;
            }
        }
        // Noiseless binary channel at base 3/2: the faithful search result
        // must match the minimum over an exhaustive index scan.
        AlphabetPair p = make_pair_xy(2, 2);
        ZeroPattern noiseless({{0, 1}, {1, 0}}, 2, 2);
        InstabilityExponent e{Rational(3, 2), Rational(3, 2), false};
        auto out = search_minimal_gamma(noiseless, p, e, 10000);
        auto* hit = std::get_if<SearchResult>(&out);
        ok &= hit != nullptr && hit->gamma_index == 566;
        if (hit) {
            for (GammaIndex n = 1; n < hit->gamma_index; ++n) {
                if (delta(n, noiseless, p) != 1) continue;
                unsigned N = static_cast<unsigned>(theta_n(n, p));
                Int lhs = Int(theta_m(n, p)) * pow(Int(2), N);
                if (lhs > pow(Int(3), N)) ok = false;  // a smaller index qualified
            }
        }
    } catch (...) {
        ok = false;
    }
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    report(2, "gamma round-trip x1000 and minimal-index search vs full scan", ok && s < 60, s);
}

// 3: delta equals the s_min oracle.
void criterion3() {
    auto t0 = Clock::now();
    bool ok = true;
    try {
        std::mt19937_64 rng(7777);
        int checked = 0;
        while (checked < 500) {
            std::size_t nx = 2 + rng() % 2, ny = 2 + rng() % 2;
            AlphabetPair p = make_pair_xy(nx, ny);
            std::set<std::pair<std::size_t, std::size_t>> omega;
            for (std::size_t x = 0; x < nx; ++x)
                for (std::size_t y = 0; y < ny; ++y)
                    if (rng() % 3 == 0) omega.insert({x, y});
            ZeroPattern pat(omega, nx, ny);
            if (!pattern_feasible(pat)) continue;
            Channel w = random_channel_for(rng, pat, p);
            Code c = random_code(rng, p, 1 + rng() % 3);
            int d = delta(gamma(c, p), pat, p);
            int oracle = s_min(w, c) == 1 ? 1 : 0;
            if (d != oracle) {
                ok = false;
                break;
            }
            ++checked;
        }
    } catch (...) {
        ok = false;
    }
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    report(3, "delta vs s_min oracle on 500 random channel/code pairs", ok && s < 60, s);
}

// 4: BSS fidelity.
void criterion4() {
    auto t0 = Clock::now();
    bool ok = true;
    try {
        auto cl = program_cl();
        auto nat = program_indicator_nat();
        auto expn = program_exp_n();
        std::mt19937_64 rng(424242);
        std::uniform_int_distribution<long> num(-10000, 10000);
        std::uniform_int_distribution<long> den(1, 100);
        for (int rep = 0; rep < 1000 && ok; ++rep) {
            Rational x(num(rng), den(rng));
            x.canonicalize();
            auto c = evaluate(cl, {x}, 1000000);
            long direct = 0;
            if (x > 0) {
                Int q;
                mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
                direct = q.get_si();
            }
            ok &= c.is_value() && c.value == direct;
            auto i = evaluate(nat, {x}, 1000000);
            ok &= i.is_value() && i.value == ((x >= 0 && is_integer(x)) ? 1 : 0);
            unsigned e = static_cast<unsigned>(rng() % 9);
            Rational b(num(rng) % 13, 1 + den(rng) % 5);
            b.canonicalize();
            auto pw = evaluate(expn, {Rational(e), b}, 1000000);
            ok &= pw.is_value() && pw.value == pow(b, e);
        }
        // program_c0 against the table-weighted sum on all 16 patterns.
        AlphabetPair p(Alphabet({"a", "b"}), Alphabet({"c", "d"}));
        auto table = c0_table(p, 2, KnownValuesRegistry::builtin());
        ok &= table.size() == 16;
        auto prog = program_c0(p, table);
        for (const auto& [pat, cap] : table) {
            if (!pattern_feasible(pat)) continue;
            std::mt19937_64 crng(pat.omega().size() * 131 + 7);
            Channel w = random_channel_for(crng, pat, p);
            if (!(zero_pattern(w) == pat)) {
                ok = false;
                break;
            }
            Rational expect = 0;
            for (const auto& [q, qcap] : table)
                expect += qcap * Rational(in_w0(w, q));
            auto out = evaluate(prog, w.flat(), 1000000);
            ok &= out.is_value() && out.value == expect && out.value == cap;
        }
    } catch (...) {
        ok = false;
    }
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    report(4, "bss programs vs direct math x1000 and program_c0 vs table x16", ok, s);
}

// 5: decision soundness with re-verified certificates.
void criterion5() {
    auto t0 = Clock::now();
    bool ok = true;
    try {
        Channel clean = noiseless_channel(2);
        Channel bsc = binary_symmetric_channel(Rational(1, 4));
        Channel pent = pentagon_channel();
        Plant p32{{{Rational(3, 2)}}, std::nullopt};
        Plant p3{{{Rational(3)}}, std::nullopt};
        Plant p2{{{Rational(2)}}, std::nullopt};

        auto v1 = decide_solvability(p32, clean, 2);
        ok &= v1.outcome == Outcome::Solvable && verify_certificate(v1.certificate);

        for (const Channel& any2 : {clean, bsc}) {
            auto v = decide_solvability(p3, any2, 2);
            ok &= v.outcome == Outcome::Unsolvable && verify_certificate(v.certificate);
        }

        auto v3 = decide_solvability(p2, clean, 2);
        ok &= v3.outcome == Outcome::Boundary && verify_certificate(v3.certificate);

        Plant p115{{{Rational(11, 5)}}, std::nullopt};
        auto v4 = decide_solvability(p115, pent, 2);
        ok &= v4.outcome == Outcome::Solvable && verify_certificate(v4.certificate);

        // The witnessing (2,5)-code: 125 > 121.
        auto pat = zero_pattern(pent);
        InstabilityExponent e{Rational(11, 5), Rational(11, 5), false};
        auto built = construct_code(pat, pent.alphabets(), e, 2);
        auto* hit = std::get_if<SearchResult>(&built);
        ok &= hit != nullptr;
        if (hit) {
            ok &= hit->code.message_count() == 5 && hit->code.block_length() == 2;
            auto cert = verify_code(hit->code, pat, pent.alphabets(), e);
            ok &= cert.valid() && cert.lhs == 125 && cert.rhs == 121;
        }
    } catch (...) {
        ok = false;
    }
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    report(5, "decision soundness on the canonical plant/channel cases", ok, s);
}

// 6: simulation boundedness.
void criterion6() {
    auto t0 = Clock::now();
    bool ok = true;
    try {
        SimConfig c;
        c.plant = Plant{{{Rational(3, 2)}}, std::nullopt};
        c.channel = noiseless_channel(2);
        c.code = Code(1, {{{0}, {0}}, {{1}, {1}}}, c.channel.alphabets());
        c.noise_bound = Rational(1, 10);
        c.initial_box = Box{{{Rational(-1, 2), Rational(1, 2)}}};
        c.horizon = 100000;
        c.seed = 20260823;
        c.trials = 100;
        c.exact = false;
        c.record_steps = false;
        auto traces = run_trials(c);
        // Derived bound: the shared box width obeys w' = (a/M) w + 2d with
        // fixed point 2dM/(M - a) = 4/5; the recorded error never exceeds
        // half of max(W0, 4/5) = 1/2.
        auto report6 = boundedness_report(traces, Rational(1, 2));
        ok &= report6.bounded_consistent == 100 && report6.diverging == 0;

        auto d = c;
        d.plant = Plant{{{Rational(5, 2)}}, std::nullopt};
        auto bad = run_trials(d);
        for (const auto& t : bad) ok &= t.summary.diverging && t.summary.slope > 0;
    } catch (...) {
        ok = false;
    }
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    report(6, "100 bounded trials under the derived bound, 100 diverging trials", ok && s < 300,
           s);
}

// 7: the W0 classes partition the channel space.
void criterion7() {
    auto t0 = Clock::now();
    bool ok = true;
    try {
        AlphabetPair p(Alphabet({"a", "b"}), Alphabet({"c", "d"}));
        auto pats = all_patterns(2, 2);
        std::mt19937_64 rng(99);
        for (int rep = 0; rep < 200 && ok; ++rep) {
            ZeroPattern target;
            do {
                target = pats[rng() % pats.size()];
            } while (!pattern_feasible(target));
            Channel w = random_channel_for(rng, target, p);
            int fired = 0;
            for (const auto& pat : pats) fired += in_w0(w, pat);
            ok &= fired == 1 && in_w0(w, target) == 1;
        }
    } catch (...) {
        ok = false;
    }
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    report(7, "exactly one in_w0 fires per channel, 200 channels x 16 patterns", ok, s);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    if (failures == 0) {
        std::printf("all 7 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria failed\n", failures);
    return 1;
}
