#include "zec/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <type_traits>

namespace zec {

void SimConfig::validate() const {
    plant.validate();
    const std::size_t n = plant.dimension();
    if (initial_box.dimension() != n) throw ConfigInvalid("initial box dimension mismatch");
    for (const auto& [lo, hi] : initial_box.bounds)
        if (lo > hi) throw ConfigInvalid("initial box has lo > hi");
    if (noise_bound <= 0) throw ConfigInvalid("noise bound must be positive");
    if (code.block_length() < 1 || code.message_count() < 1)
        throw ConfigInvalid("code is empty");
    if (horizon < code.block_length()) throw ConfigInvalid("horizon shorter than one block");
    if (trials < 1) throw ConfigInvalid("at least one trial required");
    if (noise_bits < 1 || noise_bits > 62) throw ConfigInvalid("noise_bits out of range");
    if (!is_zero_error(code, zero_pattern(channel), channel.alphabets()))
        throw ConfigInvalid("code is not zero-error for the channel's pattern");
}

namespace {

// Floating point with a wide explicit binary exponent; survives the
// geometric blowup of diverging trajectories at long horizons.
struct ScaledReal {
    double m = 0;  // 0, or magnitude in [1/2, 1)
    long e = 0;    // value = m * 2^e

    void normalize() {
        if (m == 0) {
            e = 0;
            return;
        }
        int k;
        m = std::frexp(m, &k);
        e += k;
    }
};

ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
    ScaledReal r{a.m * b.m, a.e + b.e};
    r.normalize();
    return r;
}

ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) {
    if (a.m == 0) return b;
    if (b.m == 0) return a;
    const ScaledReal& big = a.e >= b.e ? a : b;
    const ScaledReal& small = a.e >= b.e ? b : a;
    long diff = big.e - small.e;
    if (diff > 80) return big;
    ScaledReal r{big.m + std::ldexp(small.m, static_cast<int>(-diff)), big.e};
    r.normalize();
    return r;
}

ScaledReal operator-(const ScaledReal& a, const ScaledReal& b) {
    return a + ScaledReal{-b.m, b.e};
}

bool sr_less(const ScaledReal& a, const ScaledReal& b) {
    ScaledReal d = b - a;
    return d.m > 0;
}

double sr_log2_abs(const ScaledReal& a) {
    if (a.m == 0) return -std::numeric_limits<double>::infinity();
    return std::log2(std::fabs(a.m)) + static_cast<double>(a.e);
}

double sr_to_double(const ScaledReal& a) { return std::ldexp(a.m, static_cast<int>(a.e)); }

// Scalar operations shared by the exact and the scaled engines.
template <typename S>
struct Ops;

template <>
struct Ops<Rational> {
    static Rational from_rational(const Rational& r) { return r; }
    static Rational zero() { return Rational(0); }
    static bool less(const Rational& a, const Rational& b) { return a < b; }
    static double log2_abs(const Rational& v) {
        if (v == 0) return -std::numeric_limits<double>::infinity();
        return log2_approx(abs(v));
    }
    static double to_double(const Rational& v) { return v.get_d(); }
    static long floor_index(const Rational& offset, const Rational& width, unsigned cells) {
        // floor(offset * cells / width)
        Rational q = offset * Rational(static_cast<unsigned long>(cells)) / width;
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
        if (fl < 0) return -1;
        if (fl >= static_cast<unsigned long>(cells)) return cells;
        return fl.get_si();
    }
};

template <>
struct Ops<ScaledReal> {
    static ScaledReal from_rational(const Rational& r) {
        long ne, de;
        double nm = mpz_get_d_2exp(&ne, r.get_num().get_mpz_t());
        double dm = mpz_get_d_2exp(&de, r.get_den().get_mpz_t());
        if (nm == 0) return ScaledReal{};
        ScaledReal out{nm / dm, ne - de};
        out.normalize();
        return out;
    }
    static ScaledReal zero() { return ScaledReal{}; }
    static bool less(const ScaledReal& a, const ScaledReal& b) { return sr_less(a, b); }
    static double log2_abs(const ScaledReal& v) { return sr_log2_abs(v); }
    static double to_double(const ScaledReal& v) { return sr_to_double(v); }
    static long floor_index(const ScaledReal& offset, const ScaledReal& width, unsigned cells) {
        // Form the ratio in scaled space; converting the operands to plain
        // doubles first would overflow once the box passes 2^1024.
        if (offset.m < 0) return -1;
        if (offset.m == 0) return 0;
        long de = offset.e - width.e;
        if (de > 40) return cells;
        if (de < -40) return 0;
        double q = std::ldexp(offset.m / width.m, static_cast<int>(de)) * cells;
        if (!(q >= 0)) return -1;
        if (q >= cells) return cells;
        return static_cast<long>(std::floor(q));
    }
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

unsigned smallest_prime_factor(unsigned v) {
    for (unsigned p = 2; p * p <= v; ++p)
        if (v % p == 0) return p;
    return v;
}

struct SlopeFit {
    double n = 0, sx = 0, sy = 0, sxy = 0, sxx = 0;

    void add(double x, double y) {
        if (!std::isfinite(y)) return;
        n += 1;
        sx += x;
        sy += y;
        sxy += x * y;
        sxx += x * x;
    }
    double slope() const {
        double denom = n * sxx - sx * sx;
        if (n < 2 || denom == 0) return 0;
        return (n * sxy - sx * sy) / denom;
    }
};

template <typename S>
Trace simulate(const SimConfig& config, unsigned trial_index) {
    using O = Ops<S>;
    const std::size_t n = config.plant.dimension();
    const std::size_t N = config.code.block_length();
    const std::size_t M = config.code.message_count();
    const std::size_t ny = config.channel.alphabets().outputs().size();
    const unsigned long T = config.horizon;

    std::vector<std::vector<S>> A(n, std::vector<S>(n, O::zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = O::from_rational(config.plant.matrix[i][j]);
    const S d = O::from_rational(config.noise_bound);

    std::map<Word, std::size_t> decode_map;
    for (const auto& [x, y] : config.code.pairs()) {
        auto it = std::lower_bound(config.code.message_set().begin(),
                                   config.code.message_set().end(), x);
        decode_map[y] = static_cast<std::size_t>(it - config.code.message_set().begin());
    }

    std::mt19937_64 rng(splitmix64(config.seed ^ (0x9e3779b97f4a7c15ULL * (trial_index + 1))));
    const std::uint64_t denom_bits = config.noise_bits;
    const std::uint64_t denom = 1ULL << denom_bits;
    auto draw_unit = [&]() -> Rational {  // dyadic uniform in [0, 1)
        std::uint64_t k = rng() & (denom - 1);
        return Rational(Int(k), Int(denom));
    };
    auto draw_noise = [&]() -> S {  // dyadic uniform on a symmetric grid in (-d, d)
        std::uint64_t k = rng() & (denom - 1);
        Rational u(Int(2 * k + 1) - Int(denom), Int(denom));
        return O::from_rational(config.noise_bound * u);
    };

    // Cumulative channel rows, exact; the scaled engine converts per draw.
    std::vector<std::vector<Rational>> cumulative;
    for (std::size_t x = 0; x < config.channel.alphabets().inputs().size(); ++x) {
        std::vector<Rational> row;
        Rational acc(0);
        for (std::size_t y = 0; y < ny; ++y) {
            acc += config.channel.entry(x, y);
            row.push_back(acc);
        }
        cumulative.push_back(std::move(row));
    }
    auto sample_output = [&](std::size_t x) -> std::size_t {
        Rational u = draw_unit();
        for (std::size_t y = 0; y + 1 < ny; ++y)
            if (u < cumulative[x][y]) return y;
        return ny - 1;
    };

    // The absolute state grows like A^t while the estimation error stays
    // small, which no fixed-precision representation survives. Everything
    // evolves in relative coordinates instead: box centers propagate
    // linearly, so the error e = s - center(B), the pending-cell offset
    // g = center(C) - center(B) and the box widths are closed under the
    // dynamics and stay within the interesting magnitude range.
    std::vector<S> e(n), g(n, O::zero()), wB(n), wC(n);
    std::vector<double> abs_state(n);  // display only, may overflow
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [blo, bhi] = config.initial_box.bounds[i];
        Rational u = draw_unit();
        wB[i] = O::from_rational(bhi - blo);
        e[i] = O::from_rational((bhi - blo) * (u - Rational(1, 2)));
        abs_state[i] = Ops<Rational>::to_double(blo + (bhi - blo) * u);
    }
    std::vector<std::vector<double>> A_d(n, std::vector<double>(n));
    std::vector<std::vector<S>> A_abs(n, std::vector<S>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            A_d[i][j] = Ops<Rational>::to_double(config.plant.matrix[i][j]);
            A_abs[i][j] = O::from_rational(abs(config.plant.matrix[i][j]));
        }

    auto from_uint = [](unsigned v) {
        return O::from_rational(Rational(static_cast<unsigned long>(v)));
    };
    auto mat_vec = [&](const std::vector<std::vector<S>>& m, const std::vector<S>& v) {
        std::vector<S> out(n, O::zero());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i] = out[i] + m[i][j] * v[j];
        return out;
    };
    // Width recursion of A * box (+-) d.
    auto width_step = [&](std::vector<S>& w) {
        std::vector<S> out = mat_vec(A_abs, w);
        for (std::size_t i = 0; i < n; ++i) out[i] = out[i] + d + d;
        w = std::move(out);
    };

    // Split M across coordinates, largest current extent first.
    auto cell_counts = [&]() {
        std::vector<unsigned> counts(n, 1);
        unsigned rem = static_cast<unsigned>(M);
        while (rem > 1) {
            unsigned p = smallest_prime_factor(rem);
            std::size_t pick = 0;
            for (std::size_t i = 1; i < n; ++i) {
                // Compare extents w_i / c_i without division.
                S lhs = wB[i] * from_uint(counts[pick]);
                S rhs = wB[pick] * from_uint(counts[i]);
                if (O::less(rhs, lhs)) pick = i;
            }
            counts[pick] *= p;
            rem /= p;
        }
        return counts;
    };

    Trace trace;
    trace.summary.horizon = T;
    trace.summary.seed = config.seed;
    trace.summary.trial = trial_index;
    if (config.record_steps) trace.records.reserve(T);

    double sup_log2 = -std::numeric_limits<double>::infinity();
    double sup_err = 0;
    SlopeFit fit;

    std::size_t sent_message = 0;
    Word received(N, 0);
    const Word* codeword = nullptr;

    for (unsigned long t = 0; t < T; ++t) {
        const std::size_t phase = t % N;
        if (phase == 0) {
            // Encoder: quantize the block-start state within the shared box.
            // Everything is measured from the box center, so the cell offset
            // g and the cell widths wC follow directly from the index.
            std::vector<unsigned> counts = cell_counts();
            std::size_t message = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if constexpr (std::is_same_v<S, Rational>) {
                    // The block-start state must sit inside the shared box.
                    if (abs(e[i]) * 2 > wB[i])
                        throw SimError("box containment broken at t=" + std::to_string(t));
                }
                unsigned c = counts[i];
                message *= c;
                if (c == 1) {
                    g[i] = O::zero();
                    wC[i] = wB[i];
                    continue;
                }
                S half = wB[i] * O::from_rational(Rational(1, 2));
                long idx = O::floor_index(e[i] + half, wB[i], c);
                idx = std::clamp(idx, 0L, static_cast<long>(c) - 1);
                message += static_cast<std::size_t>(idx);
                // Cell center offset: ((2 idx + 1) / (2c) - 1/2) * w.
                g[i] = wB[i] * O::from_rational(Rational(2 * idx + 1 - static_cast<long>(c),
                                                         2UL * c));
                wC[i] = wB[i] * O::from_rational(Rational(1, static_cast<unsigned long>(c)));
            }
            sent_message = message;
            codeword = &config.code.message_set()[message];
        }

        // Record |e_t| = |s_t - est_t| before transitioning.
        S err = O::zero();
        for (std::size_t i = 0; i < n; ++i) {
            S a = e[i];
            if (O::less(a, O::zero())) a = O::zero() - a;
            if (O::less(err, a)) err = a;
        }
        double log2err = O::log2_abs(err);
        if (log2err > sup_log2) sup_log2 = log2err;
        sup_err = std::max(sup_err, O::to_double(err));
        if (t >= T / 2) fit.add(static_cast<double>(t) - static_cast<double>(T) / 2, log2err);

        std::size_t x = (*codeword)[phase];
        std::size_t y = sample_output(x);
        received[phase] = y;

        if (config.record_steps) {
            StepRecord rec;
            rec.t = t;
            rec.error = O::to_double(err);
            rec.log2_error = log2err;
            rec.x = x;
            rec.y = y;
            for (std::size_t i = 0; i < n; ++i) {
                rec.state.push_back(abs_state[i]);
                rec.estimate.push_back(abs_state[i] - O::to_double(e[i]));
            }
            trace.records.push_back(std::move(rec));
        }

        // Transition: the error picks up the fresh noise, the cell offset
        // and widths follow the box recursion, the absolute state is kept in
        // plain doubles for display only.
        std::vector<S> e_next = mat_vec(A, e);
        std::vector<double> s_next(n, 0.0);
        if (config.record_steps)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) s_next[i] += A_d[i][j] * abs_state[j];
        for (std::size_t i = 0; i < n; ++i) {
            S z = draw_noise();
            e_next[i] = e_next[i] + z;
            s_next[i] += O::to_double(z);
        }
        abs_state = std::move(s_next);
        e = std::move(e_next);
        g = mat_vec(A, g);
        width_step(wB);
        width_step(wC);

        if (phase == N - 1) {
            // Decoder: the received block resolves the block-start state's
            // cell; zero-error transport must reproduce the sent message.
            auto it = decode_map.find(received);
            if (it == decode_map.end() || it->second != sent_message)
                throw DecodingAmbiguity("decoded message differs from the sent message");
            // Both ends adopt the propagated cell: the box center moves by g.
            for (std::size_t i = 0; i < n; ++i) e[i] = e[i] - g[i];
            wB = wC;
            std::fill(g.begin(), g.end(), O::zero());
        }
    }

    trace.summary.sup_error = sup_err;
    trace.summary.sup_log2_error = sup_log2;
    trace.summary.slope = fit.slope();
    trace.summary.diverging = trace.summary.slope > kSlopeThreshold;
    return trace;
}

}  // namespace

Trace run_simulation(const SimConfig& config, unsigned trial_index) {
    config.validate();
    if (config.exact) return simulate<Rational>(config, trial_index);
    return simulate<ScaledReal>(config, trial_index);
}

std::vector<Trace> run_trials(const SimConfig& config) {
    config.validate();
    std::vector<Trace> traces(config.trials);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(config.trials); ++i)
        traces[static_cast<std::size_t>(i)] =
            run_simulation(config, static_cast<unsigned>(i));
    return traces;
}

BoundednessReport boundedness_report(const std::vector<Trace>& traces, const Rational& threshold) {
    if (traces.empty()) throw SimError("no traces to report on");
    BoundednessReport report;
    const double thr = threshold.get_d();
    const double log2_thr = threshold > 0 ? log2_approx(threshold)
                                          : -std::numeric_limits<double>::infinity();
    for (const auto& t : traces) {
        BoundednessReport::PerTrial p;
        p.trial = t.summary.trial;
        p.sup_error = t.summary.sup_error;
        p.slope = t.summary.slope;
        // The log2 comparison stays meaningful when sup_error overflows.
        p.below_threshold = t.summary.sup_log2_error < log2_thr ||
                            (std::isfinite(t.summary.sup_error) && t.summary.sup_error < thr);
        p.diverging = t.summary.diverging;
        if (p.below_threshold) ++report.bounded_consistent;
        if (p.diverging) ++report.diverging;
        report.trials.push_back(p);
    }
    report.fraction_below =
        static_cast<double>(report.bounded_consistent) / static_cast<double>(traces.size());
    return report;
}

}  // namespace zec
