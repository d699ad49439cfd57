#pragma once

#include <cstdint>
#include <vector>

#include "zec/code.hpp"
#include "zec/decide.hpp"

namespace zec {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigInvalid : SimError {
    using SimError::SimError;
};
// Raised only when the code turns out not to be zero-error for the sampled
// channel, i.e. certification failed upstream.
struct DecodingAmbiguity : SimError {
    using SimError::SimError;
};

// Axis-aligned rational box.
struct Box {
    std::vector<std::pair<Rational, Rational>> bounds;  // per-coordinate [lo, hi]

    std::size_t dimension() const { return bounds.size(); }
};

struct SimConfig {
    Plant plant;
    Channel channel;
    Code code;
    Rational noise_bound;  // noise uniform on [-d, d]^n, dyadic samples
    Box initial_box;
    unsigned long horizon = 0;
    std::uint64_t seed = 0;
    unsigned trials = 1;
    unsigned noise_bits = 16;  // dyadic resolution of noise and channel draws
    // Exact rational state evolution; the alternative is scaled floating
    // point (double mantissa, wide binary exponent), which survives the
    // geometric blowup of diverging runs at long horizons.
    bool exact = true;
    bool record_steps = true;

    void validate() const;
};

struct StepRecord {
    unsigned long t = 0;
    std::vector<double> state;
    std::vector<double> estimate;
    double error = 0;       // sup norm, +inf when it overflows a double
    double log2_error = 0;  // finite even when error overflows
    std::size_t x = 0;      // channel input symbol index sent at t
    std::size_t y = 0;      // channel output symbol index received at t
};

struct TraceSummary {
    double sup_error = 0;
    double sup_log2_error = 0;
    double slope = 0;  // least-squares slope of log2-error over the last half
    bool diverging = false;
    unsigned long horizon = 0;
    std::uint64_t seed = 0;
    unsigned trial = 0;
};

struct Trace {
    std::vector<StepRecord> records;  // empty when record_steps is off
    TraceSummary summary;
};

// One closed-loop trial, deterministic in (seed, trial_index).
Trace run_simulation(const SimConfig& config, unsigned trial_index = 0);

// All configured trials; OpenMP across trials, aggregation ordered by index.
std::vector<Trace> run_trials(const SimConfig& config);

struct BoundednessReport {
    struct PerTrial {
        unsigned trial = 0;
        double sup_error = 0;
        double slope = 0;
        bool below_threshold = false;
        bool diverging = false;
    };
    std::vector<PerTrial> trials;
    double fraction_below = 0;
    unsigned bounded_consistent = 0;
    unsigned diverging = 0;
};

BoundednessReport boundedness_report(const std::vector<Trace>& traces, const Rational& threshold);

// Positive log2-error slopes beyond this classify as diverging.
inline constexpr double kSlopeThreshold = 1e-3;

}  // namespace zec
