#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zec/capacity.hpp"
#include "zec/channel.hpp"
#include "zec/rational.hpp"

namespace zec {

struct DecideError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionExhausted : DecideError {
    using DecideError::DecideError;
};

// A linear plant s_{t+1} = A s_t + z_t with exact rational A. Certified
// eigenvalue-modulus intervals may be supplied to bypass the root enclosure.
struct Plant {
    std::vector<std::vector<Rational>> matrix;
    std::optional<std::vector<std::pair<Rational, Rational>>> eigen_moduli;

    std::size_t dimension() const { return matrix.size(); }
    void validate() const;
};

// Certified interval for 2^eta(A), the product of eigenvalue moduli >= 1.
// boundary_flag marks a modulus that equals or cannot be separated from 1.
struct InstabilityExponent {
    Rational lo;
    Rational hi;
    bool boundary_flag = false;

    bool exact() const { return lo == hi; }
};

// Interval enclosure of the unstable eigenvalue-modulus product, refined
// until hi/lo <= 1 + 2^-precision (or exact when algebra permits).
InstabilityExponent instability_exponent(const Plant& plant, unsigned precision = 30);

enum class Outcome { Solvable, Unsolvable, Boundary, UndeterminedBounds };

std::string outcome_name(Outcome outcome);

// Self-contained re-checkable witness. For SOLVABLE the inequality is
// alpha > hi^n, cross-multiplied to integers lhs > rhs; for UNSOLVABLE it is
// clique_cover < lo, likewise cross-multiplied.
struct Certificate {
    Outcome outcome = Outcome::UndeterminedBounds;
    Int alpha = 0;                // SOLVABLE witness alpha(G^(boxtimes n))
    unsigned n = 0;               // SOLVABLE power
    Int clique_cover = 0;         // UNSOLVABLE witness
    Rational base_lo;             // exponent interval at decision time
    Rational base_hi;
    std::optional<ExactValue> capacity;  // exact 2^C0 when known
    Int lhs = 0;                  // cross-multiplied integer comparison
    Int rhs = 0;
    std::string note;             // UNDETERMINED gap report
};

struct Verdict {
    Outcome outcome = Outcome::UndeterminedBounds;
    Certificate certificate;
    CapacityBound bounds;
    InstabilityExponent exponent;
};

// Recomputes the certificate's integer comparison from its own fields.
bool verify_certificate(const Certificate& certificate);

Verdict decide_solvability(const Plant& plant, const Channel& channel, unsigned depth,
                           const KnownValuesRegistry& registry = KnownValuesRegistry::builtin(),
                           unsigned precision = 30);

// 1/0 when the verdict determines membership in S(A) resp. U(A); nullopt
// when the bounds do not separate.
std::optional<int> indicator_s(const Plant& plant, const Channel& channel, unsigned depth);
std::optional<int> indicator_u(const Plant& plant, const Channel& channel, unsigned depth);

}  // namespace zec
