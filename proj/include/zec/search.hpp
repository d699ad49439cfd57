#pragma once

#include <optional>
#include <string>
#include <variant>

#include "zec/code.hpp"
#include "zec/decide.hpp"
#include "zec/graph.hpp"

namespace zec {

struct SearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SearchMode { FaithfulGamma, IndependentSet };

struct SearchResult {
    Code code;
    GammaIndex gamma_index = 0;  // 0 in independent-set mode
    unsigned long n_examined = 0;
    SearchMode mode = SearchMode::FaithfulGamma;
};

struct Exhausted {
    unsigned long n_examined = 0;
};
struct NotFound {
    unsigned max_block = 0;
};

// Least n with Delta(n | pattern) = 1 and M > hi^N, scanning indices from 1.
// The hi endpoint keeps results certified under enclosure uncertainty.
std::variant<SearchResult, Exhausted> search_minimal_gamma(const ZeroPattern& pattern,
                                                           const AlphabetPair& alphabets,
                                                           const InstabilityExponent& exponent,
                                                           unsigned long budget);

// For N = 1..max_block: maximum independent set S of G^(boxtimes N); when
// |S| > hi^N, pairs every codeword with its full reachable output set.
// Independence makes the reachable sets disjoint, so condition 1 holds.
std::variant<SearchResult, NotFound> construct_code(const ZeroPattern& pattern,
                                                    const AlphabetPair& alphabets,
                                                    const InstabilityExponent& exponent,
                                                    unsigned max_block,
                                                    const CapacityOptions& options = {});

struct CodeCertificate {
    bool zero_error = false;
    bool rate_ok = false;
    std::size_t message_count = 0;
    std::size_t block_length = 0;
    Rational base_hi;
    Int lhs = 0;  // M * den(hi)^N
    Int rhs = 0;  // num(hi)^N
    bool valid() const { return zero_error && rate_ok; }
};

// Re-checks zero-error via the anti-code and the rate via exact
// cross-multiplication M > hi^N.
CodeCertificate verify_code(const Code& code, const ZeroPattern& pattern,
                            const AlphabetPair& alphabets, const InstabilityExponent& exponent);

}  // namespace zec
