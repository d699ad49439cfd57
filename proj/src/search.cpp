#include "zec/search.hpp"

namespace zec {

std::variant<SearchResult, Exhausted> search_minimal_gamma(const ZeroPattern& pattern,
                                                           const AlphabetPair& alphabets,
                                                           const InstabilityExponent& exponent,
                                                           unsigned long budget) {
    if (budget == 0) throw SearchError("budget must be positive");
    for (unsigned long n = 1; n <= budget; ++n) {
        GammaIndex index(n);
        if (delta(index, pattern, alphabets) != 1) continue;
        Code code = *gamma_inverse(index, alphabets);
        const unsigned N = static_cast<unsigned>(code.block_length());
        Rational m(static_cast<unsigned long>(code.message_count()));
        if (m > pow(exponent.hi, N)) {
            SearchResult result;
            result.code = std::move(code);
            result.gamma_index = index;
            result.n_examined = n;
            result.mode = SearchMode::FaithfulGamma;
            return result;
        }
    }
    return Exhausted{budget};
}

namespace {

Word word_from_index(std::size_t index, std::size_t base, std::size_t length) {
    Word w(length, 0);
    for (std::size_t t = length; t-- > 0;) {
        w[t] = index % base;
        index /= base;
    }
    return w;
}

// All output words producible from x with positive probability for any
// channel in the pattern class.
void reachable_outputs(const Word& x, const ZeroPattern& pattern, Word& prefix,
                       std::vector<Word>& out) {
    const std::size_t t = prefix.size();
    if (t == x.size()) {
        out.push_back(prefix);
        return;
    }
    for (std::size_t y = 0; y < pattern.n_outputs(); ++y) {
        if (pattern.contains(x[t], y)) continue;
        prefix.push_back(y);
        reachable_outputs(x, pattern, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::variant<SearchResult, NotFound> construct_code(const ZeroPattern& pattern,
                                                    const AlphabetPair& alphabets,
                                                    const InstabilityExponent& exponent,
                                                    unsigned max_block,
                                                    const CapacityOptions& options) {
    if (max_block < 1) throw SearchError("max_block must be >= 1");
    const Graph g = confusability_graph(pattern, alphabets);
    const std::size_t nx = alphabets.inputs().size();
    Graph power = g;
    for (unsigned N = 1; N <= max_block; ++N) {
        if (N > 1) power = strong_product(power, g);
        auto mis = independence_number(power, options.vertex_limit);
        if (Rational(static_cast<unsigned long>(mis.size)) <= pow(exponent.hi, N)) continue;

        std::vector<std::pair<Word, Word>> pairs;
        for (std::size_t v : mis.witness) {
            Word x = word_from_index(v, nx, N);
            std::vector<Word> outputs;
            Word prefix;
            reachable_outputs(x, pattern, prefix, outputs);
            for (auto& y : outputs) pairs.push_back({x, std::move(y)});
        }
        SearchResult result;
        result.code = Code(N, std::move(pairs), alphabets);
        result.n_examined = N;
        result.mode = SearchMode::IndependentSet;
        return result;
    }
    return NotFound{max_block};
}

CodeCertificate verify_code(const Code& code, const ZeroPattern& pattern,
                            const AlphabetPair& alphabets, const InstabilityExponent& exponent) {
    CodeCertificate cert;
    cert.message_count = code.message_count();
    cert.block_length = code.block_length();
    cert.base_hi = exponent.hi;
    cert.zero_error = is_zero_error(code, pattern, alphabets);
    const unsigned N = static_cast<unsigned>(code.block_length());
    cert.lhs = Int(static_cast<unsigned long>(code.message_count())) *
               pow(Int(exponent.hi.get_den()), N);
    cert.rhs = pow(Int(exponent.hi.get_num()), N);
    cert.rate_ok = cert.lhs > cert.rhs;
    return cert;
}

}  // namespace zec
