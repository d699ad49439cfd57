#include "zec/code.hpp"

#include <algorithm>
#include <map>

namespace zec {

namespace {

// All words of the given length over an alphabet of the given size, in
// lexicographic order of index tuples.
std::vector<Word> all_words(std::size_t alphabet_size, std::size_t length) {
    std::vector<Word> out{Word{}};
    for (std::size_t i = 0; i < length; ++i) {
        std::vector<Word> next;
        next.reserve(out.size() * alphabet_size);
        for (const auto& w : out)
            for (std::size_t s = 0; s < alphabet_size; ++s) {
                Word e = w;
                e.push_back(s);
                next.push_back(std::move(e));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

Code::Code(std::size_t block_length, std::vector<std::pair<Word, Word>> pairs,
           const AlphabetPair& alphabets)
    : block_length_(block_length), pairs_(std::move(pairs)) {
    if (block_length_ == 0) throw CodeError("block length must be positive");
    if (pairs_.empty()) throw CodeError("code has no pairs");
    const std::size_t nx = alphabets.inputs().size();
    const std::size_t ny = alphabets.outputs().size();
    for (const auto& [x, y] : pairs_) {
        if (x.size() != block_length_ || y.size() != block_length_)
            throw CodeError("word length != block length");
        for (std::size_t s : x)
            if (s >= nx) throw CodeError("input symbol index out of range");
        for (std::size_t s : y)
            if (s >= ny) throw CodeError("output symbol index out of range");
    }
    std::sort(pairs_.begin(), pairs_.end());
    for (std::size_t i = 1; i < pairs_.size(); ++i)
        if (pairs_[i] == pairs_[i - 1]) throw CodeError("duplicate pair");
    // Condition 1: an output word determines the input word.
    std::map<Word, Word> claimed;
    for (const auto& [x, y] : pairs_) {
        auto [it, inserted] = claimed.insert({y, x});
        if (!inserted && it->second != x)
            throw CodeError("output word claimed by two distinct input words");
    }
    for (const auto& [x, y] : pairs_)
        if (messages_.empty() || messages_.back() != x) {
            if (std::find(messages_.begin(), messages_.end(), x) == messages_.end())
                messages_.push_back(x);
        }
    std::sort(messages_.begin(), messages_.end());
}

std::vector<std::size_t> code_word(const Code& code, const AlphabetPair& alphabets) {
    std::vector<std::size_t> v;
    v.reserve(2 * code.block_length() * code.pairs().size());
    for (const auto& [x, y] : code.pairs()) {
        for (std::size_t s : x) v.push_back(alphabets.sigma_input(s));
        for (std::size_t s : y) v.push_back(alphabets.sigma_output(s));
    }
    return v;
}

GammaIndex gamma(const Code& code, const AlphabetPair& alphabets) {
    const auto v = code_word(code, alphabets);
    const Int base(static_cast<unsigned long>(alphabets.numbering_base()));
    GammaIndex n = 0;
    Int weight = 1;
    for (std::size_t digit : v) {
        n += Int(static_cast<unsigned long>(digit)) * weight;
        weight *= base;
    }
    return n;
}

std::optional<Code> gamma_inverse(const GammaIndex& n, const AlphabetPair& alphabets) {
    if (n <= 0) return std::nullopt;
    const std::size_t nx = alphabets.inputs().size();
    const std::size_t base = alphabets.numbering_base();
    // Low-order-first digit expansion; a zero digit never occurs in a code
    // word since sigma ranges over {1,...,|X|+|Y|}.
    std::vector<std::size_t> digits;
    Int rest = n;
    const Int b(static_cast<unsigned long>(base));
    while (rest > 0) {
        Int q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rest.get_mpz_t(), b.get_mpz_t());
        std::size_t d = r.get_ui();
        if (d == 0) return std::nullopt;
        digits.push_back(d);
        rest = q;
    }
    const std::size_t total = digits.size();
    // The block structure X^N Y^N forces N to equal the position of the
    // first output symbol; verify rather than assume.
    std::size_t first_output = total;
    for (std::size_t j = 0; j < total; ++j)
        if (digits[j] > nx) {
            first_output = j;
            break;
        }
    if (first_output == total || first_output == 0) return std::nullopt;
    const std::size_t N = first_output;
    if (total % (2 * N) != 0) return std::nullopt;
    const std::size_t L = total / (2 * N);
    std::vector<std::pair<Word, Word>> pairs;
    pairs.reserve(L);
    for (std::size_t blk = 0; blk < L; ++blk) {
        Word x(N), y(N);
        for (std::size_t j = 0; j < N; ++j) {
            std::size_t d = digits[blk * 2 * N + j];
            if (d > nx) return std::nullopt;
            x[j] = d - 1;
        }
        for (std::size_t j = 0; j < N; ++j) {
            std::size_t d = digits[blk * 2 * N + N + j];
            if (d <= nx) return std::nullopt;
            y[j] = d - nx - 1;
        }
        pairs.emplace_back(std::move(x), std::move(y));
    }
    // Only canonical orderings are in the range of gamma.
    for (std::size_t i = 1; i < pairs.size(); ++i)
        if (!(pairs[i - 1] < pairs[i])) return std::nullopt;
    try {
        return Code(N, std::move(pairs), alphabets);
    } catch (const CodeError&) {
        return std::nullopt;
    }
}

std::size_t theta_n(const GammaIndex& n, const AlphabetPair& alphabets) {
    auto code = gamma_inverse(n, alphabets);
    return code ? code->block_length() : 0;
}

std::size_t theta_m(const GammaIndex& n, const AlphabetPair& alphabets) {
    auto code = gamma_inverse(n, alphabets);
    return code ? code->message_count() : 0;
}

std::set<std::pair<Word, Word>> anti_code(const Code& code, const AlphabetPair& alphabets) {
    std::set<std::pair<Word, Word>> in_code(code.pairs().begin(), code.pairs().end());
    std::set<std::pair<Word, Word>> result;
    const auto outputs = all_words(alphabets.outputs().size(), code.block_length());
    for (const auto& x : code.message_set())
        for (const auto& y : outputs)
            if (!in_code.count({x, y})) result.insert({x, y});
    return result;
}

bool is_zero_error(const Code& code, const ZeroPattern& pattern, const AlphabetPair& alphabets) {
    if (pattern.n_inputs() != alphabets.inputs().size() ||
        pattern.n_outputs() != alphabets.outputs().size())
        throw CodeError("pattern alphabets do not match");
    for (const auto& [x, y] : anti_code(code, alphabets)) {
        bool blocked = false;
        for (std::size_t j = 0; j < code.block_length(); ++j)
            if (pattern.contains(x[j], y[j])) {
                blocked = true;
                break;
            }
        if (!blocked) return false;
    }
    return true;
}

int delta(const GammaIndex& n, const ZeroPattern& pattern, const AlphabetPair& alphabets) {
    auto code = gamma_inverse(n, alphabets);
    if (!code) return 0;
    return is_zero_error(*code, pattern, alphabets) ? 1 : 0;
}

RateInfo rate_r0(const Code& code, const ZeroPattern& pattern, const AlphabetPair& alphabets) {
    RateInfo info;
    info.message_count = code.message_count();
    info.block_length = code.block_length();
    info.zero_error = is_zero_error(code, pattern, alphabets);
    return info;
}

}  // namespace zec
