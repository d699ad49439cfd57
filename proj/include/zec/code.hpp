#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "zec/channel.hpp"
#include "zec/rational.hpp"

namespace zec {

// A word over an alphabet, stored as 0-based symbol indices.
using Word = std::vector<std::size_t>;

struct CodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An (N,M)-block code: a set of (input word, output word) pairs where no
// output word is claimed by two distinct input words. Pairs are kept in
// canonical lexicographic order (input word, then output word) so the
// numbering below is a function of the code value.
class Code {
  public:
    Code() = default;
    // Validates word lengths, condition 1 and M >= 1; sorts canonically.
    Code(std::size_t block_length, std::vector<std::pair<Word, Word>> pairs,
         const AlphabetPair& alphabets);

    std::size_t block_length() const { return block_length_; }  // N
    const std::vector<std::pair<Word, Word>>& pairs() const { return pairs_; }
    const std::vector<Word>& message_set() const { return messages_; }  // M(c)
    std::size_t message_count() const { return messages_.size(); }      // M

    bool operator==(const Code&) const = default;

  private:
    std::size_t block_length_ = 0;
    std::vector<std::pair<Word, Word>> pairs_;
    std::vector<Word> messages_;
};

using GammaIndex = Int;

// v(c): concatenation x1 y1 x2 y2 ... in canonical pair order, as sigma
// positions (1-based values in {1,...,|X|+|Y|}).
std::vector<std::size_t> code_word(const Code& code, const AlphabetPair& alphabets);

// Gamma(c) = sum_j sigma(v_j) * base^(j-1), base = |X|+|Y|+1.
GammaIndex gamma(const Code& code, const AlphabetPair& alphabets);

// Inverse numbering. Returns nullopt ("not a code") when the expansion has a
// zero digit, does not split into equal-length X^N Y^N blocks, violates
// condition 1, or is not in canonical pair order.
std::optional<Code> gamma_inverse(const GammaIndex& n, const AlphabetPair& alphabets);

// N and M of the decoded code, 0 when n does not number a code.
std::size_t theta_n(const GammaIndex& n, const AlphabetPair& alphabets);
std::size_t theta_m(const GammaIndex& n, const AlphabetPair& alphabets);

// (M(c) x Y^N) \ c: the pairs that would be mis-decoded.
std::set<std::pair<Word, Word>> anti_code(const Code& code, const AlphabetPair& alphabets);

// True iff every anti-code pair has some coordinate inside the zero pattern.
bool is_zero_error(const Code& code, const ZeroPattern& pattern, const AlphabetPair& alphabets);

// 1 iff n numbers a code that is zero-error for the pattern.
int delta(const GammaIndex& n, const ZeroPattern& pattern, const AlphabetPair& alphabets);

struct RateInfo {
    std::size_t message_count = 0;  // M
    std::size_t block_length = 0;   // N
    bool zero_error = false;        // rate counts as 0 when false
};

// R0 material: (M, N) plus the zero-error flag. Rate comparisons happen in
// the exponentiated domain (M vs base^N), never through logarithms.
RateInfo rate_r0(const Code& code, const ZeroPattern& pattern, const AlphabetPair& alphabets);

}  // namespace zec
