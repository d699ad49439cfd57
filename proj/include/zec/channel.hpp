#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zec/rational.hpp"

namespace zec {

struct ChannelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonStochastic : ChannelError {
    using ChannelError::ChannelError;
};
struct NegativeEntry : ChannelError {
    using ChannelError::ChannelError;
};
struct AlphabetOverlap : ChannelError {
    using ChannelError::ChannelError;
};

// An ordered finite alphabet. Order is part of the value.
class Alphabet {
  public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    std::size_t size() const { return symbols_.size(); }
    const std::string& symbol(std::size_t i) const { return symbols_.at(i); }
    const std::vector<std::string>& symbols() const { return symbols_; }
    // 0-based index of a symbol; throws if absent.
    std::size_t index(const std::string& symbol) const;
    bool contains(const std::string& symbol) const;
    bool operator==(const Alphabet&) const = default;

  private:
    std::vector<std::string> symbols_;
};

// Input/output alphabets X, Y plus the joint position map sigma over X u Y:
// sigma(x_i) = i, sigma(y_i) = |X| + i (1-based).
class AlphabetPair {
  public:
    AlphabetPair() = default;
    AlphabetPair(Alphabet inputs, Alphabet outputs);

    const Alphabet& inputs() const { return inputs_; }
    const Alphabet& outputs() const { return outputs_; }
    std::size_t sigma_input(std::size_t x_index) const { return x_index + 1; }
    std::size_t sigma_output(std::size_t y_index) const { return inputs_.size() + y_index + 1; }
    // Base of the positional code numbering: |X| + |Y| + 1.
    std::size_t numbering_base() const { return inputs_.size() + outputs_.size() + 1; }
    bool operator==(const AlphabetPair&) const = default;

  private:
    Alphabet inputs_;
    Alphabet outputs_;
};

// The set of exactly-zero transitions; determines the confusability graph
// and hence the zero-error capacity class of a channel.
class ZeroPattern {
  public:
    ZeroPattern() = default;
    ZeroPattern(std::set<std::pair<std::size_t, std::size_t>> omega, std::size_t n_inputs,
                std::size_t n_outputs);

    bool contains(std::size_t x, std::size_t y) const { return omega_.count({x, y}) > 0; }
    const std::set<std::pair<std::size_t, std::size_t>>& omega() const { return omega_; }
    std::size_t n_inputs() const { return n_inputs_; }
    std::size_t n_outputs() const { return n_outputs_; }
    bool operator==(const ZeroPattern&) const = default;
    bool operator<(const ZeroPattern& other) const { return omega_ < other.omega_; }

  private:
    std::set<std::pair<std::size_t, std::size_t>> omega_;
    std::size_t n_inputs_ = 0;
    std::size_t n_outputs_ = 0;
};

// A discrete memoryless channel with exact rational transition probabilities.
// Construction validates nonnegativity and exact row sums.
class Channel {
  public:
    Channel() = default;

    const AlphabetPair& alphabets() const { return alphabets_; }
    // W(y|x), row-stochastic in y.
    const Rational& entry(std::size_t x, std::size_t y) const { return entries_[x][y]; }
    const std::vector<std::vector<Rational>>& entries() const { return entries_; }
    // Output-major stacking: (W(y1|x1),...,W(y1|x_|X|), W(y2|x1),...).
    std::vector<Rational> flat() const;

    friend Channel validate_channel(std::vector<std::vector<Rational>> entries,
                                    AlphabetPair alphabets);

  private:
    AlphabetPair alphabets_;
    std::vector<std::vector<Rational>> entries_;
};

Channel validate_channel(std::vector<std::vector<Rational>> entries, AlphabetPair alphabets);

ZeroPattern zero_pattern(const Channel& channel);

// Indicator of membership in W0(omega): 1 iff the channel's zeros are exactly
// the pattern.
int in_w0(const Channel& channel, const ZeroPattern& pattern);

class Code;  // code.hpp

struct EmptyMessageSet : ChannelError {
    using ChannelError::ChannelError;
};

// Minimum over messages of the probability of successful transmission.
Rational s_min(const Channel& channel, const Code& code);

// Convenience constructors used throughout the tests and the CLI.
Channel noiseless_channel(std::size_t arity);                 // X={x1..}, Y={y1..}, identity
Channel binary_symmetric_channel(const Rational& flip_prob);  // X={a,b}, Y={c,d}
Channel pentagon_channel();                                   // typewriter channel, G(W) = C5

}  // namespace zec
