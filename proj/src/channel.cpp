#include "zec/channel.hpp"

#include <algorithm>
#include <unordered_set>

#include "zec/code.hpp"

namespace zec {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    std::unordered_set<std::string> seen;
    for (const auto& s : symbols_)
        if (!seen.insert(s).second) throw ChannelError("duplicate symbol: " + s);
}

std::size_t Alphabet::index(const std::string& symbol) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), symbol);
    if (it == symbols_.end()) throw ChannelError("unknown symbol: " + symbol);
    return static_cast<std::size_t>(it - symbols_.begin());
}

bool Alphabet::contains(const std::string& symbol) const {
    return std::find(symbols_.begin(), symbols_.end(), symbol) != symbols_.end();
}

AlphabetPair::AlphabetPair(Alphabet inputs, Alphabet outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
    for (const auto& s : outputs_.symbols())
        if (inputs_.contains(s)) throw AlphabetOverlap("symbol in both alphabets: " + s);
}

ZeroPattern::ZeroPattern(std::set<std::pair<std::size_t, std::size_t>> omega,
                         std::size_t n_inputs, std::size_t n_outputs)
    : omega_(std::move(omega)), n_inputs_(n_inputs), n_outputs_(n_outputs) {
    for (const auto& [x, y] : omega_)
        if (x >= n_inputs_ || y >= n_outputs_)
            throw ChannelError("zero pattern entry outside X x Y");
}

Channel validate_channel(std::vector<std::vector<Rational>> entries, AlphabetPair alphabets) {
    const std::size_t nx = alphabets.inputs().size();
    const std::size_t ny = alphabets.outputs().size();
    if (entries.size() != nx) throw ChannelError("row count != |X|");
    for (std::size_t x = 0; x < nx; ++x) {
        if (entries[x].size() != ny) throw ChannelError("column count != |Y|");
        Rational row_sum = 0;
        for (const auto& p : entries[x]) {
            if (p < 0) throw NegativeEntry("negative probability in row " + std::to_string(x));
            row_sum += p;
        }
        if (row_sum != 1) throw NonStochastic("row " + std::to_string(x) + " sums to " +
                                              to_string(row_sum));
    }
    Channel c;
    c.alphabets_ = std::move(alphabets);
    c.entries_ = std::move(entries);
    return c;
}

std::vector<Rational> Channel::flat() const {
    std::vector<Rational> w;
    const std::size_t nx = alphabets_.inputs().size();
    const std::size_t ny = alphabets_.outputs().size();
    w.reserve(nx * ny);
    for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t x = 0; x < nx; ++x) w.push_back(entries_[x][y]);
    return w;
}

ZeroPattern zero_pattern(const Channel& channel) {
    std::set<std::pair<std::size_t, std::size_t>> omega;
    const std::size_t nx = channel.alphabets().inputs().size();
    const std::size_t ny = channel.alphabets().outputs().size();
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < ny; ++y)
            if (channel.entry(x, y) == 0) omega.insert({x, y});
    return ZeroPattern(std::move(omega), nx, ny);
}

int in_w0(const Channel& channel, const ZeroPattern& pattern) {
    if (pattern.n_inputs() != channel.alphabets().inputs().size() ||
        pattern.n_outputs() != channel.alphabets().outputs().size())
        throw ChannelError("pattern alphabets do not match channel");
    return zero_pattern(channel) == pattern ? 1 : 0;
}

Rational s_min(const Channel& channel, const Code& code) {
    if (code.message_count() == 0) throw EmptyMessageSet("code has no messages");
    std::optional<Rational> minimum;
    for (const auto& message : code.message_set()) {
        Rational success = 0;
        for (const auto& [x, y] : code.pairs()) {
            if (x != message) continue;
            Rational p = 1;
            for (std::size_t j = 0; j < code.block_length(); ++j) p *= channel.entry(x[j], y[j]);
            success += p;
        }
        if (!minimum || success < *minimum) minimum = success;
    }
    return *minimum;
}

Channel noiseless_channel(std::size_t arity) {
    std::vector<std::string> in, out;
    for (std::size_t i = 0; i < arity; ++i) {
        in.push_back("x" + std::to_string(i + 1));
        out.push_back("y" + std::to_string(i + 1));
    }
    std::vector<std::vector<Rational>> rows(arity, std::vector<Rational>(arity, 0));
    for (std::size_t i = 0; i < arity; ++i) rows[i][i] = 1;
    return validate_channel(std::move(rows), AlphabetPair(Alphabet(in), Alphabet(out)));
}

Channel binary_symmetric_channel(const Rational& flip_prob) {
    std::vector<std::vector<Rational>> rows{{1 - flip_prob, flip_prob},
                                            {flip_prob, 1 - flip_prob}};
    return validate_channel(std::move(rows),
                            AlphabetPair(Alphabet({"a", "b"}), Alphabet({"c", "d"})));
}

Channel pentagon_channel() {
    // Input i reaches outputs i and i+1 (mod 5), each with probability 1/2.
    std::vector<std::string> in, out;
    for (std::size_t i = 0; i < 5; ++i) {
        in.push_back("x" + std::to_string(i + 1));
        out.push_back("y" + std::to_string(i + 1));
    }
    std::vector<std::vector<Rational>> rows(5, std::vector<Rational>(5, 0));
    for (std::size_t i = 0; i < 5; ++i) {
        rows[i][i] = Rational(1, 2);
        rows[i][(i + 1) % 5] = Rational(1, 2);
    }
    return validate_channel(std::move(rows), AlphabetPair(Alphabet(in), Alphabet(out)));
}

}  // namespace zec
