#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zec/capacity.hpp"
#include "zec/channel.hpp"
#include "zec/rational.hpp"

namespace zec {

struct BssError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ArityMismatch : BssError {
    using BssError::BssError;
};

// Immutable expression tree over the BSS primitive families: constants,
// projections, field operations, sign/zero branching, composition, primitive
// recursion and unbounded search. Opaque oracle nodes stand in for lifted
// Turing-computable helpers.
class BssProgram {
  public:
    using OracleFn = std::function<std::optional<Rational>(const std::vector<Rational>&)>;

    static BssProgram constant(unsigned arity, Rational value);
    static BssProgram projection(unsigned arity, unsigned index);  // 0-based
    static BssProgram add(BssProgram a, BssProgram b);
    static BssProgram mul(BssProgram a, BssProgram b);
    // test > 0 ? if_true : if_false
    static BssProgram branch_positive(BssProgram test, BssProgram if_true, BssProgram if_false);
    // test == 0 ? if_true : if_false
    static BssProgram branch_zero(BssProgram test, BssProgram if_true, BssProgram if_false);
    static BssProgram compose(BssProgram outer, std::vector<BssProgram> inner);
    // base: arity n-1, step: arity n+1 -> program of arity n with the
    // "x1 < 1" base test.
    static BssProgram prim_rec(BssProgram base, BssProgram step);
    // body: arity n+1 -> program of arity n computing min{y in N : body=0}.
    static BssProgram search(BssProgram body);
    static BssProgram oracle(unsigned arity, std::string name, OracleFn fn);

    unsigned arity() const;
    std::string to_sexpr() const;
    // Parses the s-expression format (pure nodes only, no oracles).
    static BssProgram parse_sexpr(const std::string& text);

    struct Node;
    std::shared_ptr<const Node> node;
};

struct EvalOutcome {
    enum class Kind { Value, Diverged, DomainError } kind = Kind::DomainError;
    Rational value;
    unsigned long steps_used = 0;

    bool is_value() const { return kind == Kind::Value; }
    bool diverged() const { return kind == Kind::Diverged; }
};

// Deterministic evaluation with a step budget standing in for true
// unbounded search.
EvalOutcome evaluate(const BssProgram& program, const std::vector<Rational>& args,
                     unsigned long budget);

// x -> min{n in N : x <= n}, by unbounded search on the saturated
// subtraction.
BssProgram program_cl();

// x -> 1 iff x is a natural number (0 included).
BssProgram program_indicator_nat();

// (x1, x2) -> x2^floor(x1) for x1 >= 0, else 1.
BssProgram program_exp_n();

// Exponentiated capacity table: 2^c0(omega) for every zero pattern over the
// alphabets. Throws TableIncomplete when some pattern's exact capacity is
// not a rational.
std::map<ZeroPattern, Rational> c0_table(const AlphabetPair& alphabets, unsigned depth,
                                         const KnownValuesRegistry& registry);

// w -> sum over omega of 2^c0(omega) * indicator(w in W0(omega)); arity
// |X||Y| in the output-major stacking order.
BssProgram program_c0(const AlphabetPair& alphabets, const std::map<ZeroPattern, Rational>& table);

// (w, x) -> N (resp. M) of the code numbered x when that code is zero-error
// for the pattern class of w, 0 otherwise. Theta and Delta enter as oracle
// nodes backed by the code numbering.
BssProgram program_n0(const AlphabetPair& alphabets);
BssProgram program_m0(const AlphabetPair& alphabets);

// w -> min{n in N : the code numbered n is zero-error for w's pattern class
// and M > mu_surrogate^N}; diverges (budget) outside S0.
BssProgram program_min_code_search(const Rational& mu_surrogate, const AlphabetPair& alphabets);

}  // namespace zec
