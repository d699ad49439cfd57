#include "zec/bss.hpp"

#include <cctype>
#include <sstream>

#include "zec/code.hpp"

namespace zec {

enum class NodeKind {
    Const,
    Proj,
    Add,
    Mul,
    BranchPositive,
    BranchZero,
    Compose,
    PrimRec,
    Search,
    Oracle
};

struct BssProgram::Node {
    NodeKind kind;
    unsigned arity = 0;
    Rational value;       // Const
    unsigned index = 0;   // Proj
    std::string name;     // Oracle
    OracleFn fn;          // Oracle
    std::vector<BssProgram> children;
};

namespace {

BssProgram make(std::shared_ptr<const BssProgram::Node> n) {
    BssProgram p;
    p.node = std::move(n);
    return p;
}

void require_same_arity(const std::vector<BssProgram>& children, const char* what) {
    for (const auto& c : children)
        if (c.arity() != children.front().arity())
            throw ArityMismatch(std::string(what) + ": children disagree on arity");
}

}  // namespace

unsigned BssProgram::arity() const { return node->arity; }

BssProgram BssProgram::constant(unsigned arity, Rational value) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Const;
    n->arity = arity;
    n->value = std::move(value);
    return make(n);
}

BssProgram BssProgram::projection(unsigned arity, unsigned index) {
    if (index >= arity) throw ArityMismatch("projection index outside arity");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Proj;
    n->arity = arity;
    n->index = index;
    return make(n);
}

BssProgram BssProgram::add(BssProgram a, BssProgram b) {
    std::vector<BssProgram> c{std::move(a), std::move(b)};
    require_same_arity(c, "add");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Add;
    n->arity = c.front().arity();
    n->children = std::move(c);
    return make(n);
}

BssProgram BssProgram::mul(BssProgram a, BssProgram b) {
    std::vector<BssProgram> c{std::move(a), std::move(b)};
    require_same_arity(c, "mul");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Mul;
    n->arity = c.front().arity();
    n->children = std::move(c);
    return make(n);
}

BssProgram BssProgram::branch_positive(BssProgram test, BssProgram if_true, BssProgram if_false) {
    std::vector<BssProgram> c{std::move(test), std::move(if_true), std::move(if_false)};
    require_same_arity(c, "branch");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::BranchPositive;
    n->arity = c.front().arity();
    n->children = std::move(c);
    return make(n);
}

BssProgram BssProgram::branch_zero(BssProgram test, BssProgram if_true, BssProgram if_false) {
    std::vector<BssProgram> c{std::move(test), std::move(if_true), std::move(if_false)};
    require_same_arity(c, "branch");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::BranchZero;
    n->arity = c.front().arity();
    n->children = std::move(c);
    return make(n);
}

BssProgram BssProgram::compose(BssProgram outer, std::vector<BssProgram> inner) {
    if (outer.arity() != inner.size())
        throw ArityMismatch("compose: outer arity != number of inner programs");
    if (inner.empty()) throw ArityMismatch("compose: needs at least one inner program");
    require_same_arity(inner, "compose");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Compose;
    n->arity = inner.front().arity();
    n->children.push_back(std::move(outer));
    for (auto& p : inner) n->children.push_back(std::move(p));
    return make(n);
}

BssProgram BssProgram::prim_rec(BssProgram base, BssProgram step) {
    if (step.arity() != base.arity() + 2)
        throw ArityMismatch("primrec: step arity must be base arity + 2");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::PrimRec;
    n->arity = base.arity() + 1;
    n->children = {std::move(base), std::move(step)};
    return make(n);
}

BssProgram BssProgram::search(BssProgram body) {
    if (body.arity() < 1) throw ArityMismatch("search: body needs arity >= 1");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Search;
    n->arity = body.arity() - 1;
    n->children = {std::move(body)};
    return make(n);
}

BssProgram BssProgram::oracle(unsigned arity, std::string name, OracleFn fn) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Oracle;
    n->arity = arity;
    n->name = std::move(name);
    n->fn = std::move(fn);
    return make(n);
}

namespace {

struct BudgetExhausted {};
struct DomainFail {};

struct Evaluator {
    unsigned long remaining;

    void charge() {
        if (remaining == 0) throw BudgetExhausted{};
        --remaining;
    }

    Rational eval(const BssProgram& p, const std::vector<Rational>& args) {
        const auto& n = *p.node;
        charge();
        switch (n.kind) {
            case NodeKind::Const:
                return n.value;
            case NodeKind::Proj:
                return args[n.index];
            case NodeKind::Add:
                return eval(n.children[0], args) + eval(n.children[1], args);
            case NodeKind::Mul:
                return eval(n.children[0], args) * eval(n.children[1], args);
            case NodeKind::BranchPositive:
                return eval(n.children[0], args) > 0 ? eval(n.children[1], args)
                                                     : eval(n.children[2], args);
            case NodeKind::BranchZero:
                return eval(n.children[0], args) == 0 ? eval(n.children[1], args)
                                                      : eval(n.children[2], args);
            case NodeKind::Compose: {
                std::vector<Rational> inner_vals;
                inner_vals.reserve(n.children.size() - 1);
                for (std::size_t i = 1; i < n.children.size(); ++i)
                    inner_vals.push_back(eval(n.children[i], args));
                return eval(n.children[0], inner_vals);
            }
            case NodeKind::PrimRec: {
                // B(x) = base(x2..xn) if x1 < 1, else
                //        step(x1-1, x2..xn, B(x1-1, x2..xn)); unrolled
                //        iteratively.
                std::vector<Rational> rest(args.begin() + 1, args.end());
                Rational counter = args[0];
                std::vector<Rational> counters;
                while (counter >= 1) {
                    charge();
                    counter -= 1;
                    counters.push_back(counter);
                }
                Rational acc = eval(n.children[0], rest);
                for (auto it = counters.rbegin(); it != counters.rend(); ++it) {
                    std::vector<Rational> step_args;
                    step_args.reserve(rest.size() + 2);
                    step_args.push_back(*it);
                    step_args.insert(step_args.end(), rest.begin(), rest.end());
                    step_args.push_back(std::move(acc));
                    acc = eval(n.children[1], step_args);
                }
                return acc;
            }
            case NodeKind::Search: {
                std::vector<Rational> body_args = args;
                body_args.push_back(0);
                for (unsigned long y = 0;; ++y) {
                    body_args.back() = Rational(static_cast<unsigned long>(y));
                    if (eval(n.children[0], body_args) == 0)
                        return Rational(static_cast<unsigned long>(y));
                }
            }
            case NodeKind::Oracle: {
                auto r = n.fn(args);
                if (!r) throw DomainFail{};
                return *r;
            }
        }
        throw BssError("unreachable node kind");
    }
};

}  // namespace

EvalOutcome evaluate(const BssProgram& program, const std::vector<Rational>& args,
                     unsigned long budget) {
    if (args.size() != program.arity())
        throw ArityMismatch("evaluate: got " + std::to_string(args.size()) + " args, arity " +
                            std::to_string(program.arity()));
    if (budget == 0) throw BssError("budget must be positive");
    Evaluator ev{budget};
    EvalOutcome out;
    try {
        out.value = ev.eval(program, args);
        out.kind = EvalOutcome::Kind::Value;
    } catch (const BudgetExhausted&) {
        out.kind = EvalOutcome::Kind::Diverged;
    } catch (const DomainFail&) {
        out.kind = EvalOutcome::Kind::DomainError;
    }
    out.steps_used = budget - ev.remaining;
    return out;
}

BssProgram program_cl() {
    // Saturated subtraction max{x - n, 0}, searched from n = 0.
    auto x = BssProgram::projection(2, 0);
    auto n = BssProgram::projection(2, 1);
    auto diff = BssProgram::add(x, BssProgram::mul(BssProgram::constant(2, -1), n));
    auto satsub = BssProgram::branch_positive(diff, diff, BssProgram::constant(2, 0));
    return BssProgram::search(satsub);
}

BssProgram program_indicator_nat() {
    auto x = BssProgram::projection(1, 0);
    auto cl_of_x = BssProgram::compose(program_cl(), {x});
    auto diff = BssProgram::add(x, BssProgram::mul(BssProgram::constant(1, -1), cl_of_x));
    return BssProgram::branch_zero(diff, BssProgram::constant(1, 1), BssProgram::constant(1, 0));
}

BssProgram program_exp_n() {
    auto base = BssProgram::constant(1, 1);
    auto step = BssProgram::mul(BssProgram::projection(3, 1), BssProgram::projection(3, 2));
    return BssProgram::prim_rec(base, step);
}

namespace {

std::vector<ZeroPattern> all_zero_patterns(const AlphabetPair& alphabets) {
    const std::size_t nx = alphabets.inputs().size();
    const std::size_t ny = alphabets.outputs().size();
    const std::size_t cells = nx * ny;
    if (cells > 20) throw BssError("pattern enumeration limited to |X||Y| <= 20");
    std::vector<ZeroPattern> patterns;
    for (std::size_t mask = 0; mask < (std::size_t{1} << cells); ++mask) {
        std::set<std::pair<std::size_t, std::size_t>> omega;
        for (std::size_t i = 0; i < cells; ++i)
            if ((mask >> i) & 1u) omega.insert({i % nx, i / nx});
        patterns.emplace_back(std::move(omega), nx, ny);
    }
    return patterns;
}

// Indicator of W0(omega) over the output-major stacking: zero tests on the
// omega coordinates, positivity tests on the rest.
BssProgram pattern_indicator(const ZeroPattern& pattern, unsigned arity, std::size_t nx) {
    BssProgram result = BssProgram::constant(arity, 1);
    for (const auto& [x, y] : pattern.omega()) {
        unsigned flat = static_cast<unsigned>(y * nx + x);
        result = BssProgram::branch_zero(BssProgram::projection(arity, flat), std::move(result),
                                         BssProgram::constant(arity, 0));
    }
    for (std::size_t y = 0; y < pattern.n_outputs(); ++y)
        for (std::size_t x = 0; x < pattern.n_inputs(); ++x) {
            if (pattern.contains(x, y)) continue;
            unsigned flat = static_cast<unsigned>(y * nx + x);
            result = BssProgram::branch_positive(BssProgram::projection(arity, flat),
                                                 std::move(result), BssProgram::constant(arity, 0));
        }
    return result;
}

std::optional<Int> as_natural(const Rational& r) {
    if (r < 0 || !is_integer(r)) return std::nullopt;
    return r.get_num();
}

BssProgram theta_oracle(const AlphabetPair& alphabets, unsigned arity, bool want_n) {
    std::string name = want_n ? "theta-N" : "theta-M";
    return BssProgram::oracle(arity, name,
                              [alphabets, want_n](const std::vector<Rational>& args)
                                  -> std::optional<Rational> {
                                  auto n = as_natural(args.back());
                                  if (!n) return Rational(0);
                                  std::size_t v = want_n ? theta_n(*n, alphabets)
                                                         : theta_m(*n, alphabets);
                                  return Rational(static_cast<unsigned long>(v));
                              });
}

BssProgram delta_oracle(const AlphabetPair& alphabets, const ZeroPattern& pattern,
                        unsigned arity) {
    return BssProgram::oracle(arity, "delta",
                              [alphabets, pattern](const std::vector<Rational>& args)
                                  -> std::optional<Rational> {
                                  auto n = as_natural(args.back());
                                  if (!n) return Rational(0);
                                  return Rational(delta(*n, pattern, alphabets));
                              });
}

// Shared body of N0 and M0: code parameters gated by the zero-error test.
BssProgram n0_m0(const AlphabetPair& alphabets, bool want_n) {
    const unsigned m = static_cast<unsigned>(alphabets.inputs().size() * alphabets.outputs().size());
    const unsigned arity = m + 1;
    const std::size_t nx = alphabets.inputs().size();
    auto theta = theta_oracle(alphabets, arity, want_n);
    BssProgram sum = BssProgram::constant(arity, 0);
    for (const auto& pattern : all_zero_patterns(alphabets)) {
        auto term = BssProgram::mul(
            BssProgram::mul(theta, delta_oracle(alphabets, pattern, arity)),
            pattern_indicator(pattern, arity, nx));
        sum = BssProgram::add(std::move(sum), std::move(term));
    }
    // Guard on the natural-number indicator of the code index.
    auto guard = BssProgram::compose(program_indicator_nat(),
                                     {BssProgram::projection(arity, arity - 1)});
    return BssProgram::branch_positive(std::move(guard), std::move(sum),
                                       BssProgram::constant(arity, 0));
}

}  // namespace

std::map<ZeroPattern, Rational> c0_table(const AlphabetPair& alphabets, unsigned depth,
                                         const KnownValuesRegistry& registry) {
    std::map<ZeroPattern, Rational> table;
    for (const auto& pattern : all_zero_patterns(alphabets)) {
        auto bound = capacity_bounds(pattern, alphabets, depth, registry);
        if (!bound.exact || bound.exact->is_sqrt)
            throw TableIncomplete("no exact rational capacity for a pattern over these alphabets");
        table.emplace(pattern, bound.exact->radicand);
    }
    return table;
}

BssProgram program_c0(const AlphabetPair& alphabets, const std::map<ZeroPattern, Rational>& table) {
    const unsigned arity = static_cast<unsigned>(alphabets.inputs().size() * alphabets.outputs().size());
    const std::size_t nx = alphabets.inputs().size();
    BssProgram sum = BssProgram::constant(arity, 0);
    for (const auto& pattern : all_zero_patterns(alphabets)) {
        auto it = table.find(pattern);
        if (it == table.end()) throw TableIncomplete("capacity table is missing a pattern");
        auto term = BssProgram::mul(BssProgram::constant(arity, it->second),
                                    pattern_indicator(pattern, arity, nx));
        sum = BssProgram::add(std::move(sum), std::move(term));
    }
    return sum;
}

BssProgram program_n0(const AlphabetPair& alphabets) { return n0_m0(alphabets, true); }

BssProgram program_m0(const AlphabetPair& alphabets) { return n0_m0(alphabets, false); }

BssProgram program_min_code_search(const Rational& mu_surrogate, const AlphabetPair& alphabets) {
    const unsigned m = static_cast<unsigned>(alphabets.inputs().size() * alphabets.outputs().size());
    const unsigned arity = m + 1;  // body arity: (w, candidate index)
    auto m0 = program_m0(alphabets);
    auto n0 = program_n0(alphabets);
    std::vector<BssProgram> exp_args{std::move(n0), BssProgram::constant(arity, mu_surrogate)};
    auto threshold = BssProgram::compose(program_exp_n(), std::move(exp_args));
    auto b0 = BssProgram::add(std::move(m0),
                              BssProgram::mul(BssProgram::constant(arity, -1), std::move(threshold)));
    auto b00 = BssProgram::branch_positive(std::move(b0), BssProgram::constant(arity, 0),
                                           BssProgram::constant(arity, 1));
    return BssProgram::search(std::move(b00));
}

namespace {

void print_sexpr(const BssProgram& p, std::ostream& os) {
    const auto& n = *p.node;
    switch (n.kind) {
        case NodeKind::Const:
            os << "(const " << to_string(n.value) << ")";
            return;
        case NodeKind::Proj:
            os << "(proj " << n.index << ")";
            return;
        case NodeKind::Add:
        case NodeKind::Mul:
            os << (n.kind == NodeKind::Add ? "(add " : "(mul ");
            print_sexpr(n.children[0], os);
            os << " ";
            print_sexpr(n.children[1], os);
            os << ")";
            return;
        case NodeKind::BranchPositive:
        case NodeKind::BranchZero:
            os << (n.kind == NodeKind::BranchPositive ? "(if-pos " : "(if-zero ");
            for (std::size_t i = 0; i < 3; ++i) {
                if (i) os << " ";
                print_sexpr(n.children[i], os);
            }
            os << ")";
            return;
        case NodeKind::Compose:
            os << "(compose";
            for (const auto& c : n.children) {
                os << " ";
                print_sexpr(c, os);
            }
            os << ")";
            return;
        case NodeKind::PrimRec:
            os << "(primrec ";
            print_sexpr(n.children[0], os);
            os << " ";
            print_sexpr(n.children[1], os);
            os << ")";
            return;
        case NodeKind::Search:
            os << "(search ";
            print_sexpr(n.children[0], os);
            os << ")";
            return;
        case NodeKind::Oracle:
            os << "(oracle " << n.name << ")";
            return;
    }
}

struct Token {
    std::string text;
    bool open = false, close = false;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    std::string atom;
    auto flush = [&] {
        if (!atom.empty()) {
            tokens.push_back({atom});
            atom.clear();
        }
    };
    for (char c : text) {
        if (c == '(') {
            flush();
            tokens.push_back({"(", true, false});
        } else if (c == ')') {
            flush();
            tokens.push_back({")", false, true});
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            atom.push_back(c);
        }
    }
    flush();
    return tokens;
}

struct Parser {
    const std::vector<Token>& tokens;
    std::size_t pos = 0;

    const Token& next() {
        if (pos >= tokens.size()) throw ParseError("unexpected end of program");
        return tokens[pos++];
    }

    BssProgram parse(unsigned arity) {
        if (!next().open) throw ParseError("expected '('");
        std::string head = next().text;
        BssProgram result = [&]() -> BssProgram {
            if (head == "const") {
                auto v = parse_rational(next().text);
                return BssProgram::constant(arity, v);
            }
            if (head == "proj") {
                unsigned idx = static_cast<unsigned>(std::stoul(next().text));
                return BssProgram::projection(arity, idx);
            }
            // Argument evaluation order is unspecified; parse sequentially.
            if (head == "add" || head == "mul") {
                BssProgram a = parse(arity);
                BssProgram b = parse(arity);
                return head == "add" ? BssProgram::add(std::move(a), std::move(b))
                                     : BssProgram::mul(std::move(a), std::move(b));
            }
            if (head == "if-pos" || head == "if-zero") {
                BssProgram t = parse(arity);
                BssProgram a = parse(arity);
                BssProgram b = parse(arity);
                return head == "if-pos"
                           ? BssProgram::branch_positive(std::move(t), std::move(a), std::move(b))
                           : BssProgram::branch_zero(std::move(t), std::move(a), std::move(b));
            }
            if (head == "primrec") {
                BssProgram base = parse(arity - 1);
                BssProgram step = parse(arity + 1);
                return BssProgram::prim_rec(std::move(base), std::move(step));
            }
            if (head == "search") return BssProgram::search(parse(arity + 1));
            if (head == "compose") {
                // Inner programs share the context arity; the outer's arity
                // equals their count, so collect inners first.
                std::vector<BssProgram> parts;
                std::size_t outer_start = pos;
                // Skip the outer expression textually to count inners.
                skip_expr();
                while (pos < tokens.size() && !tokens[pos].close) parts.push_back(parse(arity));
                unsigned outer_arity = static_cast<unsigned>(parts.size());
                std::size_t after = pos;
                pos = outer_start;
                BssProgram outer = parse(outer_arity);
                pos = after;
                return BssProgram::compose(std::move(outer), std::move(parts));
            }
            throw ParseError("unknown program head: " + head);
        }();
        if (!next().close) throw ParseError("expected ')' after " + head);
        return result;
    }

    void skip_expr() {
        if (!next().open) throw ParseError("expected '('");
        int depth = 1;
        while (depth > 0) {
            const Token& t = next();
            if (t.open) ++depth;
            if (t.close) --depth;
        }
    }
};

}  // namespace

std::string BssProgram::to_sexpr() const {
    std::ostringstream os;
    os << "(program " << arity() << " ";
    print_sexpr(*this, os);
    os << ")";
    return os.str();
}

BssProgram BssProgram::parse_sexpr(const std::string& text) {
    auto tokens = tokenize(text);
    Parser parser{tokens};
    if (!parser.next().open || parser.next().text != "program")
        throw ParseError("expected (program ARITY BODY)");
    unsigned arity = static_cast<unsigned>(std::stoul(parser.next().text));
    BssProgram body = parser.parse(arity);
    if (!parser.next().close) throw ParseError("expected ')' at end");
    return body;
}

}  // namespace zec
