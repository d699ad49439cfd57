#include "zec/decide.hpp"

#include <algorithm>
#include <sstream>

#include "zec/polynomial.hpp"

namespace zec {

void Plant::validate() const {
    if (matrix.empty()) throw DecideError("plant matrix is empty");
    for (const auto& row : matrix)
        if (row.size() != matrix.size()) throw DecideError("plant matrix is not square");
    if (eigen_moduli) {
        if (eigen_moduli->size() != matrix.size())
            throw DecideError("eigenvalue interval count does not match dimension");
        for (const auto& [lo, hi] : *eigen_moduli)
            if (!(0 <= lo && lo <= hi)) throw DecideError("malformed eigenvalue modulus interval");
    }
}

namespace {

struct Interval {
    Rational lo{1};
    Rational hi{1};
    bool boundary = false;

    void mul(const Interval& o) {
        lo *= o.lo;
        hi *= o.hi;
        boundary = boundary || o.boundary;
    }
    void mul_pow(const Interval& o, unsigned e) {
        lo *= pow(o.lo, e);
        hi *= pow(o.hi, e);
        boundary = boundary || o.boundary;
    }
};

// A radius strictly inside (lo, hi) at which the Schur-Cohn count succeeds.
// Degenerate radii are a finite set, so the dyadic sweep terminates.
std::pair<Rational, unsigned> counted_radius(const Poly& q, const Rational& lo,
                                             const Rational& hi) {
    const Rational span = hi - lo;
    for (unsigned m = 1; m <= 14; ++m) {
        const Rational step = span / Rational(1UL << m);
        for (unsigned long k = 1; k < (1UL << m); k += 2) {
            Rational rho = lo + step * Rational(k);
            if (auto c = roots_in_open_disk(q, rho)) return {rho, *c};
        }
    }
    throw PrecisionExhausted("no admissible counting radius found in the interval");
}

// Unstable-modulus product enclosure for one squarefree monic factor.
Interval squarefree_factor_product(Poly q, unsigned tol_exp) {
    Interval result;
    // Zero roots are stable; strip them so q(0) != 0.
    while (q.degree() > 0 && q.coeff(0) == 0)
        q = divmod(q, Poly({Rational(0), Rational(1)})).first;

    auto rr = rational_roots(q);
    for (const auto& [root, mult] : rr.roots) {
        Rational a = abs(root);
        Poly factor({-root, Rational(1)});
        for (unsigned i = 0; i < mult; ++i) {
            q = divmod(q, factor).first;
            if (a >= 1) result.mul(Interval{a, a, a == 1});
        }
    }
    if (q.degree() < 1) return result;

    const unsigned d = static_cast<unsigned>(q.degree());
    const unsigned circle = unit_circle_roots(q);
    if (circle > 0) result.boundary = true;

    // Bracket the unit circle: shrink [r1, r2] around 1 until the only
    // moduli inside are the exactly-on-circle ones.
    Rational r1, r2;
    unsigned inside = 0, below_r2 = 0;
    bool bracketed = false;
    for (unsigned m = 2; m <= 120 && !bracketed; ++m) {
        Rational eps(1, 1UL << std::min(m, 62u));
        for (unsigned extra = std::min(m, 62u); extra < m; ++extra) eps /= 2;
        auto [a, ca] = counted_radius(q, 1 - eps, 1 - eps / 2);
        auto [b, cb] = counted_radius(q, 1 + eps / 2, 1 + eps);
        if (cb - ca == circle) {
            r1 = a;
            r2 = b;
            inside = ca;
            below_r2 = cb;
            bracketed = true;
        }
    }
    if (!bracketed) throw PrecisionExhausted("could not separate eigenvalue moduli from 1");
    const unsigned outside = d - below_r2;
    if (outside == 0) return result;

    if (inside == 0) {
        // All moduli >= 1, the circle ones contribute 1 each: the product of
        // the unstable moduli is |q(0)| exactly (q is monic).
        Rational v = abs(q.eval(Rational(0)));
        result.mul(Interval{v, v, false});
        return result;
    }

    // Mixed case: refine disjoint modulus brackets above r2 by bisection.
    struct Segment {
        Rational lo, hi;
        unsigned cnt_lo, cnt_hi;  // open-disk counts at the endpoints
    };
    Rational top = cauchy_bound(q);
    auto [rt, ct] = counted_radius(q, top, top + 1);
    if (ct != d) throw DecideError("root count above the Cauchy bound");
    std::vector<Segment> segs{{r2, rt, below_r2, ct}};
    Rational tol = 1 + Rational(Int(1), pow(Int(2), tol_exp));
    for (unsigned iter = 0; iter < 40000; ++iter) {
        auto it = std::find_if(segs.begin(), segs.end(), [&](const Segment& s) {
            return s.cnt_hi > s.cnt_lo && s.hi > s.lo * tol;
        });
        if (it == segs.end()) {
            Interval prod{Rational(1), Rational(1), false};
            for (const auto& s : segs) {
                unsigned cnt = s.cnt_hi - s.cnt_lo;
                if (cnt == 0) continue;
                prod.lo *= pow(s.lo, cnt);
                prod.hi *= pow(s.hi, cnt);
            }
            result.mul(prod);
            return result;
        }
        auto [mid, cm] = counted_radius(q, it->lo, it->hi);
        Segment left{it->lo, mid, it->cnt_lo, cm};
        Segment right{mid, it->hi, cm, it->cnt_hi};
        *it = right;
        segs.insert(it, left);
    }
    throw PrecisionExhausted("modulus refinement budget exhausted");
}

unsigned bit_length(std::size_t v) {
    unsigned b = 0;
    while (v > 0) {
        ++b;
        v >>= 1;
    }
    return b;
}

}  // namespace

InstabilityExponent instability_exponent(const Plant& plant, unsigned precision) {
    plant.validate();
    Interval total;
    if (plant.eigen_moduli) {
        for (const auto& [lo, hi] : *plant.eigen_moduli) {
            if (hi < 1) continue;  // certified stable
            if (lo >= 1) {
                total.mul(Interval{lo, hi, lo == 1});
            } else {
                // Straddles 1: possibly stable (factor 1), possibly up to hi.
                total.mul(Interval{Rational(1), std::max(hi, Rational(1)), true});
            }
        }
        return {total.lo, total.hi, total.boundary};
    }

    Poly p = charpoly(plant.matrix);
    const unsigned tol_exp = precision + 8 + bit_length(plant.dimension());
    for (const auto& [factor, mult] : squarefree_decomposition(p)) {
        Interval f = squarefree_factor_product(factor, tol_exp);
        total.mul_pow(f, mult);
    }
    return {total.lo, total.hi, total.boundary};
}

std::string outcome_name(Outcome outcome) {
    switch (outcome) {
        case Outcome::Solvable: return "SOLVABLE";
        case Outcome::Unsolvable: return "UNSOLVABLE";
        case Outcome::Boundary: return "BOUNDARY";
        case Outcome::UndeterminedBounds: return "UNDETERMINED_BOUNDS";
    }
    return "?";
}

namespace {

// alpha > hi^n as integers: alpha * den(hi)^n vs num(hi)^n.
std::pair<Int, Int> cross_alpha(const Int& alpha, unsigned n, const Rational& hi) {
    return {alpha * pow(Int(hi.get_den()), n), pow(Int(hi.get_num()), n)};
}

// exact vs r as integers (squaring through sqrt values).
std::pair<Int, Int> cross_exact(const ExactValue& exact, const Rational& r) {
    Rational rhs = exact.is_sqrt ? r * r : r;
    return {exact.radicand.get_num() * rhs.get_den(), exact.radicand.get_den() * rhs.get_num()};
}

}  // namespace

bool verify_certificate(const Certificate& c) {
    switch (c.outcome) {
        case Outcome::Solvable: {
            if (c.n > 0) {
                auto [lhs, rhs] = cross_alpha(c.alpha, c.n, c.base_hi);
                return lhs == c.lhs && rhs == c.rhs && lhs > rhs;
            }
            if (!c.capacity) return false;
            auto [lhs, rhs] = cross_exact(*c.capacity, c.base_hi);
            return lhs == c.lhs && rhs == c.rhs && lhs > rhs;
        }
        case Outcome::Unsolvable: {
            if (!c.capacity) {
                Int lhs = c.clique_cover * c.base_lo.get_den();
                Int rhs = c.base_lo.get_num();
                return lhs == c.lhs && rhs == c.rhs && lhs < rhs;
            }
            auto [lhs, rhs] = cross_exact(*c.capacity, c.base_lo);
            return lhs == c.lhs && rhs == c.rhs && lhs < rhs;
        }
        case Outcome::Boundary: {
            if (!c.capacity || c.base_lo != c.base_hi) return false;
            return c.capacity->compare(c.base_lo) == 0;
        }
        case Outcome::UndeterminedBounds:
            return true;
    }
    return false;
}

Verdict decide_solvability(const Plant& plant, const Channel& channel, unsigned depth,
                           const KnownValuesRegistry& registry, unsigned precision) {
    Verdict v;
    v.exponent = instability_exponent(plant, precision);
    v.bounds = capacity_bounds(zero_pattern(channel), channel.alphabets(), depth, registry);
    Certificate& c = v.certificate;
    c.base_lo = v.exponent.lo;
    c.base_hi = v.exponent.hi;
    c.capacity = v.bounds.exact;
    c.clique_cover = v.bounds.clique_cover;

    if (auto point = v.bounds.lower_exceeds(v.exponent.hi)) {
        v.outcome = c.outcome = Outcome::Solvable;
        c.alpha = point->alpha;
        c.n = point->n;
        std::tie(c.lhs, c.rhs) = cross_alpha(c.alpha, c.n, c.base_hi);
        return v;
    }
    if (v.bounds.exact && v.bounds.exact->compare(v.exponent.hi) > 0) {
        v.outcome = c.outcome = Outcome::Solvable;
        std::tie(c.lhs, c.rhs) = cross_exact(*v.bounds.exact, c.base_hi);
        return v;
    }
    if (Rational(v.bounds.clique_cover) < v.exponent.lo) {
        v.outcome = c.outcome = Outcome::Unsolvable;
        c.capacity.reset();
        c.lhs = c.clique_cover * c.base_lo.get_den();
        c.rhs = c.base_lo.get_num();
        return v;
    }
    if (v.bounds.exact && v.bounds.exact->compare(v.exponent.lo) < 0) {
        v.outcome = c.outcome = Outcome::Unsolvable;
        std::tie(c.lhs, c.rhs) = cross_exact(*v.bounds.exact, c.base_lo);
        return v;
    }
    if (v.bounds.exact && v.exponent.exact() && v.bounds.exact->compare(v.exponent.lo) == 0) {
        v.outcome = c.outcome = Outcome::Boundary;
        return v;
    }
    v.outcome = c.outcome = Outcome::UndeterminedBounds;
    std::ostringstream note;
    note << "capacity in [" << to_string(Rational(v.bounds.best_lower.alpha)) << "^(1/"
         << v.bounds.best_lower.n << "), " << to_string(Rational(v.bounds.clique_cover))
         << "], base in [" << to_string(v.exponent.lo) << ", " << to_string(v.exponent.hi) << "]";
    c.note = note.str();
    return v;
}

std::optional<int> indicator_s(const Plant& plant, const Channel& channel, unsigned depth) {
    switch (decide_solvability(plant, channel, depth).outcome) {
        case Outcome::Solvable: return 1;
        case Outcome::Unsolvable:
        case Outcome::Boundary: return 0;
        case Outcome::UndeterminedBounds: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<int> indicator_u(const Plant& plant, const Channel& channel, unsigned depth) {
    switch (decide_solvability(plant, channel, depth).outcome) {
        case Outcome::Unsolvable: return 1;
        case Outcome::Solvable:
        case Outcome::Boundary: return 0;
        case Outcome::UndeterminedBounds: return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace zec
