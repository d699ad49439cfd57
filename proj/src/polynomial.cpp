#include "zec/polynomial.hpp"

#include <algorithm>

namespace zec {

namespace {

void trim(std::vector<Rational>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(coeffs_); }

const Rational& Poly::coeff(std::size_t k) const {
    static const Rational zero(0);
    return k < coeffs_.size() ? coeffs_[k] : zero;
}

const Rational& Poly::lead() const {
    if (is_zero()) throw PolyError("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + o.scaled(Rational(-1)); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
    return Poly(std::move(c));
}

Poly Poly::scaled(const Rational& c) const {
    std::vector<Rational> out = coeffs_;
    for (auto& x : out) x *= c;
    return Poly(std::move(out));
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<Rational> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        out[i - 1] = coeffs_[i] * Rational(static_cast<unsigned long>(i));
    return Poly(std::move(out));
}

Poly Poly::reversed() const {
    std::vector<Rational> out(coeffs_.rbegin(), coeffs_.rend());
    return Poly(std::move(out));
}

Poly Poly::compose_scale(const Rational& c) const {
    std::vector<Rational> out = coeffs_;
    Rational p(1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] *= p;
        p *= c;
    }
    return Poly(std::move(out));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(Rational(1) / lead());
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw PolyError("division by the zero polynomial");
    std::vector<Rational> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {Poly(), a};
    std::vector<Rational> quot(a.degree() - db + 1, Rational(0));
    for (int k = a.degree(); k >= db; --k) {
        Rational q = rem[static_cast<std::size_t>(k)] / b.lead();
        if (q == 0) continue;
        quot[static_cast<std::size_t>(k - db)] = q;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(k - db + j)] -= q * b.coeff(static_cast<std::size_t>(j));
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = r.monic();  // normalization keeps coefficient growth down
    }
    return a.monic();
}

Poly charpoly(const std::vector<std::vector<Rational>>& matrix) {
    const std::size_t n = matrix.size();
    for (const auto& row : matrix)
        if (row.size() != n) throw PolyError("matrix is not square");
    // Faddeev-LeVerrier: M_1 = A, c_k = tr(M_k)/k, M_{k+1} = A (M_k - c_k I);
    // charpoly = x^n - c_1 x^(n-1) - ... - c_n.
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    auto m = matrix;
    for (std::size_t k = 1; k <= n; ++k) {
        Rational tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += m[i][i];
        Rational ck = tr / Rational(static_cast<unsigned long>(k));
        c[n - k] = -ck;
        if (k == n) break;
        auto shifted = m;
        for (std::size_t i = 0; i < n; ++i) shifted[i][i] -= ck;
        std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t t = 0; t < n; ++t) next[i][j] += matrix[i][t] * shifted[t][j];
        m = std::move(next);
    }
    return Poly(std::move(c));
}

std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& p) {
    std::vector<std::pair<Poly, unsigned>> out;
    if (p.degree() < 1) return out;
    Poly q = p.monic();
    Poly g = poly_gcd(q, q.derivative());
    if (g.degree() == 0) {
        out.push_back({q, 1});
        return out;
    }
    Poly w = divmod(q, g).first;
    Poly y = divmod(q.derivative(), g).first;
    Poly z = y - w.derivative();
    unsigned i = 1;
    while (w.degree() > 0) {
        Poly gi = poly_gcd(w, z);
        if (gi.degree() > 0) out.push_back({gi, i});
        w = divmod(w, gi).first;
        y = divmod(z, gi).first;
        z = y - w.derivative();
        ++i;
    }
    return out;
}

namespace {

// Positive divisors by trial division. Bails out when a cofactor beyond the
// trial bound survives, leaving the caller to report incompleteness.
bool positive_divisors(Int value, std::vector<Int>& out) {
    if (value < 0) value = -value;
    if (value == 0) return false;
    out = {Int(1)};
    Int bound(1000000);
    for (Int d(2); d * d <= value && d <= bound; ++d) {
        unsigned mult = 0;
        while (value % d == 0) {
            value /= d;
            ++mult;
        }
        if (mult == 0) continue;
        std::vector<Int> grown;
        Int power(1);
        for (unsigned e = 0; e <= mult; ++e) {
            for (const auto& x : out) grown.push_back(x * power);
            power *= d;
        }
        out = std::move(grown);
    }
    if (value > 1) {
        if (value > bound * bound) return false;
        std::vector<Int> grown = out;
        for (const auto& x : out) grown.push_back(x * value);
        out = std::move(grown);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return true;
}

}  // namespace

RationalRoots rational_roots(const Poly& p) {
    RationalRoots result;
    if (p.degree() < 1) return result;
    Poly q = p;
    // Strip zero roots first so the constant term is usable.
    unsigned zero_mult = 0;
    while (q.coeff(0) == 0 && q.degree() > 0) {
        std::vector<Rational> shifted(q.coeffs().begin() + 1, q.coeffs().end());
        q = Poly(std::move(shifted));
        ++zero_mult;
    }
    if (zero_mult > 0) result.roots.push_back({Rational(0), zero_mult});
    if (q.degree() < 1) return result;

    // Primitive integer form: clear denominators.
    Int common(1);
    for (const auto& c : q.coeffs()) common = lcm(common, c.get_den());
    std::vector<Int> ic;
    for (const auto& c : q.coeffs()) {
        Rational scaled = c * Rational(common);
        ic.push_back(scaled.get_num());
    }
    std::vector<Int> nums, dens;
    if (!positive_divisors(ic.front(), nums) || !positive_divisors(ic.back(), dens)) {
        result.complete = false;
        return result;
    }
    for (const auto& den : dens)
        for (const auto& num : nums)
            for (int sign : {1, -1}) {
                Rational cand(sign * num, den);
                cand.canonicalize();
                if (q.eval(cand) != 0) continue;
                unsigned mult = 0;
                Poly factor({-cand, Rational(1)});
                while (true) {
                    auto [quot, rem] = divmod(q, factor);
                    if (!rem.is_zero()) break;
                    q = quot;
                    ++mult;
                }
                if (mult > 0) result.roots.push_back({cand, mult});
            }
    return result;
}

namespace {

unsigned sign_variations(const std::vector<Poly>& seq, const Rational& x) {
    unsigned variations = 0;
    int prev = 0;
    for (const auto& p : seq) {
        Rational v = p.eval(x);
        int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++variations;
        prev = s;
    }
    return variations;
}

}  // namespace

unsigned sturm_count(const Poly& p, const Rational& a, const Rational& b) {
    if (p.degree() < 1) return 0;
    Poly sf = divmod(p, poly_gcd(p, p.derivative())).first;
    std::vector<Poly> seq{sf, sf.derivative()};
    while (!seq.back().is_zero() && seq.back().degree() > 0)
        seq.push_back(divmod(seq[seq.size() - 2], seq.back()).second.scaled(Rational(-1)));
    return sign_variations(seq, a) - sign_variations(seq, b);
}

namespace {

// nu(p): zeros in the open unit disk, via the transform
// Tp = a0 p - an p~ with p~ the reversal. Tp(0) = a0^2 - an^2 decides
// whether the count is preserved or complemented; a vanishing Tp(0) (or a
// vanishing Tp) is the degenerate case surfaced as nullopt.
std::optional<unsigned> schur_cohn_unit(const Poly& p) {
    const int n = p.degree();
    if (n <= 0) return 0u;
    const Rational& a0 = p.coeff(0);
    const Rational& an = p.lead();
    Poly t = p.scaled(a0) - p.reversed().scaled(an);
    if (t.is_zero() || t.coeff(0) == 0) return std::nullopt;
    auto sub = schur_cohn_unit(t);
    if (!sub) return std::nullopt;
    if (t.coeff(0) > 0) return *sub;
    return static_cast<unsigned>(n) - *sub;
}

}  // namespace

std::optional<unsigned> roots_in_open_disk(const Poly& p, const Rational& radius) {
    if (radius <= 0) throw PolyError("disk radius must be positive");
    if (p.degree() < 0) throw PolyError("zero polynomial");
    return schur_cohn_unit(p.compose_scale(radius));
}

unsigned unit_circle_roots(const Poly& p) {
    if (p.coeff(0) == 0) throw PolyError("unit_circle_roots requires p(0) != 0");
    Poly q = p.monic();
    unsigned count = 0;
    for (int s : {1, -1}) {
        Rational r(s);
        if (q.eval(r) == 0) {
            ++count;
            q = divmod(q, Poly({-r, Rational(1)})).first;
        }
    }
    Poly g = poly_gcd(q, q.reversed());
    if (g.degree() <= 0) return count;
    // g is palindromic of even degree: its root set is inversion-closed and
    // +-1 are no longer roots. Substitute t = z + 1/z through the
    // Chebyshev-like basis V_k(t) = z^k + z^-k.
    const int d = g.degree();
    if (d % 2 != 0) throw PolyError("unexpected odd-degree inversion-closed factor");
    for (int k = 0; k <= d; ++k)
        if (g.coeff(static_cast<std::size_t>(k)) != g.coeff(static_cast<std::size_t>(d - k)))
            throw PolyError("inversion-closed factor is not palindromic");
    const int half = d / 2;
    Poly v_prev({Rational(2)});            // V_0
    Poly v_cur({Rational(0), Rational(1)});  // V_1 = t
    Poly t_poly({Rational(0), Rational(1)});
    Poly h = v_prev.scaled(g.coeff(static_cast<std::size_t>(half)) / 2);
    for (int k = 1; k <= half; ++k) {
        h = h + v_cur.scaled(g.coeff(static_cast<std::size_t>(half + k)));
        Poly v_next = t_poly * v_cur - v_prev;
        v_prev = std::move(v_cur);
        v_cur = std::move(v_next);
    }
    // Each root t in (-2, 2) lifts to a conjugate pair on the circle.
    return count + 2 * sturm_count(h, Rational(-2), Rational(2));
}

Rational cauchy_bound(const Poly& p) {
    if (p.degree() < 0) throw PolyError("zero polynomial");
    Rational best(0);
    for (int k = 0; k < p.degree(); ++k) {
        Rational v = abs(p.coeff(static_cast<std::size_t>(k)) / p.lead());
        if (v > best) best = v;
    }
    return best + 1;
}

}  // namespace zec
