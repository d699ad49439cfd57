#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zec/rational.hpp"

namespace zec {

struct PolyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense univariate polynomial over the rationals, coefficients in ascending
// order with the trailing zero coefficients trimmed.
class Poly {
  public:
    Poly() = default;  // zero polynomial
    explicit Poly(std::vector<Rational> coeffs);

    bool is_zero() const { return coeffs_.empty(); }
    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& coeff(std::size_t k) const;
    const Rational& lead() const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Rational eval(const Rational& x) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rational& c) const;  // c * p

    Poly derivative() const;
    // z^deg * p(1/z): coefficient reversal.
    Poly reversed() const;
    // p(c * z).
    Poly compose_scale(const Rational& c) const;
    Poly monic() const;

    bool operator==(const Poly&) const = default;

  private:
    std::vector<Rational> coeffs_;
};

// Euclidean division; divisor must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
// Monic gcd.
Poly poly_gcd(Poly a, Poly b);

// Exact characteristic polynomial det(xI - A) by the Faddeev-LeVerrier
// trace recursion; always monic of degree n.
Poly charpoly(const std::vector<std::vector<Rational>>& matrix);

// Squarefree decomposition p = prod f_i^i (Yun); returned factors are monic
// with multiplicity > 0 and degree > 0, the leading coefficient is dropped.
std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& p);

// Rational roots with multiplicity, by the rational root theorem on the
// primitive integer form. Gives up (returns partial list and sets the flag
// false) when the boundary coefficients resist factoring at desk scale.
struct RationalRoots {
    std::vector<std::pair<Rational, unsigned>> roots;
    bool complete = true;
};
RationalRoots rational_roots(const Poly& p);

// Distinct real roots of p in the half-open interval (a, b], by Sturm's
// theorem. Endpoints must not be roots for the open/closed distinction to
// matter; callers here always arrange that.
unsigned sturm_count(const Poly& p, const Rational& a, const Rational& b);

// Number of roots (with multiplicity) in the open disk |z| < radius, by the
// Schur-Cohn reduction. Returns nullopt when the radius is degenerate for
// the reduction (some root modulus or a vanishing transform constant term
// hits it); callers perturb and retry.
std::optional<unsigned> roots_in_open_disk(const Poly& p, const Rational& radius);

// Number of roots of a squarefree p on the unit circle |z| = 1, via the
// gcd with the reversed polynomial and a Sturm count of the trace
// polynomial on (-2, 2). Requires p(0) != 0.
unsigned unit_circle_roots(const Poly& p);

// 1 + max |c_k / lead|: every root modulus is strictly below this.
Rational cauchy_bound(const Poly& p);

}  // namespace zec
