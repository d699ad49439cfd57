#include "zec/rational.hpp"

#include <cctype>
#include <cmath>

namespace zec {

namespace {

bool valid_int_string(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (!valid_int_string(num) || !valid_int_string(den))
            throw ParseError("bad rational: " + text);
        Rational r{Int(num), Int(den)};
        if (r.get_den() == 0) throw ParseError("zero denominator: " + text);
        r.canonicalize();
        return r;
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        if (!valid_int_string(whole) || frac.empty()) throw ParseError("bad decimal: " + text);
        for (char c : frac)
            if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad decimal: " + text);
        Int scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Int w(whole);
        Int f(frac);
        bool neg = text[0] == '-';
        Int numerator = w * scale + (neg ? -f : f);
        Rational r(numerator, scale);
        r.canonicalize();
        return r;
    }
    if (!valid_int_string(text)) throw ParseError("bad rational: " + text);
    return Rational(Int(text));
}

std::string to_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const Int& value) { return value.get_str(); }

Rational pow(const Rational& value, unsigned exponent) {
    Rational result = 1;
    Rational base = value;
    unsigned e = exponent;
    while (e > 0) {
        if (e & 1u) result *= base;
        base *= base;
        e >>= 1u;
    }
    return result;
}

Int pow(const Int& value, unsigned exponent) {
    Int result;
    mpz_pow_ui(result.get_mpz_t(), value.get_mpz_t(), exponent);
    return result;
}

double log2_approx(const Rational& value) {
    if (value <= 0) throw std::domain_error("log2_approx: value must be positive");
    const Int& num = value.get_num();
    const Int& den = value.get_den();
    signed long nexp = 0, dexp = 0;
    double nmant = mpz_get_d_2exp(&nexp, num.get_mpz_t());
    double dmant = mpz_get_d_2exp(&dexp, den.get_mpz_t());
    return (std::log2(nmant) + static_cast<double>(nexp)) -
           (std::log2(dmant) + static_cast<double>(dexp));
}

}  // namespace zec
