#pragma once

#include <string>
#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace schedlab {

/// Exact arbitrary-precision rational scalar.  Always kept in lowest terms
/// with a positive denominator; all arithmetic and comparisons are exact.
using Rational = boost::multiprecision::mpq_rational;

/// Arbitrary-precision integer.
using BigInt = boost::multiprecision::mpz_int;

using MatrixXq = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXq = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// Parses "n" or "n/d" (d > 0) into a canonical rational.
/// Throws std::invalid_argument on malformed input or nonpositive denominator.
Rational parse_rational(const std::string& text);

/// Renders in lowest terms, integers without a "/1" suffix.
std::string format_rational(const Rational& value);

/// gcd of two nonnegative rationals: the largest rational dividing both
/// into integers.  gcd(x, 0) = x.
Rational rational_gcd(const Rational& a, const Rational& b);

/// Largest integer k with k*step <= value; step > 0.
BigInt floor_multiple(const Rational& value, const Rational& step);

/// True iff value is an integer multiple of step.
bool is_multiple_of(const Rational& value, const Rational& step);

namespace detail {
inline BigInt parse_integer(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty integer");
    const size_t start = text[0] == '-' || text[0] == '+' ? 1 : 0;
    if (start == text.size()) throw std::invalid_argument("empty integer");
    for (size_t i = start; i < text.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(text[i])))
            throw std::invalid_argument("malformed integer");
    return BigInt(text);
}
} // namespace detail

inline Rational parse_rational(const std::string& text) {
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(detail::parse_integer(text));
        BigInt num = detail::parse_integer(text.substr(0, slash));
        BigInt den = detail::parse_integer(text.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("");
        return Rational(num, den); // canonicalizes
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: '" + text + "'");
    }
}

inline std::string format_rational(const Rational& value) {
    return value.str();
}

inline Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a == 0) return b;
    if (b == 0) return a;
    BigInt an = numerator(a), ad = denominator(a);
    BigInt bn = numerator(b), bd = denominator(b);
    BigInt num = gcd(BigInt(an * bd), BigInt(bn * ad));
    return Rational(num, BigInt(ad * bd));
}

inline BigInt floor_multiple(const Rational& value, const Rational& step) {
    Rational q = value / step;
    BigInt n = numerator(q), d = denominator(q);
    BigInt k = n / d;
    if (n < 0 && n % d != 0) k -= 1;
    return k;
}

inline bool is_multiple_of(const Rational& value, const Rational& step) {
    if (step == 0) return value == 0;
    Rational q = value / step;
    return denominator(q) == 1;
}

} // namespace schedlab
