#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ebitsim {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// log2 of a positive big integer, accurate to double precision.
inline double log2_big(const BigInt& n) {
    if (n <= 0) throw std::domain_error("log2_big: argument must be positive");
    const auto bits = boost::multiprecision::msb(n);  // floor(log2 n)
    if (bits < 63) return std::log2(n.convert_to<double>());
    // take the top 64 bits as a mantissa
    BigInt top = n >> (bits - 62);
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 62);
}

/// ceil(log2 n) for n >= 1; the qubit count needed to hold n basis states.
inline std::int64_t ceil_log2(const BigInt& n) {
    if (n <= 0) throw std::domain_error("ceil_log2: argument must be positive");
    if (n == 1) return 0;
    const auto bits = boost::multiprecision::msb(n);
    BigInt pow2 = BigInt(1) << bits;
    return (pow2 == n) ? static_cast<std::int64_t>(bits)
                       : static_cast<std::int64_t>(bits) + 1;
}

/// Largest r with 2^r dividing n (n > 0).
inline std::int64_t twoadic_valuation(const BigInt& n) {
    if (n <= 0) throw std::domain_error("twoadic_valuation: argument must be positive");
    return static_cast<std::int64_t>(boost::multiprecision::lsb(n));
}

/// Exact binomial coefficient C(n, k).
inline BigInt binomial(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n)
        throw std::out_of_range("binomial: require 0 <= k <= n");
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        result *= n - i;
        result /= i + 1;  // exact: C(n, i+1) is an integer
    }
    return result;
}

/// Convert a double to its exact rational value. Doubles are dyadic
/// rationals, so this is lossless.
inline BigRat rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("rational_from_double: non-finite");
    if (x == 0.0) return BigRat(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    // 53 mantissa bits
    auto mant_int = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    BigRat r(mant_int);
    if (exp >= 0)
        r *= BigRat(BigInt(1) << exp);
    else
        r /= BigRat(BigInt(1) << -exp);
    return r;
}

inline std::string to_decimal_string(const BigInt& n) { return n.str(); }

}  // namespace ebitsim
