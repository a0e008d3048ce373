#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace border3 {

/// Arbitrary-precision rational, always kept canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown for malformed textual input (scalars, polynomials, circuit files).
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r)
{
    return r.get_str(10);
}

inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty()) {
        throw parse_error("empty rational");
    }
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool seen_slash = false;
    bool digit_before = false;
    bool digit_after = false;
    for (std::size_t i = start; i < s.size(); ++i) {
        char c = s[i];
        if (c == '/') {
            if (seen_slash) {
                throw parse_error("malformed rational '" + s + "'");
            }
            seen_slash = true;
        } else if (c >= '0' && c <= '9') {
            (seen_slash ? digit_after : digit_before) = true;
        } else {
            throw parse_error("malformed rational '" + s + "'");
        }
    }
    if (!digit_before || (seen_slash && !digit_after)) {
        throw parse_error("malformed rational '" + s + "'");
    }
    if (s[0] == '+') {
        s.erase(0, 1);
    }
    Rational r;
    if (r.set_str(s, 10) != 0) {
        throw parse_error("malformed rational '" + s + "'");
    }
    if (r.get_den() == 0) {
        throw parse_error("zero denominator in '" + s + "'");
    }
    r.canonicalize();
    return r;
}

inline Rational factorial(unsigned n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

inline Rational pow(const Rational& base, unsigned e)
{
    Rational result(1);
    Rational b = base;
    while (e != 0) {
        if (e & 1U) {
            result *= b;
        }
        e >>= 1U;
        if (e != 0) {
            b *= b;
        }
    }
    return result;
}

inline Integer binomial(unsigned n, unsigned k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace border3
