#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "laurent.hpp"

namespace border3 {

// Text format for scalars. A value is a sum of monomials "c*w^j*e^k" where c is
// a rational ("p" or "p/q"), w is the primitive root of unity of the ambient
// order and e is epsilon. Monomials are emitted with e-exponent descending,
// then w-exponent descending; a unit coefficient is omitted when a w or e
// factor is present. Examples: "1/2*w^1 - 3", "2*e^-3", "e^1 + 1".

namespace detail {

inline std::string monomial_text(const Rational& c, unsigned w_power, int e_power)
{
    std::string factors;
    if (w_power != 0) {
        factors = "w^" + std::to_string(w_power);
    }
    if (e_power != 0) {
        if (!factors.empty()) {
            factors += '*';
        }
        factors += "e^" + std::to_string(e_power);
    }
    if (factors.empty()) {
        return to_string(c);
    }
    if (c == 1) {
        return factors;
    }
    if (c == -1) {
        return "-" + factors;
    }
    return to_string(c) + "*" + factors;
}

inline void append_term(std::string& out, const std::string& term)
{
    if (out.empty()) {
        out = term;
    } else if (term.front() == '-') {
        out += " - ";
        out.append(term, 1, std::string::npos);
    } else {
        out += " + ";
        out += term;
    }
}

inline void append_cyclo(std::string& out, const CycloElem& c, int e_power)
{
    auto coeffs = c.coeffs();
    for (std::size_t j = coeffs.size(); j-- > 0;) {
        if (coeffs[j] != 0) {
            append_term(out, monomial_text(coeffs[j], static_cast<unsigned>(j), e_power));
        }
    }
}

} // namespace detail

inline std::string to_string(const CycloElem& c)
{
    std::string out;
    detail::append_cyclo(out, c, 0);
    return out.empty() ? "0" : out;
}

/// Serializes with every coefficient lifted to `order` (which must be a multiple of value.order()).
inline std::string to_string(const LaurentScalar& value, unsigned order)
{
    std::string out;
    for (auto it = value.terms().rbegin(); it != value.terms().rend(); ++it) {
        detail::append_cyclo(out, it->second.lift(order), it->first);
    }
    return out.empty() ? "0" : out;
}

inline std::string to_string(const LaurentScalar& value)
{
    return to_string(value, value.order());
}

namespace detail {

class ScalarParser {
public:
    ScalarParser(std::string_view text, unsigned order) : text_(text), order_(order) {}

    LaurentScalar parse()
    {
        LaurentScalar result;
        skip_ws();
        if (pos_ == text_.size()) {
            fail("empty scalar");
        }
        bool first = true;
        while (true) {
            skip_ws();
            if (pos_ == text_.size()) {
                break;
            }
            bool negative = false;
            if (peek() == '+' || peek() == '-') {
                negative = peek() == '-';
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            LaurentScalar term = parse_term();
            result += negative ? -term : term;
            first = false;
        }
        return result;
    }

private:
    LaurentScalar parse_term()
    {
        CycloElem coeff(Rational(1), order_);
        int e_power = 0;
        while (true) {
            skip_ws();
            if (pos_ == text_.size()) {
                fail("dangling factor");
            }
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
                coeff = coeff.scaled(parse_rational_literal());
            } else if (c == 'w') {
                ++pos_;
                long k = parse_optional_exponent(false);
                if (totient(order_) < 2) {
                    fail("'w' used without a cyclotomic order >= 3");
                }
                coeff *= CycloElem::root_of_unity(order_, k);
            } else if (c == 'e') {
                ++pos_;
                e_power += static_cast<int>(parse_optional_exponent(true));
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
            skip_ws();
            if (pos_ < text_.size() && peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        return LaurentScalar(coeff, e_power);
    }

    Rational parse_rational_literal()
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek())) != 0) {
            ++pos_;
        }
        if (pos_ < text_.size() && peek() == '/') {
            ++pos_;
            std::size_t den_start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek())) != 0) {
                ++pos_;
            }
            if (den_start == pos_) {
                fail("missing denominator");
            }
        }
        return parse_rational(text_.substr(start, pos_ - start));
    }

    long parse_optional_exponent(bool allow_negative)
    {
        skip_ws();
        if (pos_ == text_.size() || peek() != '^') {
            return 1;
        }
        ++pos_;
        skip_ws();
        bool negative = false;
        if (pos_ < text_.size() && (peek() == '-' || peek() == '+')) {
            negative = peek() == '-';
            if (negative && !allow_negative) {
                fail("negative exponent on w");
            }
            ++pos_;
        }
        std::size_t start = pos_;
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(peek())) != 0) {
            value = value * 10 + (peek() - '0');
            if (value > 1000000) {
                fail("exponent too large");
            }
            ++pos_;
        }
        if (start == pos_) {
            fail("missing exponent");
        }
        return negative ? -value : value;
    }

    char peek() const { return text_[pos_]; }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw parse_error("scalar '" + std::string(text_) + "': " + what + " at offset " + std::to_string(pos_));
    }

    std::string_view text_;
    unsigned order_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses a scalar string; `w` denotes the primitive root of unity of the given order.
inline LaurentScalar parse_scalar(std::string_view text, unsigned order = 1)
{
    return detail::ScalarParser(text, order).parse();
}

} // namespace border3
