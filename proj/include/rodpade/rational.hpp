#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace rodpade
{

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical rational num/den. Throws std::invalid_argument when den == 0.
inline Rational make_rational(const Integer &num, const Integer &den)
{
    if (den == 0) {
        throw std::invalid_argument("zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// "p/q", or "p" when q == 1.
inline std::string to_string(const Rational &q)
{
    return q.get_str();
}

inline std::string to_string(const Integer &z)
{
    return z.get_str();
}

/// Parses "p", "-p", "p/q" (surrounding blanks allowed). Throws
/// std::invalid_argument on malformed input or a zero denominator.
inline Rational parse_rational(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
            s.remove_prefix(1);
        }
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
            s.remove_suffix(1);
        }
        return s;
    };
    auto parse_int = [](std::string_view s) {
        std::string str(s);
        std::size_t digits_from = (!str.empty() && (str[0] == '-' || str[0] == '+')) ? 1 : 0;
        if (str.size() == digits_from) {
            throw std::invalid_argument("malformed rational");
        }
        for (std::size_t i = digits_from; i < str.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(str[i]))) {
                throw std::invalid_argument("malformed rational: '" + str + "'");
            }
        }
        if (str[0] == '+') {
            str.erase(0, 1);
        }
        return Integer(str, 10);
    };
    text = trim(text);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text));
    }
    return make_rational(parse_int(trim(text.substr(0, slash))), parse_int(trim(text.substr(slash + 1))));
}

inline Integer factorial(unsigned long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer ipow(const Integer &base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// x^e for any integer e; x must be nonzero when e < 0.
inline Rational pow(const Rational &x, long e)
{
    if (e < 0) {
        if (x == 0) {
            throw std::domain_error("negative power of zero");
        }
        return pow(Rational(1) / x, -e);
    }
    Rational r(ipow(x.get_num(), static_cast<unsigned long>(e)), ipow(x.get_den(), static_cast<unsigned long>(e)));
    return r; // already canonical: gcd(num^e, den^e) == 1
}

/// Rising factorial (x)_j = x (x+1) ... (x+j-1), with (x)_0 = 1.
inline Rational rising(const Rational &x, unsigned long j)
{
    Rational r(1);
    for (unsigned long u = 0; u < j; ++u) {
        r *= x + u;
    }
    return r;
}

inline Rational abs(const Rational &x)
{
    return x < 0 ? Rational(-x) : x;
}

/// p-adic valuation of a nonzero integer.
inline long valuation(const Integer &z, const Integer &p)
{
    if (z == 0) {
        throw std::domain_error("valuation of zero");
    }
    Integer rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t()));
}

/// p-adic valuation of a rational; nullopt stands for +infinity (x == 0).
inline std::optional<long> valuation(const Rational &x, const Integer &p)
{
    if (x == 0) {
        return std::nullopt;
    }
    return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

} // namespace rodpade
