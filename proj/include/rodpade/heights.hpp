#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <rodpade/rational.hpp>

namespace rodpade
{

/// A place of Q. Over Q every local degree ratio d_v/d is 1.
class Place
{
public:
    static Place infinity()
    {
        return Place(0);
    }

    static Place prime(unsigned long p)
    {
        if (p < 2 || mpz_probab_prime_p(Integer(p).get_mpz_t(), 30) == 0) {
            throw std::invalid_argument("place: " + std::to_string(p) + " is not a prime");
        }
        return Place(p);
    }

    /// "inf" or "p<prime>", e.g. "p3".
    static Place parse(const std::string &text)
    {
        if (text == "inf" || text == "infinity") {
            return infinity();
        }
        if (text.size() > 1 && text[0] == 'p' &&
            std::all_of(text.begin() + 1, text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            return prime(std::stoul(text.substr(1)));
        }
        throw std::invalid_argument("place: expected 'inf' or 'p<prime>', got '" + text + "'");
    }

    bool archimedean() const
    {
        return p_ == 0;
    }

    unsigned long p() const
    {
        return p_;
    }

    /// 1 at the archimedean place, 0 at a prime.
    int epsilon() const
    {
        return archimedean() ? 1 : 0;
    }

    std::string str() const
    {
        return archimedean() ? "inf" : "p" + std::to_string(p_);
    }

    friend bool operator==(const Place &, const Place &) = default;

private:
    explicit Place(unsigned long p) : p_(p) {}
    unsigned long p_;
};

/// |x|_v as an exact rational.
inline Rational abs_v(const Rational &x, const Place &v)
{
    if (v.archimedean() || x == 0) {
        return abs(x);
    }
    return pow(Rational(Integer(v.p())), -*valuation(x, Integer(v.p())));
}

/// log of a positive integer, accurate to double precision at any size.
inline double log_integer(const Integer &z)
{
    if (z <= 0) {
        throw std::domain_error("log of a nonpositive integer");
    }
    long e = 0;
    const double mant = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log(mant) + static_cast<double>(e) * std::log(2.0);
}

inline double log_rational(const Rational &x)
{
    if (x <= 0) {
        throw std::domain_error("log of a nonpositive rational");
    }
    return log_integer(x.get_num()) - log_integer(x.get_den());
}

/// log |x|_v; -infinity for x = 0.
inline double log_abs_v(const Rational &x, const Place &v)
{
    return x == 0 ? -INFINITY : log_rational(abs_v(x, v));
}

/// max{1, |x|_v}.
inline Rational local_height_arg(const Rational &x, const Place &v)
{
    return std::max(Rational(1), abs_v(x, v));
}

/// h_v(x) = log max{1, |x|_v}.
inline double local_height(const Rational &x, const Place &v)
{
    return log_rational(local_height_arg(x, v));
}

/// H_v(x_1, ..., x_k) = max{1, |x_i|_v}.
inline Rational vector_height_arg(const std::vector<Rational> &xs, const Place &v)
{
    Rational h(1);
    for (const auto &x : xs) {
        h = std::max(h, abs_v(x, v));
    }
    return h;
}

inline double local_height(const std::vector<Rational> &xs, const Place &v)
{
    return log_rational(vector_height_arg(xs, v));
}

/// H(x) for a vector over Q: max{1, |x_i|} times the lcm of the denominators.
inline Rational global_height_arg(const std::vector<Rational> &xs)
{
    Integer den(1);
    for (const auto &x : xs) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    }
    return vector_height_arg(xs, Place::infinity()) * Rational(den);
}

inline double global_height(const std::vector<Rational> &xs)
{
    return log_rational(global_height_arg(xs));
}

/// h(a/b) = log max(|a|, |b|) in lowest terms.
inline double global_height(const Rational &x)
{
    return global_height(std::vector<Rational>{x});
}

struct PrimeContribution {
    Integer p;
    long exponent = 0; // p^exponent = max{1, |x|_p}
    double value = 0;  // h_p(x)
};

/// Local heights of x at every place where they are nonzero.
struct HeightProfile {
    Rational x;
    double archimedean = 0;
    std::vector<PrimeContribution> primes; // ascending p
    /// prod_v max{1, |x|_v}, exact.
    Integer product;

    double total() const
    {
        double s = archimedean;
        for (const auto &c : primes) {
            s += c.value;
        }
        return s;
    }
};

/// Prime factorization of |z| >= 1 by trial division; a cofactor with no
/// factor below `trial_limit` is returned as a single entry.
inline std::vector<std::pair<Integer, long>> factorize(Integer z, unsigned long trial_limit = 1000000)
{
    std::vector<std::pair<Integer, long>> out;
    z = abs(z);
    if (z == 0) {
        throw std::domain_error("factorize: zero");
    }
    for (unsigned long d = 2; d <= trial_limit && Integer(d) * d <= z; d += (d == 2 ? 1 : 2)) {
        long e = 0;
        while (mpz_divisible_ui_p(z.get_mpz_t(), d) != 0) {
            z /= d;
            ++e;
        }
        if (e > 0) {
            out.emplace_back(Integer(d), e);
        }
    }
    if (z > 1) {
        out.emplace_back(z, 1);
    }
    return out;
}

/// Only primes dividing the denominator contribute at finite places.
inline HeightProfile height_profile(const Rational &x)
{
    HeightProfile prof;
    prof.x = x;
    prof.archimedean = local_height(x, Place::infinity());
    prof.product = x == 0 ? Integer(1) : Integer(std::max(Rational(1), abs(x)) * Rational(x.get_den()));
    if (x == 0) {
        return prof;
    }
    for (const auto &[p, e] : factorize(x.get_den())) {
        const double value = static_cast<double>(e) * log_integer(p);
        prof.primes.push_back({p, e, value});
    }
    return prof;
}

/// d_n = lcm(1, ..., n), as the product of p^floor(log_p n) over a sieve.
inline Integer lcm_upto(unsigned long n)
{
    if (n < 1) {
        throw std::invalid_argument("lcm_upto: n >= 1 required");
    }
    std::vector<bool> composite(n + 1, false);
    Integer out(1);
    for (unsigned long p = 2; p <= n; ++p) {
        if (composite[p]) {
            continue;
        }
        for (unsigned long q = p * p; q <= n; q += p) {
            composite[q] = true;
        }
        unsigned long pk = p;
        while (pk <= n / p) {
            pk *= p;
        }
        out *= pk;
    }
    return out;
}

} // namespace rodpade
