#pragma once

#include <cstddef>
#include <ostream>
#include <random>
#include <vector>

#include <rodpade/poly.hpp>
#include <rodpade/rational.hpp>
#include <rodpade/weyl.hpp>

namespace rodpade
{

// gtest printers.
inline void PrintTo(const Poly &p, std::ostream *os)
{
    *os << p.str();
}

inline void PrintTo(const DiffOp &l, std::ostream *os)
{
    for (std::size_t j = 0; j <= l.order() && !l.is_zero(); ++j) {
        *os << (j ? " + (" : "(") << l.coeff(j).str() << ")d^" << j;
    }
    if (l.is_zero()) {
        *os << "0";
    }
}

} // namespace rodpade

namespace rodpade::testing
{

inline std::mt19937_64 &rng()
{
    static std::mt19937_64 gen(20240601);
    return gen;
}

inline long uniform(long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng());
}

inline Rational random_rational(long span = 9)
{
    const long num = uniform(-span, span);
    const long den = uniform(1, span);
    return make_rational(num, den);
}

inline Rational random_nonzero_rational(long span = 9)
{
    Rational q;
    do {
        q = random_rational(span);
    } while (q == 0);
    return q;
}

/// Degree exactly `deg` (nonzero leading coefficient).
inline Poly random_poly_exact(std::size_t deg)
{
    std::vector<Rational> c(deg + 1);
    for (std::size_t i = 0; i < deg; ++i) {
        c[i] = random_rational();
    }
    c[deg] = random_nonzero_rational();
    return Poly(std::move(c));
}

inline Poly random_poly(std::size_t max_deg)
{
    return random_poly_exact(static_cast<std::size_t>(uniform(0, static_cast<long>(max_deg))));
}

/// Nonzero operator with order <= max_order and coefficient degree <= max_deg.
inline DiffOp random_op(std::size_t max_order, std::size_t max_deg)
{
    const auto order = static_cast<std::size_t>(uniform(0, static_cast<long>(max_order)));
    std::vector<Poly> b(order + 1);
    for (std::size_t j = 0; j < order; ++j) {
        if (uniform(0, 3) > 0) {
            b[j] = random_poly(max_deg);
        }
    }
    b[order] = random_poly(max_deg);
    return DiffOp(std::move(b));
}

inline Poly z_pow(std::size_t k)
{
    return Poly::monomial(Rational(1), k);
}

inline Rational q(long num, long den = 1)
{
    return make_rational(num, den);
}

} // namespace rodpade::testing
