#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <rodpade/errors.hpp>
#include <rodpade/poly.hpp>
#include <rodpade/rational.hpp>

namespace rodpade
{

/// Truncation of a series in (1/z) K[[1/z]].
///
/// coeffs()[i] is the coefficient of z^-(start + i). Every stored
/// coefficient is exact and nothing past them is known, unless the tail
/// is flagged exact, in which case every later coefficient is zero.
class LaurentTail
{
public:
    LaurentTail() : exact_(true) {}

    LaurentTail(long start, std::vector<Rational> coeffs, bool exact = false)
        : start_(start), c_(std::move(coeffs)), exact_(exact)
    {
        if (start_ < 1) {
            throw std::invalid_argument("LaurentTail start must be >= 1");
        }
    }

    /// sum_k f[k] z^-(k+1), i.e. the series whose moments are f.
    static LaurentTail from_moments(std::vector<Rational> f, bool exact = false)
    {
        return LaurentTail(1, std::move(f), exact);
    }

    static LaurentTail zero()
    {
        return LaurentTail();
    }

    long start() const
    {
        return start_;
    }

    const std::vector<Rational> &coeffs() const
    {
        return c_;
    }

    /// Number of guaranteed coefficients after start.
    std::size_t depth() const
    {
        return c_.size();
    }

    bool exact() const
    {
        return exact_;
    }

    /// Smallest k whose coefficient of z^-k is unknown; max() for exact tails.
    long known_below() const
    {
        return exact_ ? std::numeric_limits<long>::max() : start_ + static_cast<long>(c_.size());
    }

    bool is_known(long k) const
    {
        return k < known_below();
    }

    /// Coefficient of z^-k, k >= 1.
    Rational coeff_at(long k) const
    {
        if (k < start_) {
            return Rational(0);
        }
        const auto i = static_cast<std::size_t>(k - start_);
        if (i < c_.size()) {
            return c_[i];
        }
        if (exact_) {
            return Rational(0);
        }
        throw InsufficientDepth("coefficient of z^-" + std::to_string(k) + " is beyond the known depth");
    }

    /// The same series re-indexed from z^-1, with `count` known coefficients.
    std::vector<Rational> dense(std::size_t count) const
    {
        std::vector<Rational> out(count);
        for (std::size_t i = 0; i < count; ++i) {
            out[i] = coeff_at(static_cast<long>(i) + 1);
        }
        return out;
    }

    /// Moments f_k = coefficient of z^-(k+1), for k < count.
    std::vector<Rational> moments(std::size_t count) const
    {
        return dense(count);
    }

    /// Keeps the coefficients of z^-k for k <= max_k only (never exact).
    LaurentTail truncated(long max_k) const
    {
        std::vector<Rational> v;
        for (long k = start_; k <= max_k && is_known(k); ++k) {
            v.push_back(coeff_at(k));
        }
        return LaurentTail(start_, std::move(v), false);
    }

    LaurentTail operator-() const
    {
        LaurentTail t = *this;
        for (auto &x : t.c_) {
            x = -x;
        }
        return t;
    }

    LaurentTail scaled(const Rational &s) const
    {
        LaurentTail t = *this;
        for (auto &x : t.c_) {
            x *= s;
        }
        return t;
    }

    /// d/dz, term by term: z^-k -> -k z^-(k+1).
    LaurentTail derivative() const
    {
        std::vector<Rational> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            v[i] = c_[i] * -(start_ + static_cast<long>(i));
        }
        return LaurentTail(start_ + 1, std::move(v), exact_);
    }

    friend LaurentTail operator+(const LaurentTail &a, const LaurentTail &b)
    {
        const long lo = std::min(a.start_, b.start_);
        const bool exact = a.exact_ && b.exact_;
        long hi; // exclusive
        if (exact) {
            hi = std::max(a.start_ + static_cast<long>(a.c_.size()), b.start_ + static_cast<long>(b.c_.size()));
        } else {
            hi = std::min(a.known_below(), b.known_below());
        }
        std::vector<Rational> v;
        for (long k = lo; k < hi; ++k) {
            v.push_back(a.coeff_at(k) + b.coeff_at(k));
        }
        return LaurentTail(lo, std::move(v), exact);
    }

    friend LaurentTail operator-(const LaurentTail &a, const LaurentTail &b)
    {
        return a + (-b);
    }

private:
    long start_ = 1;
    std::vector<Rational> c_;
    bool exact_ = false;
};

/// Result of ord_inf: a value, infinity, or only a lower bound when the
/// known coefficients all vanish but the tail is not asserted exact.
struct OrdInf {
    enum class Kind { finite, infinity, at_least };
    Kind kind = Kind::infinity;
    long value = 0;

    static OrdInf finite(long v)
    {
        return {Kind::finite, v};
    }
    static OrdInf infinity()
    {
        return {Kind::infinity, 0};
    }
    static OrdInf at_least(long v)
    {
        return {Kind::at_least, v};
    }

    /// True when ord >= bound is certain.
    bool at_least_value(long bound) const
    {
        return kind == Kind::infinity || value >= bound;
    }

    friend bool operator==(const OrdInf &, const OrdInf &) = default;
};

inline OrdInf ord_inf(const LaurentTail &f)
{
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (f.coeffs()[i] != 0) {
            return OrdInf::finite(f.start() + static_cast<long>(i));
        }
    }
    if (f.exact()) {
        return OrdInf::infinity();
    }
    return OrdInf::at_least(f.known_below());
}

/// A series split into its polynomial part and its tail in (1/z) K[[1/z]].
struct SplitSeries {
    Poly polynomial;
    LaurentTail tail;
};

/// P(z) f(z), split into polynomial part and tail. The tail carries only
/// coefficients that are fully determined by the known part of f; throws
/// InsufficientDepth when the polynomial part itself is undetermined.
inline SplitSeries laurent_mul_poly(const LaurentTail &f, const Poly &p)
{
    if (p.is_zero()) {
        return {Poly{}, LaurentTail::zero()};
    }
    const long d = p.degree().value();
    const long s = f.start();
    const long known = f.known_below(); // exponents -k with k >= known are unknown in f
    // f coefficient of z^-k times p_j z^j lands on z^(j-k).
    // Unknown contributions reach exponents <= d - known.
    if (!f.exact() && d - known >= 0) {
        throw InsufficientDepth("tail depth too small to determine the polynomial part of P*f");
    }
    // Polynomial part: exponents 0..d-s.
    std::vector<Rational> poly_part;
    if (d - s >= 0) {
        poly_part.resize(static_cast<std::size_t>(d - s + 1));
    }
    // Tail: exponent -k for k in [1, k_max).
    const long k_end = f.exact() ? s + static_cast<long>(f.depth()) : known - d;
    std::vector<Rational> tail(k_end > 1 ? static_cast<std::size_t>(k_end - 1) : 0);
    const auto &c = p.coeffs();
    for (std::size_t i = 0; i < f.depth(); ++i) {
        const Rational &fc = f.coeffs()[i];
        if (fc == 0) {
            continue;
        }
        const long k = s + static_cast<long>(i);
        for (std::size_t j = 0; j < c.size(); ++j) {
            const long e = static_cast<long>(j) - k;
            if (e >= 0) {
                poly_part[static_cast<std::size_t>(e)] += c[j] * fc;
            } else if (-e < k_end) {
                tail[static_cast<std::size_t>(-e - 1)] += c[j] * fc;
            }
        }
    }
    return {Poly(std::move(poly_part)), LaurentTail(1, std::move(tail), f.exact())};
}

/// Product of two tails; the result lies in z^-2 K[[1/z]] and keeps only the
/// coefficients determined by the known parts of both factors.
inline LaurentTail laurent_mul(const LaurentTail &f, const LaurentTail &g)
{
    const long start = f.start() + g.start();
    long end; // exclusive bound on k for z^-k
    if (f.exact() && g.exact()) {
        end = start + static_cast<long>(f.depth() + g.depth());
    } else {
        // Unknown g coefficients (k >= g.known_below) pair with f's smallest index f.start().
        const long from_g = g.exact() ? std::numeric_limits<long>::max() : f.start() + g.known_below();
        const long from_f = f.exact() ? std::numeric_limits<long>::max() : g.start() + f.known_below();
        end = std::min(from_g, from_f);
    }
    std::vector<Rational> out(end > start ? static_cast<std::size_t>(end - start) : 0);
    for (std::size_t i = 0; i < f.depth(); ++i) {
        if (f.coeffs()[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < g.depth(); ++j) {
            const std::size_t idx = i + j;
            if (idx >= out.size()) {
                break;
            }
            out[idx] += f.coeffs()[i] * g.coeffs()[j];
        }
    }
    return LaurentTail(start, std::move(out), f.exact() && g.exact());
}

} // namespace rodpade
