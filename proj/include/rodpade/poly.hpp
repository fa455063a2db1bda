#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <rodpade/rational.hpp>

namespace rodpade
{

/// Degree of a univariate polynomial. The zero polynomial has degree
/// minus infinity, which absorbs under addition so that
/// deg(PQ) = deg P + deg Q holds without exceptions.
class Degree
{
public:
    constexpr Degree() = default;
    constexpr explicit Degree(long value) : value_(value), finite_(true) {}

    static constexpr Degree minus_infinity()
    {
        return Degree{};
    }

    constexpr bool is_minus_infinity() const
    {
        return !finite_;
    }

    constexpr long value() const
    {
        if (!finite_) {
            throw std::domain_error("degree of the zero polynomial has no integer value");
        }
        return value_;
    }

    friend constexpr Degree operator+(Degree a, Degree b)
    {
        if (!a.finite_ || !b.finite_) {
            return minus_infinity();
        }
        return Degree(a.value_ + b.value_);
    }

    friend constexpr bool operator==(Degree a, Degree b)
    {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }

    friend constexpr std::strong_ordering operator<=>(Degree a, Degree b)
    {
        if (!a.finite_ || !b.finite_) {
            return a.finite_ <=> b.finite_;
        }
        return a.value_ <=> b.value_;
    }

    std::string str() const
    {
        return finite_ ? std::to_string(value_) : "-inf";
    }

private:
    long value_ = 0;
    bool finite_ = false;
};

/// Dense univariate polynomial over Q; coeffs()[i] is the coefficient of z^i.
/// The highest stored coefficient is never zero; the zero polynomial is empty.
class Poly
{
public:
    Poly() = default;

    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs))
    {
        trim();
    }

    Poly(std::initializer_list<Rational> coeffs) : c_(coeffs)
    {
        trim();
    }

    static Poly constant(const Rational &c)
    {
        return Poly(std::vector<Rational>{c});
    }

    /// c z^k
    static Poly monomial(const Rational &c, std::size_t k)
    {
        std::vector<Rational> v(k + 1);
        v[k] = c;
        return Poly(std::move(v));
    }

    const std::vector<Rational> &coeffs() const
    {
        return c_;
    }

    /// Coefficient of z^i (zero beyond the degree).
    Rational coeff(std::size_t i) const
    {
        return i < c_.size() ? c_[i] : Rational(0);
    }

    bool is_zero() const
    {
        return c_.empty();
    }

    Degree degree() const
    {
        return c_.empty() ? Degree::minus_infinity() : Degree(static_cast<long>(c_.size()) - 1);
    }

    /// Number of stored coefficients (deg + 1, or 0 for the zero polynomial).
    std::size_t size() const
    {
        return c_.size();
    }

    Rational leading() const
    {
        return c_.empty() ? Rational(0) : c_.back();
    }

    Rational operator()(const Rational &x) const
    {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc = acc * x + *it;
        }
        return acc;
    }

    /// k-th derivative.
    Poly derive(std::size_t k = 1) const
    {
        if (k >= c_.size()) {
            return {};
        }
        std::vector<Rational> out(c_.size() - k);
        for (std::size_t i = k; i < c_.size(); ++i) {
            // i (i-1) ... (i-k+1)
            out[i - k] = c_[i] * Rational(falling(i, k));
        }
        return Poly(std::move(out));
    }

    /// z^k * this
    Poly shift(std::size_t k) const
    {
        if (c_.empty() || k == 0) {
            return *this;
        }
        std::vector<Rational> out(k, Rational(0));
        out.insert(out.end(), c_.begin(), c_.end());
        Poly p;
        p.c_ = std::move(out);
        return p;
    }

    Poly operator-() const
    {
        Poly p = *this;
        for (auto &x : p.c_) {
            x = -x;
        }
        return p;
    }

    Poly &operator+=(const Poly &o)
    {
        if (o.c_.size() > c_.size()) {
            c_.resize(o.c_.size());
        }
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            c_[i] += o.c_[i];
        }
        trim();
        return *this;
    }

    Poly &operator-=(const Poly &o)
    {
        if (o.c_.size() > c_.size()) {
            c_.resize(o.c_.size());
        }
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            c_[i] -= o.c_[i];
        }
        trim();
        return *this;
    }

    Poly &operator*=(const Rational &s)
    {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto &x : c_) {
            x *= s;
        }
        return *this;
    }

    friend Poly operator+(Poly a, const Poly &b)
    {
        a += b;
        return a;
    }

    friend Poly operator-(Poly a, const Poly &b)
    {
        a -= b;
        return a;
    }

    friend Poly operator*(Poly a, const Rational &s)
    {
        a *= s;
        return a;
    }

    friend Poly operator*(const Rational &s, Poly a)
    {
        a *= s;
        return a;
    }

    friend Poly operator*(const Poly &a, const Poly &b)
    {
        if (a.c_.empty() || b.c_.empty()) {
            return {};
        }
        std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                out[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Poly(std::move(out));
    }

    Poly &operator*=(const Poly &o)
    {
        *this = *this * o;
        return *this;
    }

    friend bool operator==(const Poly &a, const Poly &b)
    {
        return a.c_ == b.c_;
    }

    /// Euclidean division: returns (q, r) with a = q b + r and deg r < deg b.
    static std::pair<Poly, Poly> divmod(const Poly &a, const Poly &b)
    {
        if (b.is_zero()) {
            throw std::domain_error("polynomial division by zero");
        }
        std::vector<Rational> rem = a.c_;
        const std::size_t db = b.c_.size() - 1;
        if (rem.size() <= db) {
            return {Poly{}, a};
        }
        std::vector<Rational> quot(rem.size() - db);
        const Rational inv_lead = 1 / b.c_.back();
        for (std::size_t i = rem.size(); i-- > db;) {
            if (rem[i] == 0) {
                continue;
            }
            Rational q = rem[i] * inv_lead;
            quot[i - db] = q;
            for (std::size_t j = 0; j <= db; ++j) {
                rem[i - db + j] -= q * b.c_[j];
            }
        }
        rem.resize(db);
        return {Poly(std::move(quot)), Poly(std::move(rem))};
    }

    /// Human-readable form in the variable `var`, highest power first.
    std::string str(const std::string &var = "z") const
    {
        if (c_.empty()) {
            return "0";
        }
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            const Rational &c = c_[i];
            if (c == 0) {
                continue;
            }
            const bool neg = c < 0;
            if (out.empty()) {
                out += neg ? "-" : "";
            } else {
                out += neg ? " - " : " + ";
            }
            const Rational mag = neg ? Rational(-c) : c;
            if (i == 0 || mag != 1) {
                out += to_string(mag);
                if (i > 0) {
                    out += "*";
                }
            }
            if (i > 0) {
                out += var;
                if (i > 1) {
                    out += "^" + std::to_string(i);
                }
            }
        }
        return out;
    }

private:
    static Integer falling(std::size_t i, std::size_t k)
    {
        Integer r(1);
        for (std::size_t u = 0; u < k; ++u) {
            r *= static_cast<unsigned long>(i - u);
        }
        return r;
    }

    void trim()
    {
        while (!c_.empty() && c_.back() == 0) {
            c_.pop_back();
        }
    }

    std::vector<Rational> c_;
};

enum class PolyOp { add, sub, mul };

inline Poly poly_arith(const Poly &p, const Poly &q, PolyOp op)
{
    switch (op) {
        case PolyOp::add:
            return p + q;
        case PolyOp::sub:
            return p - q;
        case PolyOp::mul:
            return p * q;
    }
    throw std::invalid_argument("unknown polynomial operation");
}

inline Poly poly_derive(const Poly &p, std::size_t k)
{
    return p.derive(k);
}

/// max_i |c_i| over an archimedean place; zero for the zero polynomial.
inline Rational max_abs_coeff(const Poly &p)
{
    Rational m(0);
    for (const auto &c : p.coeffs()) {
        m = std::max(m, abs(c));
    }
    return m;
}

} // namespace rodpade
