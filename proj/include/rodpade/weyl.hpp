#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <rodpade/errors.hpp>
#include <rodpade/laurent.hpp>
#include <rodpade/poly.hpp>
#include <rodpade/rational.hpp>

namespace rodpade
{

/// Element of the Weyl algebra Q[z, d/dz] in normal form
/// sum_j b_j(z) d^j, coefficients to the left of the derivatives.
class DiffOp
{
public:
    DiffOp() = default;

    explicit DiffOp(std::vector<Poly> coeffs) : b_(std::move(coeffs))
    {
        trim();
    }

    static DiffOp identity()
    {
        return multiplication(Poly::constant(Rational(1)));
    }

    static DiffOp multiplication(Poly p)
    {
        return DiffOp(std::vector<Poly>{std::move(p)});
    }

    /// d/dz
    static DiffOp derivation()
    {
        return term(Poly::constant(Rational(1)), 1);
    }

    /// p(z) d^j
    static DiffOp term(Poly p, std::size_t j)
    {
        std::vector<Poly> v(j + 1);
        v[j] = std::move(p);
        return DiffOp(std::move(v));
    }

    bool is_zero() const
    {
        return b_.empty();
    }

    /// Highest derivative order; 0 for the zero operator.
    std::size_t order() const
    {
        return b_.empty() ? 0 : b_.size() - 1;
    }

    /// b_j, the coefficient of d^j in normal form.
    const Poly &coeff(std::size_t j) const
    {
        static const Poly zero;
        return j < b_.size() ? b_[j] : zero;
    }

    const std::vector<Poly> &coeffs() const
    {
        return b_;
    }

    /// a_j in the alternating convention L = sum_j (-1)^j a_j(z) d^j.
    Poly paper_coeff(std::size_t j) const
    {
        return (j % 2 == 0) ? coeff(j) : -coeff(j);
    }

    DiffOp &operator+=(const DiffOp &o)
    {
        if (o.b_.size() > b_.size()) {
            b_.resize(o.b_.size());
        }
        for (std::size_t j = 0; j < o.b_.size(); ++j) {
            b_[j] += o.b_[j];
        }
        trim();
        return *this;
    }

    DiffOp &operator-=(const DiffOp &o)
    {
        return *this += -o;
    }

    DiffOp operator-() const
    {
        DiffOp r = *this;
        for (auto &p : r.b_) {
            p = -p;
        }
        return r;
    }

    friend DiffOp operator+(DiffOp a, const DiffOp &b)
    {
        a += b;
        return a;
    }

    friend DiffOp operator-(DiffOp a, const DiffOp &b)
    {
        a -= b;
        return a;
    }

    friend DiffOp operator*(const Rational &s, DiffOp a)
    {
        for (auto &p : a.b_) {
            p *= s;
        }
        a.trim();
        return a;
    }

    friend bool operator==(const DiffOp &, const DiffOp &) = default;

private:
    void trim()
    {
        while (!b_.empty() && b_.back().is_zero()) {
            b_.pop_back();
        }
    }

    std::vector<Poly> b_;
};

/// Normal form of L1 o L2, using d^i a(z) = sum_s C(i,s) a^(s)(z) d^(i-s).
inline DiffOp op_compose(const DiffOp &l1, const DiffOp &l2)
{
    if (l1.is_zero() || l2.is_zero()) {
        return {};
    }
    std::vector<Poly> out(l1.order() + l2.order() + 1);
    for (std::size_t i = 0; i <= l1.order(); ++i) {
        const Poly &a = l1.coeff(i);
        if (a.is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j <= l2.order(); ++j) {
            const Poly &b = l2.coeff(j);
            if (b.is_zero()) {
                continue;
            }
            for (std::size_t s = 0; s <= i; ++s) {
                Poly bs = b.derive(s);
                if (bs.is_zero()) {
                    break;
                }
                out[i - s + j] += (a * bs) * Rational(binomial(i, s));
            }
        }
    }
    return DiffOp(std::move(out));
}

inline DiffOp operator*(const DiffOp &l1, const DiffOp &l2)
{
    return op_compose(l1, l2);
}

/// L . P for a polynomial P.
inline Poly op_apply(const DiffOp &l, const Poly &p)
{
    Poly out;
    for (std::size_t j = 0; j <= l.order() && !l.is_zero(); ++j) {
        if (l.coeff(j).is_zero()) {
            continue;
        }
        Poly dp = p.derive(j);
        if (dp.is_zero()) {
            break;
        }
        out += l.coeff(j) * dp;
    }
    return out;
}

/// L . f for a Laurent tail f, split into (polynomial part, pi(L . f)).
///
/// When `out_depth` is given, the tail must be known at least through
/// z^-out_depth, otherwise InsufficientDepth is thrown; the result is then
/// truncated to exactly that depth. Without it, every determined
/// coefficient is returned.
inline SplitSeries op_apply_laurent(const DiffOp &l, const LaurentTail &f, std::optional<std::size_t> out_depth = {})
{
    Poly poly;
    LaurentTail tail = LaurentTail::zero();
    LaurentTail df = f;
    for (std::size_t j = 0; j <= l.order() && !l.is_zero(); ++j) {
        if (j > 0) {
            df = df.derivative();
        }
        if (l.coeff(j).is_zero()) {
            continue;
        }
        auto part = laurent_mul_poly(df, l.coeff(j));
        poly += part.polynomial;
        tail = tail + part.tail;
    }
    if (out_depth) {
        const long want = static_cast<long>(*out_depth);
        if (!tail.is_known(want)) {
            throw InsufficientDepth("input tail too shallow for the requested output depth");
        }
        if (!tail.exact()) {
            tail = tail.truncated(want);
        }
    }
    return {std::move(poly), std::move(tail)};
}

/// Formal adjoint: sum_j b_j(z) d^j -> sum_j (-1)^j d^j b_j(t), normal-ordered.
inline DiffOp adjoint(const DiffOp &l)
{
    if (l.is_zero()) {
        return {};
    }
    std::vector<Poly> out(l.order() + 1);
    for (std::size_t j = 0; j <= l.order(); ++j) {
        const Poly &b = l.coeff(j);
        if (b.is_zero()) {
            continue;
        }
        const Rational sign = (j % 2 == 0) ? 1 : -1;
        for (std::size_t s = 0; s <= j; ++s) {
            Poly bs = b.derive(s);
            if (bs.is_zero()) {
                break;
            }
            out[j - s] += bs * Rational(sign * binomial(j, s));
        }
    }
    return DiffOp(std::move(out));
}

/// Weight order with weights +1 on z and -1 on d: max_j (deg b_j - j).
inline long ord_weight(const DiffOp &l)
{
    if (l.is_zero()) {
        throw ZeroOperator();
    }
    bool first = true;
    long best = 0;
    for (std::size_t j = 0; j <= l.order(); ++j) {
        const Poly &b = l.coeff(j);
        if (b.is_zero()) {
            continue;
        }
        const long w = b.degree().value() - static_cast<long>(j);
        if (first || w > best) {
            best = w;
            first = false;
        }
    }
    return best;
}

/// Leading symbol S(k) = sum over j with deg a_j - j = d of
/// lc(a_j) (k+d+1)(k+d+2)...(k+d+j), as a polynomial in k. It is the
/// coefficient of t^(k+d) in L* t^k.
inline Poly leading_symbol(const DiffOp &l)
{
    const long d = ord_weight(l);
    Poly s;
    for (std::size_t j = 0; j <= l.order(); ++j) {
        const Poly a = l.paper_coeff(j);
        if (a.is_zero() || a.degree().value() - static_cast<long>(j) != d) {
            continue;
        }
        Poly term = Poly::constant(a.leading());
        for (std::size_t u = 0; u < j; ++u) {
            term *= Poly{Rational(d + 1 + static_cast<long>(u)), Rational(1)};
        }
        s += term;
    }
    return s;
}

/// Fujiwara bound, rounded up to a power of two: every complex root x of p
/// satisfies |x| < bound. The bound is 2B with B the least power of two such
/// that B^i >= |a_{deg-i} / a_deg| for every i.
inline Rational root_bound(const Poly &p)
{
    if (p.is_zero()) {
        throw std::domain_error("root bound of the zero polynomial");
    }
    const std::size_t deg = p.size() - 1;
    const Rational lead = p.leading();
    Integer b(1);
    for (std::size_t i = 1; i <= deg; ++i) {
        Rational ratio = abs(Rational(p.coeffs()[deg - i] / lead));
        if (i == deg) {
            ratio /= 2; // the constant term enters as |a_0 / (2 a_deg)|
        }
        while (Rational(ipow(b, static_cast<unsigned long>(i))) < ratio) {
            b *= 2;
        }
    }
    return Rational(2 * b + 1);
}

struct PropertyPResult {
    bool holds = false;
    long d = 0;
    Poly symbol;                   // S(k)
    std::optional<long> root;      // smallest nonnegative integer root, if any
};

/// Decides whether S(k) != 0 for every integer k >= 0 by testing each
/// integer below root_bound.
inline PropertyPResult property_P(const DiffOp &l)
{
    const long d = ord_weight(l);
    if (d < 1) {
        throw WeightOrderTooSmall(d);
    }
    PropertyPResult res;
    res.d = d;
    res.symbol = leading_symbol(l);
    if (res.symbol.is_zero()) {
        res.root = 0;
        return res;
    }
    const Rational bound = root_bound(res.symbol);
    const Integer limit = bound.get_num() / bound.get_den();
    for (long k = 0; Integer(k) <= limit; ++k) {
        if (res.symbol(Rational(k)) == 0) {
            res.root = k;
            return res;
        }
    }
    res.holds = true;
    return res;
}

} // namespace rodpade
