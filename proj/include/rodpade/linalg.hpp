#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <rodpade/poly.hpp>
#include <rodpade/rational.hpp>

namespace rodpade
{

/// Row-major dense matrix over an exact ring.
template <typename T>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const
    {
        return rows_;
    }
    std::size_t cols() const
    {
        return cols_;
    }

    T &operator()(std::size_t i, std::size_t j)
    {
        return data_[i * cols_ + j];
    }
    const T &operator()(std::size_t i, std::size_t j) const
    {
        return data_[i * cols_ + j];
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) {
            return;
        }
        for (std::size_t j = 0; j < cols_; ++j) {
            std::swap((*this)(a, j), (*this)(b, j));
        }
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

namespace detail
{

inline Rational exact_div(const Rational &a, const Rational &b)
{
    return a / b;
}

inline Poly exact_div(const Poly &a, const Poly &b)
{
    auto [q, r] = Poly::divmod(a, b);
    if (!r.is_zero()) {
        throw std::logic_error("Bareiss step produced an inexact polynomial division");
    }
    return q;
}

inline Rational unit(const Rational &)
{
    return Rational(1);
}

inline Poly unit(const Poly &)
{
    return Poly::constant(Rational(1));
}

inline bool is_zero(const Rational &x)
{
    return x == 0;
}

inline bool is_zero(const Poly &p)
{
    return p.is_zero();
}

} // namespace detail

/// Determinant by fraction-free (Bareiss) elimination. Works over any exact
/// integral domain with exact division: Q and Q[z] here.
template <typename T>
T bareiss_determinant(Matrix<T> a)
{
    const std::size_t n = a.rows();
    if (a.cols() != n) {
        throw std::invalid_argument("determinant of a non-square matrix");
    }
    if (n == 0) {
        return detail::unit(T{});
    }
    bool negate = false;
    T prev = detail::unit(T{});
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (detail::is_zero(a(k, k))) {
            std::size_t pivot = k + 1;
            while (pivot < n && detail::is_zero(a(pivot, k))) {
                ++pivot;
            }
            if (pivot == n) {
                return T{};
            }
            a.swap_rows(k, pivot);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                T num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                a(i, j) = detail::exact_div(num, prev);
            }
            a(i, k) = T{};
        }
        prev = a(k, k);
    }
    T det = a(n - 1, n - 1);
    if (negate) {
        det = -det;
    }
    return det;
}

/// Rank over Q by Gaussian elimination.
inline std::size_t rank(Matrix<Rational> a)
{
    std::size_t r = 0;
    for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
        std::size_t pivot = r;
        while (pivot < a.rows() && a(pivot, col) == 0) {
            ++pivot;
        }
        if (pivot == a.rows()) {
            continue;
        }
        a.swap_rows(r, pivot);
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, col) == 0) {
                continue;
            }
            const Rational factor = a(i, col) / a(r, col);
            for (std::size_t j = col; j < a.cols(); ++j) {
                a(i, j) -= factor * a(r, j);
            }
        }
        ++r;
    }
    return r;
}

/// Some solution x of A x = b over Q (free variables set to zero), or
/// nullopt when the system is inconsistent.
inline std::optional<std::vector<Rational>> solve_exact(Matrix<Rational> a, std::vector<Rational> b)
{
    if (b.size() != a.rows()) {
        throw std::invalid_argument("right-hand side size mismatch");
    }
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = r;
        while (pivot < rows && a(pivot, col) == 0) {
            ++pivot;
        }
        if (pivot == rows) {
            continue;
        }
        a.swap_rows(r, pivot);
        std::swap(b[r], b[pivot]);
        const Rational inv = 1 / a(r, col);
        for (std::size_t j = col; j < cols; ++j) {
            a(r, j) *= inv;
        }
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, col) == 0) {
                continue;
            }
            const Rational factor = a(i, col);
            for (std::size_t j = col; j < cols; ++j) {
                a(i, j) -= factor * a(r, j);
            }
            b[i] -= factor * b[r];
        }
        pivot_cols.push_back(col);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (b[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Rational> x(cols);
    for (std::size_t i = 0; i < r; ++i) {
        x[pivot_cols[i]] = b[i];
    }
    return x;
}

/// The unique polynomial of degree < xs.size() through (xs[i], ys[i])
/// (Newton divided differences).
inline Poly interpolate(const std::vector<Rational> &xs, const std::vector<Rational> &ys)
{
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("interpolation nodes and values differ in size");
    }
    const std::size_t n = xs.size();
    std::vector<Rational> dd = ys;
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
            if (i == level) {
                break;
            }
        }
    }
    Poly result;
    for (std::size_t i = n; i-- > 0;) {
        result = result * Poly{-xs[i], Rational(1)} + Poly::constant(dd[i]);
    }
    return result;
}

} // namespace rodpade
