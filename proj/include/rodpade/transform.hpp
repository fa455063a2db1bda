#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <rodpade/errors.hpp>
#include <rodpade/laurent.hpp>
#include <rodpade/linalg.hpp>
#include <rodpade/moments.hpp>
#include <rodpade/poly.hpp>
#include <rodpade/rational.hpp>
#include <rodpade/weyl.hpp>

namespace rodpade
{

/// phi_f((P(z) - P(t)) / (z - t)) as a polynomial in z:
/// Q(z) = sum_u (sum_{k=u+1}^{deg P} p_k f_{k-1-u}) z^u.
inline Poly divided_difference_Q(const MomentSeq &f, const Poly &p)
{
    if (p.size() < 2) {
        return {};
    }
    const std::size_t deg = p.size() - 1;
    const auto mom = f.prefix(deg);
    std::vector<Rational> q(deg);
    for (std::size_t u = 0; u < deg; ++u) {
        for (std::size_t k = u + 1; k <= deg; ++k) {
            q[u] += p.coeffs()[k] * mom[k - 1 - u];
        }
    }
    return Poly(std::move(q));
}

struct RemainderTail {
    LaurentTail tail;
    /// phi(t^k P) = 0 held for every k < n.
    bool precondition_held = true;
};

/// pi(P f) = sum_{k>=0} phi_f(t^k P) z^-(k+1). With the orthogonality
/// precondition the tail starts at z^-(n+1) and carries `depth` coefficients;
/// otherwise it starts at the first nonzero coefficient and runs through the
/// same last index.
inline RemainderTail remainder_tail(const MomentSeq &f, const Poly &p, std::size_t n, std::size_t depth)
{
    if (f.is_zero() || p.is_zero()) {
        return {LaurentTail::zero(), true};
    }
    const auto vals = shifted_phi(f, p, n + depth);
    std::size_t first = n;
    for (std::size_t k = 0; k < n; ++k) {
        if (vals[k] != 0) {
            first = k;
            break;
        }
    }
    std::vector<Rational> coeffs(vals.begin() + static_cast<std::ptrdiff_t>(first), vals.end());
    return {LaurentTail(static_cast<long>(first) + 1, std::move(coeffs), false), first == n};
}

/// One column of a Pade-type table: P and one Q per moment sequence.
struct PadeCell {
    Poly P;
    std::vector<std::pair<std::string, Poly>> Qs;
    std::size_t n = 0;
    std::size_t ell = 0;
};

struct PadeVerification {
    bool degree_ok = false;
    bool kernel_ok = false;
    bool series_ok = false;

    bool ok() const
    {
        return degree_ok && kernel_ok && series_ok;
    }
};

/// Runs both routes: the kernel test phi_f(t^k P) = 0 for k < n and the
/// series test ord(P f - Q) >= n + 1 with Q the stored polynomial. When the
/// stored Q is the divided-difference Q the routes are equivalent, and a
/// disagreement throws std::logic_error.
inline PadeVerification verify_pade_detail(const PadeCell &cell, const std::vector<MomentSeq> &fs, std::size_t n,
                                           long max_degree)
{
    if (cell.Qs.size() != fs.size()) {
        throw std::invalid_argument("verify_pade: one Q per moment sequence required");
    }
    PadeVerification res;
    res.degree_ok = cell.P.is_zero() || cell.P.degree().value() <= max_degree;
    res.kernel_ok = true;
    res.series_ok = true;
    if (cell.P.is_zero()) {
        res.kernel_ok = res.series_ok = false;
        return res;
    }
    const std::size_t d = cell.P.size() - 1;
    for (std::size_t row = 0; row < fs.size(); ++row) {
        const MomentSeq &f = fs[row];
        const Poly &Q = cell.Qs[row].second;

        bool kernel = true;
        for (const auto &v : shifted_phi(f, cell.P, n)) {
            kernel = kernel && v == 0;
        }

        // P f needs moments through index d + n - 1 to fix z^-1 .. z^-n.
        const auto split = laurent_mul_poly(f.tail(d + n + 1), cell.P);
        bool series = split.polynomial == Q;
        if (series) {
            const OrdInf ord = ord_inf(split.tail.truncated(static_cast<long>(n)));
            series = ord.at_least_value(static_cast<long>(n) + 1);
        }

        if (kernel != series && Q == divided_difference_Q(f, cell.P)) {
            throw std::logic_error("verify_pade: kernel and series routes disagree on row " + f.label());
        }
        res.kernel_ok = res.kernel_ok && kernel;
        res.series_ok = res.series_ok && series;
    }
    return res;
}

inline bool verify_pade(const PadeCell &cell, const std::vector<MomentSeq> &fs, std::size_t n, long max_degree)
{
    return verify_pade_detail(cell, fs, n, max_degree).ok();
}

/// Theta_n: det (phi_{f_j}(t^n R* t^l))_{j, l < d}.
inline Rational theta_det(const std::vector<MomentSeq> &fs, const DiffOp &rstar, std::size_t n)
{
    const std::size_t d = fs.size();
    Matrix<Rational> a(d, d);
    for (std::size_t l = 0; l < d; ++l) {
        const Poly col = op_apply(rstar, Poly::monomial(Rational(1), l)).shift(n);
        for (std::size_t j = 0; j < d; ++j) {
            a(j, l) = phi(fs[j], col);
        }
    }
    return bareiss_determinant(std::move(a));
}

/// Full Pade-type table at weight n: columns l = 0..d, P row and one Q row per
/// moment sequence.
struct PadeTable {
    std::size_t n = 0;
    std::size_t M = 0; // number of moment rows, d
    std::vector<std::string> labels;
    std::vector<Poly> P;              // P[l]
    std::vector<std::vector<Poly>> Q; // Q[row][l]

    std::size_t columns() const
    {
        return P.size();
    }

    PadeCell cell(std::size_t ell) const
    {
        PadeCell c;
        c.P = P.at(ell);
        c.n = n;
        c.ell = ell;
        for (std::size_t row = 0; row < labels.size(); ++row) {
            c.Qs.emplace_back(labels[row], Q[row][ell]);
        }
        return c;
    }

    /// Rows: P then the Q rows; columns l = 0..d.
    Matrix<Poly> delta_matrix() const
    {
        Matrix<Poly> a(labels.size() + 1, P.size());
        for (std::size_t l = 0; l < P.size(); ++l) {
            a(0, l) = P[l];
            for (std::size_t row = 0; row < labels.size(); ++row) {
                a(row + 1, l) = Q[row][l];
            }
        }
        return a;
    }
};

/// P_l = R* t^l and Q rows by divided differences, for l = 0..fs.size().
inline PadeTable build_pade_table(const std::vector<MomentSeq> &fs, const DiffOp &rn, std::size_t n)
{
    PadeTable t;
    t.n = n;
    t.M = fs.size();
    const DiffOp rstar = adjoint(rn);
    for (const auto &f : fs) {
        t.labels.push_back(f.label());
    }
    t.Q.resize(fs.size());
    for (std::size_t l = 0; l <= fs.size(); ++l) {
        t.P.push_back(op_apply(rstar, Poly::monomial(Rational(1), l)));
        for (std::size_t row = 0; row < fs.size(); ++row) {
            t.Q[row].push_back(divided_difference_Q(fs[row], t.P.back()));
        }
    }
    return t;
}

/// Determinant of a square polynomial matrix, by exact evaluation at
/// deg-bound + 1 integer points and interpolation. The degree bound is the sum
/// of the column maxima, so the interpolant is the determinant itself.
inline Poly delta_det(const Matrix<Poly> &a)
{
    const std::size_t n = a.rows();
    if (a.cols() != n) {
        throw std::invalid_argument("delta_det: square table required");
    }
    long bound = 0;
    for (std::size_t j = 0; j < n; ++j) {
        long col = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (!a(i, j).is_zero()) {
                col = std::max(col, a(i, j).degree().value());
            }
        }
        if (col < 0) {
            return {};
        }
        bound += col;
    }
    std::vector<Rational> xs;
    std::vector<Rational> ys;
    for (long i = 0; i <= bound; ++i) {
        // 0, 1, -1, 2, -2, ... keeps the evaluation points small.
        const long x = (i % 2 == 1) ? (i + 1) / 2 : -(i / 2);
        Matrix<Rational> m(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                m(r, c) = a(r, c)(Rational(x));
            }
        }
        xs.emplace_back(x);
        ys.push_back(bareiss_determinant(std::move(m)));
    }
    return interpolate(xs, ys);
}

inline Poly delta_det(const PadeTable &t)
{
    return delta_det(t.delta_matrix());
}

/// The constant value of Delta_n, checked to be a nonzero constant.
inline Rational constant_delta(const PadeTable &t)
{
    const Poly det = delta_det(t);
    if (det.is_zero()) {
        throw ZeroDeterminant("Delta_n vanished identically");
    }
    if (det.degree().value() != 0) {
        throw NonConstantDeterminant("Delta_n has degree " + det.degree().str());
    }
    return det.coeff(0);
}

} // namespace rodpade
