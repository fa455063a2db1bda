#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <rodpade/errors.hpp>
#include <rodpade/linalg.hpp>
#include <rodpade/moments.hpp>
#include <rodpade/poly.hpp>
#include <rodpade/rational.hpp>
#include <rodpade/weyl.hpp>

namespace rodpade
{

/// sum_delta c_delta(k) x_{k+delta} = 0 for every k >= 0, where a term whose
/// index k + delta is negative is omitted. A tail sum_k x_k z^-(k+1) lies in
/// V_1(L) exactly when it solves the system.
struct RecurrenceSystem {
    long d = 0;                        // weight order of the source operator
    std::map<long, Poly> shifts;       // delta -> c_delta as a polynomial in k

    static constexpr const char *boundary_rule = "terms with k+delta < 0 are omitted";

    long min_delta() const
    {
        return shifts.empty() ? 0 : shifts.begin()->first;
    }

    long max_delta() const
    {
        return shifts.empty() ? 0 : shifts.rbegin()->first;
    }

    const Poly &leading() const
    {
        static const Poly zero;
        auto it = shifts.find(d);
        return it == shifts.end() ? zero : it->second;
    }
};

/// c_delta(k) = sum_{i-j=delta} a_{i,j} (k+delta+1)_j with a_{i,j} the
/// coefficient of z^i in the alternating-convention coefficient a_j.
inline RecurrenceSystem recurrence_coeffs(const DiffOp &l)
{
    RecurrenceSystem sys;
    sys.d = ord_weight(l);
    for (std::size_t j = 0; j <= l.order(); ++j) {
        const Poly a = l.paper_coeff(j);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a.coeffs()[i] == 0) {
                continue;
            }
            const long delta = static_cast<long>(i) - static_cast<long>(j);
            Poly term = Poly::constant(a.coeffs()[i]);
            for (std::size_t u = 0; u < j; ++u) {
                term *= Poly{Rational(delta + 1 + static_cast<long>(u)), Rational(1)};
            }
            sys.shifts[delta] += term;
        }
    }
    for (auto it = sys.shifts.begin(); it != sys.shifts.end();) {
        it = it->second.is_zero() ? sys.shifts.erase(it) : std::next(it);
    }
    return sys;
}

/// Left side of the k-th equation; `x` must reach index k + max_delta.
inline Rational recurrence_residual(const RecurrenceSystem &sys, const std::vector<Rational> &x, long k)
{
    Rational s(0);
    for (const auto &[delta, c] : sys.shifts) {
        const long idx = k + delta;
        if (idx < 0) {
            continue;
        }
        s += c(Rational(k)) * x.at(static_cast<std::size_t>(idx));
    }
    return s;
}

/// The element of V_1(L) with f_0..f_{d-1} = init, as a lazily extended
/// moment sequence; `depth` terms are computed up front.
inline MomentSeq solve_V1(const DiffOp &l, const std::vector<Rational> &init, std::size_t depth,
                          std::string label = "V1")
{
    const auto pp = property_P(l);
    if (!pp.holds) {
        throw PropertyPFailure("leading symbol vanishes at k = " + std::to_string(*pp.root));
    }
    if (init.size() != static_cast<std::size_t>(pp.d)) {
        throw std::invalid_argument("solve_V1: expected " + std::to_string(pp.d) + " initial values");
    }
    RecurrenceSystem sys = recurrence_coeffs(l);
    MomentSeq seq(std::move(label), [sys, init](std::vector<Rational> &x, std::size_t count) {
        if (x.empty()) {
            x = init;
        }
        while (x.size() < count) {
            // Equation k determines x_{k+d}.
            const long k = static_cast<long>(x.size()) - sys.d;
            Rational rest(0);
            for (const auto &[delta, c] : sys.shifts) {
                const long idx = k + delta;
                if (delta == sys.d || idx < 0) {
                    continue;
                }
                rest += c(Rational(k)) * x[static_cast<std::size_t>(idx)];
            }
            x.push_back(-rest / sys.leading()(Rational(k)));
        }
    });
    seq.prefix(depth);
    return seq;
}

/// True when the first `depth` equations hold for the moments of f.
inline bool check_membership(const DiffOp &l, const MomentSeq &f, std::size_t depth)
{
    if (f.is_zero()) {
        return true;
    }
    const RecurrenceSystem sys = recurrence_coeffs(l);
    const long reach = static_cast<long>(depth) - 1 + std::max(0L, sys.max_delta());
    const auto x = f.prefix(static_cast<std::size_t>(std::max(0L, reach + 1)));
    for (long k = 0; k < static_cast<long>(depth); ++k) {
        if (recurrence_residual(sys, x, k) != 0) {
            return false;
        }
    }
    return true;
}

/// Coefficients c with f = sum_i c_i basis_i on the first `count` moments,
/// or nullopt when f is not in their span there.
inline std::optional<std::vector<Rational>> express_in_basis(const std::vector<MomentSeq> &basis, const MomentSeq &f,
                                                             std::size_t count)
{
    Matrix<Rational> a(count, basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto col = basis[i].prefix(count);
        for (std::size_t k = 0; k < count; ++k) {
            a(k, i) = col[k];
        }
    }
    return solve_exact(std::move(a), f.prefix(count));
}

} // namespace rodpade
