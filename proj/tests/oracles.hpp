#pragma once

// Independent reference computations used to cross-check library routes.

#include <cstddef>
#include <functional>
#include <vector>

#include <rodpade/mpl.hpp>
#include <rodpade/rational.hpp>

namespace rodpade::oracle
{

/// Coefficients of z^-1 .. z^-J of Li_s(x_1, ..., x_{k-1}, a_{ik}/z), by
/// enumerating every chain 0 < n_1 < ... < n_k <= J of the defining sum.
inline std::vector<Rational> mpl_series(const MplIndex &idx, const MplConfig &cfg, std::size_t J)
{
    const std::size_t k = idx.depth();
    auto alpha = [&](std::size_t t) { return cfg.alphas.at(static_cast<std::size_t>(idx.a[t] - 1)); };
    std::vector<Rational> coeff(J + 1);
    std::vector<long> chain;
    std::function<void(long)> rec = [&](long lo) {
        if (chain.size() == k) {
            Rational term(1);
            for (std::size_t t = 0; t < k; ++t) {
                const long n = chain[t];
                const Rational base = t + 1 < k ? Rational(alpha(t) / alpha(t + 1)) : alpha(t);
                Rational p(1);
                for (long e = 0; e < n; ++e) {
                    p *= base;
                }
                Rational den(1);
                for (long e = 0; e < idx.s[t]; ++e) {
                    den *= n;
                }
                term *= p / den;
            }
            coeff[static_cast<std::size_t>(chain.back())] += term;
            return;
        }
        for (long n = lo; n <= static_cast<long>(J); ++n) {
            chain.push_back(n);
            rec(n + 1);
            chain.pop_back();
        }
    };
    rec(1);
    // Moment j is the coefficient of z^-(j+1).
    return {coeff.begin() + 1, coeff.end()};
}

/// Unsigned Stirling numbers of the first kind c(n, k), n <= nmax.
inline std::vector<std::vector<Integer>> stirling_cycle(std::size_t nmax)
{
    std::vector<std::vector<Integer>> c(nmax + 1, std::vector<Integer>(nmax + 1));
    c[0][0] = 1;
    for (std::size_t n = 1; n <= nmax; ++n) {
        for (std::size_t k = 1; k <= n; ++k) {
            c[n][k] = c[n - 1][k - 1] + Integer(static_cast<unsigned long>(n - 1)) * c[n - 1][k];
        }
    }
    return c;
}

/// Coefficient of z^-(j+1) in log^s(1 - 1/z): (-1)^s s! c(j+1, s) / (j+1)!.
inline Rational logpow_moment(std::size_t s, std::size_t j)
{
    const auto c = stirling_cycle(j + 1);
    if (s > j + 1) {
        return Rational(0);
    }
    Rational v(factorial(s) * c[j + 1][s], factorial(j + 1));
    v.canonicalize();
    return s % 2 == 0 ? v : Rational(-v);
}

} // namespace rodpade::oracle
