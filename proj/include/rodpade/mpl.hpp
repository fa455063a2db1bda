#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <rodpade/errors.hpp>
#include <rodpade/moments.hpp>
#include <rodpade/poly.hpp>
#include <rodpade/rational.hpp>
#include <rodpade/transform.hpp>
#include <rodpade/weyl.hpp>

namespace rodpade
{

struct MplConfig {
    long m = 1;
    long r = 1;
    std::vector<Rational> alphas{Rational(1)};

    /// M = (m+1)^r - 1.
    std::size_t M() const
    {
        std::size_t p = 1;
        for (long i = 0; i < r; ++i) {
            p *= static_cast<std::size_t>(m + 1);
        }
        return p - 1;
    }

    /// Throws DegenerateAlphas or std::invalid_argument.
    void validate() const
    {
        if (m < 1 || r < 1) {
            throw std::invalid_argument("m and r must be positive");
        }
        if (alphas.size() != static_cast<std::size_t>(m)) {
            throw std::invalid_argument("expected " + std::to_string(m) + " alphas, got " +
                                        std::to_string(alphas.size()));
        }
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            if (alphas[i] == 0) {
                throw DegenerateAlphas("alpha_" + std::to_string(i + 1) + " is zero");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (alphas[i] == alphas[j]) {
                    throw DegenerateAlphas("alpha_" + std::to_string(j + 1) + " = alpha_" + std::to_string(i + 1));
                }
            }
        }
    }
};

/// (s, a): s a composition with |s| <= r, a the 1-based alpha indices.
struct MplIndex {
    std::vector<long> s;
    std::vector<long> a;

    std::size_t depth() const
    {
        return s.size();
    }

    long weight() const
    {
        long w = 0;
        for (long x : s) {
            w += x;
        }
        return w;
    }

    /// "Li_{s1,..,sk}(a1/a2,...,ak/<last>)" with alpha indices, e.g.
    /// Li_{1,1}(a1/a2,a2/z).
    std::string label(const std::string &last = "z") const
    {
        std::string out = "Li_{";
        for (std::size_t i = 0; i < s.size(); ++i) {
            out += (i ? "," : "") + std::to_string(s[i]);
        }
        out += "}(";
        for (std::size_t i = 0; i < a.size(); ++i) {
            out += (i ? "," : "") + ("a" + std::to_string(a[i])) + "/" +
                   (i + 1 < a.size() ? "a" + std::to_string(a[i + 1]) : last);
        }
        return out + ")";
    }

    /// The same label with the alphas and the last argument substituted.
    std::string value_label(const MplConfig &cfg, const Rational &last) const
    {
        std::string out = "Li_{";
        for (std::size_t i = 0; i < s.size(); ++i) {
            out += (i ? "," : "") + std::to_string(s[i]);
        }
        out += "}(";
        for (std::size_t i = 0; i < a.size(); ++i) {
            const Rational &num = cfg.alphas.at(static_cast<std::size_t>(a[i] - 1));
            const Rational den = i + 1 < a.size() ? cfg.alphas.at(static_cast<std::size_t>(a[i + 1] - 1)) : last;
            out += (i ? "," : "") + to_string(Rational(num / den));
        }
        return out + ")";
    }

    friend bool operator==(const MplIndex &, const MplIndex &) = default;
};

/// S_r ordered by depth k, then s lexicographically, then a
/// lexicographically. Its size is (m+1)^r - 1.
inline std::vector<MplIndex> index_set(long m, long r)
{
    if (m < 1 || r < 1) {
        throw std::invalid_argument("index_set: m, r >= 1 required");
    }
    std::vector<MplIndex> out;
    for (long k = 1; k <= r; ++k) {
        // Compositions of length k with sum <= r, in lexicographic order.
        std::vector<std::vector<long>> comps;
        std::vector<long> cur;
        std::function<void(long)> rec_s = [&](long budget) {
            if (static_cast<long>(cur.size()) == k) {
                comps.push_back(cur);
                return;
            }
            const long remaining = k - static_cast<long>(cur.size()) - 1;
            for (long v = 1; v <= budget - remaining; ++v) {
                cur.push_back(v);
                rec_s(budget - v);
                cur.pop_back();
            }
        };
        rec_s(r);
        for (const auto &s : comps) {
            std::vector<long> a(static_cast<std::size_t>(k), 1);
            while (true) {
                out.push_back({s, a});
                long pos = k - 1;
                while (pos >= 0 && a[static_cast<std::size_t>(pos)] == m) {
                    a[static_cast<std::size_t>(pos)] = 1;
                    --pos;
                }
                if (pos < 0) {
                    break;
                }
                ++a[static_cast<std::size_t>(pos)];
            }
        }
    }
    return out;
}

/// Moments f_0..f_{count-1} of f_{s,a}(z) = Li_s(a_{i1}/a_{i2}, ..., a_{ik}/z):
///   f_j = sum over 0 < n_1 < ... < n_{k-1} < n_k = j+1 of
///         prod_t x_t^{n_t} / n_t^{s_t},
/// with x_t = a_{i_t}/a_{i_{t+1}} for t < k and x_k = a_{i_k}. Computed by a
/// prefix-sum recursion over the chain.
inline std::vector<Rational> mpl_moment_prefix(const MplIndex &idx, const MplConfig &cfg, std::size_t count)
{
    const std::size_t k = idx.depth();
    std::vector<Rational> x(k);
    for (std::size_t t = 0; t < k; ++t) {
        const Rational &num = cfg.alphas.at(static_cast<std::size_t>(idx.a[t] - 1));
        x[t] = t + 1 < k ? Rational(num / cfg.alphas.at(static_cast<std::size_t>(idx.a[t + 1] - 1))) : num;
    }
    // level[n-1] = A_t(n): sum over chains ending at n_t = n.
    const std::size_t N = count;
    std::vector<Rational> level(N);
    for (std::size_t t = 0; t < k; ++t) {
        std::vector<Rational> next(N);
        Rational running(0); // sum_{n' < n} A_{t-1}(n')
        Rational xp(1);
        for (std::size_t n = 1; n <= N; ++n) {
            xp *= x[t];
            const Rational w = xp / Rational(ipow(Integer(static_cast<unsigned long>(n)),
                                                  static_cast<unsigned long>(idx.s[t])));
            if (t == 0) {
                next[n - 1] = w;
            } else {
                next[n - 1] = w * running;
                running += level[n - 1];
            }
        }
        level = std::move(next);
    }
    return level; // level[j] = A_k(j+1) = f_j
}

inline Rational mpl_moment(const MplIndex &idx, std::size_t j, const MplConfig &cfg)
{
    return mpl_moment_prefix(idx, cfg, j + 1)[j];
}

inline MomentSeq mpl_moments(const MplIndex &idx, const MplConfig &cfg)
{
    return MomentSeq(idx.label(), [idx, cfg](std::vector<Rational> &cache, std::size_t count) {
        if (cache.size() < count) {
            cache = mpl_moment_prefix(idx, cfg, count);
        }
    });
}

/// L_N = (1/N!) z^N prod_i (z - alpha_i)^N d^N.
inline DiffOp build_LN(std::size_t N, const MplConfig &cfg)
{
    Poly base{Rational(0), Rational(1)};
    for (const auto &a : cfg.alphas) {
        base *= Poly{Rational(-a), Rational(1)};
    }
    Poly c = Poly::constant(Rational(1) / Rational(factorial(N)));
    for (std::size_t i = 0; i < N; ++i) {
        c *= base;
    }
    return DiffOp::term(std::move(c), N);
}

/// R_n = L_{(m+1)^{r-1} n} ... L_{(m+1) n} L_n.
inline DiffOp build_Rn(std::size_t n, const MplConfig &cfg)
{
    DiffOp out = DiffOp::identity();
    std::size_t N = n;
    for (long i = 0; i < cfg.r; ++i) {
        out = op_compose(build_LN(N, cfg), out);
        N *= static_cast<std::size_t>(cfg.m + 1);
    }
    return out;
}

/// L = L_{(m+1)^{r-1}} ... L_{m+1} L_1, i.e. R_1.
inline DiffOp build_L(const MplConfig &cfg)
{
    return build_Rn(1, cfg);
}

inline std::vector<MomentSeq> mpl_rows(const MplConfig &cfg)
{
    std::vector<MomentSeq> rows;
    for (const auto &idx : index_set(cfg.m, cfg.r)) {
        rows.push_back(mpl_moments(idx, cfg));
    }
    return rows;
}

/// Moment depth for membership checks: max(40, 2Mn + M + 5).
inline std::size_t default_depth(const MplConfig &cfg, std::size_t n)
{
    const std::size_t M = cfg.M();
    return std::max<std::size_t>(40, 2 * M * n + M + 5);
}

inline PadeTable pade_table(const MplConfig &cfg, std::size_t n)
{
    cfg.validate();
    if (n < 1) {
        throw std::invalid_argument("pade_table: n >= 1 required");
    }
    return build_pade_table(mpl_rows(cfg), build_Rn(n, cfg), n);
}

inline Rational delta_constant(const MplConfig &cfg, std::size_t n)
{
    return constant_delta(pade_table(cfg, n));
}

/// Delta_n against lc(P_{n,d}) Theta_n; `ratio` = Delta_n / (lc Theta_n).
struct DeterminantReport {
    Rational delta;
    Rational theta;
    Rational leading; // lc(P_{n,d})
    Rational ratio;
};

inline DeterminantReport determinant_report(const PadeTable &table, const std::vector<MomentSeq> &rows,
                                            const DiffOp &rn)
{
    DeterminantReport rep;
    rep.delta = constant_delta(table);
    rep.theta = theta_det(rows, adjoint(rn), table.n);
    rep.leading = table.P.back().leading();
    const Rational denom = rep.leading * rep.theta;
    if (denom == 0) {
        throw ZeroDeterminant("Theta_n vanished");
    }
    rep.ratio = rep.delta / denom;
    return rep;
}

inline DeterminantReport mpl_determinant_report(const MplConfig &cfg, std::size_t n)
{
    const auto table = pade_table(cfg, n);
    return determinant_report(table, mpl_rows(cfg), build_Rn(n, cfg));
}

} // namespace rodpade
