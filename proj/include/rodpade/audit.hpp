#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <rodpade/criterion.hpp>
#include <rodpade/errors.hpp>
#include <rodpade/heights.hpp>
#include <rodpade/mpl.hpp>
#include <rodpade/poly.hpp>
#include <rodpade/rational.hpp>

namespace rodpade
{

/// One inequality measured <= bound, compared exactly; the logs are for
/// reporting only. slack = log bound - log measured.
struct BoundCheck {
    std::string name;
    std::string cell;
    double measured = 0; // log; -inf for a zero left side
    double bound = 0;    // log
    bool holds = false;

    double slack() const
    {
        return bound - measured;
    }
};

inline BoundCheck make_check(std::string name, std::string cell, const Rational &measured, const Rational &bound)
{
    return {std::move(name), std::move(cell), measured == 0 ? -INFINITY : log_rational(measured), log_rational(bound),
            measured <= bound};
}

/// ||P||_v = max_k |p_k|_v.
inline Rational norm_v(const Poly &p, const Place &v)
{
    Rational out(0);
    for (const auto &c : p.coeffs()) {
        out = std::max(out, abs_v(c, v));
    }
    return out;
}

/// |d_N|_v^{eps_v - 1}: 1 at infinity, p^floor(log_p N) at p.
inline Rational lcm_factor(unsigned long N, const Place &v)
{
    if (v.archimedean() || N < 2) {
        return Rational(1);
    }
    Integer pk(1);
    while (pk * v.p() <= N) {
        pk *= v.p();
    }
    return Rational(pk);
}

/// x^eps: x at infinity, 1 at a prime.
inline Rational eps_pow(const Rational &x, const Place &v)
{
    return v.archimedean() ? x : Rational(1);
}

inline Rational power(const Rational &x, std::size_t e)
{
    return pow(x, static_cast<long>(e));
}

inline Poly alpha_product(const std::vector<Rational> &alphas, std::size_t n)
{
    Poly base = Poly::constant(Rational(1));
    for (const auto &a : alphas) {
        base *= Poly{Rational(-a), Rational(1)};
    }
    Poly out = Poly::constant(Rational(1));
    for (std::size_t i = 0; i < n; ++i) {
        out *= base;
    }
    return out;
}

inline Poly script_L_apply(std::size_t n, const std::vector<Rational> &alphas, const Poly &p)
{
    return (p * alpha_product(alphas, n)).shift(n).derive(n) * (Rational(1) / Rational(factorial(n)));
}

inline Rational prod_alpha_heights(const std::vector<Rational> &alphas, std::size_t n, const Place &v)
{
    Rational out(1);
    for (const auto &a : alphas) {
        out *= power(local_height_arg(a, v), n);
    }
    return out;
}

/// (i): ||(1/n!) d^n z^n P|| <= C(n+N, n)^eps ||P||.
inline BoundCheck check_lemma_i(const Poly &p, std::size_t n, const Place &v, std::string cell = {})
{
    const std::size_t N = p.size() - 1;
    const Poly lhs = p.shift(n).derive(n) * (Rational(1) / Rational(factorial(n)));
    return make_check("lemma_i", std::move(cell), norm_v(lhs, v),
                      eps_pow(Rational(binomial(n + N, n)), v) * norm_v(p, v));
}

/// (ii): ||prod (z - alpha_i)^n|| <= (n+1)^{m eps} 2^{mn eps} prod H_v(alpha_i)^n.
inline BoundCheck check_lemma_ii(const std::vector<Rational> &alphas, std::size_t n, const Place &v,
                                 std::string cell = {})
{
    const std::size_t m = alphas.size();
    const Rational bound = eps_pow(power(Rational(n + 1), m) * power(Rational(2), m * n), v) *
                           prod_alpha_heights(alphas, n, v);
    return make_check("lemma_ii", std::move(cell), norm_v(alpha_product(alphas, n), v), bound);
}

/// (iii) bound divided by ||P||.
inline Rational lemma_iii_factor(const std::vector<Rational> &alphas, std::size_t n, std::size_t N, const Place &v)
{
    const std::size_t m = alphas.size();
    return eps_pow(power(Rational(m * n + N + 1), m + 1) * power(Rational(2), m * n) *
                       Rational(binomial((m + 1) * n + N, n)),
                   v) *
           prod_alpha_heights(alphas, n, v);
}

/// (iii): ||LL_n P|| <= (mn+N+1)^{(m+1)eps} (2^{mn} C((m+1)n+N, n))^eps prod H_v(alpha_i)^n ||P||.
inline BoundCheck check_lemma_iii(const std::vector<Rational> &alphas, const Poly &p, std::size_t n, const Place &v,
                                  std::string cell = {})
{
    const std::size_t N = p.size() - 1;
    return make_check("lemma_iii", std::move(cell), norm_v(script_L_apply(n, alphas, p), v),
                      lemma_iii_factor(alphas, n, N, v) * norm_v(p, v));
}

/// ||PQ|| <= (deg P + deg Q + 1)^eps ||P|| ||Q||.
inline BoundCheck check_product(const Poly &p, const Poly &q, const Place &v, std::string cell = {})
{
    const std::size_t deg = p.size() + q.size() - 1;
    return make_check("product", std::move(cell), norm_v(p * q, v),
                      eps_pow(Rational(deg), v) * norm_v(p, v) * norm_v(q, v));
}

/// Common right side of (iv) and (v) divided by ||P||:
/// (N+1)^{(r+1)eps} |d_{N+1}^r|_v^{eps-1} H_v(alpha)^{N+1}.
inline Rational lemma_iv_factor(const MplConfig &cfg, std::size_t N, const Place &v)
{
    const auto r = static_cast<std::size_t>(cfg.r);
    return eps_pow(power(Rational(N + 1), r + 1), v) * power(lcm_factor(N + 1, v), r) *
           power(vector_height_arg(cfg.alphas, v), N + 1);
}

/// (iv): |phi_{s,a}(P)|_v <= lemma_iv_factor(deg P) ||P||.
inline BoundCheck check_lemma_iv(const MplConfig &cfg, const MomentSeq &f, const Poly &p, const Place &v,
                                 std::string cell = {})
{
    return make_check("lemma_iv", std::move(cell), abs_v(phi(f, p), v),
                      lemma_iv_factor(cfg, p.size() - 1, v) * norm_v(p, v));
}

/// (v): ||Q||_v for the divided-difference Q, same bound as (iv).
inline BoundCheck check_lemma_v(const MplConfig &cfg, const MomentSeq &f, const Poly &p, const Place &v,
                                std::string cell = {})
{
    return make_check("lemma_v", std::move(cell), norm_v(divided_difference_Q(f, p), v),
                      lemma_iv_factor(cfg, p.size() - 1, v) * norm_v(p, v));
}

/// log|P(beta)|_v <= eps log(deg P + 1) + log ||P||_v + deg P h_v(beta).
inline BoundCheck check_triangle(const Poly &p, const Rational &beta, const Place &v, std::string cell = {})
{
    const std::size_t deg = p.size() - 1;
    return make_check("triangle", std::move(cell), abs_v(p(beta), v),
                      eps_pow(Rational(deg + 1), v) * norm_v(p, v) * power(local_height_arg(beta, v), deg));
}

struct AuditReport {
    MplConfig cfg;
    std::size_t n = 0;
    Place place = Place::infinity();
    std::optional<Rational> beta;
    std::vector<BoundCheck> checks;

    bool all_hold() const
    {
        for (const auto &c : checks) {
            if (!c.holds) {
                return false;
            }
        }
        return true;
    }

    double min_slack() const
    {
        double s = INFINITY;
        for (const auto &c : checks) {
            s = std::min(s, c.slack());
        }
        return s;
    }
};

/// Every inequality of the norm lemma along the chain
/// P_{n,l} = +-LL_n LL_{(m+1)n} ... LL_{(m+1)^{r-1}n} z^l, then (iv) and (v)
/// on the finished table, then the approximant estimate in explicit form:
/// ||P_{n,l}|| is bounded by the product B of the (iii) factors along the
/// chain, ||Q|| by lemma_iv_factor(deg P) B, and the values at beta by the
/// triangle inequality applied to those norm bounds.
inline AuditReport bounds_audit(const MplConfig &cfg, std::size_t n, const Place &v,
                                const std::optional<Rational> &beta = std::nullopt)
{
    const PadeTable table = pade_table(cfg, n);
    const auto rows = mpl_rows(cfg);
    const std::size_t M = cfg.M();
    const auto m = static_cast<std::size_t>(cfg.m);
    const Rational sign = (n * M / m) % 2 == 0 ? 1 : -1;

    AuditReport rep;
    rep.cfg = cfg;
    rep.n = n;
    rep.place = v;
    rep.beta = beta;
    auto &out = rep.checks;

    for (std::size_t ell = 0; ell <= M; ++ell) {
        const std::string cell = "l=" + std::to_string(ell);
        Poly cur = Poly::monomial(Rational(1), ell);
        Rational chain_bound(1);
        std::vector<std::size_t> steps;
        for (std::size_t N = n, j = 0; j < static_cast<std::size_t>(cfg.r); ++j, N *= m + 1) {
            steps.push_back(N);
        }
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            const std::size_t N = *it;
            const std::string step = cell + " N=" + std::to_string(N);
            const Poly base = alpha_product(cfg.alphas, N);
            out.push_back(check_lemma_ii(cfg.alphas, N, v, step));
            out.push_back(check_product(cur, base, v, step));
            out.push_back(check_lemma_i(cur * base, N, v, step));
            out.push_back(check_lemma_iii(cfg.alphas, cur, N, v, step));
            chain_bound *= lemma_iii_factor(cfg.alphas, N, cur.size() - 1, v);
            cur = script_L_apply(N, cfg.alphas, cur);
        }
        const Poly &P = table.P[ell];
        if (cur * sign != P) {
            throw std::logic_error("bounds_audit: product form disagrees with the table at " + cell);
        }
        const std::size_t deg = P.size() - 1;
        out.push_back(make_check("estimate_P_norm", cell, norm_v(P, v), chain_bound));
        const Rational q_bound = lemma_iv_factor(cfg, deg, v) * chain_bound;
        if (beta) {
            const Rational hb = local_height_arg(*beta, v);
            out.push_back(check_triangle(P, *beta, v, cell + " P"));
            out.push_back(make_check("estimate_P_value", cell, abs_v(P(*beta), v),
                                     eps_pow(Rational(deg + 1), v) * chain_bound * power(hb, deg)));
        }
        for (std::size_t row = 0; row < rows.size(); ++row) {
            const std::string rc = cell + " " + rows[row].label();
            for (std::size_t k = n; k < n + 3; ++k) {
                out.push_back(check_lemma_iv(cfg, rows[row], P.shift(k), v, rc + " k=" + std::to_string(k)));
            }
            out.push_back(check_lemma_v(cfg, rows[row], P, v, rc));
            const Poly &Q = table.Q[row][ell];
            out.push_back(make_check("estimate_Q_norm", rc, norm_v(Q, v), q_bound));
            if (beta && !Q.is_zero()) {
                const std::size_t dq = Q.size() - 1;
                out.push_back(check_triangle(Q, *beta, v, rc + " Q"));
                out.push_back(make_check("estimate_Q_value", rc, abs_v(Q(*beta), v),
                                         eps_pow(Rational(dq + 1), v) * q_bound *
                                             power(local_height_arg(*beta, v), dq)));
            }
        }
    }
    return rep;
}

struct DecayPoint {
    std::size_t n = 0;
    double log_abs = 0;      // max over cells of log |R_{n,s,a,l}(beta)|_v
    std::size_t terms = 0;   // largest number of tail terms summed
};

struct DecayReport {
    MplConfig cfg;
    Rational beta;
    Place place = Place::infinity();
    std::vector<DecayPoint> points;
    double slope = 0;       // least-squares slope of log_abs against n
    double coefficient = 0; // the per-n coefficient of the remainder estimate
    double threshold = 0;   // coefficient + slack allowance

    bool holds() const
    {
        return slope <= threshold;
    }
};

inline constexpr double decay_slack = 0.1;

/// Relative size of the certified tail against the partial sum.
inline constexpr double tail_tolerance = 1e-3;

namespace detail
{

/// log |R(beta)|_v for R = sum_{k>=0} phi(t^{k+n} P) beta^-(k+n+1), summing
/// exactly until a certified bound on the rest is small enough. At infinity
/// the rest is at most tail_tolerance of the partial sum; at a prime it is
/// strictly smaller than the partial sum, so |R|_v = |partial|_v.
inline double remainder_log_abs(const MplConfig &cfg, const MomentSeq &f, const Poly &P, std::size_t n,
                                const Rational &beta, const Place &v, std::size_t &terms)
{
    const std::size_t deg = P.size() - 1;
    const double log_beta = log_rational(abs_v(beta, v));
    const double log_h = log_rational(vector_height_arg(cfg.alphas, v));
    const double log_norm = log_rational(norm_v(P, v));
    const double r = static_cast<double>(cfg.r);
    const double gap = log_beta - log_h;

    Rational partial(0);
    std::size_t K = 0;
    std::size_t target = 32;
    while (true) {
        const auto vals = shifted_phi(f, P, n + target);
        for (; K < target; ++K) {
            partial += vals[n + K] / pow(beta, static_cast<long>(K + n + 1));
        }
        // Envelope of the (iv) bound on term K: N = deg + K + n.
        const double NK = static_cast<double>(deg + K + n);
        const double log_term = r * std::log(NK + 1) + (NK + 1) * log_h + log_norm -
                                static_cast<double>(K + n + 1) * log_beta + (v.archimedean() ? std::log(NK + 1) : 0);
        if (partial != 0 && (r + 1) / (NK + 1) < gap / 2) {
            const double log_partial = log_abs_v(partial, v);
            if (v.archimedean()) {
                const double rho = (r + 1) * std::log1p(1 / (NK + 1)) - gap;
                const double log_tail = log_term - std::log1p(-std::exp(rho));
                if (log_tail < log_partial + std::log(tail_tolerance) - 1e-9) {
                    terms = K;
                    return log_partial;
                }
            } else if (log_term < log_partial - 1e-9) {
                terms = K;
                return log_partial;
            }
        }
        if (target > 1u << 14) {
            throw std::runtime_error("remainder_log_abs: tail did not certify");
        }
        target *= 2;
    }
}

} // namespace detail

/// log max |R_{n,s,a,l}(beta)|_v for n in [n_lo, n_hi] and the fitted slope,
/// against -h_v(beta) + (M/m) sum h_v(alpha_i) + (M+1) h_v(alpha)
///       + eps_v (M log 2 + r(r+1)/2 log(m+1) + r).
inline DecayReport remainder_decay(const MplConfig &cfg, const Rational &beta, const Place &v, std::size_t n_lo,
                                   std::size_t n_hi)
{
    cfg.validate();
    if (abs_v(beta, v) <= vector_height_arg(cfg.alphas, v)) {
        throw BadBeta("|beta|_v = " + to_string(abs_v(beta, v)) + " does not exceed H_v(alpha) = " +
                      to_string(vector_height_arg(cfg.alphas, v)));
    }
    if (n_lo < 1 || n_hi < n_lo + 1) {
        throw std::invalid_argument("remainder_decay: need 1 <= n_lo < n_hi");
    }
    DecayReport rep;
    rep.cfg = cfg;
    rep.beta = beta;
    rep.place = v;
    const auto rows = mpl_rows(cfg);
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        const PadeTable table = pade_table(cfg, n);
        DecayPoint pt{n, -INFINITY, 0};
        for (const auto &P : table.P) {
            for (const auto &f : rows) {
                std::size_t terms = 0;
                pt.log_abs = std::max(pt.log_abs, detail::remainder_log_abs(cfg, f, P, n, beta, v, terms));
                pt.terms = std::max(pt.terms, terms);
            }
        }
        rep.points.push_back(pt);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto &pt : rep.points) {
        const double x = static_cast<double>(pt.n);
        sx += x;
        sy += pt.log_abs;
        sxx += x * x;
        sxy += x * pt.log_abs;
    }
    const double cnt = static_cast<double>(rep.points.size());
    rep.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);

    const double M = static_cast<double>(cfg.M());
    double sum_alpha = 0;
    for (const auto &a : cfg.alphas) {
        sum_alpha += local_height(a, v);
    }
    rep.coefficient = -local_height(beta, v) + M / static_cast<double>(cfg.m) * sum_alpha +
                      (M + 1) * local_height(cfg.alphas, v) + v.epsilon() * archimedean_constant(cfg);
    rep.threshold = rep.coefficient + decay_slack;
    return rep;
}

} // namespace rodpade
