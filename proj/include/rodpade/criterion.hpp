#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <rodpade/errors.hpp>
#include <rodpade/heights.hpp>
#include <rodpade/mpl.hpp>
#include <rodpade/rational.hpp>

namespace rodpade
{

/// |V| below this is reported as indeterminate.
inline constexpr double v_indeterminate_band = 1e-9;

struct VValue {
    double value = 0;
    double error = 0; // absolute bound on the floating-point error
    bool indeterminate = false;

    bool positive() const
    {
        return !indeterminate && value > 0;
    }
};

/// n-independent constant M log 2 + r(r+1)/2 log(m+1) + r.
inline double archimedean_constant(const MplConfig &cfg)
{
    const double M = static_cast<double>(cfg.M());
    const double r = static_cast<double>(cfg.r);
    return M * std::log(2.0) + r * (r + 1) / 2 * std::log(static_cast<double>(cfg.m + 1)) + r;
}

/// V = (M+1) h_v(beta) - h_v(alpha) - M (h(beta) + (1/m) sum h(alpha_i) + h(alpha))
///     - (M log 2 + r(r+1)/2 log(m+1) + r + rM).
inline VValue V_value(const MplConfig &cfg, const Rational &beta, const Place &v)
{
    cfg.validate();
    const double M = static_cast<double>(cfg.M());
    double sum_alpha = 0;
    for (const auto &a : cfg.alphas) {
        sum_alpha += global_height(a);
    }
    const double terms[] = {
        (M + 1) * local_height(beta, v),
        -local_height(cfg.alphas, v),
        -M * global_height(beta),
        -M * sum_alpha / static_cast<double>(cfg.m),
        -M * global_height(cfg.alphas),
        -archimedean_constant(cfg),
        -static_cast<double>(cfg.r) * M,
    };
    VValue out;
    double magnitude = 0;
    for (double t : terms) {
        out.value += t;
        magnitude += std::fabs(t);
    }
    // Each log carries relative error <= 2^-52; the sum adds one rounding per term.
    out.error = magnitude * 16 * 2.220446049250313e-16;
    out.indeterminate = std::fabs(out.value) < v_indeterminate_band || std::fabs(out.value) <= out.error;
    return out;
}

struct CriterionReport {
    MplConfig cfg;
    Rational beta;
    Place place = Place::infinity();
    Rational beta_abs;    // |beta|_v0
    Rational alpha_height; // H_v0(alpha)
    bool convergence_ok = false; // |beta|_v0 > H_v0(alpha)
    VValue V;
    /// Empty unless both hypotheses hold decisively.
    std::vector<std::string> conclusion;
    std::vector<std::string> product_conclusion;

    bool hypotheses_hold() const
    {
        return convergence_ok && V.positive();
    }
};

/// The two hypotheses are checked separately. The conclusion lists 1 and the M
/// values Li_s(a_{i1}/a_{i2}, ..., a_{ik}/beta); with `products` it also lists
/// Li_{s1}(a_{i1}/beta) ... Li_{sk}(a_{ik}/beta), one entry per index.
inline CriterionReport evaluate_criterion(const MplConfig &cfg, const Rational &beta, const Place &v,
                                          bool products = false)
{
    cfg.validate();
    CriterionReport rep;
    rep.cfg = cfg;
    rep.beta = beta;
    rep.place = v;
    rep.beta_abs = abs_v(beta, v);
    rep.alpha_height = vector_height_arg(cfg.alphas, v);
    rep.convergence_ok = rep.beta_abs > rep.alpha_height;
    rep.V = V_value(cfg, beta, v);
    if (!rep.hypotheses_hold()) {
        return rep;
    }
    rep.conclusion.emplace_back("1");
    for (const auto &idx : index_set(cfg.m, cfg.r)) {
        rep.conclusion.push_back(idx.value_label(cfg, beta));
    }
    if (products) {
        rep.product_conclusion.emplace_back("1");
        for (const auto &idx : index_set(cfg.m, cfg.r)) {
            std::string term;
            for (std::size_t i = 0; i < idx.depth(); ++i) {
                const MplIndex single{{idx.s[i]}, {idx.a[i]}};
                term += (i ? "*" : "") + single.value_label(cfg, beta);
            }
            rep.product_conclusion.push_back(term);
        }
    }
    return rep;
}

} // namespace rodpade
