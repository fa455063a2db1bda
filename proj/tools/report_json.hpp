#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include <rodpade/audit.hpp>
#include <rodpade/criterion.hpp>
#include <rodpade/mpl.hpp>
#include <rodpade/poly.hpp>
#include <rodpade/transform.hpp>

namespace rodpade::io
{

using json = nlohmann::ordered_json;

/// Reals carry 15 significant digits; non-finite values become null.
inline json real(double x)
{
    if (!std::isfinite(x)) {
        return nullptr;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

inline std::string real_str(double x)
{
    if (!std::isfinite(x)) {
        return x < 0 ? "-inf" : (x > 0 ? "inf" : "nan");
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

inline json rational(const Rational &q)
{
    return to_string(q);
}

/// Ascending coefficients as "p/q" strings.
inline json poly(const Poly &p)
{
    json out = json::array();
    for (const auto &c : p.coeffs()) {
        out.push_back(to_string(c));
    }
    return out;
}

inline json rationals(const std::vector<Rational> &xs)
{
    json out = json::array();
    for (const auto &x : xs) {
        out.push_back(to_string(x));
    }
    return out;
}

inline json config(const MplConfig &cfg)
{
    return {{"m", cfg.m}, {"r", cfg.r}, {"M", cfg.M()}, {"alphas", rationals(cfg.alphas)}};
}

inline json table(const PadeTable &t)
{
    json cols = json::array();
    for (std::size_t ell = 0; ell < t.columns(); ++ell) {
        json qs = json::object();
        for (std::size_t row = 0; row < t.labels.size(); ++row) {
            qs[t.labels[row]] = poly(t.Q[row][ell]);
        }
        cols.push_back({{"ell", ell}, {"degree", t.P[ell].degree().value()}, {"P", poly(t.P[ell])}, {"Q", qs}});
    }
    return {{"n", t.n}, {"rows", t.labels}, {"columns", cols}};
}

inline json criterion(const CriterionReport &rep)
{
    json out = {
        {"config", config(rep.cfg)},
        {"beta", rational(rep.beta)},
        {"place", rep.place.str()},
        {"abs_beta", rational(rep.beta_abs)},
        {"alpha_height", rational(rep.alpha_height)},
        {"hypotheses",
         {{"convergence", rep.convergence_ok},
          {"V_positive", rep.V.indeterminate ? json("indeterminate") : json(rep.V.positive())}}},
        {"V", {{"value", real(rep.V.value)}, {"error", real(rep.V.error)}}},
        {"conclusion", rep.conclusion},
    };
    if (!rep.product_conclusion.empty()) {
        out["product_conclusion"] = rep.product_conclusion;
    }
    return out;
}

inline json check(const BoundCheck &c)
{
    return {{"name", c.name},     {"cell", c.cell},         {"measured", real(c.measured)},
            {"bound", real(c.bound)}, {"slack", real(c.slack())}, {"holds", c.holds}};
}

inline json audit(const AuditReport &rep)
{
    json checks = json::array();
    for (const auto &c : rep.checks) {
        checks.push_back(check(c));
    }
    return {{"n", rep.n},
            {"place", rep.place.str()},
            {"all_hold", rep.all_hold()},
            {"min_slack", real(rep.min_slack())},
            {"checks", checks}};
}

inline json decay(const DecayReport &rep)
{
    json pts = json::array();
    for (const auto &p : rep.points) {
        pts.push_back({{"n", p.n}, {"log_abs_remainder", real(p.log_abs)}, {"terms", p.terms}});
    }
    return {{"beta", rational(rep.beta)},   {"place", rep.place.str()},
            {"points", pts},                {"slope", real(rep.slope)},
            {"coefficient", real(rep.coefficient)}, {"threshold", real(rep.threshold)},
            {"holds", rep.holds()}};
}

} // namespace rodpade::io
