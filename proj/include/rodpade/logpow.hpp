#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <rodpade/laurent.hpp>
#include <rodpade/moments.hpp>
#include <rodpade/poly.hpp>
#include <rodpade/rational.hpp>
#include <rodpade/transform.hpp>
#include <rodpade/weyl.hpp>

namespace rodpade
{

struct LogPowConfig {
    std::size_t m = 1;
    std::size_t n = 1;

    void validate() const
    {
        if (m < 1 || n < 1) {
            throw std::invalid_argument("logpow: m >= 1 and n >= 1 required");
        }
    }
};

/// f_0..f_{count-1} for log^s(1 - 1/z), by repeated multiplication of
/// log(1 - 1/z) = -sum_{k>=1} z^-k / k.
inline std::vector<Rational> logpow_moment_prefix(std::size_t s, std::size_t count)
{
    if (s < 1) {
        throw std::invalid_argument("logpow_moment: s >= 1 required");
    }
    std::vector<Rational> base(count);
    for (std::size_t k = 0; k < count; ++k) {
        base[k] = make_rational(-1, static_cast<long>(k + 1));
    }
    const LaurentTail g = LaurentTail::from_moments(base);
    LaurentTail acc = g;
    for (std::size_t i = 1; i < s; ++i) {
        acc = laurent_mul(acc, g);
    }
    // acc is known below z^-(count + s), which covers z^-1 .. z^-count.
    return acc.dense(count);
}

inline Rational logpow_moment(std::size_t s, std::size_t j)
{
    return logpow_moment_prefix(s, j + 1)[j];
}

inline MomentSeq logpow_moments(std::size_t s)
{
    return MomentSeq("log^" + std::to_string(s), [s](std::vector<Rational> &cache, std::size_t count) {
        if (cache.size() < count) {
            cache = logpow_moment_prefix(s, count);
        }
    });
}

inline std::vector<MomentSeq> logpow_rows(std::size_t m)
{
    std::vector<MomentSeq> rows;
    for (std::size_t s = 1; s <= m; ++s) {
        rows.push_back(logpow_moments(s));
    }
    return rows;
}

/// E_n = z^n (z-1)^n d^n.
inline DiffOp build_En(std::size_t n)
{
    const Poly zz1{Rational(0), Rational(-1), Rational(1)};
    Poly c = Poly::constant(Rational(1));
    for (std::size_t i = 0; i < n; ++i) {
        c *= zz1;
    }
    return DiffOp::term(std::move(c), n);
}

/// R_n = (1/(n!)^m) E_n^m.
inline DiffOp build_Rn_log(std::size_t n, std::size_t m)
{
    const DiffOp en = build_En(n);
    DiffOp out = DiffOp::identity();
    for (std::size_t i = 0; i < m; ++i) {
        out = op_compose(en, out);
    }
    const Rational scale = Rational(1) / Rational(ipow(factorial(n), static_cast<unsigned long>(m)));
    return scale * out;
}

/// L_m = E_1^m.
inline DiffOp build_Lm_log(std::size_t m)
{
    return build_Rn_log(1, m);
}

/// (E_1 - (n-1)(2z-1)) ... (E_1 - (2z-1)) E_1.
inline DiffOp En_product_form(std::size_t n)
{
    const DiffOp e1 = build_En(1);
    DiffOp out = e1;
    for (std::size_t i = 1; i < n; ++i) {
        const DiffOp shift = DiffOp::multiplication(Poly{Rational(-static_cast<long>(i)), Rational(2 * static_cast<long>(i))});
        out = op_compose(e1 - shift, out);
    }
    return out;
}

/// Checks E_n = (E_1 - (n-1)(2z-1)) ... (E_1 - (2z-1)) E_1 and
/// E_{n+1} z = z (E_1 - (n-1) z - 1) E_n for n = 1..n_max.
inline bool verify_En_identities(std::size_t n_max)
{
    if (n_max < 1) {
        throw std::invalid_argument("verify_En_identities: n_max >= 1 required");
    }
    const DiffOp e1 = build_En(1);
    const DiffOp z = DiffOp::multiplication(Poly{Rational(0), Rational(1)});
    for (std::size_t n = 1; n <= n_max; ++n) {
        if (build_En(n) != En_product_form(n)) {
            return false;
        }
        const DiffOp lhs = op_compose(build_En(n + 1), z);
        const DiffOp mid = e1 - DiffOp::multiplication(Poly{Rational(1), Rational(static_cast<long>(n) - 1)});
        const DiffOp rhs = op_compose(z, op_compose(mid, build_En(n)));
        if (lhs != rhs) {
            return false;
        }
    }
    return true;
}

inline PadeTable logpow_table(const LogPowConfig &cfg)
{
    cfg.validate();
    return build_pade_table(logpow_rows(cfg.m), build_Rn_log(cfg.n, cfg.m), cfg.n);
}

inline PadeCell logpow_pade(const LogPowConfig &cfg, std::size_t ell)
{
    if (ell > cfg.m) {
        throw std::invalid_argument("logpow_pade: column index must be <= m");
    }
    return logpow_table(cfg).cell(ell);
}

inline Rational logpow_delta(const LogPowConfig &cfg)
{
    return constant_delta(logpow_table(cfg));
}

} // namespace rodpade
