#include <gtest/gtest.h>

#include <set>

#include <rodpade/holonomic.hpp>
#include <rodpade/mpl.hpp>

#include "oracles.hpp"
#include "support.hpp"

using namespace rodpade;
using rodpade::testing::q;
using rodpade::testing::z_pow;

namespace
{

std::vector<MplConfig> grid_configs()
{
    return {{1, 1, {q(1)}}, {1, 2, {q(1)}}, {2, 1, {q(1), q(2)}}, {2, 2, {q(1), q(2)}}};
}

// (1/N!) d^N z^N prod (z - alpha_i)^N, the operator in the product form of P.
DiffOp script_L(std::size_t N, const MplConfig &cfg)
{
    Poly base{q(0), q(1)};
    for (const auto &a : cfg.alphas) {
        base *= Poly{Rational(-a), q(1)};
    }
    Poly c = Poly::constant(Rational(1) / Rational(factorial(N)));
    for (std::size_t i = 0; i < N; ++i) {
        c *= base;
    }
    DiffOp dn = DiffOp::identity();
    for (std::size_t i = 0; i < N; ++i) {
        dn = op_compose(DiffOp::derivation(), dn);
    }
    return op_compose(dn, DiffOp::multiplication(c));
}

} // namespace

TEST(IndexSet, Examples)
{
    const auto s11 = index_set(1, 1);
    ASSERT_EQ(s11.size(), 1u);
    EXPECT_EQ(s11[0], (MplIndex{{1}, {1}}));

    const auto s12 = index_set(1, 2);
    ASSERT_EQ(s12.size(), 3u);
    EXPECT_EQ(s12[0], (MplIndex{{1}, {1}}));
    EXPECT_EQ(s12[1], (MplIndex{{2}, {1}}));
    EXPECT_EQ(s12[2], (MplIndex{{1, 1}, {1, 1}}));

    EXPECT_EQ(index_set(2, 2).size(), 8u);
    EXPECT_EQ(index_set(2, 2)[0].label(), "Li_{1}(a1/z)");
    EXPECT_EQ((MplIndex{{1, 1}, {1, 2}}).label(), "Li_{1,1}(a1/a2,a2/z)");
}

TEST(IndexSet, CardinalityAndOrdering)
{
    for (long m = 1; m <= 3; ++m) {
        for (long r = 1; r <= 3; ++r) {
            const auto set = index_set(m, r);
            const MplConfig cfg{m, r, std::vector<Rational>(static_cast<std::size_t>(m))};
            EXPECT_EQ(set.size(), cfg.M());
            std::set<std::pair<std::vector<long>, std::vector<long>>> seen;
            for (std::size_t i = 0; i < set.size(); ++i) {
                EXPECT_LE(set[i].weight(), r);
                EXPECT_TRUE(seen.insert({set[i].s, set[i].a}).second);
                if (i > 0) {
                    const auto key = [](const MplIndex &x) { return std::tuple(x.s.size(), x.s, x.a); };
                    EXPECT_LT(key(set[i - 1]), key(set[i]));
                }
            }
        }
    }
}

TEST(MplMoment, Examples)
{
    const MplConfig one{1, 2, {q(1)}};
    for (std::size_t j = 0; j < 10; ++j) {
        const long jj = static_cast<long>(j) + 1;
        EXPECT_EQ(mpl_moment({{1}, {1}}, j, one), q(1, jj));
        EXPECT_EQ(mpl_moment({{2}, {1}}, j, one), q(1, jj * jj));
    }
    const MplConfig two{2, 2, {q(1), q(2)}};
    EXPECT_EQ(mpl_moment({{1, 1}, {1, 2}}, 1, two), 1);
}

// A depth-k index has its first nonzero moment at j = k - 1.
TEST(MplMoment, FirstNonzeroMomentAtDepthMinusOne)
{
    const MplConfig cfg{2, 3, {q(1), q(-3)}};
    for (const auto &idx : index_set(2, 3)) {
        const auto k = idx.depth();
        const auto mom = mpl_moment_prefix(idx, cfg, k + 2);
        for (std::size_t j = 0; j + 1 < k; ++j) {
            EXPECT_EQ(mom[j], 0) << idx.label();
        }
        EXPECT_NE(mom[k - 1], 0) << idx.label();
    }
}

TEST(MplMoment, MatchesBruteForceSeries)
{
    auto configs = grid_configs();
    configs.push_back({2, 2, {q(-1, 2), q(3)}});
    for (const auto &cfg : configs) {
        for (const auto &idx : index_set(cfg.m, cfg.r)) {
            EXPECT_EQ(mpl_moment_prefix(idx, cfg, 41), oracle::mpl_series(idx, cfg, 41)) << idx.label();
        }
    }
}

// d f_{s,a} = -(1/z) f_{s',a} when s_k > 1, and
// -(a_k / (z (z - a_k))) f_{s',a'} when s_k = 1.
TEST(MplMoment, DerivativeRelation)
{
    const MplConfig cfg{2, 3, {q(2), q(-1, 3)}};
    const std::size_t depth = 30;
    for (const auto &idx : index_set(cfg.m, cfg.r)) {
        const MomentSeq f = mpl_moments(idx, cfg);
        MplIndex lower = idx;
        const Rational ak = cfg.alphas[static_cast<std::size_t>(idx.a.back() - 1)];
        DiffOp l;
        if (idx.s.back() > 1) {
            --lower.s.back();
            l = DiffOp::term(Poly{q(0), q(1)}, 1);
        } else {
            lower.s.pop_back();
            lower.a.pop_back();
            l = DiffOp::term(Poly{q(0), Rational(-ak), q(1)}, 1);
        }
        const auto image = op_apply_laurent(l, f.tail(depth + 3), depth);
        if (idx.s.back() > 1) {
            EXPECT_TRUE(image.polynomial.is_zero());
            const auto want = mpl_moment_prefix(lower, cfg, depth);
            for (std::size_t j = 0; j < depth; ++j) {
                EXPECT_EQ(image.tail.coeff_at(static_cast<long>(j) + 1), -want[j]) << idx.label();
            }
        } else if (lower.s.empty()) {
            EXPECT_EQ(image.polynomial, Poly{Rational(-ak)});
            for (const auto &c : image.tail.dense(depth)) {
                EXPECT_EQ(c, 0);
            }
        } else {
            EXPECT_TRUE(image.polynomial.is_zero());
            const auto want = mpl_moment_prefix(lower, cfg, depth);
            for (std::size_t j = 0; j < depth; ++j) {
                EXPECT_EQ(image.tail.coeff_at(static_cast<long>(j) + 1), -ak * want[j]) << idx.label();
            }
        }
    }
}

TEST(Operators, Examples)
{
    const MplConfig one{1, 1, {q(1)}};
    const Poly zz1{q(0), q(-1), q(1)};
    EXPECT_EQ(build_LN(1, one), DiffOp::term(zz1, 1));
    EXPECT_EQ(build_LN(2, one), DiffOp::term(zz1 * zz1 * q(1, 2), 2));
    EXPECT_EQ(build_Rn(1, one), DiffOp::term(zz1, 1));
    const MplConfig r2{1, 2, {q(1)}};
    EXPECT_EQ(build_Rn(1, r2), op_compose(build_LN(2, r2), build_LN(1, r2)));
    EXPECT_EQ(build_L(r2), build_Rn(1, r2));
}

TEST(Operators, WeightOrderAndPropertyP)
{
    for (const auto &cfg : grid_configs()) {
        for (std::size_t N = 1; N <= 4; ++N) {
            const DiffOp ln = build_LN(N, cfg);
            EXPECT_EQ(ord_weight(ln), cfg.m * static_cast<long>(N));
            EXPECT_TRUE(property_P(ln).holds);
        }
        for (std::size_t n = 1; n <= 2; ++n) {
            const DiffOp rn = build_Rn(n, cfg);
            EXPECT_EQ(ord_weight(rn), static_cast<long>(cfg.M() * n));
            EXPECT_TRUE(property_P(rn).holds);
        }
    }
}

// P_{n,l} = (-1)^{nM/m} LL_n LL_{(m+1)n} ... LL_{(m+1)^{r-1}n} z^l with
// LL_N = (1/N!) d^N z^N prod (z - alpha_i)^N.
TEST(Operators, ProductFormOfP)
{
    for (const auto &cfg : grid_configs()) {
        for (std::size_t n = 1; n <= 3; ++n) {
            if (cfg.M() == 8 && n > 2) {
                continue;
            }
            DiffOp prod = DiffOp::identity();
            std::size_t N = n;
            for (long i = 0; i < cfg.r; ++i) {
                prod = op_compose(prod, script_L(N, cfg));
                N *= static_cast<std::size_t>(cfg.m + 1);
            }
            const std::size_t e = n * cfg.M() / static_cast<std::size_t>(cfg.m);
            const Rational sign = e % 2 == 0 ? 1 : -1;
            const auto table = pade_table(cfg, n);
            for (std::size_t ell = 0; ell <= cfg.M(); ++ell) {
                EXPECT_EQ(table.P[ell], op_apply(prod, z_pow(ell)) * sign) << "n=" << n << " l=" << ell;
            }
        }
    }
}

TEST(Rodrigues, RnAnnihilatesShiftedRows)
{
    for (const auto &cfg : grid_configs()) {
        for (std::size_t n = 1; n <= 2; ++n) {
            const DiffOp rn = build_Rn(n, cfg);
            const std::size_t depth = 40;
            for (std::size_t k = 0; k < n; ++k) {
                for (const auto &f : mpl_rows(cfg)) {
                    const auto image = op_apply_laurent(rn, f.shifted(k).tail(depth + 4 * cfg.M() * n + 4), depth);
                    for (const auto &c : image.tail.dense(depth)) {
                        ASSERT_EQ(c, 0) << f.label() << " n=" << n << " k=" << k;
                    }
                }
            }
        }
    }
}

// L_n z^k f_{s,a} lies in K[z] + sum over S_{r-1} of K[z]_{<=(m+1)n-1} f.
TEST(Rodrigues, LNLowersTheWeight)
{
    const std::size_t depth = 40;
    for (long m = 1; m <= 2; ++m) {
        MplConfig cfg{m, 2, {}};
        for (long i = 1; i <= m; ++i) {
            cfg.alphas.push_back(q(i == 1 ? 1 : -2, i));
        }
        MplConfig lower_cfg = cfg;
        lower_cfg.r = 1;
        for (std::size_t n = 1; n <= 3; ++n) {
            std::vector<MomentSeq> basis;
            for (const auto &f : mpl_rows(lower_cfg)) {
                for (std::size_t u = 0; u < static_cast<std::size_t>(m + 1) * n; ++u) {
                    basis.push_back(f.shifted(u));
                }
            }
            const DiffOp ln = build_LN(n, cfg);
            for (std::size_t k = 0; k < n; ++k) {
                for (const auto &f : mpl_rows(cfg)) {
                    const auto image = op_apply_laurent(ln, f.shifted(k).tail(depth + 8 * n), depth);
                    const MomentSeq target("image", [image](std::vector<Rational> &cache, std::size_t count) {
                        cache = image.tail.dense(count);
                    });
                    EXPECT_TRUE(express_in_basis(basis, target, depth).has_value())
                        << f.label() << " n=" << n << " k=" << k;
                }
            }
        }
    }
}

TEST(PadeTable, LegendreFixture)
{
    const MplConfig cfg{1, 1, {q(1)}};
    const auto t = pade_table(cfg, 1);
    ASSERT_EQ(t.columns(), 2u);
    EXPECT_EQ(t.P[0], (Poly{q(1), q(-2)}));
    EXPECT_EQ(t.P[1], (Poly{q(0), q(2), q(-3)}));
    EXPECT_EQ(t.Q[0][0], Poly{q(-2)});
    EXPECT_EQ(t.Q[0][1], (Poly{q(1, 2), q(-3)}));
    const auto rem = remainder_tail(mpl_rows(cfg)[0], t.P[0], 1, 3);
    EXPECT_TRUE(rem.precondition_held);
    EXPECT_EQ(rem.tail.coeff_at(2), q(-1, 6));
    EXPECT_EQ(delta_constant(cfg, 1), q(1, 2));
    EXPECT_THROW(pade_table(cfg, 0), std::invalid_argument);
}

TEST(PadeTable, DegreesOrthogonalityAndVerification)
{
    for (const auto &cfg : grid_configs()) {
        const std::size_t n_max = cfg.M() == 8 ? 2 : 4;
        const auto rows = mpl_rows(cfg);
        for (std::size_t n = 1; n <= n_max; ++n) {
            const auto t = pade_table(cfg, n);
            for (std::size_t ell = 0; ell <= cfg.M(); ++ell) {
                EXPECT_EQ(t.P[ell].degree(), Degree(static_cast<long>(cfg.M() * n + ell)));
                for (const auto &f : rows) {
                    for (const auto &v : shifted_phi(f, t.P[ell], n)) {
                        EXPECT_EQ(v, 0);
                    }
                }
                EXPECT_TRUE(verify_pade(t.cell(ell), rows, n, static_cast<long>(cfg.M() * n + ell)));
            }
        }
    }
    const auto t = pade_table({1, 2, {q(1)}}, 2);
    EXPECT_EQ(t.P[3].degree(), Degree(9));
}

TEST(Determinant, ConstantsAndLeadingCoefficientRelation)
{
    const MplConfig one{1, 1, {q(1)}};
    const MplConfig two{2, 1, {q(1), q(2)}};
    // n = 2 by hand: P_0 = 6z^2-6z+1, P_1 = 10z^3-12z^2+3z, Q_0 = 6z-3,
    // Q_1 = 10z^2-7z+1/3, so Delta_2 = P_0(0) Q_1(0) - P_1(0) Q_0(0).
    EXPECT_EQ(delta_constant(one, 2), q(1, 3));
    const auto t2 = pade_table(one, 2);
    EXPECT_EQ(t2.P[0], (Poly{q(1), q(-6), q(6)}));
    EXPECT_EQ(t2.Q[0][1], (Poly{q(1, 3), q(-7), q(10)}));
    EXPECT_NE(delta_constant(two, 1), 0);
    for (const auto &cfg : {one, two, MplConfig{1, 2, {q(1)}}}) {
        for (std::size_t n = 1; n <= 2; ++n) {
            const auto rep = mpl_determinant_report(cfg, n);
            EXPECT_NE(rep.delta, 0);
            EXPECT_EQ(rep.ratio, 1) << "Delta_n = lc(P_{n,d}) Theta_n";
        }
    }
}

TEST(Config, Validation)
{
    EXPECT_THROW((MplConfig{2, 1, {q(1), q(1)}}).validate(), DegenerateAlphas);
    EXPECT_THROW((MplConfig{1, 1, {q(0)}}).validate(), DegenerateAlphas);
    EXPECT_THROW((MplConfig{2, 1, {q(1)}}).validate(), std::invalid_argument);
    EXPECT_THROW((MplConfig{0, 1, {}}).validate(), std::invalid_argument);
    EXPECT_NO_THROW((MplConfig{2, 2, {q(1), q(-1)}}).validate());
}
