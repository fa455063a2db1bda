#include <gtest/gtest.h>

#include <rodpade/mpl.hpp>
#include <rodpade/transform.hpp>

#include "oracles.hpp"
#include "support.hpp"

using namespace rodpade;
using rodpade::testing::q;
using rodpade::testing::z_pow;

namespace
{

MomentSeq li(long s)
{
    return MomentSeq::from_generator("Li_" + std::to_string(s), [s](std::size_t k) -> Rational {
        return Rational(1) / Rational(ipow(Integer(static_cast<unsigned long>(k + 1)), static_cast<unsigned long>(s)));
    });
}

MomentSeq log_power(std::size_t s)
{
    return MomentSeq::from_generator("log^" + std::to_string(s),
                                     [s](std::size_t k) -> Rational { return oracle::logpow_moment(s, k); });
}

std::vector<MomentSeq> builtin_sequences()
{
    MplConfig cfg{2, 2, {q(1), q(2)}};
    std::vector<MomentSeq> out{li(1), li(2), log_power(1), log_power(2), log_power(3)};
    for (const auto &idx : index_set(2, 2)) {
        out.push_back(mpl_moments(idx, cfg));
    }
    return out;
}

const DiffOp E1 = DiffOp::term(Poly{q(0), q(-1), q(1)}, 1);

} // namespace

TEST(Phi, Examples)
{
    EXPECT_EQ(phi(li(1), Poly{q(1), q(-2)}), 0);
    EXPECT_EQ(phi(li(3), Poly{}), 0);
    EXPECT_EQ(phi(li(1), Poly{q(0), q(1), q(-2)}), q(-1, 6));
}

TEST(DividedDifference, Examples)
{
    EXPECT_EQ(divided_difference_Q(li(1), Poly{q(1), q(-2)}), Poly{q(-2)});
    EXPECT_EQ(divided_difference_Q(li(1), Poly{q(0), q(2), q(-3)}), (Poly{q(1, 2), q(-3)}));
    EXPECT_TRUE(divided_difference_Q(li(2), Poly{q(5)}).is_zero());
}

// Q agrees with the polynomial part of P f, by direct multiplication.
TEST(DividedDifference, MatchesPolynomialPartOfProduct)
{
    for (const auto &f : builtin_sequences()) {
        for (int trial = 0; trial < 10; ++trial) {
            const Poly p = rodpade::testing::random_poly(7);
            const auto split = laurent_mul_poly(f.tail(p.size() + 2), p);
            EXPECT_EQ(divided_difference_Q(f, p), split.polynomial) << f.label();
        }
    }
}

TEST(RemainderTail, Examples)
{
    auto r = remainder_tail(li(1), Poly{q(1), q(-2)}, 1, 2);
    EXPECT_TRUE(r.precondition_held);
    EXPECT_EQ(r.tail.start(), 2);
    EXPECT_EQ(r.tail.coeffs(), (std::vector<Rational>{q(-1, 6), q(-1, 6)}));

    auto bad = remainder_tail(li(1), Poly{q(1)}, 1, 1);
    EXPECT_FALSE(bad.precondition_held);
    EXPECT_EQ(bad.tail.start(), 1);
    EXPECT_EQ(bad.tail.coeff_at(1), 1);

    auto zero = remainder_tail(MomentSeq::zero(), Poly{q(1), q(4)}, 3, 5);
    EXPECT_TRUE(zero.tail.exact());
    EXPECT_EQ(ord_inf(zero.tail), OrdInf::infinity());
}

TEST(VerifyPade, Examples)
{
    PadeCell legendre{Poly{q(1), q(-2)}, {{"Li_1", Poly{q(-2)}}}, 1, 0};
    EXPECT_TRUE(verify_pade(legendre, {li(1)}, 1, 1));

    PadeCell trivial{Poly{q(1)}, {{"Li_1", Poly{}}}, 1, 0};
    EXPECT_FALSE(verify_pade(trivial, {li(1)}, 1, 1));

    for (int trial = 0; trial < 20; ++trial) {
        const Poly p = rodpade::testing::random_poly(6);
        PadeCell any{p, {{"Li_2", divided_difference_Q(li(2), p)}}, 0, 0};
        EXPECT_TRUE(verify_pade(any, {li(2)}, 0, 6));
    }

    // A wrong Q fails the series route only; no route conflict is raised.
    PadeCell wrong_q{Poly{q(1), q(-2)}, {{"Li_1", Poly{q(7)}}}, 1, 0};
    auto det = verify_pade_detail(wrong_q, {li(1)}, 1, 1);
    EXPECT_TRUE(det.kernel_ok);
    EXPECT_FALSE(det.series_ok);

    // Degree bound.
    EXPECT_FALSE(verify_pade(legendre, {li(1)}, 1, 0));
}

TEST(ThetaDelta, Examples)
{
    EXPECT_EQ(theta_det({li(1)}, adjoint(E1), 1), q(-1, 6));
    EXPECT_EQ(theta_det({li(2), li(2)}, adjoint(op_compose(E1, E1)), 1), 0);
    EXPECT_EQ(theta_det({li(3)}, DiffOp::identity(), 0), 1);

    Matrix<Poly> a(2, 2);
    a(0, 0) = Poly{q(1), q(-2)};
    a(0, 1) = Poly{q(0), q(2), q(-3)};
    a(1, 0) = Poly{q(-2)};
    a(1, 1) = Poly{q(1, 2), q(-3)};
    EXPECT_EQ(delta_det(a), Poly{q(1, 2)});
    EXPECT_EQ(delta_det(a) , bareiss_determinant(a));

    a(0, 1) = a(0, 0);
    a(1, 1) = a(1, 0);
    EXPECT_TRUE(delta_det(a).is_zero());
}

TEST(ThetaDelta, InterpolationMatchesPolynomialBareiss)
{
    for (int trial = 0; trial < 25; ++trial) {
        const auto n = static_cast<std::size_t>(rodpade::testing::uniform(1, 4));
        Matrix<Poly> a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) = rodpade::testing::uniform(0, 4) == 0 ? Poly{} : rodpade::testing::random_poly(4);
            }
        }
        EXPECT_EQ(delta_det(a), bareiss_determinant(a));
    }
}

TEST(ThetaDelta, LegendreRatio)
{
    const auto table = build_pade_table({li(1)}, E1, 1);
    const Rational delta = constant_delta(table);
    const Rational theta = theta_det({li(1)}, adjoint(E1), 1);
    EXPECT_EQ(delta, q(1, 2));
    EXPECT_EQ(delta / theta, q(-3));
    EXPECT_EQ(table.P[1].leading(), q(-3));
}

// phi_{pi(L f)} = phi_f o L*.
TEST(KeyProperty, MomentsOfProjectedImage)
{
    const auto seqs = builtin_sequences();
    for (int trial = 0; trial < 100; ++trial) {
        const DiffOp l = rodpade::testing::random_op(2, 3);
        const MomentSeq &f = seqs[static_cast<std::size_t>(trial) % seqs.size()];
        const auto image = op_apply_laurent(l, f.tail(40));
        const DiffOp ls = adjoint(l);
        for (std::size_t k = 0; k <= 25; ++k) {
            EXPECT_EQ(image.tail.coeff_at(static_cast<long>(k) + 1), phi(f, op_apply(ls, z_pow(k))))
                << f.label() << " k=" << k;
        }
    }
}

// L f polynomial forces L* K[t] into ker phi_f.
TEST(KeyProperty, AnnihilatorAdjointLiesInKernel)
{
    MplConfig cfg{2, 2, {q(1), q(2)}};
    const DiffOp l = build_L(cfg);
    const DiffOp ls = adjoint(l);
    for (const auto &idx : index_set(2, 2)) {
        const MomentSeq f = mpl_moments(idx, cfg);
        const auto image = op_apply_laurent(l, f.tail(80));
        for (long k = 1; image.tail.is_known(k) && k <= 30; ++k) {
            ASSERT_EQ(image.tail.coeff_at(k), 0) << idx.label();
        }
        for (std::size_t k = 0; k <= 25; ++k) {
            EXPECT_EQ(phi(f, op_apply(ls, z_pow(k))), 0) << idx.label();
        }
    }
    const auto li1_image = op_apply_laurent(E1, li(1).tail(40));
    EXPECT_EQ(ord_inf(li1_image.tail).kind, OrdInf::Kind::at_least);
    for (std::size_t k = 0; k <= 25; ++k) {
        EXPECT_EQ(phi(li(1), op_apply(adjoint(E1), z_pow(k))), 0);
    }
}

TEST(MomentSeq, CacheIsStableUnderExtension)
{
    const MomentSeq f = li(2);
    const Rational early = f[3];
    const auto longer = f.prefix(100);
    EXPECT_EQ(longer[3], early);
    const MomentSeq g = f.shifted(2);
    EXPECT_EQ(g[0], f[2]);
    EXPECT_EQ(g.prefix(50)[47], f[49]);
    EXPECT_EQ(f.scaled(q(-1), "neg")[5], -f[5]);
}
