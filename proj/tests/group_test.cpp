#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "sl2h/errors.hpp"
#include "sl2h/group.hpp"
#include "sl2h/profile.hpp"

using namespace sl2h;

constexpr double pi = std::numbers::pi;

TEST(Group, Generators)
{
    EXPECT_EQ(max_entry_diff(rotation(0.0), GroupElement{}), 0.0);
    const auto a = diag_flow(std::log(2.0) / 2);
    EXPECT_NEAR(a.a, std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(a.d, 1.0 / std::sqrt(2.0), 1e-15);
    const auto n = shear(3.0);
    EXPECT_EQ(max_entry_diff(n, GroupElement{1, 3, 0, 1}), 0.0);
}

TEST(Group, CheckedRejectsBadDeterminant)
{
    EXPECT_THROW(GroupElement::checked(1, 1, 1, 1), ValidationError);
    EXPECT_THROW(GroupElement::checked(NAN, 0, 0, 1), ValidationError);
    EXPECT_NO_THROW(GroupElement::checked(1, 1, 1, 2));
}

TEST(Iwasawa, Examples)
{
    const auto id = iwasawa(GroupElement{});
    EXPECT_NEAR(id.theta, 0.0, 1e-15);
    EXPECT_NEAR(id.t, 0.0, 1e-15);
    EXPECT_NEAR(id.v, 0.0, 1e-15);

    const auto w = iwasawa(GroupElement{1, 1, 1, 2});
    EXPECT_NEAR(w.theta, 2 * pi - pi / 4, 1e-14);
    EXPECT_NEAR(w.t, std::log(2.0) / 2, 1e-14);
    EXPECT_NEAR(w.v, 1.5, 1e-14);

    const auto c = iwasawa(rotation(0.7) * diag_flow(1.3) * shear(-2.1));
    EXPECT_NEAR(c.theta, 0.7, 1e-13);
    EXPECT_NEAR(c.t, 1.3, 1e-13);
    EXPECT_NEAR(c.v, -2.1, 1e-12);
}

TEST(Cartan, Examples)
{
    const auto d = cartan(diag_flow(1.5));
    EXPECT_NEAR(d.t, 1.5, 1e-14);
    EXPECT_LT(max_entry_diff(compose(d), diag_flow(1.5)), 1e-13);

    const auto r = cartan(rotation(0.4));
    EXPECT_NEAR(r.theta1, 0.4, 1e-14);
    EXPECT_EQ(r.t, 0.0);
    EXPECT_EQ(r.theta2, 0.0);

    // t from the largest singular value: sigma_1 = e^t.
    const GroupElement x{1, 1, 1, 2};
    const double fro2 = 1 + 1 + 1 + 4;
    const double sigma1 = std::sqrt((fro2 + std::sqrt(fro2 * fro2 - 4.0)) / 2.0);
    const auto c = cartan(x);
    EXPECT_NEAR(c.t, std::log(sigma1), 1e-14);
    EXPECT_LT(max_entry_diff(compose(c), x), 1e-10);
}

TEST(Cartan, RandomReconstruction)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(0.0, 2 * pi), tt(0.0, 6.0);
    for (int i = 0; i < 200; ++i) {
        const double t1 = ang(rng), t = tt(rng), t2 = ang(rng);
        const auto x = rotation(t1) * diag_flow(t) * rotation(t2);
        const auto c = cartan(x);
        EXPECT_NEAR(c.t, t, 1e-9);
        EXPECT_LT(max_entry_diff(compose(c), x), 1e-10 * x.max_abs());
    }
}

TEST(Haar, Weight)
{
    EXPECT_EQ(haar_weight(0.0), 0.0);
    EXPECT_NEAR(haar_weight(1.0), 2 * std::sinh(2.0), 1e-15);
    EXPECT_NEAR(haar_weight(-1.0), -2 * std::sinh(2.0), 1e-15);
}

TEST(Types, ExtendType)
{
    const auto f00 = make_bump({0, 0}, 0.0, 2.0, 16);
    const double t = 0.8;
    const cplx base = f00.value_at(t);
    EXPECT_LT(std::abs(extend_type(f00, {1.1, t, -0.3}) - base), 1e-15);
    EXPECT_LT(std::abs(extend_type(f00, {0.0, t, 0.0}) - base), 1e-15);
    const auto f20 = make_bump({2, 0}, 0.2, 2.0, 16);
    EXPECT_LT(std::abs(extend_type(f20, {pi / 2, t, 0.0}) + f20.value_at(t)), 1e-14);
}
