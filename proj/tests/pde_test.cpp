#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "sl2h/errors.hpp"
#include "sl2h/multiplier.hpp"
#include "sl2h/pde.hpp"

using namespace sl2h;

namespace {

RadialProfile smooth_data(double amplitude)
{
    return sample_profile({0, 0}, RadialRule::uniform(0.0, 8.0, 32),
                          [=](double t) { return cplx(amplitude * bump_shape(t, 0.2, 3.0)); });
}

} // namespace

TEST(Existence, HeatFormula)
{
    EXPECT_NEAR(heat_existence_time(1.0, 2.0, 2.0), std::sqrt(3.0) / 4.0, 1e-15);
    EXPECT_NEAR(heat_existence_time(0.5, 3.0, 1.5), std::sqrt(8.0) / (std::pow(3.0, 1.5) * 0.5), 1e-14);
    EXPECT_LT(heat_existence_time(1.0, 1.0 + 1e-12, 2.0), 1e-5);
    EXPECT_EQ(heat_existence_time(0.0, 2.0, 2.0), std::numeric_limits<double>::infinity());
    EXPECT_THROW(heat_existence_time(1.0, 1.0, 2.0), ValidationError);
}

TEST(Existence, WaveFormula)
{
    const double c = 2.0, p = 2.0, psi = 0.5;
    auto term = [&](double n) { return std::cbrt((c - 1.0) / (psi * psi * std::pow(c, p) * std::pow(n, 2 * p - 2))); };
    EXPECT_NEAR(wave_existence_time(1.0, 3.0, psi, c, p), std::min(term(1.0), term(3.0)), 1e-14);
    EXPECT_NEAR(wave_existence_time(0.0, 3.0, psi, c, p), term(3.0), 1e-14);
    EXPECT_EQ(wave_existence_time(1.0, 1.0, 0.0, c, p), std::numeric_limits<double>::infinity());
}

TEST(Existence, GlobalSmallness)
{
    EXPECT_TRUE(global_smallness_check(2.0, 0.25, 2.0, 2.0, 0.0, 16.0));
    EXPECT_FALSE(global_smallness_check(2.0, 0.25, 2.0, 2.0, 100.0, 16.0));
    EXPECT_THROW(global_smallness_check(1.4, 0.25, 2.0, 2.0, 1.0, 1.0), ValidationError);
    EXPECT_THROW(global_smallness_check(2.0, 0.6, 2.0, 2.0, 1.0, 1.0), ValidationError);
}

TEST(TimeCoefficient, Parsing)
{
    EXPECT_NEAR(parse_time_coefficient("const:2").l2_norm(4.0), 4.0, 1e-10);
    EXPECT_NEAR(parse_time_coefficient("decay:1").value(1.0), 0.5, 1e-15);
    EXPECT_NEAR(parse_time_coefficient("exp:1").value(2.0), std::exp(-2.0), 1e-12);
    EXPECT_THROW(parse_time_coefficient("sin:1"), ValidationError);
}

TEST(Heat, LinearMatchesPropagator)
{
    const auto u0 = make_bump({0, 0}, 0.3, 2.0);
    const auto st = linear_heat_solve(u0, {0.25, 0.5}, {});
    ASSERT_EQ(st.snapshots.size(), 2u);
    EXPECT_LT(sup_relative_error(st.snapshots[1], heat_propagator(0.5, u0, {})), 1e-10);
    EXPECT_THROW(linear_heat_solve(u0, {0.5, 0.25}, {}), ValidationError);
}

TEST(Heat, ZeroNonlinearityKeepsData)
{
    const auto u0 = smooth_data(1.0);
    const auto st = nonlinear_heat_solve(u0, parse_symbol("zero"), 2.0, 1.0, NonlinearMode::biinvariant, {});
    EXPECT_TRUE(st.converged);
    EXPECT_LT(sup_relative_error(st.snapshots.back(), resample(u0, st.rule)), 1e-12);
}

TEST(Heat, ZeroDataStaysZero)
{
    const auto st = nonlinear_heat_solve(smooth_data(0.0), parse_symbol("one"), 2.0, 1.0,
                                         NonlinearMode::biinvariant, {});
    EXPECT_EQ(st.sup_l2(), 0.0);
}

// B = identity makes the equation pointwise: u' = u^2, u = u0 / (1 - u0 t).
TEST(Heat, PointwiseOdeOracle)
{
    const double T = 0.5;
    const auto u0 = smooth_data(1.0);
    const auto st = nonlinear_heat_solve(u0, parse_symbol("one"), 2.0, T, NonlinearMode::biinvariant, {});
    ASSERT_TRUE(st.converged);
    const auto& u = st.snapshots.back();
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double a = u0.value_at(u.nodes()[i]).real();
        const double exact = a / (1.0 - a * T);
        err = std::max(err, std::abs(u.values()[i] - exact));
        ref = std::max(ref, std::abs(exact));
    }
    EXPECT_LT(err / ref, 1e-3);
}

TEST(Heat, ModeValidation)
{
    const auto u0 = make_bump({2, 2}, 0.3, 2.0);
    EXPECT_THROW(nonlinear_heat_solve(u0, parse_symbol("one"), 2.0, 0.1, NonlinearMode::biinvariant, {}),
                 ValidationError);
    EXPECT_THROW(nonlinear_heat_solve(smooth_data(1.0), parse_symbol("one"), 1.0, 0.1, NonlinearMode::biinvariant, {}),
                 ValidationError);
    EXPECT_EQ(parse_mode("paper-literal"), NonlinearMode::paper_literal);
    EXPECT_THROW(parse_mode("other"), ValidationError);
}

TEST(Heat, LiteralModeConverges)
{
    EtaTable eta;
    calibrate_all({2, 2}, eta);
    const auto u0 = 0.2 * make_bump({2, 2}, 0.3, 2.0);
    const auto st = nonlinear_heat_solve(u0, parse_symbol("heat:0.5"), 2.0, 0.2, NonlinearMode::paper_literal, eta);
    EXPECT_TRUE(st.converged);
    EXPECT_LT(st.max_residual(), 1e-8);
}

TEST(Wave, NoForcingIsFree)
{
    const auto u0 = smooth_data(1.0);
    const auto u1 = smooth_data(0.5);
    const double T = 0.5;
    const auto st = nonlinear_wave_solve(u0, u1, parse_time_coefficient("const:0"), parse_symbol("one"), 2.0, T,
                                         NonlinearMode::biinvariant, {});
    EXPECT_LT(sup_relative_error(st.snapshots.back(), resample(u0 + T * u1, st.rule)), 1e-12);
}
