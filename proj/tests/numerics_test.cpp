#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sl2h/errors.hpp"
#include "sl2h/numerics.hpp"

using namespace sl2h;

TEST(Periodic, HaarNormalisation)
{
    const PeriodicRule rule;
    EXPECT_NEAR(std::abs(integrate_periodic([](double) { return cplx(1.0); }, rule) - 1.0), 0.0, 1e-15);
    for (int n : {4, 7, 256})
        EXPECT_LT(std::abs(integrate_periodic([](double th) { return std::polar(1.0, th); }, PeriodicRule(n))), 1e-14);
    const cplx c2 = integrate_periodic([](double th) { return cplx(std::cos(th) * std::cos(th)); }, rule);
    EXPECT_NEAR(c2.real(), 0.5, 1e-15);
}

TEST(Periodic, RejectsNonFinite)
{
    EXPECT_THROW(integrate_periodic([](double th) { return cplx(th > 1.0 ? NAN : 0.0); }, PeriodicRule(8)),
                 ValidationError);
    EXPECT_THROW(PeriodicRule(0), ValidationError);
}

TEST(GaussLegendre, ExactForOddDegree)
{
    const auto& g = gauss_legendre(8);
    for (int k = 0; k <= 15; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            s += g.weights[i] * std::pow(g.nodes[i], k);
        const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
        EXPECT_NEAR(s, exact, 1e-14) << k;
    }
}

TEST(Radial, ClosedForms)
{
    const auto unit = RadialRule::uniform(0.0, 1.0);
    const std::vector<cplx> ones(unit.size(), 1.0);
    EXPECT_NEAR(integrate_radial(ones, unit).real() / (std::cosh(2.0) - 1.0), 1.0, 1e-10);
    const std::vector<cplx> zeros(unit.size(), 0.0);
    EXPECT_EQ(integrate_radial(zeros, unit), cplx(0.0));

    const auto wide = RadialRule::uniform(0.0, 20.0);
    std::vector<cplx> decay;
    for (double t : wide.nodes())
        decay.emplace_back(std::exp(-4.0 * t));
    // int_0^inf e^{-4t} 2 sinh 2t dt = 1/2 - 1/6
    EXPECT_NEAR(integrate_radial(decay, wide).real() * 3.0, 1.0, 1e-8);
}

TEST(Radial, Linearity)
{
    const auto rule = RadialRule::uniform(0.0, 3.0, 32);
    std::vector<cplx> f, g, h;
    const cplx a(2.0, -1.0), b(0.5, 3.0);
    for (double t : rule.nodes()) {
        f.emplace_back(std::sin(t));
        g.emplace_back(std::exp(-t), t);
        h.push_back(a * f.back() + b * g.back());
    }
    const cplx lhs = integrate_radial(h, rule);
    const cplx rhs = a * integrate_radial(f, rule) + b * integrate_radial(g, rule);
    EXPECT_LT(std::abs(lhs - rhs), 1e-14 * std::abs(lhs));
}

TEST(Radial, Refinement)
{
    const auto rule = RadialRule::uniform(0.0, 4.0, 16);
    auto sum = [](const RadialRule& r) {
        std::vector<cplx> v;
        for (double t : r.nodes())
            v.emplace_back(std::exp(-t * t));
        return integrate_radial(v, r).real();
    };
    EXPECT_NEAR(sum(rule), sum(rule.refined()), 1e-12);
}

TEST(Radial, Validation)
{
    const auto rule = RadialRule::uniform(0.0, 1.0, 4);
    const std::vector<cplx> short_samples(3, 1.0);
    EXPECT_THROW(integrate_radial(short_samples, rule), ValidationError);
    std::vector<cplx> nan(rule.size(), 1.0);
    nan[2] = NAN;
    EXPECT_THROW(integrate_radial(nan, rule), ValidationError);
    EXPECT_THROW(RadialRule::uniform(1.0, 0.5), ValidationError);
    EXPECT_THROW(RadialRule::from_panels({{0.0, 1.0}, {0.5, 2.0}}, 4), ValidationError);
}

TEST(Radial, Bandwidth)
{
    EXPECT_DOUBLE_EQ(RadialRule::uniform(0.0, 3.0, 32, 0.5).bandwidth(), 128.0);
}

TEST(Grid, SymmetricWithZero)
{
    const SpectralGrid g(10.0, 100);
    EXPECT_EQ(g.size(), 101);
    EXPECT_EQ(g[g.zero_index()], 0.0);
    for (int j = 0; j < g.size(); ++j)
        EXPECT_NEAR(g[j], -g[g.size() - 1 - j], 1e-13);
    EXPECT_DOUBLE_EQ(g.extended().lambda_max(), 20.0);
    EXPECT_DOUBLE_EQ(g.extended().spacing(), g.spacing());
    EXPECT_DOUBLE_EQ(g.refined().spacing(), g.spacing() / 2);
    EXPECT_THROW(SpectralGrid(-1.0, 11), ValidationError);
    EXPECT_THROW(SpectralGrid(1.0, 2), ValidationError);
}

TEST(Threads, ParallelForCoversRange)
{
    std::vector<int> hit(1000, 0);
    parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; });
    for (int h : hit)
        EXPECT_EQ(h, 1);
    EXPECT_GE(thread_count(), 1);
}
