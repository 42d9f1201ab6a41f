#include <cmath>
#include <numbers>

#include <boost/math/special_functions/ellint_1.hpp>
#include <gtest/gtest.h>

#include "sl2h/errors.hpp"
#include "sl2h/group.hpp"
#include "sl2h/spherical.hpp"

using namespace sl2h;

constexpr double pi = std::numbers::pi;

namespace {

// P_nu(cosh 2t) = 2F1(-nu, nu + 1; 1; -sinh^2 t), nu = -1/2 + i lambda / 2; series needs sinh t < 1.
cplx legendre_oracle(double lambda, double t)
{
    const cplx nu(-0.5, lambda / 2);
    const cplx a = -nu, b = nu + 1.0;
    const double x = -std::sinh(t) * std::sinh(t);
    cplx term = 1.0, sum = 1.0;
    for (int k = 0; k < 400; ++k) {
        term *= (a + double(k)) * (b + double(k)) / double((k + 1) * (k + 1)) * x;
        sum += term;
        if (std::abs(term) < 1e-18)
            break;
    }
    return sum;
}

} // namespace

TEST(Spherical, LegendreSeries)
{
    for (double lambda : {0.0, 0.5, 2.0, 5.0})
        for (double t : {0.1, 0.4, 0.8}) {
            const cplx v = phi_radial({{0, 0}, lambda}, t);
            EXPECT_LT(std::abs(v - legendre_oracle(lambda, t)), 1e-12) << lambda << " " << t;
            EXPECT_NEAR(phi_elementary(lambda, t), v.real(), 1e-12);
        }
}

TEST(Spherical, EllipticAtZero)
{
    for (double t : {0.5, 2.0, 6.0}) {
        const double oracle = 2.0 / pi / std::cosh(t) * boost::math::ellint_1(std::tanh(t));
        EXPECT_NEAR(phi_elementary(0.0, t) / oracle, 1.0, 1e-12) << t;
    }
}

TEST(Spherical, SechClosedForms)
{
    for (double t : {0.3, 1.0, 4.0, 12.0}) {
        EXPECT_NEAR(phi_discrete({2, 2}, 1, t) / std::pow(1.0 / std::cosh(t), 2), 1.0, 1e-12) << t;
        EXPECT_NEAR(phi_discrete({4, 4}, 3, t) / std::pow(1.0 / std::cosh(t), 4), 1.0, 1e-7) << t;
        EXPECT_NEAR(std::abs(phi_radial({{0, 0}, cplx(0, 1)}, t) - 1.0), 0.0, 1e-12);
    }
}

TEST(Spherical, IdentityIsDelta)
{
    for (int l = -4; l <= 4; ++l)
        for (int n = -4; n <= 4; n += 2) {
            const int nn = n + ((l - n) % 2 != 0 ? 1 : 0);
            if (nn > 4)
                continue;
            const cplx v = phi({{l, nn}, 1.3}, GroupElement{});
            EXPECT_LT(std::abs(v - (l == nn ? 1.0 : 0.0)), 1e-13) << l << "," << nn;
        }
}

TEST(Spherical, AtZeroIsOne)
{
    for (double lambda : {0.0, 1.0, 7.5})
        EXPECT_NEAR(std::abs(phi_radial({{0, 0}, lambda}, 0.0) - 1.0), 0.0, 1e-14);
}

TEST(Spherical, RefinementStable)
{
    const cplx a = phi_radial({{0, 0}, 0.0}, 10.0);
    const cplx b = phi_radial({{0, 0}, 0.0}, 10.0, 10);
    EXPECT_LT(std::abs(a - b), 1e-10 * std::abs(b));
    EXPECT_NO_THROW(phi_radial_checked({{2, 2}, 3.0}, 2.0));
}

TEST(Spherical, DirectQuadratureAgrees)
{
    for (const TypePair pair : {TypePair(0, 0), TypePair(2, 4), TypePair(1, -1)})
        for (double lambda : {0.0, 2.5}) {
            const auto x = rotation(0.3) * diag_flow(0.9) * rotation(1.2);
            const cplx fast = phi({pair, lambda}, x);
            const cplx slow = phi_direct({pair, lambda}, x, PeriodicRule(1024));
            EXPECT_LT(std::abs(fast - slow), 1e-12) << pair.l << "," << pair.n << " " << lambda;
        }
}

TEST(Spherical, ConjugateSymmetry)
{
    for (double t : {0.5, 2.0}) {
        const cplx a = phi_radial({{2, 4}, 1.7}, t);
        const cplx b = phi_radial({{2, 4}, -1.7}, t);
        EXPECT_LT(std::abs(b - std::conj(a)), 1e-13);
    }
}

TEST(Eta, TableBehaviour)
{
    EtaTable table;
    EXPECT_THROW(table.get({2, 2}, 1), UncalibratedError);
    table.insert({2, 4, 1, 1.5, 1e-6});
    EXPECT_EQ(table.get({4, 2}, 1), 1.5);
    EXPECT_THROW(table.insert({2, 4, 1, 1.6, 1e-6}), ValidationError);
    const auto back = EtaTable::from_json(table.to_json());
    EXPECT_EQ(back.get({2, 4}, 1), 1.5);
    EXPECT_THROW(EtaTable::from_json("{\"entries\": [{\"l\": 1}]}"), ValidationError);
}

TEST(Eta, DiscreteFunctions)
{
    EtaTable table;
    calibrate_all({2, 2}, table);
    const double eta = table.get({2, 2}, 1);
    EXPECT_GT(eta, 0.0);
    EXPECT_NEAR(psi_discrete({2, 2}, 1, GroupElement{}, table).real(), eta, 1e-13);
    EXPECT_LT(std::abs(psi_discrete({2, 2}, 1, 20.0, table)), 1e-15);
    EXPECT_THROW(psi_discrete({2, 2}, 2, 0.5, table), ValidationError);
    EXPECT_THROW(psi_discrete({0, 0}, 1, 0.5, table), ValidationError);
}

TEST(Eta, CalibrationAgreesAcrossProfiles)
{
    const TypePair pair(4, 4);
    const std::vector<RadialProfile> refs = {make_bump(pair, 0.2, 1.5, 64), make_bump(pair, 0.6, 2.8, 64, 1.0, 1.0)};
    for (int m : {1, 3}) {
        const auto c = calibrate_eta(pair, m, refs);
        EXPECT_GT(c.product, 0.0);
        EXPECT_LT(c.spread, 1e-6);
    }
    EXPECT_THROW(calibrate_eta({0, 2}, 1, refs), ValidationError);
}
