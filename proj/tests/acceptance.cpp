// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sl2h/errors.hpp"
#include "sl2h/group.hpp"
#include "sl2h/inequality.hpp"
#include "sl2h/multiplier.hpp"
#include "sl2h/pde.hpp"
#include "sl2h/spherical.hpp"
#include "sl2h/transform.hpp"

using namespace sl2h;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

// A bump on [t0, t1] sampled on a rule covering [0, t_max], for operators whose output spreads.
RadialProfile wide_bump(TypePair pair, double t0, double t1, double t_max = 8.0, int npp = 64)
{
    const auto rule = RadialRule::uniform(0.0, t_max, npp, 1.0);
    return sample_profile(pair, rule, [=](double t) { return cplx(bump_shape(t, t0, t1)); });
}

Outcome decomposition()
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double iw = 0.0, ca = 0.0;
    for (int i = 0; i < 10000; ++i) {
        double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        double det = a * d - b * c;
        if (std::abs(det) < 1e-3) {
            --i;
            continue;
        }
        if (det < 0) {
            a = -a;
            b = -b;
            det = -det;
        }
        const double s = 1.0 / std::sqrt(det);
        const GroupElement x{a * s, b * s, c * s, d * s};
        iw = std::max(iw, max_entry_diff(compose(iwasawa(x)), x));
        ca = std::max(ca, max_entry_diff(compose(cartan(x)), x));
    }
    return {iw < 1e-12 && ca < 1e-10, fmt("iwasawa %.2e, cartan %.2e over 1e4 elements", iw, ca)};
}

Outcome identity_values()
{
    const GroupElement e{};
    double worst = 0.0;
    int cases = 0;
    for (int l = -4; l <= 4; ++l)
        for (int n = -4; n <= 4; ++n) {
            if ((l - n) % 2 != 0)
                continue;
            for (cplx lambda : {cplx(0), cplx(1), cplx(5), cplx(0, 1)}) {
                try {
                    const cplx v = phi({TypePair(l, n), lambda}, e);
                    worst = std::max(worst, std::abs(v - (l == n ? 1.0 : 0.0)));
                    ++cases;
                } catch (const ValidationError&) {
                }
            }
        }
    return {cases > 0 && worst < 1e-13, fmt("max |phi(e) - delta| = %.2e over %d cases", worst, cases)};
}

Outcome envelope()
{
    double lo = INFINITY, hi = 0.0;
    for (int k = 0; k <= 400; ++k) {
        const double t = 20.0 * k / 400;
        const double r = phi_elementary(0.0, t) / ((1.0 + t) * std::exp(-t));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo > 0 && hi / lo < 3.0, fmt("band [%.4f, %.4f], ratio %.3f", lo, hi, hi / lo)};
}

Outcome plancherel()
{
    const EtaTable none;
    double worst00 = 0.0;
    const double spans[5][2] = {{0.0, 1.0}, {0.3, 1.5}, {0.5, 2.5}, {1.0, 3.0}, {0.2, 4.0}};
    for (const auto& s : spans)
        worst00 = std::max(worst00, plancherel_check(make_bump({0, 0}, s[0], s[1]), none).rel_err);

    double worst = 0.0, spread = 0.0;
    for (const TypePair pair : {TypePair(2, 2), TypePair(4, 4)}) {
        std::vector<RadialProfile> refs = {make_bump(pair, 0.2, 1.4), make_bump(pair, 0.5, 2.5),
                                           make_bump(pair, 0.1, 3.0, 128, 1.0, 2.0)};
        EtaTable eta;
        for (int m : gamma_set(pair).members) {
            const auto c = calibrate_eta(pair, m, refs);
            spread = std::max(spread, c.spread);
            eta.insert({pair.l, pair.n, m, c.eta, 1e-6});
        }
        for (const auto& f : refs)
            worst = std::max(worst, plancherel_check(f, eta).rel_err);
    }
    return {worst00 < 1e-6 && worst < 1e-4 && spread < 1e-6,
            fmt("(0,0) %.2e, (2,2)/(4,4) %.2e, eta spread %.2e", worst00, worst, spread)};
}

double roundtrip_error(const RadialProfile& f, const TransformOptions& o)
{
    const EtaTable none;
    return sup_relative_error(inverse(forward(f, none, o), f.rule(), none), f);
}

Outcome roundtrip()
{
    TransformOptions coarse;
    coarse.adaptive = false;
    coarse.grid = SpectralGrid(120.0, 2401);
    TransformOptions fine = coarse;
    fine.grid = coarse.grid.extended();
    double worst = 0.0;
    bool monotone = true;
    std::string doubling;
    for (const auto& [a, b] : {std::pair{0.3, 1.5}, std::pair{0.0, 2.0}, std::pair{1.0, 3.0}}) {
        const auto f = make_bump({0, 0}, a, b);
        const double e1 = roundtrip_error(f, coarse);
        const double e2 = roundtrip_error(f, fine);
        worst = std::max(worst, e2);
        monotone = monotone && e2 < e1;
        doubling += fmt(" %.1e->%.1e", e1, e2);
    }
    return {worst < 1e-4 && monotone, fmt("max %.2e; grid doubling%s", worst, doubling.c_str())};
}

Outcome hausdorff_young()
{
    const EtaTable none;
    const TestFamily fam = default_family({0, 0});
    InequalityParams prm;
    prm.p = 2.0;
    const auto r2 = run_family_check(fam, prm, none);
    double lo2 = INFINITY;
    for (const auto& e : r2.members)
        lo2 = std::min(lo2, e.ratio);
    prm.kind = InequalityKind::dual_hausdorff_young;
    const auto d2 = run_family_check(fam, prm, none);
    double dual_dev = 0.0;
    for (const auto& e : d2.members)
        dual_dev = std::max(dual_dev, std::abs(e.ratio - 1.0));
    bool ok = std::abs(r2.max_ratio - 1.0) < 1e-6 && std::abs(lo2 - 1.0) < 1e-6 && dual_dev < 1e-6;
    std::string d = fmt("p=2 ratios in [%.9f, %.9f], dual dev %.1e;", lo2, r2.max_ratio, dual_dev);
    prm.kind = InequalityKind::hausdorff_young;
    for (double p : {1.0, 1.25, 1.5}) {
        prm.p = p;
        const auto r = run_family_check(fam, prm, none);
        ok = ok && std::isfinite(r.max_ratio) && r.refinement_delta < 0.01;
        d += fmt(" p=%.2f max %.4f drift %.1e", p, r.max_ratio, r.refinement_delta);
    }
    return {ok, d};
}

Outcome hyp_collapse()
{
    const EtaTable none;
    double worst = 0.0;
    for (const TypePair pair : {TypePair(0, 0), TypePair(1, 1)}) {
        const auto psi = parse_psi("rational:1");
        const double k = paley_constant(psi, pair);
        for (double p : {1.25, 1.5}) {
            const double pp = p / (p - 1.0);
            for (const auto& f : {make_bump(pair, 0.3, 1.5), make_bump(pair, 0.5, 2.5, 128, 1.0, 2.0)}) {
                const auto s = forward(f, none);
                const auto paley = paley_check(f, s, psi, k, p);
                const auto hy = hausdorff_young_check(f, s, p);
                worst = std::max(worst, rel(hyp_check(f, s, psi, k, p, p).ratio, paley.ratio));
                worst = std::max(worst, rel(hyp_check(f, s, psi, k, p, pp).ratio, hy.ratio));
            }
        }
    }
    return {worst < 1e-10, fmt("max relative gap %.2e", worst)};
}

Outcome homogeneity()
{
    const auto psi = [](double x) { return 1.0 / (1.0 + x * x); };
    const auto base = weak_sup_norm(psi, Parity::plus).value;
    const auto m = parse_symbol("heat:0.5");
    const TypePair pair(4, 4);
    const double bm = multiplier_norm_bound(m, 1.5, 3.0, pair).bound;
    double worst = 0.0;
    for (double c : {0.1, 3.0, 100.0}) {
        const auto scaled_psi = [&](double x) { return c * psi(x); };
        worst = std::max(worst, rel(weak_sup_norm(scaled_psi, Parity::plus).value, c * base));
        worst = std::max(worst, rel(multiplier_norm_bound(scaled(c, m), 1.5, 3.0, pair).bound, c * bm));
    }
    return {worst < 1e-10, fmt("max relative deviation %.2e", worst)};
}

Outcome closed_form_sup()
{
    double worst = 0.0;
    for (double alpha : {0.5, 1.0, 2.0, 3.0, 5.0})
        for (double r : {0.1, 0.25, 0.5, 1.0, 2.0})
            for (double t : {0.01, 0.1, 1.0, 5.0, 20.0})
                worst = std::max(worst, rel(heat_sup_numerical(t, alpha, r), heat_sup_closed_form(t, alpha, r)));
    const double spot = heat_sup_closed_form(1.0, 2.0, 2.0);
    return {worst < 1e-8 && std::abs(spot - 0.42888) < 1e-5,
            fmt("max rel %.2e over 125 points; spot %.6f", worst, spot)};
}

Outcome heat_bound_exponents()
{
    bool ok = true;
    std::string d;
    for (const auto& [p, q] : {std::pair{2.0, 4.0}, std::pair{1.5, 3.0}}) {
        const double r = 1.0 / p - 1.0 / q;
        std::vector<double> x, y;
        for (int k = 0; k <= 30; ++k) {
            const double t = std::pow(10.0, -4.0 + 3.0 * k / 30);
            x.push_back(std::log(t));
            y.push_back(std::log(heat_bound(t, p, q, {0, 0}).bound));
        }
        const double s = slope(x, y);
        double lo = INFINITY, hi = 0.0;
        for (int k = 0; k <= 45; ++k) {
            const double t = 5.0 + k;
            const double v = heat_bound(t, p, q, {0, 0}).bound * std::exp(t / 4) * std::pow(t, 1.5 * r);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        ok = ok && rel(s, -r) < 0.02 && (hi - lo) / lo < 0.05;
        d += fmt(" (%.1f,%.0f): slope %.5f vs %.5f, large-t spread %.1e;", p, q, s, -r, (hi - lo) / lo);
    }
    return {ok, d};
}

Outcome discrete_growth()
{
    const TypePair pair(4, 4);
    EtaTable eta;
    calibrate_all(pair, eta);
    const auto u0 = wide_bump(pair, 0.2, 2.0);
    const double b3 = std::abs(forward_discrete(u0, 3, eta));
    std::vector<double> times, logs;
    for (int k = 0; k <= 10; ++k)
        times.push_back(5.0 + k);
    const auto st = linear_heat_solve(u0, times, eta);
    for (const auto& s : st.snapshots)
        logs.push_back(std::log(lp_norm(s, 2.0)));
    const double s = slope(times, logs);
    return {b3 > 0 && rel(s, 2.0) < 0.02, fmt("|f_B(3)| = %.3e, log-slope %.5f", b3, s)};
}

Outcome composition()
{
    const EtaTable none;
    double worst = 0.0;
    const auto m1 = parse_symbol("rational:1");
    const auto m2 = parse_symbol("heat:0.3");
    for (const auto& [a, b] : {std::pair{0.3, 1.5}, std::pair{0.5, 2.5}}) {
        const auto f = wide_bump({0, 0}, a, b);
        const auto twice = heat_propagator(0.2, heat_propagator(0.3, f, none), none);
        worst = std::max(worst, sup_relative_error(twice, heat_propagator(0.5, f, none)));
        const auto comp = apply_fourier_multiplier(m1, apply_fourier_multiplier(m2, f, none), none);
        worst = std::max(worst, sup_relative_error(comp, apply_fourier_multiplier(product(m1, m2), f, none)));
    }
    return {worst < 2e-4, fmt("max sup-relative gap %.2e", worst)};
}

Outcome picard()
{
    const EtaTable none;
    const auto u0 = make_bump({0, 0}, 0.3, 1.5);
    const double n0 = lp_norm(u0, 2.0);
    const auto B = parse_symbol("heat:0.1");
    const double p = 2.0;
    const double Th = heat_existence_time(n0, std::sqrt(2.0), p) / 2;
    const auto heat = nonlinear_heat_solve(u0, B, p, Th, NonlinearMode::biinvariant, none);

    const auto psi = parse_time_coefficient("const:1");
    const double Tw = wave_existence_time(n0, n0, psi.l2_norm(1.0), 2.0, p) / 2;
    const auto wave = nonlinear_wave_solve(u0, u0, psi, B, p, Tw, NonlinearMode::biinvariant, none);

    const auto zero = parse_time_coefficient("const:0");
    const auto free = nonlinear_wave_solve(u0, u0, zero, B, p, 1.0, NonlinearMode::biinvariant, none);
    const auto ref = resample(u0, free.rule);
    double scale = 0.0, gap = 0.0;
    for (const cplx v : ref.values())
        scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < free.times.size(); ++i)
        for (std::size_t k = 0; k < ref.size(); ++k)
            gap = std::max(gap, std::abs(free.snapshots[i].values()[k] - (1.0 + free.times[i]) * ref.values()[k]));
    const bool ok = heat.converged && heat.iterations < 100 && heat.max_residual() < 1e-6 && wave.converged &&
                    wave.iterations < 100 && wave.max_residual() < 1e-6 && gap / scale < 1e-12;
    return {ok, fmt("heat T=%.4f: %d iterations, residual %.1e; wave T=%.4f: %d iterations, residual %.1e; "
                    "Psi=0 gap %.1e after %d iteration",
                    Th, heat.iterations, heat.max_residual(), Tw, wave.iterations, wave.max_residual(), gap / scale,
                    free.iterations)};
}

Outcome existence_times()
{
    const double h = heat_existence_time(1.0, std::sqrt(2.0), 2.0);
    const double w = wave_existence_time(1.0, 1.0, 1.0, 2.0, 2.0);
    // gamma = 2, gamma0 = 1/4, p = 2: c^p u^2 <= c T^{3/4}; at c = 2, T = 16 the boundary is u = 2.
    const bool at = global_smallness_check(2.0, 0.25, 2.0, 2.0, 2.0, 16.0);
    const bool below = global_smallness_check(2.0, 0.25, 2.0, 2.0, std::nextafter(2.0, 0.0), 16.0);
    const bool above = global_smallness_check(2.0, 0.25, 2.0, 2.0, std::nextafter(2.0, 3.0), 16.0);
    bool rejects = true;
    for (const auto& [g, g0] : {std::pair{1.5, 0.1}, std::pair{2.0, 0.5}, std::pair{2.0, 0.0}}) {
        try {
            global_smallness_check(g, g0, 2.0, 2.0, 1.0, 1.0);
            rejects = false;
        } catch (const ValidationError&) {
        }
    }
    const bool ok = rel(h, 0.5) < 1e-15 && rel(w, std::cbrt(0.25)) < 1e-15 && at && below && !above && rejects;
    return {ok, fmt("heat %.17g, wave %.17g; boundary at/below/above = %d/%d/%d; range checks %s", h, w, at, below,
                    above, rejects ? "reject" : "accept")};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"decomposition roundtrips", decomposition},
        {"spherical identity values", identity_values},
        {"ground-estimate envelope", envelope},
        {"plancherel", plancherel},
        {"inversion roundtrip", roundtrip},
        {"hausdorff-young pinning", hausdorff_young},
        {"paley and hyp collapse", hyp_collapse},
        {"weak-norm homogeneity", homogeneity},
        {"closed-form supremum", closed_form_sup},
        {"heat-bound exponents", heat_bound_exponents},
        {"heat growth with discrete spectrum", discrete_growth},
        {"semigroup and composition", composition},
        {"picard solvers", picard},
        {"existence-time formulas", existence_times},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
