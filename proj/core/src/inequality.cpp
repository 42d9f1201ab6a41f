#include "sl2h/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sl2h/errors.hpp"

namespace sl2h {

namespace {

double conjugate(double p)
{
    return p == 1.0 ? INFINITY : p / (p - 1.0);
}

void require_p(double p)
{
    if (!(p >= 1.0 && p <= 2.0))
        throw ValidationError("inequality: need 1 <= p <= 2");
}

// (c_cont int |F|^a w mu + c_disc sum |F|^a w |m|)^{1/a}; a = inf gives the sup.
double weighted_norm(const SpectralData& s, double a, const std::function<double(double)>& w_line,
                     const std::function<double(int)>& w_disc)
{
    if (std::isinf(a)) {
        double m = 0.0;
        for (const cplx& v : s.hat_H)
            m = std::max(m, std::abs(v));
        for (const auto& [k, v] : s.hat_B)
            m = std::max(m, std::abs(v));
        return m;
    }
    double cont = 0.0;
    for (int j = 0; j < s.grid.size(); ++j) {
        const double lambda = s.grid[j];
        cont += std::pow(std::abs(s.hat_H[static_cast<std::size_t>(j)]), a) * w_line(lambda) *
                plancherel_density(s.pair.tau(), lambda) * s.grid.weight(j);
    }
    double disc = 0.0;
    for (const auto& [k, v] : s.hat_B)
        disc += std::pow(std::abs(v), a) * w_disc(k) * std::abs(k);
    return std::pow(kContinuousPrefactor * cont + kDiscretePrefactor * disc, 1.0 / a);
}

RatioEntry make_entry(double lhs, double rhs)
{
    RatioEntry e{lhs, rhs, 0.0};
    e.ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? INFINITY : 0.0);
    return e;
}

} // namespace

RadialProfile TestFamily::profile(std::size_t i, int level) const
{
    const BumpSpec& b = members.at(i);
    const double t0 = std::max(0.05, b.center - 0.5 * b.width);
    const double t1 = b.center + 0.5 * b.width;
    return make_bump(pair, t0, t1, nodes_per_panel << level, 1.0, b.omega);
}

TestFamily default_family(const TypePair& pair, int count, std::uint64_t seed)
{
    if (count <= 0)
        throw ValidationError("default_family: count must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> center(0.5, 4.0);
    std::uniform_real_distribution<double> width(0.2, 1.0);
    constexpr double kOmega[] = {0.0, 2.0, 5.0};
    TestFamily fam;
    fam.pair = pair;
    for (int i = 0; i < count; ++i) {
        BumpSpec b;
        b.center = center(rng);
        b.width = width(rng);
        b.omega = kOmega[i % 3];
        fam.members.push_back(b);
    }
    return fam;
}

PsiWeight parse_psi(const std::string& spec)
{
    const MultiplierSymbol m = parse_symbol(spec);
    return {m.name, [f = m.continuous](double x) { return std::abs(f(x)); },
            [f = m.discrete](int k) { return std::abs(f(k)); }};
}

double paley_constant(const PsiWeight& psi, const TypePair& pair, const SpectralGrid& grid)
{
    const WeakNorm w = weak_sup_norm(psi.on_line, pair.tau(), grid);
    if (!w.finite)
        throw ValidationError("psi '" + psi.name + "' has infinite weak norm ||psi||_{tau,inf}");
    double disc = 0.0;
    for (int k : gamma_set(pair).members)
        disc += psi.on_discrete(k) * std::abs(k);
    return w.value + disc;
}

RatioEntry hausdorff_young_check(const RadialProfile& f, const SpectralData& s, double p)
{
    require_p(p);
    const auto one_line = [](double) { return 1.0; };
    const auto one_disc = [](int) { return 1.0; };
    return make_entry(weighted_norm(s, conjugate(p), one_line, one_disc), lp_norm(f, p));
}

RatioEntry dual_hausdorff_young_check(const SpectralData& s, const RadialRule& rule, double p,
                                      const EtaTable& eta)
{
    require_p(p);
    const auto one_line = [](double) { return 1.0; };
    const auto one_disc = [](int) { return 1.0; };
    const RadialProfile g = inverse(s, rule, eta);
    return make_entry(lp_norm(g, conjugate(p)), weighted_norm(s, p, one_line, one_disc));
}

RatioEntry paley_check(const RadialProfile& f, const SpectralData& s, const PsiWeight& psi, double constant,
                       double p)
{
    if (!(p > 1.0 && p <= 2.0))
        throw ValidationError("paley_check: need 1 < p <= 2");
    const double e = 2.0 - p;
    const double lhs = weighted_norm(s, p, [&](double x) { return std::pow(psi.on_line(x), e); },
                                     [&](int k) { return std::pow(psi.on_discrete(k), e); });
    return make_entry(lhs, std::pow(constant, e / p) * lp_norm(f, p));
}

RatioEntry hyp_check(const RadialProfile& f, const SpectralData& s, const PsiWeight& psi, double constant,
                     double p, double b)
{
    if (!(p > 1.0 && p <= 2.0))
        throw ValidationError("hyp_check: need 1 < p <= 2");
    const double pc = conjugate(p);
    if (!(b >= p && b <= pc))
        throw ValidationError("hyp_check: need p <= b <= p'");
    const double e = 1.0 / b - 1.0 / pc;
    // (|F| psi^e)^b = |F|^b psi^{e b}
    const double lhs = weighted_norm(s, b, [&](double x) { return std::pow(psi.on_line(x), e * b); },
                                     [&](int k) { return std::pow(psi.on_discrete(k), e * b); });
    return make_entry(lhs, std::pow(constant, e) * lp_norm(f, p));
}

InequalityKind parse_inequality(const std::string& name)
{
    if (name == "hy")
        return InequalityKind::hausdorff_young;
    if (name == "dual-hy")
        return InequalityKind::dual_hausdorff_young;
    if (name == "paley")
        return InequalityKind::paley;
    if (name == "hyp")
        return InequalityKind::hyp;
    throw ValidationError("unknown inequality '" + name + "' (hy, dual-hy, paley, hyp)");
}

std::string to_string(InequalityKind kind)
{
    switch (kind) {
    case InequalityKind::hausdorff_young:
        return "hy";
    case InequalityKind::dual_hausdorff_young:
        return "dual-hy";
    case InequalityKind::paley:
        return "paley";
    case InequalityKind::hyp:
        return "hyp";
    }
    return "?";
}

RatioReport run_family_check(const TestFamily& family, const InequalityParams& params, const EtaTable& eta,
                             const TransformOptions& options)
{
    const bool uses_psi = params.kind == InequalityKind::paley || params.kind == InequalityKind::hyp;
    const double constant = uses_psi ? paley_constant(params.psi, family.pair, options.grid) : 0.0;

    auto run_level = [&](int level, std::vector<RatioEntry>* entries) {
        TransformOptions opt = options;
        if (level > 0)
            opt.grid = opt.grid.refined();
        double best = 0.0;
        for (std::size_t i = 0; i < family.members.size(); ++i) {
            const RadialProfile f = family.profile(i, level);
            const SpectralData s = forward(f, eta, opt);
            RatioEntry e;
            switch (params.kind) {
            case InequalityKind::hausdorff_young:
                e = hausdorff_young_check(f, s, params.p);
                break;
            case InequalityKind::dual_hausdorff_young:
                e = dual_hausdorff_young_check(s, f.rule(), params.p, eta);
                break;
            case InequalityKind::paley:
                e = paley_check(f, s, params.psi, constant, params.p);
                break;
            case InequalityKind::hyp:
                e = hyp_check(f, s, params.psi, constant, params.p, params.b);
                break;
            }
            if (entries)
                entries->push_back(e);
            best = std::max(best, e.ratio);
        }
        return best;
    };

    RatioReport r;
    r.max_ratio = run_level(0, &r.members);
    r.refined_max_ratio = run_level(1, nullptr);
    r.refinement_delta = r.max_ratio > 0.0 ? std::fabs(r.refined_max_ratio - r.max_ratio) / r.max_ratio : 0.0;
    return r;
}

double operator_norm_lower_bound(const MultiplierSymbol& m, double p, double q, const TestFamily& family,
                                 const EtaTable& eta, const TransformOptions& options, int level)
{
    if (!(p > 1.0 && p <= 2.0 && q >= 2.0 && std::isfinite(q)))
        throw ValidationError("operator_norm_lower_bound: need 1 < p <= 2 <= q < inf");
    double best = 0.0;
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        const RadialProfile f = family.profile(i, level);
        const RadialProfile g = apply_fourier_multiplier(m, f, eta, options);
        const double den = lp_norm(f, p);
        if (den > 0.0)
            best = std::max(best, lp_norm(g, q) / den);
    }
    return best;
}

} // namespace sl2h
