#include "sl2h/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "sl2h/errors.hpp"

namespace sl2h {

namespace {

double parse_number(const std::string& text, const std::string& spec)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v))
            throw ValidationError("");
        return v;
    } catch (const std::exception&) {
        throw ValidationError("bad numeric parameter in symbol '" + spec + "'");
    }
}

std::pair<std::string, std::string> split_spec(const std::string& spec)
{
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        return {spec, ""};
    return {spec.substr(0, colon), spec.substr(colon + 1)};
}

double exponent_r(double p, double q)
{
    if (!(p > 1.0 && p <= 2.0 && q >= 2.0 && std::isfinite(q)))
        throw ValidationError("bound: need 1 < p <= 2 <= q < inf");
    return 1.0 / p - 1.0 / q;
}

// Sup of g over log-spaced x in [lo, hi], polished by Brent in log x around the best sample.
double log_grid_sup(const std::function<double(double)>& g, double lo, double hi, int points = 1200)
{
    const double a = std::log(lo);
    const double b = std::log(hi);
    const double h = (b - a) / (points - 1);
    int best = 0;
    double best_v = -1.0;
    for (int k = 0; k < points; ++k) {
        const double v = g(std::exp(a + h * k));
        if (v > best_v) {
            best_v = v;
            best = k;
        }
    }
    if (best_v <= 0.0)
        return std::max(best_v, 0.0);
    const double left = a + h * std::max(0, best - 1);
    const double right = a + h * std::min(points - 1, best + 1);
    const auto r = boost::math::tools::brent_find_minima([&](double y) { return -g(std::exp(y)); }, left, right,
                                                         std::numeric_limits<double>::digits);
    return std::max(best_v, -r.second);
}

} // namespace

MultiplierSymbol constant_symbol(cplx c)
{
    return {"const", [c](double) { return c; }, [c](int) { return c; }};
}

MultiplierSymbol scaled(cplx c, const MultiplierSymbol& m)
{
    return {m.name, [c, f = m.continuous](double x) { return c * f(x); },
            [c, f = m.discrete](int k) { return c * f(k); }};
}

MultiplierSymbol product(const MultiplierSymbol& a, const MultiplierSymbol& b)
{
    return {a.name + "*" + b.name,
            [f = a.continuous, g = b.continuous](double x) { return f(x) * g(x); },
            [f = a.discrete, g = b.discrete](int k) { return f(k) * g(k); }};
}

SpectralFunction heat_function(double t)
{
    if (!(t >= 0.0) || !std::isfinite(t))
        throw ValidationError("heat: t must be finite and >= 0");
    return {"heat", [t](double s) { return cplx(std::exp(-t * s)); }, true};
}

SpectralFunction sobolev_function(double a)
{
    if (!std::isfinite(a))
        throw ValidationError("sobolev: exponent must be finite");
    auto phi = [a](double s) {
        const double base = 1.0 + s;
        const bool integer = a == std::round(a);
        if ((base == 0.0 && a < 0.0) || (base < 0.0 && !integer))
            throw ValidationError("sobolev: (1 + s)^a undefined at s = " + std::to_string(s) +
                                  " (base " + std::to_string(base) + ", a = " + std::to_string(a) + ")");
        return cplx(std::pow(base, a));
    };
    return {"sobolev", phi, a <= 0.0};
}

SpectralFunction casimir_function()
{
    return {"casimir", [](double s) { return cplx(-s); }, false};
}

MultiplierSymbol to_symbol(const SpectralFunction& phi)
{
    return {phi.name, [f = phi.phi](double lambda) { return f(0.25 * (1.0 + lambda * lambda)); },
            [f = phi.phi](int m) { return f(0.25 * (1.0 - static_cast<double>(m) * m)); }};
}

MultiplierSymbol parse_symbol(const std::string& spec)
{
    const auto [name, arg] = split_spec(spec);
    if (name == "zero")
        return {"zero", [](double) { return cplx(0.0); }, [](int) { return cplx(0.0); }};
    if (name == "one")
        return constant_symbol(1.0);
    if (name == "const")
        return constant_symbol(parse_number(arg, spec));
    if (name == "rational") {
        const double a = arg.empty() ? 1.0 : parse_number(arg, spec);
        return {"rational", [a](double x) { return cplx(std::pow(1.0 + x * x, -a)); },
                [a](int m) { return cplx(std::pow(1.0 + static_cast<double>(m) * m, -a)); }};
    }
    if (name == "heat" || name == "sobolev" || name == "casimir")
        return to_symbol(parse_spectral_function(spec));
    throw ValidationError("unknown symbol '" + spec + "'");
}

SpectralFunction parse_spectral_function(const std::string& spec)
{
    const auto [name, arg] = split_spec(spec);
    if (name == "heat")
        return heat_function(parse_number(arg, spec));
    if (name == "sobolev")
        return sobolev_function(parse_number(arg, spec));
    if (name == "casimir")
        return casimir_function();
    if (name == "one")
        return {"one", [](double) { return cplx(1.0); }, false};
    if (name == "zero")
        return {"zero", [](double) { return cplx(0.0); }, true};
    throw ValidationError("unknown spectral function '" + spec + "'");
}

RadialProfile apply_fourier_multiplier(const MultiplierSymbol& m, const RadialProfile& f, const EtaTable& eta,
                                       const TransformOptions& options)
{
    SpectralData s = forward(f, eta, options);
    for (int j = 0; j < s.grid.size(); ++j) {
        const cplx v = m.continuous(s.grid[j]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ValidationError("multiplier '" + m.name + "' is not finite at lambda = " +
                                  std::to_string(s.grid[j]));
        s.hat_H[static_cast<std::size_t>(j)] *= v;
    }
    for (auto& [k, v] : s.hat_B) {
        const cplx w = m.discrete(k);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
            throw ValidationError("multiplier '" + m.name + "' is not finite at k = i*" + std::to_string(k));
        v *= w;
    }
    return inverse(s, f.rule(), eta, options.refine);
}

RadialProfile apply_spectral_multiplier(const SpectralFunction& phi, const RadialProfile& f, const EtaTable& eta,
                                        const TransformOptions& options)
{
    return apply_fourier_multiplier(to_symbol(phi), f, eta, options);
}

RadialProfile heat_propagator(double t, const RadialProfile& f, const EtaTable& eta,
                              const TransformOptions& options)
{
    if (!(t > 0.0))
        throw ValidationError("heat_propagator: t must be > 0");
    return apply_spectral_multiplier(heat_function(t), f, eta, options);
}

RadialProfile sobolev_operator(double a, const RadialProfile& f, const EtaTable& eta,
                               const TransformOptions& options)
{
    return apply_spectral_multiplier(sobolev_function(a), f, eta, options);
}

BoundResult multiplier_norm_bound(const MultiplierSymbol& m, double p, double q, const TypePair& pair,
                                  const BoundOptions& options)
{
    const double r = exponent_r(p, q);
    auto sample = [&](const SpectralGrid& g) {
        std::vector<double> v(static_cast<std::size_t>(g.size()));
        for (int j = 0; j < g.size(); ++j)
            v[static_cast<std::size_t>(j)] = std::abs(m.continuous(g[j]));
        return v;
    };
    const auto& grid = options.grid;
    const double weak = weak_sup_on_grid(sample(grid), grid, pair.tau(), r, options.weak.alpha_points);
    const auto wide = grid.extended();
    const double weak_wide = weak_sup_on_grid(sample(wide), wide, pair.tau(), r, options.weak.alpha_points);

    double disc = 0.0;
    for (int k : gamma_set(pair).members)
        disc += std::abs(m.discrete(k)) * std::pow(std::abs(k), r);

    BoundResult out;
    out.terms["weak"] = weak;
    out.terms["discrete"] = disc;
    if (weak_wide > weak * (1.0 + options.weak.divergence_growth)) {
        out.finite = false;
        out.terms["weak"] = INFINITY;
        out.bound = INFINITY;
        return out;
    }
    out.bound = weak + disc;
    return out;
}

BoundResult spectral_norm_bound(const SpectralFunction& phi, double p, double q, const TypePair& pair)
{
    const double r = exponent_r(p, q);
    auto mag = [&](double x) { return std::abs(phi.phi(0.25 + x)); };

    // |phi| non-increasing on [1/4, inf) with limit 0.
    const double top = mag(0.0);
    double prev = top;
    constexpr int kCheck = 2000;
    for (int k = 0; k < kCheck; ++k) {
        const double x = std::pow(10.0, -12.0 + 24.0 * k / (kCheck - 1));
        const double v = mag(x);
        if (!std::isfinite(v) || v > prev * (1.0 + 1e-12) + 1e-300)
            throw ValidationError("spectral_norm_bound: |phi| is not decreasing on [1/4, inf) (at s = " +
                                  std::to_string(0.25 + x) + ")");
        prev = v;
    }
    if (prev > 1e-8 * top)
        throw ValidationError("spectral_norm_bound: |phi(s)| does not tend to 0");

    const double near_exp = (pair.tau() == Parity::plus ? 1.5 : 0.5) * r;
    double near = log_grid_sup([&](double x) { return mag(x) * std::pow(x, near_exp); }, 1e-14, 0.25);
    if (near_exp == 0.0)
        near = std::max(near, top);
    const double far = log_grid_sup([&](double x) { return mag(x) * std::pow(x, r); }, 0.25, 1e12);

    double disc = 0.0;
    for (int k : gamma_set(pair).members)
        disc += std::abs(phi.phi(0.25 * (1.0 - static_cast<double>(k) * k))) * std::pow(std::abs(k), r);

    BoundResult out;
    out.terms["near"] = near;
    out.terms["far"] = far;
    out.terms["discrete"] = disc;
    out.bound = disc + std::max(near, far);
    return out;
}

BoundResult heat_bound(double t, double p, double q, const TypePair& pair)
{
    if (!(t > 0.0) || !std::isfinite(t))
        throw ValidationError("heat_bound: t must be > 0");
    const double r = exponent_r(p, q);
    const double cont = t <= 1.0 ? std::pow(t, -r) : std::exp(-0.25 * t) * std::pow(t, -1.5 * r);
    double disc = 0.0;
    for (int k : gamma_set(pair).members)
        disc += std::exp(-0.25 * t * (1.0 - static_cast<double>(k) * k)) * std::pow(std::abs(k), r);
    BoundResult out;
    out.terms["continuous"] = cont;
    out.terms["discrete"] = disc;
    out.bound = cont + disc;
    return out;
}

double heat_sup_closed_form(double t, double alpha, double r)
{
    if (!(t > 0.0 && alpha > 0.0 && r > 0.0))
        throw ValidationError("heat_sup: need t, alpha, r > 0");
    const double e = alpha / (2.0 * r);
    return std::exp(-e) * std::pow(e / t, e);
}

double heat_sup_numerical(double t, double alpha, double r)
{
    if (!(t > 0.0 && alpha > 0.0 && r > 0.0))
        throw ValidationError("heat_sup: need t, alpha, r > 0");
    const double e = alpha / r;
    // maximise log psi = -t x^2 + e log x in y = log x
    auto neg_log = [&](double y) { return t * std::exp(2.0 * y) - e * y; };
    const double scale = 0.5 * std::log(1.0 / t);
    const auto res = boost::math::tools::brent_find_minima(neg_log, scale - 30.0, scale + 30.0,
                                                           std::numeric_limits<double>::digits);
    return std::exp(-res.second);
}

} // namespace sl2h
