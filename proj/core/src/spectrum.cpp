#include "sl2h/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/minima.hpp>

#include "sl2h/errors.hpp"

namespace sl2h {

Parity parity_of(int k)
{
    return (k % 2 == 0) ? Parity::plus : Parity::minus;
}

std::string to_string(Parity tau)
{
    return tau == Parity::plus ? "plus" : "minus";
}

Parity parse_parity(const std::string& text)
{
    if (text == "plus" || text == "+")
        return Parity::plus;
    if (text == "minus" || text == "-")
        return Parity::minus;
    throw ValidationError("unknown parity '" + text + "' (expected plus or minus)");
}

TypePair::TypePair(int l_, int n_) : l(l_), n(n_)
{
    if (parity_of(l) != parity_of(n))
        throw ValidationError("type pair (" + std::to_string(l) + ", " + std::to_string(n) +
                              ") mixes parities");
}

bool DiscreteSpectrum::contains(int m) const
{
    return std::binary_search(members.begin(), members.end(), m);
}

DiscreteSpectrum gamma_set(int l, int n)
{
    const TypePair pair(l, n);
    DiscreteSpectrum out;
    const int lo = std::min(l, n);
    const int hi = std::max(l, n);
    for (int k = 1; k < lo; ++k)
        if (parity_of(k) != pair.tau())
            out.members.push_back(k);
    for (int k = hi + 1; k < 0; ++k)
        if (parity_of(k) != pair.tau())
            out.members.push_back(k);
    std::sort(out.members.begin(), out.members.end());
    return out;
}

double plancherel_density(Parity tau, double lambda)
{
    const double x = 0.5 * M_PI * lambda;
    if (tau == Parity::plus)
        return x * std::tanh(x);
    if (std::fabs(x) < 1e-3 * 0.5 * M_PI) {
        const double x2 = x * x;
        return 1.0 + x2 / 3.0 - x2 * x2 / 45.0;
    }
    return x / std::tanh(x);
}

std::complex<double> spectral_measure_integral(const SpectralIntegrand& f, const TypePair& pair,
                                               const SpectralGrid& grid)
{
    std::complex<double> cont = 0.0;
    if (f.on_line) {
        for (int j = 0; j < grid.size(); ++j) {
            const double lambda = grid[j];
            const std::complex<double> v = f.on_line(lambda);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw ValidationError("spectral_measure_integral: non-finite value at lambda = " +
                                      std::to_string(lambda));
            cont += v * (plancherel_density(pair.tau(), lambda) * grid.weight(j));
        }
    }
    std::complex<double> disc = 0.0;
    const auto gamma = gamma_set(pair);
    if (f.on_discrete) {
        for (int m : gamma.members) {
            const std::complex<double> v = f.on_discrete(m);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw ValidationError("spectral_measure_integral: non-finite value at k = i*" +
                                      std::to_string(m));
            disc += v * static_cast<double>(std::abs(m));
        }
    }
    return kContinuousPrefactor * cont + kDiscretePrefactor * disc;
}

double level_set_measure(const std::vector<double>& psi, const SpectralGrid& grid, Parity tau,
                         double alpha)
{
    double total = 0.0;
    for (int j = 0; j + 1 < grid.size(); ++j) {
        const double p0 = psi[static_cast<std::size_t>(j)];
        const double p1 = psi[static_cast<std::size_t>(j + 1)];
        const bool in0 = p0 > alpha;
        const bool in1 = p1 > alpha;
        if (!in0 && !in1)
            continue;
        const double x0 = grid[j];
        const double x1 = grid[j + 1];
        double a = x0;
        double b = x1;
        if (in0 != in1) {
            const double s = (alpha - p0) / (p1 - p0);
            const double xc = x0 + s * (x1 - x0);
            if (in0)
                b = xc;
            else
                a = xc;
        }
        // Simpson on the covered part of the cell.
        const double mid = 0.5 * (a + b);
        total += (b - a) / 6.0 *
                 (plancherel_density(tau, a) + 4.0 * plancherel_density(tau, mid) +
                  plancherel_density(tau, b));
    }
    return total;
}

double weak_sup_on_grid(const std::vector<double>& psi, const SpectralGrid& grid, Parity tau,
                        double exponent, int alpha_points)
{
    double hi = 0.0;
    for (double v : psi) {
        if (v < 0.0 || std::isnan(v))
            throw ValidationError("weak norm: psi must be non-negative");
        hi = std::max(hi, v);
    }
    if (hi == 0.0)
        return 0.0;
    if (!std::isfinite(hi))
        return INFINITY;
    if (exponent == 0.0)
        return hi;
    // Levels below hi * 1e-250 cannot matter against the finite measure of the grid range.
    const double floor = hi * 1e-250;
    std::vector<double> levels;
    for (double v : psi)
        if (v > floor)
            levels.push_back(v);
    const int count = std::max(2, alpha_points);
    // Scaled with hi, which keeps the result homogeneous.
    for (int k = 0; k < count; ++k)
        levels.push_back(hi * std::pow(1e-250, static_cast<double>(k) / (count - 1)));
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    auto value = [&](double alpha) {
        const double measure = level_set_measure(psi, grid, tau, alpha);
        return measure > 0.0 ? alpha * std::pow(measure, exponent) : 0.0;
    };
    // Just below each level, so a sampled maximum is counted with its cell.
    std::size_t best_k = 0;
    double best = 0.0;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const double v = value(levels[k] * (1.0 - 1e-12));
        if (v > best) {
            best = v;
            best_k = k;
        }
    }
    if (best == 0.0)
        return 0.0;
    const double lo = std::log(levels[best_k == 0 ? 0 : best_k - 1]);
    const double up = std::log(levels[std::min(best_k + 1, levels.size() - 1)]);
    if (up > lo) {
        const auto r = boost::math::tools::brent_find_minima([&](double y) { return -value(std::exp(y)); }, lo, up,
                                                             40);
        best = std::max(best, -r.second);
    }
    return best;
}

WeakNorm weak_sup_norm(const std::function<double(double)>& psi, Parity tau,
                       const SpectralGrid& grid, const WeakNormOptions& options)
{
    auto sample = [&](const SpectralGrid& g) {
        std::vector<double> v(static_cast<std::size_t>(g.size()));
        for (int j = 0; j < g.size(); ++j)
            v[static_cast<std::size_t>(j)] = psi(g[j]);
        return v;
    };
    const double base = weak_sup_on_grid(sample(grid), grid, tau, 1.0, options.alpha_points);
    const auto wide = grid.extended();
    const double doubled = weak_sup_on_grid(sample(wide), wide, tau, 1.0, options.alpha_points);
    WeakNorm out;
    out.value = base;
    if (doubled > base * (1.0 + options.divergence_growth)) {
        out.value = INFINITY;
        out.finite = false;
    }
    return out;
}

} // namespace sl2h
