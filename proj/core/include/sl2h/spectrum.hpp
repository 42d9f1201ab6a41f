#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "sl2h/numerics.hpp"

namespace sl2h {

enum class Parity { plus, minus };

Parity parity_of(int k);
std::string to_string(Parity tau);
/// Accepts "plus"/"minus" (also "+"/"-").
Parity parse_parity(const std::string& text);

/// Type indices (l, n) of equal parity.
struct TypePair {
    int l = 0;
    int n = 0;

    TypePair() = default;
    /// Throws ValidationError on a parity mismatch.
    TypePair(int l_, int n_);

    Parity tau() const { return parity_of(l); }
    TypePair swapped() const { return {n, l}; }
    bool operator==(const TypePair&) const = default;
};

/// The integers m with k = i m in i Gamma_{l,n}, ascending.
struct DiscreteSpectrum {
    std::vector<int> members;

    bool empty() const { return members.empty(); }
    bool contains(int m) const;
};

DiscreteSpectrum gamma_set(int l, int n);
inline DiscreteSpectrum gamma_set(const TypePair& p) { return gamma_set(p.l, p.n); }

/// (lambda pi / 2) tanh(lambda pi / 2) for plus, (lambda pi / 2) coth(lambda pi / 2) for minus.
double plancherel_density(Parity tau, double lambda);

/// Normalizing constant in front of the continuous part of the spectral measure.
inline constexpr double kContinuousPrefactor = 1.0 / (4.0 * 3.14159265358979323846);
/// Normalizing constant in front of the discrete part.
inline constexpr double kDiscretePrefactor = 1.0 / (2.0 * 3.14159265358979323846);

/// A function on R union i Gamma_{l,n}.
struct SpectralIntegrand {
    std::function<std::complex<double>(double)> on_line;
    std::function<std::complex<double>(int)> on_discrete;
};

/// c_cont * int F(lambda) mu(tau, lambda) dlambda + c_disc * sum F(i m) |m|.
std::complex<double> spectral_measure_integral(const SpectralIntegrand& f, const TypePair& pair,
                                               const SpectralGrid& grid);

struct WeakNorm {
    double value = 0.0;
    bool finite = true;
};

struct WeakNormOptions {
    int alpha_points = 512;
    /// Relative growth under range doubling above which the norm is declared infinite.
    double divergence_growth = 0.10;
};

/// mu-measure of {lambda in grid range : psi > alpha}, with linear crossings between nodes.
double level_set_measure(const std::vector<double>& psi_samples, const SpectralGrid& grid,
                         Parity tau, double alpha);

/// sup_alpha alpha * measure{psi > alpha}^exponent on one grid: levels at the samples and on a
/// logarithmic grid below max psi, the best one refined by Brent.
double weak_sup_on_grid(const std::vector<double>& psi_samples, const SpectralGrid& grid,
                        Parity tau, double exponent, int alpha_points);

/// sup_{alpha > 0} alpha * int_{psi > alpha} mu(tau, lambda) dlambda.
WeakNorm weak_sup_norm(const std::function<double(double)>& psi, Parity tau,
                       const SpectralGrid& grid = SpectralGrid(), const WeakNormOptions& options = {});

} // namespace sl2h
