#pragma once

#include <functional>
#include <map>
#include <string>

#include "sl2h/profile.hpp"
#include "sl2h/spectrum.hpp"
#include "sl2h/spherical.hpp"
#include "sl2h/transform.hpp"

namespace sl2h {

/// Symbol m on R union i Gamma_{l,n}. The discrete part takes the integer m of k = i m.
struct MultiplierSymbol {
    std::string name;
    std::function<cplx(double)> continuous;
    std::function<cplx(int)> discrete;

    SymbolFunctions functions() const { return {continuous, discrete}; }
};

MultiplierSymbol constant_symbol(cplx c);
MultiplierSymbol scaled(cplx c, const MultiplierSymbol& m);
MultiplierSymbol product(const MultiplierSymbol& a, const MultiplierSymbol& b);

/// phi(s) applied at s = (1 + zeta^2)/4; s = (1 - m^2)/4 at k = i m.
struct SpectralFunction {
    std::string name;
    std::function<cplx(double)> phi;
    /// |phi| decreasing on [1/4, inf) with limit 0; checked by spectral_norm_bound.
    bool monotone = false;
};

SpectralFunction heat_function(double t);
/// (1 + s)^a; throws at arguments where the power is undefined.
SpectralFunction sobolev_function(double a);
/// The Casimir eigenvalue -s.
SpectralFunction casimir_function();

MultiplierSymbol to_symbol(const SpectralFunction& phi);

/// Parses "zero", "one", "const:c", "heat:t", "rational:a", "sobolev:a", "casimir".
/// rational:a is (1 + zeta^2)^{-a} on the line and (1 + m^2)^{-a} at k = i m.
MultiplierSymbol parse_symbol(const std::string& spec);
SpectralFunction parse_spectral_function(const std::string& spec);

RadialProfile apply_fourier_multiplier(const MultiplierSymbol& m, const RadialProfile& f, const EtaTable& eta,
                                       const TransformOptions& options = {});
RadialProfile apply_spectral_multiplier(const SpectralFunction& phi, const RadialProfile& f,
                                        const EtaTable& eta, const TransformOptions& options = {});
RadialProfile heat_propagator(double t, const RadialProfile& f, const EtaTable& eta,
                              const TransformOptions& options = {});
RadialProfile sobolev_operator(double a, const RadialProfile& f, const EtaTable& eta,
                               const TransformOptions& options = {});

struct BoundResult {
    double bound = 0.0;
    bool finite = true;
    std::map<std::string, double> terms;
};

struct BoundOptions {
    SpectralGrid grid = SpectralGrid();
    WeakNormOptions weak = {};
};

/// sup_alpha alpha (int_{|m| > alpha} mu)^{1/p - 1/q} + sum_Gamma |m(i m)| |m|^{1/p - 1/q}.
BoundResult multiplier_norm_bound(const MultiplierSymbol& m, double p, double q, const TypePair& pair,
                                  const BoundOptions& options = {});

/// Discrete sum plus the larger of the near-edge (1/4 < s <= 1/2) and far (s >= 1/2) sups.
BoundResult spectral_norm_bound(const SpectralFunction& phi, double p, double q, const TypePair& pair);

/// Piecewise heat bound: t^{-r} on (0, 1], e^{-t/4} t^{-3r/2} for t >= 1, plus the discrete sum.
BoundResult heat_bound(double t, double p, double q, const TypePair& pair);

/// e^{-alpha/2r} (alpha / 2rt)^{alpha/2r}
double heat_sup_closed_form(double t, double alpha, double r);
/// Numerical sup over x > 0 of e^{-t x^2} x^{alpha/r}.
double heat_sup_numerical(double t, double alpha, double r);

} // namespace sl2h
