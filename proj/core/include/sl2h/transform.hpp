#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "sl2h/numerics.hpp"
#include "sl2h/profile.hpp"
#include "sl2h/spectrum.hpp"
#include "sl2h/spherical.hpp"

namespace sl2h {

/// Principal-series samples on a lambda grid plus the discrete-series values over Gamma_{l,n}.
struct SpectralData {
    TypePair pair;
    SpectralGrid grid;
    std::vector<cplx> hat_H;
    std::map<int, cplx> hat_B;
    /// Share of int |hat_H|^2 mu carried by |lambda| > 3/4 lambda_max.
    double tail_fraction = 0.0;
    /// Set when tail_fraction stayed above the requested tolerance.
    bool truncated = false;
};

struct TransformOptions {
    SpectralGrid grid = SpectralGrid();
    /// Extend the lambda range (same spacing) until the tail share drops below tail_tolerance,
    /// without exceeding the bandwidth of the profile's rule.
    bool adaptive = true;
    double tail_tolerance = 1e-10;
    int max_extensions = 3;
    /// K-quadrature node multiplier.
    int refine = 1;
};

/// Symbol evaluated on the line and at the discrete points.
struct SymbolFunctions {
    std::function<cplx(double)> on_line;
    std::function<cplx(int)> on_discrete;
};

/// Cached spherical-function tables for one type pair, one lambda grid and fixed input/output rules.
class TransformPlan {
public:
    TransformPlan(TypePair pair, SpectralGrid grid, RadialRule input, RadialRule output, int refine = 1);

    const TypePair& pair() const { return pair_; }
    const SpectralGrid& grid() const { return grid_; }
    const RadialRule& input_rule() const { return input_; }
    const RadialRule& output_rule() const { return output_; }

    /// f must live on the input rule.
    SpectralData forward(const RadialProfile& f, const EtaTable& eta) const;
    /// Evaluates on the output rule. The output carries the swapped pair (n, l) when l != n.
    RadialProfile inverse(const SpectralData& s, const EtaTable& eta) const;

    /// inverse(m * forward(f))
    RadialProfile apply(const SymbolFunctions& m, const RadialProfile& f, const EtaTable& eta) const;

    /// Dense matrix of f -> inverse(m * forward(f)), row-major (output x input).
    std::vector<cplx> operator_matrix(const SymbolFunctions& m, const EtaTable& eta) const;

private:
    TypePair pair_;
    SpectralGrid grid_;
    RadialRule input_;
    RadialRule output_;
    int refine_;
    std::size_t half_;  // non-negative lambda nodes
    std::vector<int> gamma_;
    // [node][j] with j over non-negative lambda nodes
    std::shared_ptr<const std::vector<cplx>> fwd_;
    std::shared_ptr<const std::vector<cplx>> inv_;
    // [m index][node]
    std::vector<std::vector<double>> disc_fwd_;
    std::vector<std::vector<double>> disc_inv_;
};

/// f_H(lambda) = int_0^inf f(a_t) phi^{l,n}_lambda(a_{-t}) Delta(t) dt.
cplx forward_principal(const RadialProfile& f, double lambda, int refine = 1);
/// f_B(m) = int_0^inf f(a_t) psi^{l,n}_{im}(a_{-t}) Delta(t) dt.
cplx forward_discrete(const RadialProfile& f, int m, const EtaTable& eta);

SpectralData forward(const RadialProfile& f, const EtaTable& eta, const TransformOptions& options = {});

/// Inversion at a single t >= 0.
cplx inverse(const SpectralData& s, double t, const EtaTable& eta, int refine = 1);
/// Inversion onto a rule.
RadialProfile inverse(const SpectralData& s, const RadialRule& rule, const EtaTable& eta, int refine = 1);

/// int |F f|^p d(nu): continuous part c_cont int |f_H|^p mu, discrete part c_disc sum |f_B|^p |m|.
double spectral_lp_power(const SpectralData& s, double p);

struct PlancherelReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_err = 0.0;
};

PlancherelReport plancherel_check(const RadialProfile& f, const EtaTable& eta,
                                  const TransformOptions& options = {});
PlancherelReport plancherel_check(const RadialProfile& f, const SpectralData& s);

/// (int |f(a_t)|^p Delta(t) dt)^{1/p}; p = inf gives the max over nodes.
double lp_norm(const RadialProfile& f, double p);

} // namespace sl2h
