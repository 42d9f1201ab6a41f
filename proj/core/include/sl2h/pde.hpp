#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sl2h/multiplier.hpp"
#include "sl2h/profile.hpp"
#include "sl2h/spherical.hpp"
#include "sl2h/transform.hpp"

namespace sl2h {

/// Snapshots u(t_i) on one spatial rule, with the per-node L^2 defect of the integral equation.
struct CauchyState {
    TypePair pair;
    RadialRule rule;
    std::vector<double> times;
    std::vector<RadialProfile> snapshots;
    std::vector<double> residuals;
    /// sup over time of the L^2 change, one entry per Picard update.
    std::vector<double> increments;
    int iterations = 0;
    bool converged = true;

    double max_residual() const;
    /// sup_t ||u(t)||_2
    double sup_l2() const;
};

/// u(t) = e^{t Omega} u0 at each time.
CauchyState linear_heat_solve(const RadialProfile& u0, const std::vector<double>& times, const EtaTable& eta,
                              const TransformOptions& options = {});

enum class NonlinearMode {
    /// (0,0) only: |Bu|^p is again K-biinvariant.
    biinvariant,
    /// Any (l,n): |Bu|^p is kept on the radial grid and labelled (l,n).
    paper_literal,
};

NonlinearMode parse_mode(const std::string& name);
std::string to_string(NonlinearMode mode);

/// Positive function of time.
struct TimeCoefficient {
    std::string name;
    std::function<double(double)> value;

    /// (int_0^T Psi^2)^{1/2}
    double l2_norm(double T) const;
};

/// "const:c", "decay:g" for (1+t)^{-g}, "exp:a" for e^{-a t}.
TimeCoefficient parse_time_coefficient(const std::string& spec);

struct PicardOptions {
    int steps_per_unit = 128;
    int min_intervals = 8;
    double tolerance = 1e-8;
    int max_iterations = 100;
    /// Spatial rule: uniform panels on [0, t_max] (starting at the data's t_min when l != n).
    double t_max = 8.0;
    int nodes_per_panel = 32;
    TransformOptions transform = {};
};

/// u(t) = u0 + int_0^t |B u|^p.
CauchyState nonlinear_heat_solve(const RadialProfile& u0, const MultiplierSymbol& B, double p, double T,
                                 NonlinearMode mode, const EtaTable& eta, const PicardOptions& options = {});

/// u(t) = u0 + t u1 + int_0^t (t - tau) Psi(tau) |B u|^p.
CauchyState nonlinear_wave_solve(const RadialProfile& u0, const RadialProfile& u1, const TimeCoefficient& psi,
                                 const MultiplierSymbol& B, double p, double T, NonlinearMode mode,
                                 const EtaTable& eta, const PicardOptions& options = {});

/// sqrt(c^2 - 1) / (c^p ||u0||); +inf when ||u0|| = 0.
double heat_existence_time(double u0_l2, double c, double p);

/// min over j in {0, 1} of ((c - 1) / (||Psi||^2 c^p ||u_j||^{2p-2}))^{1/3}.
double wave_existence_time(double u0_l2, double u1_l2, double psi_l2, double c, double p);

/// c^p ||u0||^{2p-2} <= c T^{-g + gamma0} with g = 3 - 2 gamma + gamma0 p.
bool global_smallness_check(double gamma, double gamma0, double c, double p, double u0_l2, double T);

} // namespace sl2h
