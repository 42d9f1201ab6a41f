#pragma once

// Radial kernels phi^{l,n}_lambda(a_t) as finite sums over K-quadrature nodes.
//
// The K-integral is folded onto the first quadrant (the integrand is invariant under
// theta -> theta + pi and conjugate-symmetric under theta -> pi - theta) and then mapped
// by tan(theta) = e^w: for large t the integrand is concentrated on 0 <= w <= 2t, where it
// is smooth on unit scale. The two tails are integrated in theta directly.
//
// With E = e^{2H(a_t k_theta)} = e^{2t} cos^2 + e^{-2t} sin^2 and u = e^{i K-angle},
//   phi(a_t) = (2/pi) sum_i dtheta_i E_i^{-(i lambda + 1)/2} Re(u_i^n e^{-i l theta_i}).

#include <complex>
#include <vector>

#include "real_math.hpp"

namespace sl2h {
class SpectralGrid;
}

namespace sl2h::detail {

struct KernelConfig {
    int core_nodes = 32;      ///< Gauss-Legendre nodes per core panel
    double core_width = 1.0;  ///< panel width in w
    int tail_nodes = 24;      ///< nodes on each theta tail
    double margin = 2.0;      ///< core is [-margin, 2t + margin]
};

/// Node counts for real spectral parameters up to lambda_abs, scaled by refine.
KernelConfig real_config(double lambda_abs, int refine = 1);
/// Node counts for the extended-precision discrete path (integrand not oscillatory).
KernelConfig discrete_config(int refine = 1);

/// Per-node data for one t: log E (= 2H), the character factor, and the scaled weight.
template <class Real>
struct KernelMeasure {
    std::vector<Real> log_e;   ///< 2 H
    std::vector<Real> e;       ///< E = e^{2H}
    std::vector<Real> weight;  ///< (2/pi) dtheta
    std::vector<Real> c, s;    ///< cos theta, sin theta
    Real t = 0;
};

template <class Real>
KernelMeasure<Real> build_measure(Real t, const KernelConfig& config, bool need_log);

/// weight_i * Re(u_i^n e^{-i l theta_i}), without the E factor.
template <class Real>
std::vector<Real> characters(const KernelMeasure<Real>& m, int l, int n);

/// phi at one complex spectral parameter, double precision.
std::complex<double> phi_radial_at(int l, int n, std::complex<double> lambda, double t, int refine = 1);

/// phi at lambda = i * m in extended precision (m integer, t >= 0).
///
/// The integrand reaches e^{(m-1)t} while the result is of order e^{-(m+1)t}, so the
/// relative rounding error grows like eps * e^{2mt}. Beyond reliable_t(m) the value is
/// continued with the asymptotic rate (cosh t)^{-(m+1)}, which is exact for l = n = m + 1.
double phi_discrete_radial(int l, int n, int m, double t, int refine = 1);

/// Switch point to the continuation; relative error there is about 1e-16, 2e-8, 5e-5 for m = 1, 3, 5.
double reliable_t(int m);

/// phi^{l,n} and phi^{n,l} at lambda = i * m for each requested m, one t.
/// Output layout: [k] = {phi^{l,n}, phi^{n,l}} for ms[k].
std::vector<std::pair<double, double>> phi_discrete_pair(int l, int n, const std::vector<int>& ms,
                                                         double t, int refine = 1);

/// phi at the non-negative nodes of the grid (zero_index() .. size()-1), for one t.
std::vector<std::complex<double>> phi_on_grid(int l, int n, const SpectralGrid& grid, double t,
                                              int refine = 1);

} // namespace sl2h::detail
