#pragma once

#include <complex>
#include <vector>

#include "sl2h/numerics.hpp"
#include "sl2h/spectrum.hpp"

namespace sl2h {

/// Compact-support flag and interval of a radial profile.
struct Support {
    bool compact = false;
    double lo = 0.0;
    double hi = 0.0;
};

/// Samples of f(a_t) on a composite Gauss-Legendre rule, for an (l, n)-type function f.
class RadialProfile {
public:
    RadialProfile() = default;
    RadialProfile(TypePair pair, RadialRule rule, std::vector<cplx> values, Support support = {});

    const TypePair& pair() const { return pair_; }
    const RadialRule& rule() const { return rule_; }
    const std::vector<cplx>& values() const { return values_; }
    const std::vector<double>& nodes() const { return rule_.nodes(); }
    const Support& support() const { return support_; }
    std::size_t size() const { return values_.size(); }

    /// Cubic (four-node Lagrange) interpolation of f(a_t).
    cplx value_at(double t) const;

    RadialProfile with_values(std::vector<cplx> values) const;
    RadialProfile relabeled(TypePair pair) const;

private:
    TypePair pair_;
    RadialRule rule_;
    std::vector<cplx> values_;
    Support support_;
};

/// exp(1 - 1/(1 - s^2)) on [t0, t1] (s the affine coordinate in [-1, 1]), times amplitude e^{i omega t}.
double bump_shape(double t, double t0, double t1);

RadialProfile make_bump(TypePair pair, double t0, double t1, int nodes_per_panel = 128,
                        cplx amplitude = 1.0, double omega = 0.0);

/// Profile of a callable on a rule.
RadialProfile sample_profile(TypePair pair, const RadialRule& rule,
                             const std::function<cplx(double)>& f, Support support = {});

/// Cubic resampling onto another rule.
RadialProfile resample(const RadialProfile& f, const RadialRule& rule);

RadialProfile operator+(const RadialProfile& f, const RadialProfile& g);
RadialProfile operator-(const RadialProfile& f, const RadialProfile& g);
RadialProfile operator*(cplx c, const RadialProfile& f);

/// max_i |f_i - g_i| / max_i |g_i| on a shared rule.
double sup_relative_error(const RadialProfile& f, const RadialProfile& reference);

} // namespace sl2h
