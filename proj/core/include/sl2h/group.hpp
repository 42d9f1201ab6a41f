#pragma once

#include <complex>

namespace sl2h {

class RadialProfile;

/// Real 2x2 matrix [[a, b], [c, d]] with determinant one.
struct GroupElement {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 1.0;

    /// Throws ValidationError when |det - 1| >= 1e-12 or an entry is not finite.
    static GroupElement checked(double a, double b, double c, double d);

    double det() const { return a * d - b * c; }
    GroupElement inverse() const { return {d, -b, -c, a}; }
    double max_abs() const;
};

GroupElement operator*(const GroupElement& x, const GroupElement& y);

/// max |x_ij - y_ij|
double max_entry_diff(const GroupElement& x, const GroupElement& y);

/// k_theta = [[cos, sin], [-sin, cos]]
GroupElement rotation(double theta);
/// a_t = diag(e^t, e^-t)
GroupElement diag_flow(double t);
/// n_v = [[1, v], [0, 1]]
GroupElement shear(double v);

/// x = k_theta a_t n_v
struct IwasawaCoords {
    double theta = 0.0; ///< in [0, 2pi)
    double t = 0.0;
    double v = 0.0;
};

/// x = k_theta1 a_t k_theta2, t >= 0
struct CartanCoords {
    double theta1 = 0.0;
    double t = 0.0;
    double theta2 = 0.0;
};

IwasawaCoords iwasawa(const GroupElement& x);
GroupElement compose(const IwasawaCoords& w);

/// At t = 0 the result is (theta, 0, 0) with theta in [0, 2pi); otherwise theta1 is in [0, pi).
CartanCoords cartan(const GroupElement& x);
GroupElement compose(const CartanCoords& w);

/// Delta(t) = 2 sinh 2t, the radial density of Haar measure in Cartan coordinates.
double haar_weight(double t);

/// e^{i l theta1} f(a_t) e^{i n theta2} for the (l, n) pair carried by the profile.
std::complex<double> extend_type(const RadialProfile& profile, const CartanCoords& coords);

/// Reduce an angle to [0, 2pi).
double wrap_angle(double theta);

} // namespace sl2h
