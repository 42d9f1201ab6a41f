#include "sl2h/group.hpp"

#include <algorithm>
#include <cmath>

#include "sl2h/errors.hpp"
#include "sl2h/profile.hpp"

namespace sl2h {

GroupElement GroupElement::checked(double a, double b, double c, double d)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
        throw ValidationError("group element has a non-finite entry");
    const GroupElement x{a, b, c, d};
    if (std::fabs(x.det() - 1.0) >= 1e-12)
        throw ValidationError("group element is not unimodular: det = " + std::to_string(x.det()));
    return x;
}

double GroupElement::max_abs() const
{
    return std::max({std::fabs(a), std::fabs(b), std::fabs(c), std::fabs(d)});
}

GroupElement operator*(const GroupElement& x, const GroupElement& y)
{
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

double max_entry_diff(const GroupElement& x, const GroupElement& y)
{
    return std::max({std::fabs(x.a - y.a), std::fabs(x.b - y.b),
                     std::fabs(x.c - y.c), std::fabs(x.d - y.d)});
}

GroupElement rotation(double theta)
{
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, s, -s, c};
}

GroupElement diag_flow(double t)
{
    return {std::exp(t), 0.0, 0.0, std::exp(-t)};
}

GroupElement shear(double v)
{
    return {1.0, v, 0.0, 1.0};
}

double wrap_angle(double theta)
{
    double r = std::fmod(theta, 2.0 * M_PI);
    if (r < 0.0)
        r += 2.0 * M_PI;
    if (r >= 2.0 * M_PI)
        r = 0.0;
    return r;
}

static void require_unimodular(const GroupElement& x)
{
    const double scale = std::max(1.0, x.max_abs() * x.max_abs());
    if (!(std::fabs(x.det() - 1.0) < 1e-12 * scale))
        throw ValidationError("group element is not unimodular: det = " + std::to_string(x.det()));
}

IwasawaCoords iwasawa(const GroupElement& x)
{
    require_unimodular(x);
    const double r2 = x.a * x.a + x.c * x.c;
    IwasawaCoords w;
    w.t = 0.5 * std::log(r2);
    w.theta = wrap_angle(std::atan2(-x.c, x.a));
    // (x^T x)_12 = e^{2t} v
    w.v = (x.a * x.b + x.c * x.d) / r2;
    return w;
}

GroupElement compose(const IwasawaCoords& w)
{
    return rotation(w.theta) * diag_flow(w.t) * shear(w.v);
}

CartanCoords cartan(const GroupElement& x)
{
    require_unimodular(x);
    // x = R(beta) diag(q + r, q - r) R(gamma) with R(phi) the counterclockwise rotation,
    // and k_theta = R(-theta).
    const double e = 0.5 * (x.a + x.d);
    const double f = 0.5 * (x.a - x.d);
    const double g = 0.5 * (x.c + x.b);
    const double h = 0.5 * (x.c - x.b);
    const double q = std::hypot(e, h);
    const double r = std::hypot(f, g);
    CartanCoords w;
    if (r <= 1e-15 * q) {
        w.theta1 = wrap_angle(-std::atan2(h, e));
        return w;
    }
    const double a1 = std::atan2(g, f);
    const double a2 = std::atan2(h, e);
    w.t = std::log(q + r);
    double theta1 = -0.5 * (a2 + a1);
    double theta2 = -0.5 * (a2 - a1);
    // (theta1, theta2) and (theta1 + pi, theta2 + pi) give the same element.
    theta1 = wrap_angle(theta1);
    theta2 = wrap_angle(theta2);
    if (theta1 >= M_PI) {
        theta1 -= M_PI;
        theta2 = wrap_angle(theta2 + M_PI);
    }
    w.theta1 = theta1;
    w.theta2 = theta2;
    return w;
}

GroupElement compose(const CartanCoords& w)
{
    return rotation(w.theta1) * diag_flow(w.t) * rotation(w.theta2);
}

double haar_weight(double t)
{
    return 2.0 * std::sinh(2.0 * t);
}

std::complex<double> extend_type(const RadialProfile& profile, const CartanCoords& coords)
{
    const auto& pair = profile.pair();
    const std::complex<double> left = std::polar(1.0, pair.l * coords.theta1);
    const std::complex<double> right = std::polar(1.0, pair.n * coords.theta2);
    return left * profile.value_at(coords.t) * right;
}

} // namespace sl2h
