#pragma once

// Overloads letting the kernel templates run in double or __float128.

#include <cmath>
#include <quadmath.h>

namespace sl2h::detail {

using quad = __float128;

inline double r_exp(double x) { return std::exp(x); }
inline double r_log(double x) { return std::log(x); }
inline double r_sqrt(double x) { return std::sqrt(x); }
inline double r_cos(double x) { return std::cos(x); }
inline double r_sin(double x) { return std::sin(x); }
inline double r_atan(double x) { return std::atan(x); }
inline double r_atan2(double y, double x) { return std::atan2(y, x); }
inline double r_cosh(double x) { return std::cosh(x); }
inline double r_fabs(double x) { return std::fabs(x); }

inline quad r_exp(quad x) { return expq(x); }
inline quad r_log(quad x) { return logq(x); }
inline quad r_sqrt(quad x) { return sqrtq(x); }
inline quad r_cos(quad x) { return cosq(x); }
inline quad r_sin(quad x) { return sinq(x); }
inline quad r_atan(quad x) { return atanq(x); }
inline quad r_atan2(quad y, quad x) { return atan2q(y, x); }
inline quad r_cosh(quad x) { return coshq(x); }
inline quad r_fabs(quad x) { return fabsq(x); }

template <class Real> Real pi_value();
template <> inline double pi_value<double>() { return 3.14159265358979323846; }
template <> inline quad pi_value<quad>() { return acosq(quad(-1)); }

template <class Real> Real epsilon_value();
template <> inline double epsilon_value<double>() { return 2.220446049250313e-16; }
// 2^-112
template <> inline quad epsilon_value<quad>() { return ldexpq(quad(1), -112); }

} // namespace sl2h::detail
