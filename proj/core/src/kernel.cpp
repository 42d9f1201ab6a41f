#include "kernel.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "gauss.hpp"
#include "sl2h/numerics.hpp"

namespace sl2h::detail {

KernelConfig real_config(double lambda_abs, int refine)
{
    KernelConfig c;
    c.core_nodes = refine * (static_cast<int>(std::ceil(0.55 * lambda_abs)) + 16);
    c.tail_nodes = refine * 24;
    return c;
}

KernelConfig discrete_config(int refine)
{
    KernelConfig c;
    c.core_nodes = refine * 30;
    c.core_width = 2.0;
    c.tail_nodes = refine * 34;
    return c;
}

template <class Real>
KernelMeasure<Real> build_measure(Real t, const KernelConfig& config, bool need_log)
{
    KernelMeasure<Real> m;
    m.t = t;
    const Real two_over_pi = Real(2) / pi_value<Real>();
    const Real e2t = r_exp(Real(2) * t);
    const Real em2t = Real(1) / e2t;
    const Real w_lo = -Real(config.margin);
    const Real w_hi = Real(2) * t + Real(config.margin);

    const auto& tail = cached_gauss<Real>(config.tail_nodes);
    const auto& core = cached_gauss<Real>(config.core_nodes);
    const int panels = std::max(1, static_cast<int>(std::ceil(double(w_hi - w_lo) / config.core_width - 1e-12)));
    const std::size_t reserve = tail.x.size() * 2 + core.x.size() * static_cast<std::size_t>(panels);
    m.e.reserve(reserve);
    m.weight.reserve(reserve);
    m.c.reserve(reserve);
    m.s.reserve(reserve);

    auto push = [&](Real c, Real s, Real dtheta) {
        m.c.push_back(c);
        m.s.push_back(s);
        m.e.push_back(e2t * c * c + em2t * s * s);
        m.weight.push_back(two_over_pi * dtheta);
    };

    // theta in [0, atan(e^{w_lo})]
    {
        const Real half = r_atan(r_exp(w_lo)) / Real(2);
        for (std::size_t g = 0; g < tail.x.size(); ++g) {
            const Real theta = half * (tail.x[g] + Real(1));
            push(r_cos(theta), r_sin(theta), half * tail.w[g]);
        }
    }
    // theta = atan(e^w), dtheta = dw / (2 cosh w)
    {
        const Real width = (w_hi - w_lo) / Real(panels);
        const Real half = width / Real(2);
        for (int p = 0; p < panels; ++p) {
            const Real mid = w_lo + width * (Real(p) + Real(0.5));
            for (std::size_t g = 0; g < core.x.size(); ++g) {
                const Real w = mid + half * core.x[g];
                const Real q = r_exp(-r_fabs(w));
                const Real inv = Real(1) / r_sqrt(Real(1) + q * q);
                const Real jac = q / (Real(1) + q * q);
                if (w <= Real(0))
                    push(inv, q * inv, half * core.w[g] * jac);
                else
                    push(q * inv, inv, half * core.w[g] * jac);
            }
        }
    }
    // theta = pi/2 - phi, phi in [0, atan(e^{-w_hi})]
    {
        const Real half = r_atan(r_exp(-w_hi)) / Real(2);
        for (std::size_t g = 0; g < tail.x.size(); ++g) {
            const Real phi = half * (tail.x[g] + Real(1));
            push(r_sin(phi), r_cos(phi), half * tail.w[g]);
        }
    }
    if (need_log) {
        m.log_e.resize(m.e.size());
        for (std::size_t i = 0; i < m.e.size(); ++i)
            m.log_e[i] = r_log(m.e[i]);
    }
    return m;
}

namespace {

template <class Real>
struct CPow {
    Real re, im;
};

template <class Real>
CPow<Real> cmul(CPow<Real> a, CPow<Real> b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class Real>
CPow<Real> cpow_int(CPow<Real> z, int k)
{
    // |z| = 1, so z^{-1} = conj(z).
    if (k < 0) {
        z.im = -z.im;
        k = -k;
    }
    CPow<Real> out{Real(1), Real(0)};
    while (k > 0) {
        if (k & 1)
            out = cmul(out, z);
        z = cmul(z, z);
        k >>= 1;
    }
    return out;
}

} // namespace

template <class Real>
std::vector<Real> characters(const KernelMeasure<Real>& m, int l, int n)
{
    const Real et = r_exp(m.t);
    const Real emt = Real(1) / et;
    std::vector<Real> out(m.e.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Real root = r_sqrt(m.e[i]);
        const CPow<Real> u{et * m.c[i] / root, emt * m.s[i] / root};
        const CPow<Real> v{m.c[i], -m.s[i]};
        const CPow<Real> z = cmul(cpow_int(u, n), cpow_int(v, l));
        out[i] = m.weight[i] * z.re;
    }
    return out;
}

template KernelMeasure<double> build_measure<double>(double, const KernelConfig&, bool);
template KernelMeasure<quad> build_measure<quad>(quad, const KernelConfig&, bool);
template std::vector<double> characters<double>(const KernelMeasure<double>&, int, int);
template std::vector<quad> characters<quad>(const KernelMeasure<quad>&, int, int);

std::complex<double> phi_radial_at(int l, int n, std::complex<double> lambda, double t, int refine)
{
    const auto m = build_measure<double>(t, real_config(std::abs(lambda), refine), true);
    const auto a = characters(m, l, n);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        // E^{-(i lambda + 1)/2}
        const double h2 = m.log_e[i];
        const double mag = a[i] * std::exp(0.5 * (lambda.imag() - 1.0) * h2);
        const double ph = -0.5 * lambda.real() * h2;
        re += mag * std::cos(ph);
        im += mag * std::sin(ph);
    }
    return {re, im};
}

namespace {

quad half_power(quad e, quad root, int m)
{
    // E^{(m - 1)/2}
    const int k = m - 1;
    // k = 2p + (0 or 1) with p = floor(k / 2)
    quad out = (k % 2 == 0) ? quad(1) : root;
    int p = k >= 0 ? k / 2 : -((-k + 1) / 2);
    quad base = p >= 0 ? e : quad(1) / e;
    p = p >= 0 ? p : -p;
    while (p > 0) {
        if (p & 1)
            out *= base;
        base *= base;
        p >>= 1;
    }
    return out;
}

} // namespace

double reliable_t(int m)
{
    // Balances the quad loss eps_q e^{2 m t} against the e^{-2t} correction the continuation drops
    // (which vanishes for l = n = m + 1). ln(1 / eps_q) ~ 77.
    return m <= 0 ? INFINITY : 77.0 / (2.0 * m + 2.0);
}

namespace {

std::pair<double, double> discrete_anchor(int l, int n, int m, int refine)
{
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int, int>, std::pair<double, double>> cache;
    const auto key = std::make_tuple(l, n, m, refine);
    {
        std::lock_guard<std::mutex> lock(mutex);
        const auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    const auto v = phi_discrete_pair(l, n, {m}, reliable_t(m), refine).front();
    std::lock_guard<std::mutex> lock(mutex);
    cache[key] = v;
    return v;
}

} // namespace

double phi_discrete_radial(int l, int n, int m, double t, int refine)
{
    return phi_discrete_pair(l, n, {m}, t, refine).front().first;
}

std::vector<std::pair<double, double>> phi_discrete_pair(int l, int n, const std::vector<int>& ms,
                                                         double t, int refine)
{
    std::vector<std::pair<double, double>> out(ms.size());
    std::vector<int> direct;
    std::vector<std::size_t> slot;
    for (std::size_t k = 0; k < ms.size(); ++k) {
        const double cut = reliable_t(ms[k]);
        if (t > cut) {
            const auto anchor = discrete_anchor(l, n, ms[k], refine);
            const double decay = std::pow(std::cosh(cut) / std::cosh(t), ms[k] + 1);
            out[k] = {anchor.first * decay, anchor.second * decay};
        } else {
            direct.push_back(ms[k]);
            slot.push_back(k);
        }
    }
    if (direct.empty())
        return out;

    const auto m = build_measure<quad>(quad(t), discrete_config(refine), false);
    const auto a_ln = characters(m, l, n);
    const auto a_nl = (l == n) ? a_ln : characters(m, n, l);
    std::vector<quad> root(m.e.size());
    for (std::size_t i = 0; i < root.size(); ++i)
        root[i] = r_sqrt(m.e[i]);
    for (std::size_t k = 0; k < direct.size(); ++k) {
        quad s1 = 0, s2 = 0;
        for (std::size_t i = 0; i < root.size(); ++i) {
            const quad f = half_power(m.e[i], root[i], direct[k]);
            s1 += a_ln[i] * f;
            s2 += a_nl[i] * f;
        }
        out[slot[k]] = {static_cast<double>(s1), static_cast<double>(s2)};
    }
    return out;
}

std::vector<std::complex<double>> phi_on_grid(int l, int n, const SpectralGrid& grid, double t,
                                              int refine)
{
    const auto m = build_measure<double>(t, real_config(grid.lambda_max(), refine), true);
    auto a = characters(m, l, n);
    const std::size_t count = a.size();
    std::vector<double> h(count);
    for (std::size_t i = 0; i < count; ++i) {
        h[i] = 0.5 * m.log_e[i];
        a[i] *= std::exp(-h[i]);
    }
    const int j0 = grid.zero_index();
    const int steps = grid.size() - j0;
    const double dl = grid.spacing();

    std::vector<double> zr(count), zi(count), cr(count), ci(count);
    for (std::size_t i = 0; i < count; ++i) {
        zr[i] = std::cos(dl * h[i]);
        zi[i] = -std::sin(dl * h[i]);
    }
    std::vector<std::complex<double>> out(static_cast<std::size_t>(steps));
    constexpr int kReseed = 64;
    for (int j = 0; j < steps; ++j) {
        if (j % kReseed == 0) {
            const double lambda = dl * j;
            for (std::size_t i = 0; i < count; ++i) {
                cr[i] = std::cos(lambda * h[i]);
                ci[i] = -std::sin(lambda * h[i]);
            }
        }
        double re = 0.0;
        double im = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            re += a[i] * cr[i];
            im += a[i] * ci[i];
            const double nr = cr[i] * zr[i] - ci[i] * zi[i];
            const double ni = cr[i] * zi[i] + ci[i] * zr[i];
            cr[i] = nr;
            ci[i] = ni;
        }
        out[static_cast<std::size_t>(j)] = {re, im};
    }
    return out;
}

} // namespace sl2h::detail
