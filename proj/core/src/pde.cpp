#include "sl2h/pde.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "sl2h/errors.hpp"

namespace sl2h {

namespace {

// Weights of int_{tau_k}^{tau_{k+1}} F on a uniform grid: six-point Lagrange interpolation around the
// interval, integrated exactly by three-point Gauss. start[k] is the first stencil node.
struct CumulativeRule {
    std::vector<double> times;
    std::vector<int> start;
    std::vector<std::array<double, 6>> weights;

    explicit CumulativeRule(double T, int intervals)
    {
        if (intervals < 5)
            throw ValidationError("time grid needs at least 5 intervals");
        const double h = T / intervals;
        for (int k = 0; k <= intervals; ++k)
            times.push_back(h * k);
        const auto& gl = gauss_legendre(3);
        for (int k = 0; k < intervals; ++k) {
            const int s = std::clamp(k - 2, 0, intervals - 5);
            std::array<double, 6> w{};
            for (int g = 0; g < 3; ++g) {
                // node in units of h, relative to the stencil start
                const double x = (k - s) + 0.5 * (1.0 + gl.nodes[static_cast<std::size_t>(g)]);
                for (int i = 0; i < 6; ++i) {
                    double basis = 1.0;
                    for (int j = 0; j < 6; ++j)
                        if (j != i)
                            basis *= (x - j) / static_cast<double>(i - j);
                    w[static_cast<std::size_t>(i)] += 0.5 * h * gl.weights[static_cast<std::size_t>(g)] * basis;
                }
            }
            start.push_back(s);
            weights.push_back(w);
        }
    }

    std::size_t size() const { return times.size(); }

    // out[i] = int_0^{t_i} F, for vector-valued F sampled at every node.
    std::vector<std::vector<cplx>> cumulative(const std::vector<std::vector<cplx>>& f) const
    {
        const std::size_t dim = f.front().size();
        std::vector<std::vector<cplx>> out(size(), std::vector<cplx>(dim, 0.0));
        for (std::size_t k = 0; k + 1 < size(); ++k) {
            out[k + 1] = out[k];
            for (int i = 0; i < 6; ++i) {
                const auto& row = f[static_cast<std::size_t>(start[k] + i)];
                const double w = weights[k][static_cast<std::size_t>(i)];
                for (std::size_t d = 0; d < dim; ++d)
                    out[k + 1][d] += w * row[d];
            }
        }
        return out;
    }
};

double l2_on_rule(const std::vector<cplx>& v, const RadialRule& rule)
{
    double s = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k)
        s += std::norm(v[k]) * rule.weights()[k] * haar_weight(rule.nodes()[k]);
    return std::sqrt(s);
}

double l2_distance(const std::vector<cplx>& a, const std::vector<cplx>& b, const RadialRule& rule)
{
    std::vector<cplx> d(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        d[k] = a[k] - b[k];
    return l2_on_rule(d, rule);
}

// Dense B on the spatial rule, applied as |B u|^p node by node.
class Nonlinearity {
public:
    Nonlinearity(const TypePair& pair, const RadialRule& rule, const MultiplierSymbol& B, double p,
                 const EtaTable& eta, const TransformOptions& options)
        : n_(rule.size()), p_(p)
    {
        const TransformPlan plan(pair, options.grid, rule, rule, options.refine);
        matrix_ = plan.operator_matrix(B.functions(), eta);
    }

    std::vector<cplx> operator()(const std::vector<cplx>& u) const
    {
        std::vector<cplx> out(n_);
        for (std::size_t k = 0; k < n_; ++k) {
            cplx bu = 0.0;
            const cplx* row = matrix_.data() + k * n_;
            for (std::size_t i = 0; i < n_; ++i)
                bu += row[i] * u[i];
            out[k] = std::pow(std::abs(bu), p_);
        }
        return out;
    }

private:
    std::size_t n_;
    double p_;
    std::vector<cplx> matrix_;
};

RadialRule spatial_rule(const TypePair& pair, const RadialProfile& u0, const PicardOptions& options)
{
    const double lo = pair.l == pair.n ? 0.0 : u0.rule().t_min();
    if (!(options.t_max > lo))
        throw ValidationError("spatial rule: t_max must exceed the data's t_min");
    return RadialRule::uniform(lo, options.t_max, options.nodes_per_panel, 1.0);
}

void check_common(const RadialProfile& u0, double p, double T, NonlinearMode mode, const PicardOptions& options)
{
    if (!(p > 1.0) || !std::isfinite(p))
        throw ValidationError("nonlinear solve: need 1 < p < inf");
    if (!(T > 0.0) || !std::isfinite(T))
        throw ValidationError("nonlinear solve: T must be positive");
    if (mode == NonlinearMode::biinvariant && (u0.pair().l != 0 || u0.pair().n != 0))
        throw ValidationError("biinvariant mode requires (l, n) = (0, 0); use paper-literal mode for other types");
    if (!(options.tolerance > 0.0) || options.max_iterations < 1 || options.steps_per_unit < 1)
        throw ValidationError("nonlinear solve: invalid iteration options");
}

std::vector<cplx> sample_on(const RadialProfile& f, const RadialRule& rule)
{
    std::vector<cplx> v(rule.size());
    for (std::size_t k = 0; k < rule.size(); ++k) {
        const double t = rule.nodes()[k];
        const bool outside = t < f.rule().t_min() || t > f.rule().t_max();
        v[k] = outside && !f.support().compact ? cplx(0.0) : f.value_at(t);
    }
    return v;
}

// Picard on u = free(t) + sum_j c_j(t) int_0^t g_j(tau) |B u(tau)|^p dtau.
struct Kernel {
    std::function<double(double)> g;
    std::function<double(double)> c;
};

CauchyState picard(const TypePair& pair, const RadialRule& rule, const std::vector<cplx>& u0,
                   const std::vector<cplx>& u1, const std::vector<Kernel>& kernels, const Nonlinearity& nl,
                   double T, const PicardOptions& options)
{
    const int intervals =
        std::max(options.min_intervals, static_cast<int>(std::ceil(options.steps_per_unit * T - 1e-9)));
    const CumulativeRule time(T, intervals);
    const std::size_t nt = time.size();
    const std::size_t nx = rule.size();

    std::vector<std::vector<cplx>> free(nt, std::vector<cplx>(nx));
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t k = 0; k < nx; ++k)
            free[i][k] = u0[k] + time.times[i] * u1[k];

    auto update = [&](const std::vector<std::vector<cplx>>& u) {
        std::vector<std::vector<cplx>> f(nt);
        parallel_for(nt, [&](std::size_t i) { f[i] = nl(u[i]); });
        auto next = free;
        for (const Kernel& ker : kernels) {
            std::vector<std::vector<cplx>> weighted(nt);
            for (std::size_t i = 0; i < nt; ++i) {
                weighted[i] = f[i];
                const double g = ker.g(time.times[i]);
                for (auto& v : weighted[i])
                    v *= g;
            }
            const auto cum = time.cumulative(weighted);
            for (std::size_t i = 0; i < nt; ++i) {
                const double c = ker.c(time.times[i]);
                for (std::size_t k = 0; k < nx; ++k)
                    next[i][k] += c * cum[i][k];
            }
        }
        return next;
    };

    CauchyState st;
    st.pair = pair;
    st.rule = rule;
    st.times = time.times;
    auto u = free;
    st.converged = false;
    for (int it = 1; it <= options.max_iterations; ++it) {
        auto next = update(u);
        double change = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < nt; ++i) {
            const double d = l2_distance(next[i], u[i], rule);
            finite = finite && std::isfinite(d);
            change = std::max(change, d);
        }
        u = std::move(next);
        st.iterations = it;
        st.increments.push_back(finite ? change : INFINITY);
        if (!finite)
            break;
        if (change < options.tolerance) {
            st.converged = true;
            break;
        }
    }

    const bool finite_state = std::isfinite(st.increments.back());
    if (finite_state) {
        const auto check = update(u);
        for (std::size_t i = 0; i < nt; ++i)
            st.residuals.push_back(l2_distance(check[i], u[i], rule));
    } else {
        st.residuals.assign(nt, INFINITY);
    }
    for (std::size_t i = 0; i < nt; ++i) {
        if (!finite_state)
            u[i].assign(nx, 0.0);
        st.snapshots.emplace_back(pair, rule, u[i]);
    }
    return st;
}

} // namespace

double CauchyState::max_residual() const
{
    double m = 0.0;
    for (double r : residuals)
        m = std::max(m, r);
    return m;
}

double CauchyState::sup_l2() const
{
    double m = 0.0;
    for (const auto& s : snapshots)
        m = std::max(m, lp_norm(s, 2.0));
    return m;
}

CauchyState linear_heat_solve(const RadialProfile& u0, const std::vector<double>& times, const EtaTable& eta,
                              const TransformOptions& options)
{
    for (std::size_t i = 0; i < times.size(); ++i)
        if (!(times[i] > 0.0) || (i > 0 && !(times[i] > times[i - 1])))
            throw ValidationError("linear_heat_solve: times must be positive and increasing");
    const SpectralData s0 = forward(u0, eta, options);
    CauchyState st;
    st.pair = u0.pair();
    st.rule = u0.rule();
    st.times = times;
    for (double t : times) {
        SpectralData s = s0;
        for (int j = 0; j < s.grid.size(); ++j)
            s.hat_H[static_cast<std::size_t>(j)] *= std::exp(-0.25 * t * (1.0 + s.grid[j] * s.grid[j]));
        for (auto& [m, v] : s.hat_B)
            v *= std::exp(-0.25 * t * (1.0 - static_cast<double>(m) * m));
        st.snapshots.push_back(inverse(s, u0.rule(), eta, options.refine));
        st.residuals.push_back(0.0);
    }
    return st;
}

NonlinearMode parse_mode(const std::string& name)
{
    if (name == "biinvariant")
        return NonlinearMode::biinvariant;
    if (name == "paper-literal")
        return NonlinearMode::paper_literal;
    throw ValidationError("unknown mode '" + name + "' (biinvariant, paper-literal)");
}

std::string to_string(NonlinearMode mode)
{
    return mode == NonlinearMode::biinvariant ? "biinvariant" : "paper-literal";
}

double TimeCoefficient::l2_norm(double T) const
{
    if (!(T > 0.0))
        throw ValidationError("l2_norm: T must be positive");
    const auto rule = RadialRule::uniform(0.0, T, 32, std::max(T / 16.0, 0.25));
    double s = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
        const double v = value(rule.nodes()[k]);
        s += v * v * rule.weights()[k];
    }
    return std::sqrt(s);
}

TimeCoefficient parse_time_coefficient(const std::string& spec)
{
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    double a = 1.0;
    if (colon != std::string::npos) {
        try {
            a = std::stod(spec.substr(colon + 1));
        } catch (const std::exception&) {
            throw ValidationError("bad parameter in '" + spec + "'");
        }
    }
    if (name == "const") {
        if (!(a >= 0.0))
            throw ValidationError("const Psi must be >= 0");
        return {spec, [a](double) { return a; }};
    }
    if (name == "decay")
        return {spec, [a](double t) { return std::pow(1.0 + t, -a); }};
    if (name == "exp")
        return {spec, [a](double t) { return std::exp(-a * t); }};
    throw ValidationError("unknown time coefficient '" + spec + "' (const, decay, exp)");
}

CauchyState nonlinear_heat_solve(const RadialProfile& u0, const MultiplierSymbol& B, double p, double T,
                                 NonlinearMode mode, const EtaTable& eta, const PicardOptions& options)
{
    check_common(u0, p, T, mode, options);
    const TypePair pair = u0.pair();
    const RadialRule rule = spatial_rule(pair, u0, options);
    const Nonlinearity nl(pair, rule, B, p, eta, options.transform);
    const std::vector<cplx> zero(rule.size(), 0.0);
    const std::vector<Kernel> kernels = {{[](double) { return 1.0; }, [](double) { return 1.0; }}};
    return picard(pair, rule, sample_on(u0, rule), zero, kernels, nl, T, options);
}

CauchyState nonlinear_wave_solve(const RadialProfile& u0, const RadialProfile& u1, const TimeCoefficient& psi,
                                 const MultiplierSymbol& B, double p, double T, NonlinearMode mode,
                                 const EtaTable& eta, const PicardOptions& options)
{
    check_common(u0, p, T, mode, options);
    if (!(u1.pair() == u0.pair()))
        throw ValidationError("wave: u0 and u1 must have the same type");
    const TypePair pair = u0.pair();
    const RadialRule rule = spatial_rule(pair, u0, options);
    const Nonlinearity nl(pair, rule, B, p, eta, options.transform);
    // int_0^t (t - tau) Psi F = t int_0^t Psi F - int_0^t tau Psi F
    const auto& v = psi.value;
    const std::vector<Kernel> kernels = {
        {[v](double tau) { return v(tau); }, [](double t) { return t; }},
        {[v](double tau) { return tau * v(tau); }, [](double) { return -1.0; }},
    };
    return picard(pair, rule, sample_on(u0, rule), sample_on(u1, rule), kernels, nl, T, options);
}

double heat_existence_time(double u0_l2, double c, double p)
{
    if (!(c > 1.0) || !(p > 0.0) || !(u0_l2 >= 0.0))
        throw ValidationError("heat_existence_time: need c > 1, p > 0, ||u0|| >= 0");
    if (u0_l2 == 0.0)
        return INFINITY;
    return std::sqrt(c * c - 1.0) / (std::pow(c, p) * u0_l2);
}

double wave_existence_time(double u0_l2, double u1_l2, double psi_l2, double c, double p)
{
    if (!(c > 1.0) || !(p > 1.0) || !(u0_l2 >= 0.0) || !(u1_l2 >= 0.0) || !(psi_l2 >= 0.0))
        throw ValidationError("wave_existence_time: need c > 1, p > 1 and non-negative norms");
    auto term = [&](double norm) {
        const double den = psi_l2 * psi_l2 * std::pow(c, p) * std::pow(norm, 2.0 * p - 2.0);
        return den == 0.0 ? INFINITY : std::cbrt((c - 1.0) / den);
    };
    return std::min(term(u0_l2), term(u1_l2));
}

bool global_smallness_check(double gamma, double gamma0, double c, double p, double u0_l2, double T)
{
    if (!(p > 1.0) || !(gamma > 1.5))
        throw ValidationError("global_smallness_check: need p > 1 and gamma > 3/2");
    if (!(gamma0 > 0.0 && gamma0 < (2.0 * gamma - 3.0) / p))
        throw ValidationError("global_smallness_check: need 0 < gamma0 < (2 gamma - 3)/p");
    if (!(c >= 1.0) || !(u0_l2 >= 0.0) || !(T > 0.0))
        throw ValidationError("global_smallness_check: need c >= 1, ||u0|| >= 0, T > 0");
    const double g = 3.0 - 2.0 * gamma + gamma0 * p;
    return std::pow(c, p) * std::pow(u0_l2, 2.0 * p - 2.0) <= c * std::pow(T, -g + gamma0);
}

} // namespace sl2h
