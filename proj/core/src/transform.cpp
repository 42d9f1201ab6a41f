#include "sl2h/transform.hpp"

#include <algorithm>
#include <cmath>

#include "kernel.hpp"
#include "nufft.hpp"
#include "sl2h/errors.hpp"

namespace sl2h {

namespace {

double reflection_sign(const TypePair& p)
{
    return ((p.n - p.l) / 2) % 2 == 0 ? 1.0 : -1.0;
}

std::vector<cplx> principal_table(int l, int n, const SpectralGrid& grid, const std::vector<double>& ts,
                                  int refine)
{
    const std::size_t half = static_cast<std::size_t>(grid.size() - grid.zero_index());
    std::vector<cplx> table(ts.size() * half);
    parallel_for(ts.size(), [&](std::size_t k) {
        const auto row = detail::phi_on_grid(l, n, grid, ts[k], refine);
        std::copy(row.begin(), row.end(), table.begin() + static_cast<std::ptrdiff_t>(k * half));
    });
    return table;
}

double tail_share(const SpectralData& s)
{
    double total = 0.0, tail = 0.0;
    for (int j = 0; j < s.grid.size(); ++j) {
        const double w = std::norm(s.hat_H[static_cast<std::size_t>(j)]) *
                         plancherel_density(s.pair.tau(), s.grid[j]) * s.grid.weight(j);
        total += w;
        if (std::fabs(s.grid[j]) > 0.75 * s.grid.lambda_max())
            tail += w;
    }
    return total > 0.0 ? tail / total : 0.0;
}

// phi_lambda(a_t) = sum_i A_i e^{-i lambda h_i} with real A_i and h_i = H(a_t k_i) in [-t, t], so on a
// uniform lambda grid both directions are non-uniform FFTs in x = spacing * h. The gridding needs
// |x| < pi; past that the lambda spacing cannot resolve the profile anyway and the tables are used.
bool nufft_applies(const SpectralGrid& grid, double t_max)
{
    return grid.spacing() * t_max < 0.9 * M_PI;
}

std::vector<cplx> principal_forward(const RadialProfile& f, const SpectralGrid& grid, int refine)
{
    const TypePair& p = f.pair();
    const double c = reflection_sign(p);
    const RadialRule& rule = f.rule();
    const int half = grid.size() / 2;
    const double dl = grid.spacing();
    if (!nufft_applies(grid, rule.t_max())) {
        const auto table = principal_table(p.l, p.n, grid, rule.nodes(), refine);
        const std::size_t cols = static_cast<std::size_t>(half + 1);
        std::vector<cplx> out(static_cast<std::size_t>(grid.size()), 0.0);
        for (std::size_t k = 0; k < rule.size(); ++k) {
            const cplx g = c * f.values()[k] * (rule.weights()[k] * haar_weight(rule.nodes()[k]));
            for (std::size_t j = 0; j < cols; ++j) {
                const cplx ph = table[k * cols + j];
                out[static_cast<std::size_t>(half) + j] += g * ph;
                if (j > 0)
                    out[static_cast<std::size_t>(half) - j] += g * std::conj(ph);
            }
        }
        return out;
    }
    const detail::Nufft nufft(half);
    auto fine = nufft.make_grid();
    const auto config = detail::real_config(grid.lambda_max(), refine);
    for (std::size_t k = 0; k < rule.size(); ++k) {
        const cplx g = c * f.values()[k] * (rule.weights()[k] * haar_weight(rule.nodes()[k]));
        if (g == 0.0)
            continue;
        const auto m = detail::build_measure<double>(rule.nodes()[k], config, true);
        const auto a = detail::characters(m, p.l, p.n);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double h = 0.5 * m.log_e[i];
            nufft.spread(dl * h, g * (a[i] * std::exp(-h)), fine);
        }
    }
    return nufft.modes(std::move(fine));
}

// Continuous part of the inversion at the given nodes, with phi^{n,l}.
std::vector<cplx> principal_inverse(const SpectralData& s, const std::vector<double>& ts, int refine)
{
    const SpectralGrid& grid = s.grid;
    const int half = grid.size() / 2;
    std::vector<cplx> w(static_cast<std::size_t>(grid.size()));
    for (int j = 0; j < grid.size(); ++j)
        w[static_cast<std::size_t>(j)] = kContinuousPrefactor * grid.weight(j) *
                                         plancherel_density(s.pair.tau(), grid[j]) *
                                         s.hat_H[static_cast<std::size_t>(j)];
    std::vector<cplx> out(ts.size(), 0.0);
    const double t_max = ts.empty() ? 0.0 : *std::max_element(ts.begin(), ts.end());
    if (!nufft_applies(grid, t_max)) {
        parallel_for(ts.size(), [&](std::size_t k) {
            const auto row = detail::phi_on_grid(s.pair.n, s.pair.l, grid, ts[k], refine);
            cplx sum = 0.0;
            for (int j = 0; j <= half; ++j) {
                sum += w[static_cast<std::size_t>(half + j)] * row[static_cast<std::size_t>(j)];
                if (j > 0)
                    sum += w[static_cast<std::size_t>(half - j)] * std::conj(row[static_cast<std::size_t>(j)]);
            }
            out[k] = sum;
        });
        return out;
    }
    const detail::Nufft nufft(half);
    const auto fine = nufft.prepare(w);
    const auto config = detail::real_config(grid.lambda_max(), refine);
    const double dl = grid.spacing();
    parallel_for(ts.size(), [&](std::size_t k) {
        const auto m = detail::build_measure<double>(ts[k], config, true);
        const auto a = detail::characters(m, s.pair.n, s.pair.l);
        cplx sum = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double h = 0.5 * m.log_e[i];
            sum += (a[i] * std::exp(-h)) * nufft.interpolate(fine, dl * h);
        }
        out[k] = sum;
    });
    return out;
}

} // namespace

TransformPlan::TransformPlan(TypePair pair, SpectralGrid grid, RadialRule input, RadialRule output, int refine)
    : pair_(pair), grid_(std::move(grid)), input_(std::move(input)), output_(std::move(output)), refine_(refine)
{
    half_ = static_cast<std::size_t>(grid_.size() - grid_.zero_index());
    gamma_ = gamma_set(pair_).members;
    fwd_ = std::make_shared<const std::vector<cplx>>(
        principal_table(pair_.l, pair_.n, grid_, input_.nodes(), refine_));
    if (pair_.l == pair_.n && input_ == output_)
        inv_ = fwd_;
    else
        inv_ = std::make_shared<const std::vector<cplx>>(
            principal_table(pair_.n, pair_.l, grid_, output_.nodes(), refine_));

    std::vector<int> ms;
    for (int m : gamma_)
        ms.push_back(std::abs(m));
    disc_fwd_.assign(ms.size(), std::vector<double>(input_.size()));
    disc_inv_.assign(ms.size(), std::vector<double>(output_.size()));
    if (!ms.empty()) {
        parallel_for(input_.size(), [&](std::size_t i) {
            const auto v = detail::phi_discrete_pair(pair_.l, pair_.n, ms, input_.nodes()[i], refine_);
            for (std::size_t k = 0; k < ms.size(); ++k)
                disc_fwd_[k][i] = v[k].first;
        });
        parallel_for(output_.size(), [&](std::size_t i) {
            const auto v = detail::phi_discrete_pair(pair_.l, pair_.n, ms, output_.nodes()[i], refine_);
            for (std::size_t k = 0; k < ms.size(); ++k)
                disc_inv_[k][i] = v[k].second;
        });
    }
}

SpectralData TransformPlan::forward(const RadialProfile& f, const EtaTable& eta) const
{
    if (!(f.rule() == input_))
        throw ValidationError("TransformPlan::forward: profile is not on the plan's input rule");
    if (!(f.pair() == pair_))
        throw ValidationError("TransformPlan::forward: profile has a different type pair");
    const double c = reflection_sign(pair_);
    const std::size_t nin = input_.size();
    std::vector<cplx> g(nin);
    for (std::size_t k = 0; k < nin; ++k)
        g[k] = c * f.values()[k] * (input_.weights()[k] * haar_weight(input_.nodes()[k]));

    SpectralData s;
    s.pair = pair_;
    s.grid = grid_;
    s.hat_H.assign(static_cast<std::size_t>(grid_.size()), 0.0);
    const std::size_t j0 = static_cast<std::size_t>(grid_.zero_index());
    const auto& tab = *fwd_;
    for (std::size_t j = 0; j < half_; ++j) {
        double pr = 0.0, pi = 0.0, nr = 0.0, ni = 0.0;
        for (std::size_t k = 0; k < nin; ++k) {
            const cplx ph = tab[k * half_ + j];
            const double gr = g[k].real(), gi = g[k].imag();
            // g * phi and g * conj(phi); phi_{-lambda} = conj(phi_lambda) on a_t
            pr += gr * ph.real() - gi * ph.imag();
            pi += gr * ph.imag() + gi * ph.real();
            nr += gr * ph.real() + gi * ph.imag();
            ni += gi * ph.real() - gr * ph.imag();
        }
        s.hat_H[j0 + j] = {pr, pi};
        if (j > 0)
            s.hat_H[j0 - j] = {nr, ni};
    }
    for (std::size_t k = 0; k < gamma_.size(); ++k) {
        const int m = gamma_[k];
        const double e = eta.get(pair_, m);
        cplx sum = 0.0;
        for (std::size_t i = 0; i < nin; ++i)
            sum += g[i] * disc_fwd_[k][i];
        s.hat_B[m] = e * sum;
    }
    s.tail_fraction = tail_share(s);
    return s;
}

RadialProfile TransformPlan::inverse(const SpectralData& s, const EtaTable& eta) const
{
    if (!(s.pair == pair_) || !(s.grid == grid_))
        throw ValidationError("TransformPlan::inverse: spectral data does not match the plan");
    const std::size_t nout = output_.size();
    const std::size_t j0 = static_cast<std::size_t>(grid_.zero_index());
    // weights c_cont * omega_j * mu_j * hat_H_j, folded onto non-negative nodes
    std::vector<cplx> wp(half_), wn(half_);
    for (std::size_t j = 0; j < half_; ++j) {
        const int jp = static_cast<int>(j0 + j);
        const double base = kContinuousPrefactor * grid_.weight(jp) * plancherel_density(pair_.tau(), grid_[jp]);
        wp[j] = base * s.hat_H[j0 + j];
        wn[j] = j > 0 ? base * s.hat_H[j0 - j] : 0.0;
    }
    std::vector<cplx> out(nout, 0.0);
    const auto& tab = *inv_;
    for (std::size_t k = 0; k < nout; ++k) {
        double re = 0.0, im = 0.0;
        const cplx* row = tab.data() + k * half_;
        for (std::size_t j = 0; j < half_; ++j) {
            const double ar = row[j].real(), ai = row[j].imag();
            // wp * phi + wn * conj(phi)
            re += wp[j].real() * ar - wp[j].imag() * ai + wn[j].real() * ar + wn[j].imag() * ai;
            im += wp[j].real() * ai + wp[j].imag() * ar + wn[j].imag() * ar - wn[j].real() * ai;
        }
        out[k] = {re, im};
    }
    for (std::size_t q = 0; q < gamma_.size(); ++q) {
        const int m = gamma_[q];
        const auto it = s.hat_B.find(m);
        if (it == s.hat_B.end())
            throw ValidationError("TransformPlan::inverse: missing discrete value for m = " + std::to_string(m));
        const cplx coef = kDiscretePrefactor * std::abs(m) * eta.get(pair_, m) * it->second;
        for (std::size_t k = 0; k < nout; ++k)
            out[k] += coef * disc_inv_[q][k];
    }
    return RadialProfile(pair_.swapped(), output_, std::move(out));
}

RadialProfile TransformPlan::apply(const SymbolFunctions& m, const RadialProfile& f, const EtaTable& eta) const
{
    SpectralData s = forward(f, eta);
    for (int j = 0; j < grid_.size(); ++j)
        s.hat_H[static_cast<std::size_t>(j)] *= m.on_line ? m.on_line(grid_[j]) : cplx(1.0);
    for (auto& [k, v] : s.hat_B)
        v *= m.on_discrete ? m.on_discrete(k) : cplx(1.0);
    return inverse(s, eta);
}

std::vector<cplx> TransformPlan::operator_matrix(const SymbolFunctions& m, const EtaTable& eta) const
{
    const std::size_t nin = input_.size();
    const std::size_t nout = output_.size();
    std::vector<cplx> mat(nout * nin, 0.0);
    // columns are images of unit samples; build them through the tables directly
    const double c = reflection_sign(pair_);
    const std::size_t j0 = static_cast<std::size_t>(grid_.zero_index());
    std::vector<cplx> wp(half_), wn(half_);
    for (std::size_t j = 0; j < half_; ++j) {
        const int jp = static_cast<int>(j0 + j);
        const double base = kContinuousPrefactor * grid_.weight(jp) * plancherel_density(pair_.tau(), grid_[jp]);
        wp[j] = base * (m.on_line ? m.on_line(grid_[jp]) : cplx(1.0));
        wn[j] = j > 0 ? base * (m.on_line ? m.on_line(-grid_[jp]) : cplx(1.0)) : 0.0;
    }
    const auto& ftab = *fwd_;
    const auto& itab = *inv_;
    for (std::size_t k = 0; k < nout; ++k) {
        const cplx* irow = itab.data() + k * half_;
        // kernel(k, i) = sum_j [wp_j irow_j ftab(i, j) + wn_j conj(irow_j) conj(ftab(i, j))]
        std::vector<cplx> ap(half_), an(half_);
        for (std::size_t j = 0; j < half_; ++j) {
            ap[j] = wp[j] * irow[j];
            an[j] = wn[j] * std::conj(irow[j]);
        }
        for (std::size_t i = 0; i < nin; ++i) {
            const cplx* frow = ftab.data() + i * half_;
            double re = 0.0, im = 0.0;
            for (std::size_t j = 0; j < half_; ++j) {
                const double fr = frow[j].real(), fi = frow[j].imag();
                re += ap[j].real() * fr - ap[j].imag() * fi + an[j].real() * fr + an[j].imag() * fi;
                im += ap[j].real() * fi + ap[j].imag() * fr + an[j].imag() * fr - an[j].real() * fi;
            }
            mat[k * nin + i] = cplx(re, im) * (c * input_.weights()[i] * haar_weight(input_.nodes()[i]));
        }
    }
    for (std::size_t q = 0; q < gamma_.size(); ++q) {
        const int mm = gamma_[q];
        const double e = eta.get(pair_, mm);
        const cplx coef = kDiscretePrefactor * std::abs(mm) * e * e * c *
                          (m.on_discrete ? m.on_discrete(mm) : cplx(1.0));
        for (std::size_t k = 0; k < nout; ++k)
            for (std::size_t i = 0; i < nin; ++i)
                mat[k * nin + i] += coef * disc_inv_[q][k] * disc_fwd_[q][i] *
                                    (input_.weights()[i] * haar_weight(input_.nodes()[i]));
    }
    return mat;
}

cplx forward_principal(const RadialProfile& f, double lambda, int refine)
{
    const double c = reflection_sign(f.pair());
    cplx sum = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double t = f.nodes()[k];
        sum += f.values()[k] * detail::phi_radial_at(f.pair().l, f.pair().n, lambda, t, refine) *
               (f.rule().weights()[k] * haar_weight(t));
    }
    return c * sum;
}

cplx forward_discrete(const RadialProfile& f, int m, const EtaTable& eta)
{
    if (gamma_set(f.pair()).empty())
        throw ValidationError("forward_discrete: Gamma_{l,n} is empty for this pair");
    if (!gamma_set(f.pair()).contains(m))
        throw ValidationError("forward_discrete: m = " + std::to_string(m) + " is not in Gamma_{l,n}");
    const double e = eta.get(f.pair(), m);
    cplx sum = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double t = f.nodes()[k];
        sum += f.values()[k] * phi_discrete(f.pair(), m, t) * (f.rule().weights()[k] * haar_weight(t));
    }
    return reflection_sign(f.pair()) * e * sum;
}

SpectralData forward(const RadialProfile& f, const EtaTable& eta, const TransformOptions& options)
{
    const TypePair& p = f.pair();
    const RadialRule& rule = f.rule();
    SpectralData s;
    s.pair = p;

    const auto gamma = gamma_set(p).members;
    if (!gamma.empty()) {
        std::vector<int> ms;
        for (int m : gamma)
            ms.push_back(std::abs(m));
        std::vector<std::vector<std::pair<double, double>>> rows(rule.size());
        parallel_for(rule.size(), [&](std::size_t k) {
            rows[k] = detail::phi_discrete_pair(p.l, p.n, ms, rule.nodes()[k], options.refine);
        });
        const double c = reflection_sign(p);
        for (std::size_t q = 0; q < gamma.size(); ++q) {
            cplx sum = 0.0;
            for (std::size_t k = 0; k < rule.size(); ++k)
                sum += f.values()[k] * rows[k][q].first * (rule.weights()[k] * haar_weight(rule.nodes()[k]));
            s.hat_B[gamma[q]] = c * eta.get(p, gamma[q]) * sum;
        }
    }

    SpectralGrid grid = options.grid;
    for (int attempt = 0;; ++attempt) {
        s.grid = grid;
        s.hat_H = principal_forward(f, grid, options.refine);
        s.tail_fraction = tail_share(s);
        if (!options.adaptive || s.tail_fraction <= options.tail_tolerance)
            return s;
        // Past the rule's bandwidth the samples alias and the tail stops shrinking.
        if (attempt >= options.max_extensions || grid.extended().lambda_max() > rule.bandwidth()) {
            s.truncated = true;
            return s;
        }
        grid = grid.extended();
    }
}

namespace {

std::vector<cplx> full_inverse(const SpectralData& s, const std::vector<double>& ts, const EtaTable& eta,
                               int refine)
{
    if (s.hat_H.size() != static_cast<std::size_t>(s.grid.size()))
        throw ValidationError("inverse: hat_H does not match the lambda grid");
    auto out = principal_inverse(s, ts, refine);
    const auto gamma = gamma_set(s.pair).members;
    if (gamma.empty())
        return out;
    std::vector<int> ms;
    std::vector<cplx> coef;
    for (int m : gamma) {
        const auto it = s.hat_B.find(m);
        if (it == s.hat_B.end())
            throw ValidationError("inverse: missing discrete value for m = " + std::to_string(m));
        ms.push_back(std::abs(m));
        coef.push_back(kDiscretePrefactor * std::abs(m) * eta.get(s.pair, m) * it->second);
    }
    parallel_for(ts.size(), [&](std::size_t k) {
        const auto v = detail::phi_discrete_pair(s.pair.l, s.pair.n, ms, ts[k], refine);
        for (std::size_t q = 0; q < ms.size(); ++q)
            out[k] += coef[q] * v[q].second;
    });
    return out;
}

} // namespace

cplx inverse(const SpectralData& s, double t, const EtaTable& eta, int refine)
{
    if (!(t >= 0.0))
        throw ValidationError("inverse: t must be >= 0");
    return full_inverse(s, {t}, eta, refine).front();
}

RadialProfile inverse(const SpectralData& s, const RadialRule& rule, const EtaTable& eta, int refine)
{
    return RadialProfile(s.pair.swapped(), rule, full_inverse(s, rule.nodes(), eta, refine));
}

double spectral_lp_power(const SpectralData& s, double p)
{
    double cont = 0.0;
    for (int j = 0; j < s.grid.size(); ++j)
        cont += std::pow(std::abs(s.hat_H[static_cast<std::size_t>(j)]), p) *
                plancherel_density(s.pair.tau(), s.grid[j]) * s.grid.weight(j);
    double disc = 0.0;
    for (const auto& [m, v] : s.hat_B)
        disc += std::pow(std::abs(v), p) * std::abs(m);
    return kContinuousPrefactor * cont + kDiscretePrefactor * disc;
}

PlancherelReport plancherel_check(const RadialProfile& f, const SpectralData& s)
{
    PlancherelReport r;
    const double n2 = lp_norm(f, 2.0);
    r.lhs = n2 * n2;
    r.rhs = spectral_lp_power(s, 2.0);
    r.rel_err = r.lhs > 0.0 ? std::fabs(r.lhs - r.rhs) / r.lhs : 0.0;
    return r;
}

PlancherelReport plancherel_check(const RadialProfile& f, const EtaTable& eta, const TransformOptions& options)
{
    return plancherel_check(f, forward(f, eta, options));
}

double lp_norm(const RadialProfile& f, double p)
{
    if (!(p >= 1.0))
        throw ValidationError("lp_norm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const cplx& v : f.values())
            m = std::max(m, std::abs(v));
        return m;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k)
        sum += std::pow(std::abs(f.values()[k]), p) * f.rule().weights()[k] * haar_weight(f.nodes()[k]);
    return std::pow(sum, 1.0 / p);
}

} // namespace sl2h
