#include "sl2h/profile.hpp"

#include <algorithm>
#include <cmath>

#include "sl2h/errors.hpp"

namespace sl2h {

static cplx cubic_at(const std::vector<double>& x, const std::vector<cplx>& y, double t)
{
    const std::size_t n = x.size();
    if (n == 1)
        return y[0];
    const auto it = std::lower_bound(x.begin(), x.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - x.begin());
    std::size_t start = hi >= 2 ? hi - 2 : 0;
    const std::size_t width = std::min<std::size_t>(4, n);
    start = std::min(start, n - width);
    cplx sum = 0.0;
    for (std::size_t i = start; i < start + width; ++i) {
        double basis = 1.0;
        for (std::size_t j = start; j < start + width; ++j)
            if (j != i)
                basis *= (t - x[j]) / (x[i] - x[j]);
        sum += basis * y[i];
    }
    return sum;
}

RadialProfile::RadialProfile(TypePair pair, RadialRule rule, std::vector<cplx> values, Support support)
    : pair_(pair), rule_(std::move(rule)), values_(std::move(values)), support_(support)
{
    if (values_.size() != rule_.size())
        throw ValidationError("RadialProfile: value count does not match the rule");
    double peak = 0.0;
    for (const cplx& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ValidationError("RadialProfile: non-finite sample");
        peak = std::max(peak, std::abs(v));
    }
    if (pair_.l != pair_.n && rule_.t_min() == 0.0 && peak > 0.0) {
        // Smoothness at the identity forces f(e) = 0 for l != n.
        const cplx at_zero = cubic_at(rule_.nodes(), values_, 0.0);
        if (std::abs(at_zero) > 1e-6 * peak)
            throw ValidationError("RadialProfile: an (l, n)-type profile with l != n must vanish at t = 0");
    }
}

cplx RadialProfile::value_at(double t) const
{
    const double lo = rule_.t_min();
    const double hi = rule_.t_max();
    if (support_.compact && (t < support_.lo || t > support_.hi))
        return 0.0;
    if (t < lo || t > hi) {
        if (support_.compact)
            return 0.0;
        throw ValidationError("RadialProfile: t = " + std::to_string(t) + " outside the grid [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return cubic_at(rule_.nodes(), values_, t);
}

RadialProfile RadialProfile::with_values(std::vector<cplx> values) const
{
    return RadialProfile(pair_, rule_, std::move(values), support_);
}

RadialProfile RadialProfile::relabeled(TypePair pair) const
{
    RadialProfile out = *this;
    out.pair_ = pair;
    return out;
}

double bump_shape(double t, double t0, double t1)
{
    const double s = (2.0 * t - t0 - t1) / (t1 - t0);
    if (s <= -1.0 || s >= 1.0)
        return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

RadialProfile make_bump(TypePair pair, double t0, double t1, int nodes_per_panel, cplx amplitude,
                        double omega)
{
    if (!(t0 >= 0.0) || !(t1 > t0))
        throw ValidationError("make_bump: need 0 <= t0 < t1");
    if (pair.l != pair.n && t0 <= 0.0)
        throw ValidationError("make_bump: l != n requires support away from t = 0");
    auto rule = RadialRule::uniform(t0, t1, nodes_per_panel, 1.0);
    std::vector<cplx> values(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double t = rule.nodes()[i];
        values[i] = amplitude * bump_shape(t, t0, t1) * std::polar(1.0, omega * t);
    }
    return RadialProfile(pair, std::move(rule), std::move(values), Support{true, t0, t1});
}

RadialProfile sample_profile(TypePair pair, const RadialRule& rule, const std::function<cplx(double)>& f,
                             Support support)
{
    std::vector<cplx> values(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i)
        values[i] = f(rule.nodes()[i]);
    return RadialProfile(pair, rule, std::move(values), support);
}

RadialProfile resample(const RadialProfile& f, const RadialRule& rule)
{
    return sample_profile(f.pair(), rule, [&](double t) { return f.value_at(t); }, f.support());
}

static void require_same_grid(const RadialProfile& f, const RadialProfile& g)
{
    if (!(f.rule() == g.rule()))
        throw ValidationError("profiles live on different rules");
    if (!(f.pair() == g.pair()))
        throw ValidationError("profiles have different type pairs");
}

RadialProfile operator+(const RadialProfile& f, const RadialProfile& g)
{
    require_same_grid(f, g);
    std::vector<cplx> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = f.values()[i] + g.values()[i];
    Support s;
    if (f.support().compact && g.support().compact)
        s = {true, std::min(f.support().lo, g.support().lo), std::max(f.support().hi, g.support().hi)};
    return RadialProfile(f.pair(), f.rule(), std::move(v), s);
}

RadialProfile operator-(const RadialProfile& f, const RadialProfile& g)
{
    return f + (-1.0) * g;
}

RadialProfile operator*(cplx c, const RadialProfile& f)
{
    std::vector<cplx> v(f.values());
    for (auto& x : v)
        x *= c;
    return f.with_values(std::move(v));
}

double sup_relative_error(const RadialProfile& f, const RadialProfile& reference)
{
    if (f.size() != reference.size())
        throw ValidationError("sup_relative_error: profiles live on different rules");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        num = std::max(num, std::abs(f.values()[i] - reference.values()[i]));
        den = std::max(den, std::abs(reference.values()[i]));
    }
    return den > 0.0 ? num / den : num;
}

} // namespace sl2h
