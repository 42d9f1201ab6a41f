#include "sl2h/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "gauss.hpp"
#include "sl2h/errors.hpp"
#include "sl2h/group.hpp"

namespace sl2h {

PeriodicRule::PeriodicRule(int node_count)
{
    if (node_count <= 0)
        throw ValidationError("PeriodicRule: node_count must be positive");
    nodes_.resize(static_cast<std::size_t>(node_count));
    const double step = 2.0 * M_PI / node_count;
    for (int i = 0; i < node_count; ++i)
        nodes_[static_cast<std::size_t>(i)] = step * i;
}

cplx integrate_periodic(const std::function<cplx(double)>& f, const PeriodicRule& rule)
{
    cplx sum = 0.0;
    for (double theta : rule.nodes()) {
        const cplx v = f(theta);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ValidationError("integrate_periodic: non-finite sample at theta = " +
                                  std::to_string(theta));
        sum += v;
    }
    return sum * rule.weight();
}

const GaussLegendre& gauss_legendre(int n)
{
    if (n <= 0)
        throw ValidationError("gauss_legendre: n must be positive");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussLegendre>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        const auto rule = detail::build_gauss<double>(n);
        slot = std::make_unique<GaussLegendre>(GaussLegendre{rule.x, rule.w});
    }
    return *slot;
}

RadialRule RadialRule::uniform(double t_lo, double t_hi, int nodes_per_panel, double panel_width)
{
    if (!(t_lo >= 0.0) || !(t_hi > t_lo) || !(panel_width > 0.0))
        throw ValidationError("RadialRule: need 0 <= t_lo < t_hi and positive panel width");
    const int count = std::max(1, static_cast<int>(std::ceil((t_hi - t_lo) / panel_width - 1e-9)));
    const double h = (t_hi - t_lo) / count;
    std::vector<std::pair<double, double>> panels;
    for (int k = 0; k < count; ++k)
        panels.emplace_back(t_lo + k * h, k + 1 == count ? t_hi : t_lo + (k + 1) * h);
    return from_panels(std::move(panels), nodes_per_panel);
}

RadialRule RadialRule::from_panels(std::vector<std::pair<double, double>> panels, int nodes_per_panel)
{
    if (panels.empty() || nodes_per_panel <= 0)
        throw ValidationError("RadialRule: need at least one panel and one node per panel");
    for (std::size_t k = 0; k < panels.size(); ++k) {
        if (!(panels[k].first >= 0.0) || !(panels[k].second > panels[k].first))
            throw ValidationError("RadialRule: invalid panel");
        if (k > 0 && panels[k].first < panels[k - 1].second)
            throw ValidationError("RadialRule: overlapping panels");
    }
    RadialRule rule;
    rule.panels_ = std::move(panels);
    rule.per_panel_ = nodes_per_panel;
    const auto& gl = gauss_legendre(nodes_per_panel);
    for (const auto& [lo, hi] : rule.panels_) {
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        for (int i = 0; i < nodes_per_panel; ++i) {
            rule.nodes_.push_back(mid + half * gl.nodes[static_cast<std::size_t>(i)]);
            rule.weights_.push_back(half * gl.weights[static_cast<std::size_t>(i)]);
        }
    }
    return rule;
}

RadialRule RadialRule::refined() const
{
    return from_panels(panels_, 2 * per_panel_);
}

double RadialRule::bandwidth() const
{
    double w = 0.0;
    for (const auto& [lo, hi] : panels_)
        w = std::max(w, hi - lo);
    return w > 0.0 ? 2.0 * per_panel_ / w : 0.0;
}

bool RadialRule::operator==(const RadialRule& other) const
{
    return per_panel_ == other.per_panel_ && panels_ == other.panels_;
}

cplx integrate_radial(std::span<const cplx> samples, const RadialRule& rule)
{
    return integrate_radial(samples, rule, haar_weight);
}

cplx integrate_radial(std::span<const cplx> samples, const RadialRule& rule, const WeightFn& weight)
{
    if (samples.size() != rule.size())
        throw ValidationError("integrate_radial: sample count does not match the rule");
    cplx sum = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double w = weight(rule.nodes()[i]);
        const cplx v = samples[i];
        if (std::isnan(w) || std::isnan(v.real()) || std::isnan(v.imag()))
            throw ValidationError("integrate_radial: NaN at t = " + std::to_string(rule.nodes()[i]));
        sum += v * (w * rule.weights()[i]);
    }
    return sum;
}

SpectralGrid::SpectralGrid(double lambda_max, int samples) : lambda_max_(lambda_max)
{
    if (!(lambda_max > 0.0) || !std::isfinite(lambda_max))
        throw ValidationError("SpectralGrid: lambda_max must be positive");
    if (samples < 3)
        throw ValidationError("SpectralGrid: need at least 3 samples");
    // An even request is bumped to the next odd count so that 0 is a node.
    if (samples % 2 == 0)
        ++samples;
    const int half = samples / 2;
    spacing_ = lambda_max / half;
    samples_.resize(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j)
        samples_[static_cast<std::size_t>(j)] = spacing_ * (j - half);
    samples_.front() = -lambda_max;
    samples_.back() = lambda_max;
}

SpectralGrid SpectralGrid::with_spacing(double lambda_max, double spacing)
{
    if (!(spacing > 0.0))
        throw ValidationError("SpectralGrid: spacing must be positive");
    const int half = std::max(1, static_cast<int>(std::lround(lambda_max / spacing)));
    return SpectralGrid(half * spacing, 2 * half + 1);
}

double SpectralGrid::weight(int j) const
{
    return (j == 0 || j == size() - 1) ? 0.5 * spacing_ : spacing_;
}

SpectralGrid SpectralGrid::extended() const
{
    return SpectralGrid(2.0 * lambda_max_, 2 * (size() - 1) + 1);
}

SpectralGrid SpectralGrid::refined() const
{
    return SpectralGrid(lambda_max_, 2 * (size() - 1) + 1);
}

bool SpectralGrid::operator==(const SpectralGrid& other) const
{
    return size() == other.size() && lambda_max_ == other.lambda_max_;
}

int thread_count()
{
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0)
        hw = 1;
    if (const char* env = std::getenv("SL2H_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0)
            return static_cast<int>(std::min<long>(v, 256));
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t block = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w * block; i < std::min(n, (w + 1) * block); ++i)
                    body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace sl2h
