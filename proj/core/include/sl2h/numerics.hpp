#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace sl2h {

using cplx = std::complex<double>;

/// Equispaced trapezoid rule on [0, 2pi) for the normalized Haar measure of K.
class PeriodicRule {
public:
    explicit PeriodicRule(int node_count = 256);

    int size() const { return static_cast<int>(nodes_.size()); }
    double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    double weight() const { return 1.0 / static_cast<double>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }

private:
    std::vector<double> nodes_;
};

cplx integrate_periodic(const std::function<cplx(double)>& f, const PeriodicRule& rule);

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached per n; safe to call concurrently.
const GaussLegendre& gauss_legendre(int n);

/// Composite Gauss-Legendre rule on a list of adjacent panels.
class RadialRule {
public:
    RadialRule() = default;

    /// Panels of width at most panel_width covering [t_lo, t_hi].
    static RadialRule uniform(double t_lo, double t_hi, int nodes_per_panel = 64,
                              double panel_width = 1.0);
    static RadialRule from_panels(std::vector<std::pair<double, double>> panels,
                                  int nodes_per_panel);

    const std::vector<std::pair<double, double>>& panels() const { return panels_; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return nodes_.size(); }
    int nodes_per_panel() const { return per_panel_; }
    double t_min() const { return panels_.empty() ? 0.0 : panels_.front().first; }
    double t_max() const { return panels_.empty() ? 0.0 : panels_.back().second; }

    /// Same panels, twice the nodes per panel.
    RadialRule refined() const;

    /// Largest frequency w for which e^{iwt} is still integrated accurately (2 n / panel width).
    double bandwidth() const;

    bool operator==(const RadialRule& other) const;

private:
    std::vector<std::pair<double, double>> panels_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    int per_panel_ = 0;
};

using WeightFn = std::function<double(double)>;

/// Sum of samples against the rule with weight Delta(t) = 2 sinh 2t.
cplx integrate_radial(std::span<const cplx> samples, const RadialRule& rule);
cplx integrate_radial(std::span<const cplx> samples, const RadialRule& rule,
                      const WeightFn& weight);

/// Symmetric uniform lambda grid with an odd number of samples (0 is a node).
class SpectralGrid {
public:
    SpectralGrid(double lambda_max = 60.0, int samples = 1201);

    static SpectralGrid with_spacing(double lambda_max, double spacing);

    double lambda_max() const { return lambda_max_; }
    double spacing() const { return spacing_; }
    int size() const { return static_cast<int>(samples_.size()); }
    int zero_index() const { return size() / 2; }
    double operator[](int j) const { return samples_[static_cast<std::size_t>(j)]; }
    const std::vector<double>& samples() const { return samples_; }
    /// Trapezoid weight of node j.
    double weight(int j) const;

    /// Same spacing, twice the range.
    SpectralGrid extended() const;
    /// Same range, half the spacing.
    SpectralGrid refined() const;

    bool operator==(const SpectralGrid& other) const;

private:
    double lambda_max_;
    double spacing_;
    std::vector<double> samples_;
};

/// Worker count: SL2H_THREADS if set, else hardware concurrency.
int thread_count();

/// Runs body(i) for i in [0, n), split in contiguous blocks over thread_count() workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace sl2h
