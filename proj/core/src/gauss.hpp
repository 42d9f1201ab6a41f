#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "real_math.hpp"

namespace sl2h::detail {

template <class Real>
struct GaussRule {
    std::vector<Real> x;
    std::vector<Real> w;
};

/// Newton on the three-term Legendre recurrence, started from the Tricomi guess.
template <class Real>
GaussRule<Real> build_gauss(int n)
{
    GaussRule<Real> rule;
    rule.x.assign(static_cast<std::size_t>(n), Real(0));
    rule.w.assign(static_cast<std::size_t>(n), Real(0));
    const Real tol = epsilon_value<Real>() * Real(4);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Real z = Real(std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5)));
        Real dp = Real(1);
        for (int iter = 0; iter < 100; ++iter) {
            Real p0 = Real(1);
            Real p1 = z;
            for (int k = 2; k <= n; ++k) {
                Real p2 = (Real(2 * k - 1) * z * p1 - Real(k - 1) * p0) / Real(k);
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p0 = Real(1);
                p1 = z;
            }
            dp = Real(n) * (z * p1 - p0) / (z * z - Real(1));
            const Real dz = p1 / dp;
            z -= dz;
            if (r_fabs(dz) <= tol)
                break;
        }
        // Recompute the derivative at the converged root for the weight.
        Real p0 = Real(1);
        Real p1 = z;
        for (int k = 2; k <= n; ++k) {
            Real p2 = (Real(2 * k - 1) * z * p1 - Real(k - 1) * p0) / Real(k);
            p0 = p1;
            p1 = p2;
        }
        dp = (n == 1) ? Real(1) : Real(n) * (z * p1 - p0) / (z * z - Real(1));
        const Real wt = Real(2) / ((Real(1) - z * z) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.x[lo] = -z;
        rule.x[hi] = z;
        rule.w[lo] = wt;
        rule.w[hi] = wt;
    }
    if (n % 2 == 1)
        rule.x[static_cast<std::size_t>(n / 2)] = Real(0);
    return rule;
}

template <class Real>
const GaussRule<Real>& cached_gauss(int n)
{
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussRule<Real>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<GaussRule<Real>>(build_gauss<Real>(n));
    return *slot;
}

} // namespace sl2h::detail
