#include "nufft.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

#include "sl2h/errors.hpp"

namespace sl2h::detail {

namespace {

constexpr int kSpread = 12;
constexpr double kOversample = 2.0;

int fft_friendly(int n)
{
    for (;; ++n) {
        int m = n;
        for (int p : {2, 3, 5})
            while (m % p == 0)
                m /= p;
        if (m == 1)
            return n;
    }
}

// The FFTW planner is not re-entrant; execution is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

void fft_inplace(std::vector<std::complex<double>>& data)
{
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), p, p, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

} // namespace

Nufft::Nufft(int half_modes) : half_(half_modes)
{
    if (half_modes < 0)
        throw ValidationError("Nufft: negative mode count");
    modes_ = 2 * half_ + 1;
    fine_ = fft_friendly(std::max(static_cast<int>(std::ceil(kOversample * modes_)), 2 * kSpread + 2));
    const double r = static_cast<double>(fine_) / modes_;
    tau_ = M_PI * kSpread / (static_cast<double>(modes_) * modes_ * r * (r - 0.5));
    h_ = 2.0 * M_PI / fine_;
    e3_.resize(kSpread + 1);
    for (int l = 0; l <= kSpread; ++l)
        e3_[static_cast<std::size_t>(l)] = std::exp(-(l * h_) * (l * h_) / (4.0 * tau_));
}

Nufft::Stencil Nufft::stencil(double x) const
{
    double y = std::fmod(x, 2.0 * M_PI);
    if (y < 0.0)
        y += 2.0 * M_PI;
    const int m0 = static_cast<int>(std::floor(y / h_));
    const double d = y - m0 * h_;
    return {m0, std::exp(-d * d / (4.0 * tau_)), std::exp(d * h_ / (2.0 * tau_))};
}

std::vector<std::complex<double>> Nufft::make_grid() const
{
    return std::vector<std::complex<double>>(static_cast<std::size_t>(fine_), 0.0);
}

void Nufft::spread(double x, std::complex<double> c, std::vector<std::complex<double>>& grid) const
{
    const Stencil s = stencil(x);
    // g(l h - d) = e1 * e2^l * e3[|l|]
    double up = s.e1;
    double down = s.e1;
    const double inv = 1.0 / s.e2;
    for (int l = 0; l <= kSpread; ++l) {
        const int ip = (s.m0 + l) % fine_;
        grid[static_cast<std::size_t>(ip)] += c * (up * e3_[static_cast<std::size_t>(l)]);
        if (l > 0 && l < kSpread) {
            down *= inv;
            const int im = ((s.m0 - l) % fine_ + fine_) % fine_;
            grid[static_cast<std::size_t>(im)] += c * (down * e3_[static_cast<std::size_t>(l)]);
        }
        up *= s.e2;
    }
}

std::vector<std::complex<double>> Nufft::modes(std::vector<std::complex<double>> grid) const
{
    fft_inplace(grid);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(modes_));
    const double scale = std::sqrt(M_PI / tau_) / fine_;
    for (int j = -half_; j <= half_; ++j) {
        const int k = j < 0 ? j + fine_ : j;
        out[static_cast<std::size_t>(j + half_)] =
            grid[static_cast<std::size_t>(k)] * (scale * std::exp(static_cast<double>(j) * j * tau_));
    }
    return out;
}

std::vector<std::complex<double>> Nufft::prepare(const std::vector<std::complex<double>>& w) const
{
    if (static_cast<int>(w.size()) != modes_)
        throw ValidationError("Nufft::prepare: wrong number of modes");
    auto grid = make_grid();
    for (int j = -half_; j <= half_; ++j) {
        const int k = j < 0 ? j + fine_ : j;
        grid[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(j + half_)] *
                                            std::exp(static_cast<double>(j) * j * tau_);
    }
    fft_inplace(grid);
    return grid;
}

std::complex<double> Nufft::interpolate(const std::vector<std::complex<double>>& grid, double x) const
{
    const Stencil s = stencil(x);
    std::complex<double> sum = 0.0;
    double up = s.e1;
    double down = s.e1;
    const double inv = 1.0 / s.e2;
    for (int l = 0; l <= kSpread; ++l) {
        sum += grid[static_cast<std::size_t>((s.m0 + l) % fine_)] * (up * e3_[static_cast<std::size_t>(l)]);
        if (l > 0 && l < kSpread) {
            down *= inv;
            sum += grid[static_cast<std::size_t>(((s.m0 - l) % fine_ + fine_) % fine_)] *
                   (down * e3_[static_cast<std::size_t>(l)]);
        }
        up *= s.e2;
    }
    return sum * (std::sqrt(M_PI / tau_) / fine_);
}

} // namespace sl2h::detail
