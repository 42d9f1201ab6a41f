#pragma once

// One-dimensional non-uniform FFT by Gaussian gridding (Greengard and Lee, SIAM Rev. 46, 2004).
//   type 1: F_j = sum_k c_k e^{-i j x_k},  j = -J..J
//   type 2: g(x) = sum_j W_j e^{-i j x}
// with x in (-pi, pi). Oversampling 2, spreading half-width 12: about 1e-12 relative to sum |c_k|.

#include <complex>
#include <vector>

namespace sl2h::detail {

class Nufft {
public:
    explicit Nufft(int half_modes);

    int half_modes() const { return half_; }
    int fine_size() const { return fine_; }

    /// Fine grid for type 1, zero-initialised.
    std::vector<std::complex<double>> make_grid() const;
    void spread(double x, std::complex<double> c, std::vector<std::complex<double>>& grid) const;
    /// Modes F_{-J..J} from a spread grid (consumed).
    std::vector<std::complex<double>> modes(std::vector<std::complex<double>> grid) const;

    /// Fine grid for type 2 from the modes W_{-J..J}.
    std::vector<std::complex<double>> prepare(const std::vector<std::complex<double>>& w) const;
    std::complex<double> interpolate(const std::vector<std::complex<double>>& grid, double x) const;

private:
    struct Stencil {
        int m0;
        double e1;
        double e2;
    };
    Stencil stencil(double x) const;

    int half_;
    int modes_;
    int fine_;
    double tau_;
    double h_;
    std::vector<double> e3_;  // exp(-(l h)^2 / 4 tau), l = 0..kSpread
};

} // namespace sl2h::detail
