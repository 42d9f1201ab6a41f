#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sl2h/multiplier.hpp"
#include "sl2h/profile.hpp"
#include "sl2h/spherical.hpp"
#include "sl2h/transform.hpp"

namespace sl2h {

/// Bump supported on [center - width/2, center + width/2], modulated by e^{i omega t}.
struct BumpSpec {
    double center = 1.0;
    double width = 0.5;
    double omega = 0.0;
};

struct TestFamily {
    TypePair pair;
    std::vector<BumpSpec> members;
    int nodes_per_panel = 128;

    /// level 0 uses nodes_per_panel, each level doubles it.
    RadialProfile profile(std::size_t i, int level = 0) const;
};

/// count bumps, centers in [0.5, 4], widths in [0.2, 1], omega in {0, 2, 5}.
TestFamily default_family(const TypePair& pair, int count = 20, std::uint64_t seed = 42);

/// Positive weight psi on R union i Gamma_{l,n}; the discrete part takes m of k = i m.
struct PsiWeight {
    std::string name;
    std::function<double(double)> on_line;
    std::function<double(int)> on_discrete;
};

/// "rational:a" -> (1 + lambda^2)^{-a}, "const:c" -> c; built on parse_symbol.
PsiWeight parse_psi(const std::string& spec);

/// ||psi||_{tau,inf} + sum_Gamma psi(k)|m|; throws when the weak norm diverges.
double paley_constant(const PsiWeight& psi, const TypePair& pair, const SpectralGrid& grid = SpectralGrid());

struct RatioEntry {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

/// (int |F f|^{p'} d nu)^{1/p'} against ||f||_p.
RatioEntry hausdorff_young_check(const RadialProfile& f, const SpectralData& s, double p);
/// ||inverse(S)||_{p'} against (int |S|^p d nu)^{1/p}; the inverse is taken on `rule`.
RatioEntry dual_hausdorff_young_check(const SpectralData& s, const RadialRule& rule, double p,
                                      const EtaTable& eta);
/// (int |F f|^p psi^{2-p} d nu)^{1/p} against constant^{(2-p)/p} ||f||_p.
RatioEntry paley_check(const RadialProfile& f, const SpectralData& s, const PsiWeight& psi, double constant,
                       double p);
/// (int (|F f| psi^{1/b - 1/p'})^b d nu)^{1/b} against constant^{1/b - 1/p'} ||f||_p.
RatioEntry hyp_check(const RadialProfile& f, const SpectralData& s, const PsiWeight& psi, double constant,
                     double p, double b);

enum class InequalityKind { hausdorff_young, dual_hausdorff_young, paley, hyp };

InequalityKind parse_inequality(const std::string& name);
std::string to_string(InequalityKind kind);

struct InequalityParams {
    InequalityKind kind = InequalityKind::hausdorff_young;
    double p = 2.0;
    double b = 2.0;
    PsiWeight psi;
};

struct RatioReport {
    std::vector<RatioEntry> members;
    double max_ratio = 0.0;
    double refined_max_ratio = 0.0;
    /// |refined_max_ratio - max_ratio| / max_ratio
    double refinement_delta = 0.0;
};

/// Runs the check on every member at the base resolution and once refined
/// (twice the nodes per panel, half the lambda spacing).
RatioReport run_family_check(const TestFamily& family, const InequalityParams& params, const EtaTable& eta,
                             const TransformOptions& options = {});

/// max over the family of ||T_m f||_q / ||f||_p.
double operator_norm_lower_bound(const MultiplierSymbol& m, double p, double q, const TestFamily& family,
                                 const EtaTable& eta, const TransformOptions& options = {}, int level = 0);

} // namespace sl2h
