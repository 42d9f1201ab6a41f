#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "sl2h/group.hpp"
#include "sl2h/numerics.hpp"
#include "sl2h/profile.hpp"
#include "sl2h/spectrum.hpp"

namespace sl2h {

struct SphericalParams {
    TypePair pair;
    cplx lambda = 0.0;

    Parity tau() const { return pair.tau(); }
};

/// If lambda = i m for an integer m, returns |m|.
std::optional<int> imaginary_integer(cplx lambda);

/// phi^{l,n}_lambda(a_t) for any real t (a_{-t} = k_{pi/2} a_t k_{-pi/2}).
/// lambda = i m with m integer uses extended precision; other values use double precision.
cplx phi_radial(const SphericalParams& params, double t, int refine = 1);

/// phi at k_theta1 a_t k_theta2 via the (n, l)-type rule.
cplx phi(const SphericalParams& params, const CartanCoords& x, int refine = 1);
cplx phi(const SphericalParams& params, const GroupElement& x, int refine = 1);

/// Like phi_radial, but also evaluates with doubled node counts and throws
/// ConvergenceError if the two differ by more than tol * max(1, |phi|).
cplx phi_radial_checked(const SphericalParams& params, double t, double tol = 1e-10);

/// The K-integral taken literally: trapezoid over K with iwasawa() for H(xk) and K(xk).
cplx phi_direct(const SphericalParams& params, const GroupElement& x,
                const PeriodicRule& rule = PeriodicRule());

/// phi^{0,0}_lambda(a_t) for real lambda.
double phi_elementary(double lambda, double t);

/// phi^{l,n}_{i|m|}(a_t) in extended precision, t >= 0.
double phi_discrete(const TypePair& pair, int m, double t, int refine = 1);

struct EtaEntry {
    int l = 0;
    int n = 0;
    int m = 0;
    double eta = 0.0;
    double tol = 1e-6;
};

/// Calibrated constants eta^{l,n}(m) relating psi^{l,n}_{im} to phi^{l,n}_{i|m|}.
/// Symmetric convention: an entry for (l, n, m) also serves (n, l, m).
/// Append-only; concurrent reads are safe, writes are exclusive.
class EtaTable {
public:
    EtaTable() = default;
    EtaTable(const EtaTable& other);
    EtaTable& operator=(const EtaTable& other);

    std::optional<double> find(int l, int n, int m) const;
    /// Throws UncalibratedError when missing.
    double get(const TypePair& pair, int m) const;
    /// Throws ValidationError when an existing entry disagrees beyond its tolerance.
    void insert(const EtaEntry& entry);
    std::vector<EtaEntry> entries() const;
    std::size_t size() const;

    std::string to_json() const;
    static EtaTable from_json(const std::string& text);
    void save(const std::string& path) const;
    static EtaTable load(const std::string& path);

private:
    static std::tuple<int, int, int> key(int l, int n, int m);

    mutable std::shared_mutex mutex_;
    std::map<std::tuple<int, int, int>, EtaEntry> entries_;
};

/// psi^{l,n}_{im}(a_t) = eta * phi^{l,n}_{i|m|}(a_t), any real t.
cplx psi_discrete(const TypePair& pair, int m, double t, const EtaTable& eta);
cplx psi_discrete(const TypePair& pair, int m, const CartanCoords& x, const EtaTable& eta);
cplx psi_discrete(const TypePair& pair, int m, const GroupElement& x, const EtaTable& eta);

/// int_0^inf phi^{n,l}_{i|m|}(a_t) phi^{l,n}_{i|m|}(a_{-t}) Delta(t) dt.
double schur_integral(const TypePair& pair, int m, int refine = 1);

struct CalibrationResult {
    double eta = 0.0;                 ///< sqrt of the product under the symmetric convention
    double product = 0.0;             ///< eta^{l,n}(m) eta^{n,l}(m)
    std::vector<double> per_profile;  ///< product implied by each reference profile
    double spread = 0.0;              ///< max relative deviation across profiles
};

/// Fixes eta^{l,n}(m) eta^{n,l}(m) by requiring that spectral data supported at k = i m
/// be reproduced by inverse-then-forward, separately for each reference profile.
/// Throws ConvergenceError when profiles disagree beyond tol or the product is not positive.
CalibrationResult calibrate_eta(const TypePair& pair, int m, std::span<const RadialProfile> references,
                                double tol = 1e-6);

/// Calibrates every m in gamma_set(pair) with two default bumps and records the results.
void calibrate_all(const TypePair& pair, EtaTable& table, double tol = 1e-6);

} // namespace sl2h
