#include "sl2h/spherical.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>

#include "kernel.hpp"
#include "sl2h/errors.hpp"

namespace sl2h {

std::optional<int> imaginary_integer(cplx lambda)
{
    if (lambda.real() != 0.0)
        return std::nullopt;
    const double r = std::round(lambda.imag());
    if (r != lambda.imag() || r == 0.0 || std::fabs(r) > 1e6)
        return std::nullopt;
    return static_cast<int>(r);
}

static cplx reflection_phase(const TypePair& p)
{
    // e^{i (n - l) pi / 2}; n - l is even
    const int q = ((p.n - p.l) / 2) % 2;
    return q == 0 ? 1.0 : -1.0;
}

cplx phi_radial(const SphericalParams& params, double t, int refine)
{
    if (!std::isfinite(t) || !std::isfinite(params.lambda.real()) || !std::isfinite(params.lambda.imag()))
        throw ValidationError("phi: non-finite argument");
    const double at = std::fabs(t);
    cplx v;
    if (const auto m = imaginary_integer(params.lambda))
        v = detail::phi_discrete_radial(params.pair.l, params.pair.n, *m, at, refine);
    else
        v = detail::phi_radial_at(params.pair.l, params.pair.n, params.lambda, at, refine);
    return t < 0.0 ? reflection_phase(params.pair) * v : v;
}

cplx phi(const SphericalParams& params, const CartanCoords& x, int refine)
{
    // phi^{l,n} is of (n, l) type.
    return std::polar(1.0, params.pair.n * x.theta1) * phi_radial(params, x.t, refine) *
           std::polar(1.0, params.pair.l * x.theta2);
}

cplx phi(const SphericalParams& params, const GroupElement& x, int refine)
{
    return phi(params, cartan(x), refine);
}

cplx phi_radial_checked(const SphericalParams& params, double t, double tol)
{
    const cplx a = phi_radial(params, t, 1);
    const cplx b = phi_radial(params, t, 2);
    if (std::abs(a - b) > tol * std::max(1.0, std::abs(b)))
        throw ConvergenceError("phi: K-quadrature not converged at t = " + std::to_string(t) +
                               " (node doubling changed the value by " + std::to_string(std::abs(a - b)) + ")");
    return b;
}

cplx phi_direct(const SphericalParams& params, const GroupElement& x, const PeriodicRule& rule)
{
    const cplx s = cplx(1.0, 0.0) + cplx(0.0, 1.0) * params.lambda;  // 1 + i lambda
    return integrate_periodic(
        [&](double theta) {
            const IwasawaCoords w = iwasawa(x * rotation(theta));
            return std::exp(-s * w.t) * std::polar(1.0, params.pair.n * w.theta - params.pair.l * theta);
        },
        rule);
}

double phi_elementary(double lambda, double t)
{
    const cplx v = phi_radial({TypePair(0, 0), lambda}, t);
    if (std::fabs(v.imag()) > 1e-13 * std::max(1.0, std::fabs(v.real())))
        throw ConvergenceError("phi_elementary: imaginary part " + std::to_string(v.imag()) + " above 1e-13");
    return v.real();
}

double phi_discrete(const TypePair& pair, int m, double t, int refine)
{
    if (t < 0.0)
        throw ValidationError("phi_discrete: t must be non-negative");
    return detail::phi_discrete_radial(pair.l, pair.n, std::abs(m), t, refine);
}

// EtaTable ---------------------------------------------------------------

EtaTable::EtaTable(const EtaTable& other)
{
    std::shared_lock lock(other.mutex_);
    entries_ = other.entries_;
}

EtaTable& EtaTable::operator=(const EtaTable& other)
{
    if (this != &other) {
        std::map<std::tuple<int, int, int>, EtaEntry> copy;
        {
            std::shared_lock lock(other.mutex_);
            copy = other.entries_;
        }
        std::unique_lock lock(mutex_);
        entries_ = std::move(copy);
    }
    return *this;
}

std::tuple<int, int, int> EtaTable::key(int l, int n, int m)
{
    return {std::min(l, n), std::max(l, n), m};
}

std::optional<double> EtaTable::find(int l, int n, int m) const
{
    std::shared_lock lock(mutex_);
    const auto it = entries_.find(key(l, n, m));
    if (it == entries_.end())
        return std::nullopt;
    return it->second.eta;
}

double EtaTable::get(const TypePair& pair, int m) const
{
    if (const auto v = find(pair.l, pair.n, m))
        return *v;
    throw UncalibratedError("eta^{" + std::to_string(pair.l) + "," + std::to_string(pair.n) + "}(" +
                            std::to_string(m) + ") is uncalibrated; run calibrate-eta first");
}

void EtaTable::insert(const EtaEntry& entry)
{
    if (!(entry.eta > 0.0) || !std::isfinite(entry.eta))
        throw ValidationError("EtaTable: eta must be positive and finite");
    if (!gamma_set(entry.l, entry.n).contains(entry.m))
        throw ValidationError("EtaTable: m = " + std::to_string(entry.m) + " is not in Gamma_{" +
                              std::to_string(entry.l) + "," + std::to_string(entry.n) + "}");
    std::unique_lock lock(mutex_);
    const auto k = key(entry.l, entry.n, entry.m);
    const auto it = entries_.find(k);
    if (it != entries_.end()) {
        const double tol = std::max(it->second.tol, entry.tol);
        if (std::fabs(it->second.eta - entry.eta) > tol * it->second.eta)
            throw ValidationError("EtaTable: conflicting calibration for (" + std::to_string(entry.l) + ", " +
                                  std::to_string(entry.n) + ", " + std::to_string(entry.m) + ")");
        return;
    }
    EtaEntry stored = entry;
    stored.l = std::get<0>(k);
    stored.n = std::get<1>(k);
    entries_.emplace(k, stored);
}

std::vector<EtaEntry> EtaTable::entries() const
{
    std::shared_lock lock(mutex_);
    std::vector<EtaEntry> out;
    for (const auto& [k, v] : entries_)
        out.push_back(v);
    return out;
}

std::size_t EtaTable::size() const
{
    std::shared_lock lock(mutex_);
    return entries_.size();
}

std::string EtaTable::to_json() const
{
    nlohmann::json doc;
    doc["entries"] = nlohmann::json::array();
    for (const auto& e : entries())
        doc["entries"].push_back({{"l", e.l}, {"n", e.n}, {"m", e.m}, {"eta", e.eta}, {"tol", e.tol}});
    return doc.dump(2);
}

EtaTable EtaTable::from_json(const std::string& text)
{
    EtaTable table;
    try {
        const auto doc = nlohmann::json::parse(text);
        for (const auto& e : doc.at("entries")) {
            EtaEntry entry;
            entry.l = e.at("l").get<int>();
            entry.n = e.at("n").get<int>();
            entry.m = e.at("m").get<int>();
            entry.eta = e.at("eta").get<double>();
            entry.tol = e.value("tol", 1e-6);
            table.insert(entry);
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ValidationError(std::string("eta table: ") + ex.what());
    }
    return table;
}

void EtaTable::save(const std::string& path) const
{
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write " + path);
    out << to_json() << "\n";
}

EtaTable EtaTable::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

// psi ---------------------------------------------------------------------

static void require_discrete(const TypePair& pair, int m)
{
    if (!gamma_set(pair).contains(m))
        throw ValidationError("m = " + std::to_string(m) + " is not in Gamma_{" + std::to_string(pair.l) +
                              "," + std::to_string(pair.n) + "}");
}

cplx psi_discrete(const TypePair& pair, int m, double t, const EtaTable& eta)
{
    require_discrete(pair, m);
    const double e = eta.get(pair, m);
    const double v = phi_discrete(pair, m, std::fabs(t));
    return (t < 0.0 ? reflection_phase(pair) : cplx(1.0)) * (e * v);
}

cplx psi_discrete(const TypePair& pair, int m, const CartanCoords& x, const EtaTable& eta)
{
    return std::polar(1.0, pair.n * x.theta1) * psi_discrete(pair, m, x.t, eta) *
           std::polar(1.0, pair.l * x.theta2);
}

cplx psi_discrete(const TypePair& pair, int m, const GroupElement& x, const EtaTable& eta)
{
    return psi_discrete(pair, m, cartan(x), eta);
}

// calibration -------------------------------------------------------------

namespace {

const RadialRule& calibration_rule()
{
    static const RadialRule rule = RadialRule::uniform(0.0, 20.0, 24, 1.0);
    return rule;
}

struct DiscreteTables {
    std::vector<double> ln;  // phi^{l,n}_{i|m|}
    std::vector<double> nl;  // phi^{n,l}_{i|m|}
};

DiscreteTables discrete_tables(const TypePair& pair, int m, const std::vector<double>& ts)
{
    DiscreteTables out;
    out.ln.resize(ts.size());
    out.nl.resize(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) {
        const auto v = detail::phi_discrete_pair(pair.l, pair.n, {std::abs(m)}, ts[i]).front();
        out.ln[i] = v.first;
        out.nl[i] = v.second;
    });
    return out;
}

} // namespace

double schur_integral(const TypePair& pair, int m, int refine)
{
    require_discrete(pair, m);
    const RadialRule rule = refine > 1 ? RadialRule::uniform(0.0, 20.0, 24 * refine, 1.0) : calibration_rule();
    const auto tab = discrete_tables(pair, m, rule.nodes());
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i)
        sum += rule.weights()[i] * haar_weight(rule.nodes()[i]) * tab.nl[i] * tab.ln[i];
    return reflection_phase(pair).real() * sum;
}

CalibrationResult calibrate_eta(const TypePair& pair, int m, std::span<const RadialProfile> references,
                                double tol)
{
    if (gamma_set(pair).empty())
        throw ValidationError("calibrate_eta: no discrete spectrum for (" + std::to_string(pair.l) + ", " +
                              std::to_string(pair.n) + ")");
    require_discrete(pair, m);
    if (references.size() < 2)
        throw ValidationError("calibrate_eta: need at least two reference profiles");

    const double c = reflection_phase(pair).real();
    const double scale = kDiscretePrefactor * std::abs(m);
    const RadialRule& rule = calibration_rule();
    const auto tab = discrete_tables(pair, m, rule.nodes());

    CalibrationResult result;
    for (const auto& f : references) {
        if (!(f.pair() == pair))
            throw ValidationError("calibrate_eta: reference profile has a different type pair");
        const auto ftab = discrete_tables(pair, m, f.nodes());
        // raw forward coefficient (eta = 1)
        cplx a = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            a += f.values()[i] * (f.rule().weights()[i] * haar_weight(f.nodes()[i]) * ftab.ln[i]);
        a *= c;
        if (std::abs(a) == 0.0)
            throw ValidationError("calibrate_eta: reference profile has no component at k = i" + std::to_string(m));
        // raw inverse of the single-point spectrum, then raw forward again
        cplx b = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const cplx g = scale * a * tab.nl[i];
            b += g * (rule.weights()[i] * haar_weight(rule.nodes()[i]) * tab.ln[i]);
        }
        b *= c;
        const cplx product = a / b;
        if (std::fabs(product.imag()) > tol * std::abs(product))
            throw ConvergenceError("calibrate_eta: complex product");
        result.per_profile.push_back(product.real());
    }
    const double first = result.per_profile.front();
    for (double p : result.per_profile)
        result.spread = std::max(result.spread, std::fabs(p - first) / std::fabs(first));
    if (result.spread > tol)
        throw ConvergenceError("calibrate_eta: reference profiles disagree (spread " +
                               std::to_string(result.spread) + ")");
    result.product = first;
    if (!(result.product > 0.0))
        throw ConvergenceError("calibrate_eta: non-positive product " + std::to_string(result.product));
    result.eta = std::sqrt(result.product);
    return result;
}

void calibrate_all(const TypePair& pair, EtaTable& table, double tol)
{
    const double lo = pair.l == pair.n ? 0.0 : 0.25;
    const std::vector<RadialProfile> refs = {make_bump(pair, std::max(lo, 0.25), 2.0, 32),
                                             make_bump(pair, 0.5, 3.0, 32, 1.0, 1.5)};
    for (int m : gamma_set(pair).members) {
        const auto r = calibrate_eta(pair, m, refs, tol);
        table.insert({pair.l, pair.n, m, r.eta, tol});
    }
}

} // namespace sl2h
