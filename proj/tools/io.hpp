#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sl2h/pde.hpp"
#include "sl2h/profile.hpp"
#include "sl2h/transform.hpp"

namespace sl2h::io {

using json = nlohmann::ordered_json;

/// %.17g
std::string format_real(double x);
/// format_real, with ".0" appended when the result reads as an integer.
std::string format_scalar(double x);

json complex_json(cplx z);
cplx complex_from_json(const json& j);

json read_json(const std::string& path);
/// "-" writes to stdout.
void write_json(const std::string& path, const json& doc);

/// Sidecar holding the type, rule and config of a CSV profile.
std::string sidecar_path(const std::string& csv_path);

/// CSV "t,re,im" plus the sidecar.
void write_profile_csv(const std::string& path, const RadialProfile& f, const json& config);
/// Point samples that do not form a rule; the sidecar records the type only.
void write_samples_csv(const std::string& path, const TypePair& pair, const std::vector<double>& ts,
                       const std::vector<cplx>& values, const json& config);

/// Uses the sidecar rule when it matches the rows; otherwise resamples the rows (cubic) onto
/// a uniform Gauss rule over their range. pair overrides the sidecar type.
RadialProfile read_profile_csv(const std::string& path, std::optional<TypePair> pair = std::nullopt,
                               int nodes_per_panel = 64);

json profile_json(const RadialProfile& f);

json spectral_json(const SpectralData& s);
SpectralData spectral_from_json(const json& j);

json state_json(const CauchyState& st);

} // namespace sl2h::io
