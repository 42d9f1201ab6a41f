#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sl2h/errors.hpp"

namespace sl2h::io {

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(item);
    return out;
}

double parse_number(const std::string& s, const std::string& where)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ValidationError(where + ": not a number '" + s + "'");
    }
    if (used != s.size() && s.find_first_not_of(" \t\r", used) != std::string::npos)
        throw ValidationError(where + ": not a number '" + s + "'");
    return v;
}

json rule_json(const RadialRule& rule)
{
    json panels = json::array();
    for (const auto& [lo, hi] : rule.panels())
        panels.push_back({lo, hi});
    return {{"panels", panels}, {"nodes_per_panel", rule.nodes_per_panel()}};
}

RadialRule rule_from_json(const json& j)
{
    std::vector<std::pair<double, double>> panels;
    for (const auto& p : j.at("panels"))
        panels.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    return RadialRule::from_panels(std::move(panels), j.at("nodes_per_panel").get<int>());
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write '" + path + "'");
    out << text;
}

// Four-point Lagrange through the rows nearest t.
cplx cubic(const std::vector<double>& ts, const std::vector<cplx>& vs, double t)
{
    const std::size_t n = ts.size();
    if (n < 4)
        throw ValidationError("profile CSV needs at least 4 rows");
    std::size_t k = static_cast<std::size_t>(std::lower_bound(ts.begin(), ts.end(), t) - ts.begin());
    std::size_t s = k < 2 ? 0 : std::min(k - 2, n - 4);
    cplx out = 0.0;
    for (std::size_t i = s; i < s + 4; ++i) {
        double basis = 1.0;
        for (std::size_t j = s; j < s + 4; ++j)
            if (j != i)
                basis *= (t - ts[j]) / (ts[i] - ts[j]);
        out += basis * vs[i];
    }
    return out;
}

} // namespace

std::string format_real(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_scalar(double x)
{
    std::string s = format_real(x);
    if (std::isfinite(x) && s.find_first_of(".e") == std::string::npos)
        s += ".0";
    return s;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw ValidationError("expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("'" + path + "': " + e.what());
    }
}

void write_json(const std::string& path, const json& doc)
{
    const std::string text = doc.dump(2) + "\n";
    if (path == "-")
        std::cout << text;
    else
        write_text(path, text);
}

std::string sidecar_path(const std::string& csv_path) { return csv_path + ".config.json"; }

void write_samples_csv(const std::string& path, const TypePair& pair, const std::vector<double>& ts,
                       const std::vector<cplx>& values, const json& config)
{
    std::string text = "t,re,im\n";
    for (std::size_t k = 0; k < ts.size(); ++k)
        text += format_real(ts[k]) + "," + format_real(values[k].real()) + "," + format_real(values[k].imag()) + "\n";
    if (path == "-") {
        std::cout << text;
        return;
    }
    write_text(path, text);
    write_json(sidecar_path(path), {{"l", pair.l}, {"n", pair.n}, {"config", config}});
}

void write_profile_csv(const std::string& path, const RadialProfile& f, const json& config)
{
    write_samples_csv(path, f.pair(), f.nodes(), f.values(), config);
    if (path == "-")
        return;
    json side = {{"l", f.pair().l}, {"n", f.pair().n}, {"rule", rule_json(f.rule())}};
    if (f.support().compact)
        side["support"] = {f.support().lo, f.support().hi};
    side["config"] = config;
    write_json(sidecar_path(path), side);
}

RadialProfile read_profile_csv(const std::string& path, std::optional<TypePair> pair, int nodes_per_panel)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot read '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line.substr(0, 7) != "t,re,im")
        throw ValidationError("'" + path + "': expected header t,re,im");
    std::vector<double> ts;
    std::vector<cplx> vs;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r")
            continue;
        const auto cells = split(line, ',');
        if (cells.size() != 3)
            throw ValidationError(path + ":" + std::to_string(row) + ": expected 3 columns");
        const std::string where = path + ":" + std::to_string(row);
        const double t = parse_number(cells[0], where);
        if (!ts.empty() && !(t > ts.back()))
            throw ValidationError(where + ": t must be strictly increasing");
        ts.push_back(t);
        vs.emplace_back(parse_number(cells[1], where), parse_number(cells[2], where));
    }
    if (ts.empty())
        throw ValidationError("'" + path + "' has no rows");

    json side;
    std::ifstream probe(sidecar_path(path));
    if (probe)
        side = read_json(sidecar_path(path));
    const TypePair type = pair ? *pair
                               : side.contains("l") ? TypePair(side["l"].get<int>(), side["n"].get<int>())
                                                    : TypePair(0, 0);
    Support support;
    if (side.contains("support"))
        support = {true, side["support"][0].get<double>(), side["support"][1].get<double>()};

    if (side.contains("rule")) {
        const RadialRule rule = rule_from_json(side["rule"]);
        bool match = rule.size() == ts.size();
        for (std::size_t k = 0; match && k < ts.size(); ++k)
            match = std::abs(rule.nodes()[k] - ts[k]) <= 1e-12 * (1.0 + ts[k]);
        if (match)
            return RadialProfile(type, rule, std::move(vs), support);
    }
    const double lo = ts.front() < 0.05 ? 0.0 : ts.front();
    const RadialRule rule = RadialRule::uniform(lo, ts.back(), nodes_per_panel, 1.0);
    std::vector<cplx> values(rule.size());
    for (std::size_t k = 0; k < rule.size(); ++k)
        values[k] = cubic(ts, vs, rule.nodes()[k]);
    return RadialProfile(type, rule, std::move(values), support);
}

json profile_json(const RadialProfile& f)
{
    json vals = json::array();
    for (const cplx& v : f.values())
        vals.push_back(complex_json(v));
    return vals;
}

json spectral_json(const SpectralData& s)
{
    json hat = json::array();
    for (const cplx& v : s.hat_H)
        hat.push_back(complex_json(v));
    json disc = json::object();
    for (const auto& [m, v] : s.hat_B)
        disc[std::to_string(m)] = complex_json(v);
    return {{"l", s.pair.l},
            {"n", s.pair.n},
            {"lambda", s.grid.samples()},
            {"hat_H", hat},
            {"discrete", disc},
            {"tail_fraction", s.tail_fraction},
            {"truncated", s.truncated}};
}

SpectralData spectral_from_json(const json& j)
{
    try {
        SpectralData s;
        s.pair = TypePair(j.at("l").get<int>(), j.at("n").get<int>());
        const auto lambda = j.at("lambda").get<std::vector<double>>();
        if (lambda.size() < 3 || lambda.size() % 2 == 0)
            throw ValidationError("spectral data: lambda must have an odd number (>= 3) of samples");
        s.grid = SpectralGrid(lambda.back(), static_cast<int>(lambda.size()));
        for (std::size_t k = 0; k < lambda.size(); ++k)
            if (std::abs(lambda[k] - s.grid.samples()[k]) > 1e-9 * (1.0 + std::abs(lambda[k])))
                throw ValidationError("spectral data: lambda must be a symmetric uniform grid");
        for (const auto& v : j.at("hat_H"))
            s.hat_H.push_back(complex_from_json(v));
        if (s.hat_H.size() != lambda.size())
            throw ValidationError("spectral data: hat_H and lambda differ in length");
        if (j.contains("discrete"))
            for (const auto& [key, v] : j["discrete"].items())
                s.hat_B[std::stoi(key)] = complex_from_json(v);
        s.tail_fraction = j.value("tail_fraction", 0.0);
        s.truncated = j.value("truncated", false);
        return s;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("spectral data: ") + e.what());
    }
}

json state_json(const CauchyState& st)
{
    json snaps = json::array();
    for (const auto& s : st.snapshots)
        snaps.push_back(profile_json(s));
    return {{"l", st.pair.l},
            {"n", st.pair.n},
            {"t_nodes", st.rule.nodes()},
            {"times", st.times},
            {"snapshots", snaps},
            {"residuals", st.residuals},
            {"increments", st.increments},
            {"iterations", st.iterations},
            {"converged", st.converged}};
}

} // namespace sl2h::io
