#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "io.hpp"
#include "sl2h/errors.hpp"
#include "sl2h/group.hpp"
#include "sl2h/inequality.hpp"
#include "sl2h/multiplier.hpp"
#include "sl2h/pde.hpp"
#include "sl2h/spherical.hpp"
#include "sl2h/transform.hpp"

namespace sl2h::cli {

namespace {

using io::json;

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(item);
    return out;
}

double to_double(const std::string& s, const std::string& what)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw ValidationError(what + ": not a number '" + s + "'");
    return v;
}

std::vector<double> parse_list(const std::string& s, const std::string& what)
{
    std::vector<double> out;
    for (const auto& item : split(s, ','))
        out.push_back(to_double(item, what));
    return out;
}

// "start:stop:count", count points including both ends.
std::vector<double> parse_t_grid(const std::string& s)
{
    const auto parts = split(s, ':');
    if (parts.size() != 3)
        throw ValidationError("--t-grid expects start:stop:count");
    const double a = to_double(parts[0], "--t-grid");
    const double b = to_double(parts[1], "--t-grid");
    const double c = to_double(parts[2], "--t-grid");
    if (!(c >= 1.0) || c != std::floor(c) || !(b >= a))
        throw ValidationError("--t-grid: need stop >= start and an integer count >= 1");
    const int count = static_cast<int>(c);
    std::vector<double> ts;
    for (int k = 0; k < count; ++k)
        ts.push_back(count == 1 ? a : a + (b - a) * k / (count - 1));
    return ts;
}

cplx parse_lambda(const std::string& s)
{
    const auto parts = parse_list(s, "--lambda");
    if (parts.empty() || parts.size() > 2)
        throw ValidationError("--lambda expects re or re,im");
    return {parts[0], parts.size() == 2 ? parts[1] : 0.0};
}

// Values set on the command line or by --config, typed for the echo.
json typed(const std::string& v)
{
    if (v == "true")
        return true;
    if (v == "false")
        return false;
    std::size_t used = 0;
    try {
        const long long i = std::stoll(v, &used);
        if (used == v.size())
            return i;
        const double d = std::stod(v, &used);
        if (used == v.size())
            return d;
    } catch (const std::exception&) {
    }
    return v;
}

json resolved_config(const CLI::App* sub)
{
    json cfg = {{"subcommand", sub->get_name()}};
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->get_lnames().empty())
            continue;
        const std::string key = opt->get_lnames().front();
        if (key == "help" || key == "config")
            continue;
        const bool flag = opt->get_expected_max() == 0;
        if (flag)
            cfg[key] = opt->count() > 0;
        else if (opt->count() > 0)
            cfg[key] = opt->results().size() == 1 ? typed(opt->results().front()) : json(opt->results());
        else if (!opt->get_default_str().empty())
            cfg[key] = typed(opt->get_default_str());
    }
    cfg["threads"] = thread_count();
    return cfg;
}

// Appends "--key value" for every config entry whose flag is absent from argv.
std::vector<std::string> merge_config(std::vector<std::string> args)
{
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty())
        return args;
    const json cfg = io::read_json(path);
    if (!cfg.is_object())
        throw ValidationError("--config: expected a JSON object");
    auto present = [&](const std::string& flag) {
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0)
                return true;
        return false;
    };
    if (cfg.contains("subcommand")) {
        const std::string sub = cfg["subcommand"].get<std::string>();
        if (args.size() < 2 || args[1].rfind("--", 0) == 0)
            args.insert(args.begin() + 1, sub);
        else if (args[1] != sub)
            throw ValidationError("--config is for '" + sub + "', not '" + args[1] + "'");
    }
    for (const auto& [key, value] : cfg.items()) {
        if (key == "subcommand" || key == "threads" || key == "config")
            continue;
        const std::string flag = "--" + key;
        if (present(flag))
            continue;
        if (value.is_boolean()) {
            if (value.get<bool>())
                args.push_back(flag);
            continue;
        }
        std::string text;
        if (value.is_string())
            text = value.get<std::string>();
        else if (value.is_number_integer())
            text = std::to_string(value.get<long long>());
        else if (value.is_number())
            text = io::format_real(value.get<double>());
        else
            throw ValidationError("--config: unsupported value for '" + key + "'");
        args.push_back(flag);
        args.push_back(text);
    }
    return args;
}

struct Args {
    int l = 0;
    int n = 0;
    std::string input;
    std::string output = "-";
    std::string eta_path;
    double lambda_max = 60.0;
    int lambda_steps = 1201;
    bool no_adaptive = false;
    double tail_tol = 1e-10;
    int max_extensions = 3;
    int refine = 1;
    // decompose
    std::string matrix;
    // density, spherical
    std::string tau = "plus";
    std::string lambda = "0";
    std::string t_grid;
    double t_max = 8.0;
    int nodes_per_panel = 64;
    // multiplier, bound
    std::string symbol;
    std::string function;
    std::string theorem;
    double t = 0.5;
    double a = 1.0;
    double p = 2.0;
    double q = 2.0;
    // inequality-check
    std::string which = "hy";
    double b = 0.0;
    std::string psi = "rational:1";
    std::string family = "default";
    int count = 20;
    int family_nodes = 128;
    std::uint64_t seed = 42;
    // solvers
    double T = 0.25;
    std::string mode = "biinvariant";
    std::string u1;
    std::string time_psi = "const:1";
    double tol = 1e-8;
    int max_iter = 100;
    int steps_per_unit = 128;
    double solver_t_max = 8.0;
    int solver_nodes = 32;
    // existence-time
    std::string problem = "heat";
    double c = std::sqrt(2.0);
    std::string norms;
    double gamma = 2.0;
    double gamma0 = 0.25;
    // calibrate-eta
    double eta_tol = 1e-6;
};

class Runner {
public:
    Runner(std::ostream& out) : out_(out) {}

    Args a;
    json config;
    CLI::App* sub = nullptr;

    TypePair pair() const { return {a.l, a.n}; }

    bool pair_given(const CLI::App* app) const
    {
        for (const char* f : {"--l", "--n"})
            if (app->get_option_no_throw(f) && app->get_option(f)->count() > 0)
                return true;
        return false;
    }

    TransformOptions transform_options() const
    {
        TransformOptions o;
        o.grid = SpectralGrid(a.lambda_max, a.lambda_steps);
        o.adaptive = !a.no_adaptive;
        o.tail_tolerance = a.tail_tol;
        o.max_extensions = a.max_extensions;
        o.refine = a.refine;
        if (!(a.tail_tol > 0.0) || a.max_extensions < 0 || a.refine < 1)
            throw ValidationError("transform options: need tail-tol > 0, max-extensions >= 0, refine >= 1");
        return o;
    }

    EtaTable eta_for(const TypePair& p) const
    {
        EtaTable table = a.eta_path.empty() ? EtaTable() : EtaTable::load(a.eta_path);
        for (int m : gamma_set(p).members)
            if (!table.find(p.l, p.n, m)) {
                calibrate_all(p, table);
                break;
            }
        return table;
    }

    RadialProfile input_profile(const std::string& path, const CLI::App* app) const
    {
        return io::read_profile_csv(path, pair_given(app) ? std::optional<TypePair>(pair()) : std::nullopt);
    }

    void emit(json doc)
    {
        doc["config"] = config;
        if (a.output == "-") {
            out_ << doc.dump(2) << "\n";
            return;
        }
        io::write_json(a.output, doc);
    }

    int decompose()
    {
        const auto v = parse_list(a.matrix, "--matrix");
        if (v.size() != 4)
            throw ValidationError("--matrix expects a,b,c,d");
        const GroupElement x = GroupElement::checked(v[0], v[1], v[2], v[3]);
        const IwasawaCoords iw = iwasawa(x);
        const CartanCoords ca = cartan(x);
        emit({{"iwasawa", {{"theta", iw.theta}, {"t", iw.t}, {"v", iw.v}}},
              {"cartan", {{"theta1", ca.theta1}, {"t", ca.t}, {"theta2", ca.theta2}}},
              {"iwasawa_error", max_entry_diff(compose(iw), x)},
              {"cartan_error", max_entry_diff(compose(ca), x)}});
        return 0;
    }

    int density()
    {
        out_ << io::format_scalar(plancherel_density(parse_parity(a.tau), to_double(a.lambda, "--lambda"))) << "\n";
        return 0;
    }

    int gamma()
    {
        const auto g = gamma_set(a.l, a.n);
        std::string line;
        for (int m : g.members)
            line += (line.empty() ? "" : " ") + std::to_string(m);
        out_ << line << "\n";
        return 0;
    }

    int spherical()
    {
        if (a.t_grid.empty())
            throw ValidationError("spherical: --t-grid is required");
        const SphericalParams params{pair(), parse_lambda(a.lambda)};
        const auto ts = parse_t_grid(a.t_grid);
        std::vector<cplx> vals(ts.size());
        parallel_for(ts.size(), [&](std::size_t k) { vals[k] = phi_radial(params, ts[k], a.refine); });
        if (a.output == "-") {
            out_ << "t,re,im\n";
            for (std::size_t k = 0; k < ts.size(); ++k)
                out_ << io::format_real(ts[k]) << "," << io::format_real(vals[k].real()) << ","
                     << io::format_real(vals[k].imag()) << "\n";
        } else {
            io::write_samples_csv(a.output, pair(), ts, vals, config);
        }
        return 0;
    }

    int transform()
    {
        const RadialProfile f = input_profile(a.input, sub);
        const SpectralData s = forward(f, eta_for(f.pair()), transform_options());
        emit(io::spectral_json(s));
        return 0;
    }

    int invert()
    {
        const SpectralData s = io::spectral_from_json(io::read_json(a.input));
        const EtaTable eta = eta_for(s.pair);
        const TypePair out_pair = s.pair.swapped();
        if (!a.t_grid.empty()) {
            const auto ts = parse_t_grid(a.t_grid);
            std::vector<cplx> vals(ts.size());
            parallel_for(ts.size(), [&](std::size_t k) { vals[k] = inverse(s, ts[k], eta, a.refine); });
            io::write_samples_csv(a.output, out_pair, ts, vals, config);
            return 0;
        }
        if (a.nodes_per_panel < 2)
            throw ValidationError("--nodes-per-panel must be >= 2");
        const RadialRule rule = RadialRule::uniform(0.0, a.t_max, a.nodes_per_panel, 1.0);
        io::write_profile_csv(a.output, inverse(s, rule, eta, a.refine), config);
        return 0;
    }

    int plancherel()
    {
        const RadialProfile f = input_profile(a.input, sub);
        const auto r = plancherel_check(f, eta_for(f.pair()), transform_options());
        emit({{"lhs", r.lhs}, {"rhs", r.rhs}, {"rel_err", r.rel_err}});
        return 0;
    }

    std::string symbol_spec(const std::string& s) const
    {
        if (s == "heat")
            return "heat:" + io::format_real(a.t);
        if (s == "sobolev" || s == "rational")
            return s + ":" + io::format_real(a.a);
        return s;
    }

    int multiplier()
    {
        if (a.symbol.empty())
            throw ValidationError("multiplier: --symbol is required");
        const RadialProfile f = input_profile(a.input, sub);
        const MultiplierSymbol m = parse_symbol(symbol_spec(a.symbol));
        const RadialProfile g = apply_fourier_multiplier(m, f, eta_for(f.pair()), transform_options());
        io::write_profile_csv(a.output, g, config);
        return 0;
    }

    int bound()
    {
        BoundResult r;
        if (a.theorem == "lp-lq") {
            const std::string spec = symbol_spec(a.symbol.empty() ? "heat" : a.symbol);
            BoundOptions o;
            o.grid = SpectralGrid(a.lambda_max, a.lambda_steps);
            r = multiplier_norm_bound(parse_symbol(spec), a.p, a.q, pair(), o);
        } else if (a.theorem == "spectral") {
            const std::string spec = symbol_spec(a.function.empty() ? "heat" : a.function);
            r = spectral_norm_bound(parse_spectral_function(spec), a.p, a.q, pair());
        } else if (a.theorem == "heat") {
            r = heat_bound(a.t, a.p, a.q, pair());
        } else {
            throw ValidationError("--theorem must be lp-lq, spectral or heat");
        }
        json terms = json::object();
        for (const auto& [k, v] : r.terms)
            terms[k] = v;
        emit({{"bound", r.bound}, {"finite", r.finite}, {"terms", terms}});
        return 0;
    }

    int inequality()
    {
        if (a.family != "default")
            throw ValidationError("--family: only 'default' is available");
        if (a.count < 1)
            throw ValidationError("--count must be >= 1");
        InequalityParams params;
        params.kind = parse_inequality(a.which);
        params.p = a.p;
        params.b = a.b > 0.0 ? a.b : a.p;
        params.psi = parse_psi(a.psi);
        TestFamily fam = default_family(pair(), a.count, a.seed);
        if (a.family_nodes < 2)
            throw ValidationError("--nodes-per-panel must be >= 2");
        fam.nodes_per_panel = a.family_nodes;
        const RatioReport r = run_family_check(fam, params, eta_for(pair()), transform_options());
        json members = json::array();
        for (std::size_t i = 0; i < r.members.size(); ++i)
            members.push_back({{"center", fam.members[i].center},
                               {"width", fam.members[i].width},
                               {"omega", fam.members[i].omega},
                               {"lhs", r.members[i].lhs},
                               {"rhs", r.members[i].rhs},
                               {"ratio", r.members[i].ratio}});
        emit({{"which", to_string(params.kind)},
              {"members", members},
              {"max_ratio", r.max_ratio},
              {"refined_max_ratio", r.refined_max_ratio},
              {"refinement_delta", r.refinement_delta}});
        return 0;
    }

    MultiplierSymbol solver_symbol() const
    {
        if (a.symbol.empty())
            throw ValidationError("--symbol is required");
        if (std::filesystem::exists(a.symbol)) {
            const json j = io::read_json(a.symbol);
            if (!j.contains("symbol") || !j["symbol"].is_string())
                throw ValidationError("symbol file needs a string field \"symbol\"");
            return parse_symbol(symbol_spec(j["symbol"].get<std::string>()));
        }
        return parse_symbol(symbol_spec(a.symbol));
    }

    PicardOptions picard_options() const
    {
        PicardOptions o;
        o.tolerance = a.tol;
        o.max_iterations = a.max_iter;
        o.steps_per_unit = a.steps_per_unit;
        o.t_max = a.solver_t_max;
        o.nodes_per_panel = a.solver_nodes;
        o.transform = transform_options();
        return o;
    }

    int finish(const CauchyState& st)
    {
        json doc = io::state_json(st);
        doc["config"] = config;
        io::write_json(a.output, doc);
        return st.converged ? 0 : 3;
    }

    int heat_solve()
    {
        const RadialProfile u0 = input_profile(a.input, sub);
        const auto st = nonlinear_heat_solve(u0, solver_symbol(), a.p, a.T, parse_mode(a.mode),
                                             eta_for(u0.pair()), picard_options());
        return finish(st);
    }

    int wave_solve()
    {
        const RadialProfile u0 = input_profile(a.input, sub);
        const RadialProfile u1 = a.u1.empty() ? u0.with_values(std::vector<cplx>(u0.size(), 0.0))
                                              : input_profile(a.u1, sub);
        const auto st = nonlinear_wave_solve(u0, u1, parse_time_coefficient(a.time_psi), solver_symbol(), a.p, a.T,
                                             parse_mode(a.mode), eta_for(u0.pair()), picard_options());
        return finish(st);
    }

    int existence_time()
    {
        const auto norms = a.norms.empty() ? std::vector<double>{} : parse_list(a.norms, "--norms");
        if (a.problem == "heat") {
            if (norms.size() != 1)
                throw ValidationError("heat: --norms expects ||u0||");
            out_ << io::format_scalar(heat_existence_time(norms[0], a.c, a.p)) << "\n";
        } else if (a.problem == "wave") {
            if (norms.size() != 3)
                throw ValidationError("wave: --norms expects ||u0||,||u1||,||Psi||");
            out_ << io::format_scalar(wave_existence_time(norms[0], norms[1], norms[2], a.c, a.p)) << "\n";
        } else if (a.problem == "global") {
            if (norms.size() != 1)
                throw ValidationError("global: --norms expects ||u0||");
            out_ << (global_smallness_check(a.gamma, a.gamma0, a.c, a.p, norms[0], a.T) ? "true" : "false") << "\n";
        } else {
            throw ValidationError("--problem must be heat, wave or global");
        }
        return 0;
    }

    int calibrate()
    {
        EtaTable table;
        if (a.output != "-" && std::filesystem::exists(a.output))
            table = EtaTable::load(a.output);
        calibrate_all(pair(), table, a.eta_tol);
        json doc = json::parse(table.to_json());
        doc["config"] = config;
        io::write_json(a.output, doc);
        return 0;
    }

private:
    std::ostream& out_;
};

void add_pair(CLI::App* s, Args& a)
{
    s->add_option("--l", a.l, "Left type index")->capture_default_str();
    s->add_option("--n", a.n, "Right type index")->capture_default_str();
}

void add_grid(CLI::App* s, Args& a)
{
    s->add_option("--lambda-max", a.lambda_max, "Spectral grid half-width")->capture_default_str();
    s->add_option("--lambda-steps", a.lambda_steps, "Spectral grid samples")->capture_default_str();
    s->add_flag("--no-adaptive", a.no_adaptive, "Keep the grid fixed");
    s->add_option("--tail-tol", a.tail_tol, "Spectral tail tolerance")->capture_default_str();
    s->add_option("--max-extensions", a.max_extensions, "Grid doublings allowed")->capture_default_str();
    s->add_option("--refine", a.refine, "K-quadrature refinement factor")->capture_default_str();
    s->add_option("--eta", a.eta_path, "Eta table JSON (calibrated on the fly if absent)");
}

void add_out(CLI::App* s, Args& a) { s->add_option("--out", a.output, "Output path, - for stdout")->capture_default_str(); }

void add_solver(CLI::App* s, Args& a)
{
    s->add_option("--input", a.input, "u0 profile CSV")->required();
    s->add_option("--symbol", a.symbol, "B: symbol spec or JSON file {\"symbol\": ...}")->required();
    s->add_option("--p", a.p, "Exponent of |Bu|^p")->capture_default_str();
    s->add_option("--T", a.T, "Final time")->capture_default_str();
    s->add_option("--t", a.t, "Parameter for --symbol heat")->capture_default_str();
    s->add_option("--a", a.a, "Parameter for --symbol sobolev|rational")->capture_default_str();
    s->add_option("--mode", a.mode, "biinvariant | paper-literal")->capture_default_str();
    s->add_option("--tol", a.tol, "Picard tolerance (sup over time of the L2 change)")->capture_default_str();
    s->add_option("--max-iter", a.max_iter, "Picard iteration cap")->capture_default_str();
    s->add_option("--steps-per-unit", a.steps_per_unit, "Time nodes per unit time")->capture_default_str();
    s->add_option("--t-max", a.solver_t_max, "Spatial truncation")->capture_default_str();
    s->add_option("--nodes-per-panel", a.solver_nodes, "Spatial Gauss nodes per unit panel")->capture_default_str();
    add_pair(s, a);
    add_grid(s, a);
    add_out(s, a);
}

} // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Runner r(out);
    Args& a = r.a;
    CLI::App app{"Harmonic analysis on SL(2,R): spherical functions, transforms, multipliers, Cauchy problems", "sl2h"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON file of flag values (flags on the command line win)");

    std::map<std::string, int (Runner::*)()> handlers;
    auto add = [&](const std::string& name, const std::string& help, int (Runner::*fn)()) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("--config", config_path, "JSON file of flag values");
        handlers[name] = fn;
        return s;
    };

    auto* s = add("decompose", "Iwasawa and Cartan coordinates of a matrix", &Runner::decompose);
    s->add_option("--matrix", a.matrix, "a,b,c,d")->required();
    add_out(s, a);

    s = add("density", "Plancherel density", &Runner::density);
    s->add_option("--tau", a.tau, "plus | minus")->capture_default_str();
    s->add_option("--lambda", a.lambda, "Real spectral parameter")->capture_default_str();

    s = add("gamma", "Discrete-series index set", &Runner::gamma);
    add_pair(s, a);

    s = add("spherical", "phi^{l,n}_lambda(a_t) on a t grid", &Runner::spherical);
    add_pair(s, a);
    s->add_option("--lambda", a.lambda, "re[,im]")->capture_default_str();
    s->add_option("--t-grid", a.t_grid, "start:stop:count")->required();
    s->add_option("--refine", a.refine, "K-quadrature refinement factor")->capture_default_str();
    add_out(s, a);

    s = add("transform", "Spherical transform of a profile", &Runner::transform);
    s->add_option("--input", a.input, "Profile CSV")->required();
    add_pair(s, a);
    add_grid(s, a);
    add_out(s, a);

    s = add("invert", "Inverse transform of spectral data", &Runner::invert);
    s->add_option("--input", a.input, "Spectral JSON")->required();
    s->add_option("--t-grid", a.t_grid, "start:stop:count; omit for a Gauss rule on [0, t-max]");
    s->add_option("--t-max", a.t_max, "Rule end")->capture_default_str();
    s->add_option("--nodes-per-panel", a.nodes_per_panel, "Gauss nodes per unit panel")->capture_default_str();
    s->add_option("--refine", a.refine, "K-quadrature refinement factor")->capture_default_str();
    s->add_option("--eta", a.eta_path, "Eta table JSON");
    add_out(s, a);

    s = add("plancherel-check", "Compare ||f||_2^2 with the spectral side", &Runner::plancherel);
    s->add_option("--input", a.input, "Profile CSV")->required();
    add_pair(s, a);
    add_grid(s, a);
    add_out(s, a);

    s = add("multiplier", "Apply a Fourier multiplier to a profile", &Runner::multiplier);
    s->add_option("--symbol", a.symbol, "heat | sobolev | rational | casimir | spec such as heat:0.5")->required();
    s->add_option("--t", a.t, "Heat time")->capture_default_str();
    s->add_option("--a", a.a, "Sobolev or rational exponent")->capture_default_str();
    s->add_option("--input", a.input, "Profile CSV")->required();
    add_pair(s, a);
    add_grid(s, a);
    add_out(s, a);

    s = add("bound", "L^p -> L^q operator norm bounds", &Runner::bound);
    s->add_option("--theorem", a.theorem, "lp-lq | spectral | heat")->required();
    s->add_option("--p", a.p)->capture_default_str();
    s->add_option("--q", a.q)->capture_default_str();
    s->add_option("--t", a.t, "Heat time")->capture_default_str();
    s->add_option("--a", a.a, "Sobolev or rational exponent")->capture_default_str();
    s->add_option("--symbol", a.symbol, "Symbol for lp-lq (default heat)");
    s->add_option("--function", a.function, "Spectral function for spectral (default heat)");
    s->add_option("--lambda-max", a.lambda_max, "Grid half-width for the weak norm")->capture_default_str();
    s->add_option("--lambda-steps", a.lambda_steps, "Grid samples for the weak norm")->capture_default_str();
    add_pair(s, a);
    add_out(s, a);

    s = add("inequality-check", "Hausdorff-Young, Paley and interpolation ratios on a test family",
            &Runner::inequality);
    s->add_option("--which", a.which, "hy | dual-hy | paley | hyp")->capture_default_str();
    s->add_option("--p", a.p)->capture_default_str();
    s->add_option("--b", a.b, "HYP exponent (default p)");
    s->add_option("--psi", a.psi, "Weight for paley and hyp")->capture_default_str();
    s->add_option("--family", a.family)->capture_default_str();
    s->add_option("--count", a.count, "Family size")->capture_default_str();
    s->add_option("--seed", a.seed)->capture_default_str();
    s->add_option("--nodes-per-panel", a.family_nodes, "Family rule resolution")->capture_default_str();
    add_pair(s, a);
    add_grid(s, a);
    add_out(s, a);

    s = add("heat-solve", "Picard solve of u = u0 + int |Bu|^p", &Runner::heat_solve);
    add_solver(s, a);

    s = add("wave-solve", "Picard solve of u = u0 + t u1 + int (t - tau) Psi |Bu|^p", &Runner::wave_solve);
    s->add_option("--u1", a.u1, "u1 profile CSV (default 0)");
    s->add_option("--psi", a.time_psi, "const:c | decay:g | exp:a")->capture_default_str();
    add_solver(s, a);

    s = add("existence-time", "Local existence times and the global smallness test", &Runner::existence_time);
    s->add_option("--problem", a.problem, "heat | wave | global")->capture_default_str();
    s->add_option("--c", a.c)->capture_default_str();
    s->add_option("--p", a.p)->capture_default_str();
    s->add_option("--norms", a.norms, "heat, global: ||u0||; wave: ||u0||,||u1||,||Psi||")->required();
    s->add_option("--gamma", a.gamma, "global: decay exponent of Psi")->capture_default_str();
    s->add_option("--gamma0", a.gamma0, "global: gamma_0")->capture_default_str();
    s->add_option("--T", a.T, "global: time")->capture_default_str();

    s = add("calibrate-eta", "Calibrate discrete-series constants", &Runner::calibrate);
    add_pair(s, a);
    s->add_option("--tol", a.eta_tol, "Cross-profile agreement")->capture_default_str();
    add_out(s, a);

    try {
        std::vector<std::string> args(argv, argv + argc);
        args = merge_config(std::move(args));
        std::vector<const char*> ptrs;
        for (const auto& x : args)
            ptrs.push_back(x.c_str());
        try {
            app.parse(static_cast<int>(ptrs.size()), ptrs.data());
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) {
                out << app.help();
                if (const auto subs = app.get_subcommands(); !subs.empty())
                    out << subs.front()->help();
                return 0;
            }
            err << "error: " << e.what() << "\n" << app.help();
            return 2;
        }
        r.sub = app.get_subcommands().front();
        r.config = resolved_config(r.sub);
        return (r.*handlers.at(r.sub->get_name()))();
    } catch (const ConvergenceError& e) {
        err << "convergence failure: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace sl2h::cli
