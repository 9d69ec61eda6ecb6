#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>

#include "fracharm/cli.hpp"
#include "fracharm/commutators.hpp"
#include "fracharm/error.hpp"
#include "fracharm/extension.hpp"
#include "fracharm/multiplier_ops.hpp"
#include "fracharm/norms.hpp"
#include "fracharm/poisson_symbol.hpp"

namespace fracharm::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// JSON has no infinity; exponents may be infinite.
json number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}

json numbers(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(number(x));
    return a;
}

std::string fmt(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

std::string short_fmt(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%g", v);
    return b;
}

json params_json(const EstimateDescriptor& d) {
    const auto& P = d.params;
    json j;
    switch (d.id) {
        case EstimateId::crw_bmo:
            j = {{"p", number(P.p)}, {"axis", P.axis}};
            break;
        case EstimateId::crw_lorentz:
            j = {{"sigma", number(P.sigma)}, {"p", number(P.p)},   {"p1", number(P.p1)},
                 {"q1", number(P.q1)},       {"p2", number(P.p2)}, {"q2", number(P.q2)},
                 {"axis", P.axis}};
            break;
        case EstimateId::fl_comm_lorentz:
            j = {{"s", number(P.s)}, {"sigma", number(P.sigma)}, {"p", number(P.p)},
                 {"q1", number(P.q1)}, {"q2", number(P.q2)}};
            break;
        case EstimateId::chanillo:
            j = {{"s", number(P.s)}, {"p", number(P.p)}};
            break;
        case EstimateId::leibniz_lorentz:
            j = {{"s", number(P.s)},   {"sigma", number(P.sigma)}, {"p1", number(P.p1)},
                 {"q1", number(P.q1)}, {"p2", number(P.p2)},       {"q2", number(P.q2)}};
            break;
        case EstimateId::leibniz_bmo:
            j = {{"s", number(P.s)}, {"p", number(P.p)}};
            break;
        case EstimateId::double_comm_1d:
            j = {{"s1", number(P.s1)}, {"s2", number(P.s2)}, {"p", number(P.p)}, {"q", number(P.q)},
                 {"component", P.component}};
            break;
        case EstimateId::jacobian_bmo:
            j = json::object();
            break;
        case EstimateId::jacobian_sobolev:
            j = {{"sob_s", numbers({P.sob_s.begin(), P.sob_s.end()})},
                 {"sob_p", numbers({P.sob_p.begin(), P.sob_p.end()})}};
            break;
        case EstimateId::hardy_duality:
            j = {{"s", number(P.s)}, {"p", number(P.p)}, {"q", number(P.q)}};
            break;
    }
    return j;
}

json sample_json(const SampleRecord& r, const char* split) {
    return {{"index", r.index},
            {"split", split},
            {"description", r.description},
            {"lhs", number(r.lhs)},
            {"rhs", number(r.rhs)},
            {"ratio", number(r.ratio)},
            {"dilated_ratio", numbers(r.dilated_ratio)},
            {"dilation_change", number(r.dilation_change)},
            {"projected_mass", numbers(r.projected_mass)}};
}

json report_json(const RatioReport& r, const EstimateDescriptor& d, const FamilyOptions& fam,
                 const VerifyOptions& vo) {
    json t;
    if (r.t_truncation.size() == 2) {
        t = {{"t_min", r.t_truncation[0]},
             {"t_max", r.t_truncation[1]},
             {"M", jacobian_levels(r.grid).size()},
             {"used", true}};
    } else {
        t = {{"t_min", nullptr}, {"t_max", nullptr}, {"M", nullptr}, {"used", false}};
    }
    json samples = json::array(), zero = json::array();
    for (const auto& s : r.samples) samples.push_back(sample_json(s, s.index % 2 == 0 ? "fit" : "validate"));
    for (const auto& s : r.zero_rhs) zero.push_back(sample_json(s, "zero_rhs"));
    return {{"estimate_id", r.estimate_id},
            {"grid", {{"n", r.grid.n}, {"N", r.grid.N}, {"L", r.grid.L}}},
            {"t_truncation", t},
            {"params", params_json(d)},
            {"family",
             {{"seed", fam.seed},
              {"bumps", fam.bumps},
              {"gaussians", fam.gaussians},
              {"random", fam.random},
              {"constants", numbers(fam.constants)},
              {"shared_center", fam.shared_center}}},
            {"lambdas", numbers(r.lambdas)},
            {"slack", number(r.slack)},
            {"dilation_tolerance", number(vo.dilation_tolerance)},
            {"zero_lhs_tolerance", number(vo.zero_lhs_tolerance)},
            {"max_ratio", number(r.max_ratio)},
            {"fitted_constant", number(r.fitted_constant)},
            {"validation_max_ratio", number(r.validation_max_ratio)},
            {"dilation_stability", number(r.dilation_stability)},
            {"zero_rhs_max_lhs", number(r.zero_rhs_max_lhs)},
            {"validated", r.validated},
            {"dilation_ok", r.dilation_ok},
            {"zero_rhs_ok", r.zero_rhs_ok},
            {"pass", r.pass},
            {"samples", samples},
            {"zero_rhs", zero}};
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

void write_csv(const fs::path& path, const RatioReport& r) {
    std::ofstream o(path);
    o << "index,split,description,lhs,rhs,ratio";
    for (double l : r.lambdas) o << ",ratio_lambda_" << short_fmt(l);
    o << ",dilation_change,projected_mass\n";
    auto row = [&](const SampleRecord& s, const char* split) {
        o << s.index << ',' << split << ',' << csv_quote(s.description) << ',' << fmt(s.lhs) << ','
          << fmt(s.rhs) << ',' << fmt(s.ratio);
        for (std::size_t k = 0; k < r.lambdas.size(); ++k)
            o << ',' << (k < s.dilated_ratio.size() ? fmt(s.dilated_ratio[k]) : "");
        o << ',' << fmt(s.dilation_change) << ',';
        for (std::size_t k = 0; k < s.projected_mass.size(); ++k) o << (k ? ";" : "") << fmt(s.projected_mass[k]);
        o << '\n';
    };
    for (const auto& s : r.samples) row(s, s.index % 2 == 0 ? "fit" : "validate");
    for (const auto& s : r.zero_rhs) row(s, "zero_rhs");
}

void write_profile(const fs::path& path, const std::string& header, const std::vector<double>& t,
                   const std::vector<double>& v) {
    std::ofstream o(path);
    o << "# " << header << "\n# t value\n";
    for (std::size_t i = 0; i < t.size(); ++i) o << fmt(t[i]) << ' ' << fmt(v[i]) << '\n';
}

// Decay and boundary diagnostics of the s-extension of a Gaussian of width L/16.
void write_profiles(const RunConfig& cfg, double s, const fs::path& dir) {
    const GridSpec spec = GridSpec::make(cfg.grid.n.value_or(1), cfg.grid.N.value_or(1024), cfg.grid.L.value_or(1.0));
    const double h = spec.L / spec.N;
    const TLevels lv = TLevels::log_spaced(cfg.levels.t_min.value_or(h / 4), cfg.levels.t_max.value_or(2 * spec.L),
                                           cfg.levels.M);
    const auto f = make_function(
        TestFunctionDescriptor::gaussian({spec.L / 2, spec.L / 2}, spec.L / 16), spec);
    const auto F = extend_field(f, s, lv, {true, true});
    const std::string tag = "s" + short_fmt(s);

    const auto d0 = decay_profile(F, 0), d1 = decay_profile(F, 1);
    write_profile(dir / ("decay_k0_" + tag + ".txt"), "sup_x t^n |F(x,t)|, s = " + short_fmt(s), d0.t,
                  d0.sup_scaled);
    write_profile(dir / ("decay_k1_" + tag + ".txt"), "sup_x t^(n+1) |grad F(x,t)|, s = " + short_fmt(s), d1.t,
                  d1.sup_scaled);

    const auto target = boundary_constant_closed_form(s) * frac_laplacian(f, s);
    const double norm = lp_norm(target, 2.0);
    std::vector<double> dev;
    for (std::size_t i = 0; i < lv.size(); ++i) {
        const auto q = -std::pow(lv.t[i], 1 - s) * F.dt[i];
        dev.push_back(lp_norm(q - target, 2.0) / norm);
    }
    write_profile(dir / ("boundary_" + tag + ".txt"),
                  "||-t^(1-s) dF/dt - c(s) (-Delta)^(s/2) f||_2 / ||c(s) (-Delta)^(s/2) f||_2, s = " + short_fmt(s),
                  lv.t, dev);
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log) {
    validate(cfg);
    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);

    VerifyOptions vo = cfg.tolerances;
    vo.dilation_tolerance *= cfg.tolerance_scale;
    vo.zero_lhs_tolerance *= cfg.tolerance_scale;

    bool all = true;
    json summary = json::array();
    std::map<std::string, int> seen;
    for (const auto& e : cfg.estimates) {
        const auto& d = e.descriptor;
        const GridSpec spec = grid_for(d.id, cfg.grid);
        FamilyOptions fam = family_options_for(d);
        fam.seed = cfg.family.seed;
        fam.bumps = cfg.family.bumps;
        fam.gaussians = cfg.family.gaussians;
        fam.random = cfg.family.random;
        fam.constants = cfg.family.constants;

        const auto t0 = std::chrono::steady_clock::now();
        const auto report = verify_estimate(d, make_family(spec, d.arity(), fam), spec, vo);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        std::string stem = report.estimate_id;
        if (const int k = ++seen[stem]; k > 1) stem += "-" + std::to_string(k);
        {
            std::ofstream o(dir / (stem + ".json"));
            o << report_json(report, d, fam, vo).dump(2) << '\n';
        }
        write_csv(dir / (stem + ".csv"), report);
        summary.push_back({{"estimate_id", report.estimate_id},
                           {"report", stem + ".json"},
                           {"fitted_constant", number(report.fitted_constant)},
                           {"validation_max_ratio", number(report.validation_max_ratio)},
                           {"dilation_stability", number(report.dilation_stability)},
                           {"pass", report.pass}});
        all = all && report.pass;

        char line[256];
        std::snprintf(line, sizeof line, "%-18s %-14s C=%-10.4g val=%-10.4g dil=%-7.3f zero=%-9.2e %s (%.1f s)\n",
                      stem.c_str(), describe(spec).c_str(), report.fitted_constant,
                      report.validation_max_ratio, report.dilation_stability, report.zero_rhs_max_lhs,
                      report.pass ? "PASS" : "FAIL", secs);
        log << line << std::flush;
    }
    for (double s : cfg.profiles) write_profiles(cfg, s, dir);
    if (!cfg.estimates.empty()) {
        std::ofstream o(dir / "summary.json");
        o << json{{"pass", all}, {"reports", summary}}.dump(2) << '\n';
    }
    return all ? kPass : kValidationFailure;
}

int symbol_cache(double s, const std::string& dir_arg, std::ostream& out) {
    std::string dir = dir_arg;
    if (dir.empty())
        if (const char* env = std::getenv("FRACHARM_CACHE_DIR")) dir = env;
    if (dir.empty()) throw ConfigError("symbol-cache needs --out <dir> or FRACHARM_CACHE_DIR");
    if (!(s > 0 && s < 2)) throw ConfigError("symbol order s must lie in (0,2)");
    const SymbolTableOptions opt;
    const fs::path path = fs::path(dir) / PoissonSymbol::cache_file_name(s, opt);
    if (fs::exists(path)) {
        const auto table = PoissonSymbol::load(path.string(), s, opt);  // throws on corruption
        out << path.string() << ": present, " << table.rows() << " rows\n";
        return kPass;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto table = s_poisson_symbol(s, opt);
    fs::create_directories(dir);
    table.save(path.string());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << path.string() << ": wrote " << table.rows() << " rows in " << short_fmt(secs) << " s\n";
    return kPass;
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Numerical checks for fractional harmonic-analysis estimates"};
    app.require_subcommand(1);

    Overrides ov;
    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Run the estimates listed in a JSON config");
    run_cmd->add_option("config", config_path, "Config file")->required();
    run_cmd->add_option("--grid-n", ov.n, "Spatial dimension (1 or 2)");
    run_cmd->add_option("--grid-N", ov.N, "Points per axis (power of two)");
    run_cmd->add_option("--period", ov.L, "Period L");
    run_cmd->add_option("--t-min", ov.t_min, "Smallest extension level");
    run_cmd->add_option("--t-max", ov.t_max, "Largest extension level");
    run_cmd->add_option("--t-levels", ov.M, "Number of extension levels");
    run_cmd->add_option("--seed", ov.seed, "Family seed");
    run_cmd->add_option("--out", ov.out, "Output directory");
    run_cmd->add_option("--tolerance-scale", ov.tolerance_scale, "Scales dilation and zero-LHS tolerances");

    OpsCheckOptions ops;
    auto* ops_cmd = app.add_subcommand("ops-check", "Spectral identities and quadrature oracles");
    ops_cmd->add_option("--grid-N", ops.N, "Force every grid to N points per axis");

    double sym_s = 1.0;
    std::string sym_dir;
    auto* sym_cmd = app.add_subcommand("symbol-cache", "Tabulate the Poisson symbol for order s");
    sym_cmd->add_option("s", sym_s, "Order s in (0,2)")->required();
    sym_cmd->add_option("--out", sym_dir, "Cache directory (default FRACHARM_CACHE_DIR)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (*run_cmd) {
            RunConfig cfg = load_config(config_path);
            apply_overrides(cfg, ov);
            try {
                validate(cfg);
            } catch (const ConfigError& e) {
                std::cerr << config_path << ": " << e.what() << '\n';
                return kConfigError;
            }
            return run(cfg, std::cout);
        }
        if (*ops_cmd) {
            if (ops.N) GridSpec::make(1, *ops.N, 1.0);
            return ops_check(ops, std::cout);
        }
        return symbol_cache(sym_s, sym_dir, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << (config_path.empty() ? "" : config_path + ": ") << e.what() << '\n';
        return kConfigError;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error in " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumericalError;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "output error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericalError;
    }
}

}  // namespace fracharm::cli
