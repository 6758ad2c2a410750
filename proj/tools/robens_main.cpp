// robens - robust pure-state ensembles of a linearized (atom) laser mode.
//
// Subcommands: evolve, survival, tau, optimize, sweep, contour, transition,
// report. Outputs CSV/JSON tables and static SVG figures; every file starts
// with a provenance line. Identical invocations produce identical bytes
// (SVG timestamps can be suppressed with --no-timestamp).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "robens/analysis.hpp"
#include "robens/errors.hpp"
#include "robens/moments.hpp"
#include "robens/optimize.hpp"
#include "robens/robustness.hpp"
#include "robens/svg.hpp"
#include "robens/table_io.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

using robens::io::fmt17;
using json = nlohmann::ordered_json;

struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw io_error("write failed: " + path);
}

// Deterministic provenance line: command plus the settings that shaped the
// output, in sorted key order.
std::string provenance(const std::string& command,
                       const std::map<std::string, std::string>& settings) {
    std::ostringstream s;
    s << "robens " << kVersion << " | " << command;
    for (const auto& [k, v] : settings) s << ' ' << k << '=' << v;
    return s.str();
}

json json_header(const std::string& command,
                 const std::map<std::string, std::string>& settings) {
    json j;
    j["schema"] = 1;
    j["provenance"]["version"] = kVersion;
    j["provenance"]["command"] = command;
    for (const auto& [k, v] : settings) j["provenance"]["parameters"][k] = v;
    return j;
}

struct ModelFlags {
    double chi = 0.0;
    double nu = 0.0;
    double lambda = 0.5;
    double mu = 0.0;  // 0 = absent

    robens::ModelParams params() const {
        robens::ModelParams p{chi, nu, lambda};
        if (mu > 0.0) p.mu = mu;
        robens::require_valid(p);
        return p;
    }
    void describe(std::map<std::string, std::string>& s) const {
        s["chi"] = fmt17(chi);
        s["nu"] = fmt17(nu);
        s["lambda"] = fmt17(lambda);
        if (mu > 0.0) s["mu"] = fmt17(mu);
    }
};

void add_model_flags(CLI::App* cmd, ModelFlags& m) {
    cmd->add_option("--chi", m.chi, "Dimensionless self-energy (>= 0)");
    cmd->add_option("--nu", m.nu, "Excess phase diffusion (>= 0)");
    cmd->add_option("--lambda", m.lambda, "Survival threshold in (0, 1)")
        ->default_val(0.5);
    cmd->add_option("--mu", m.mu, "Mean boson number (validity checks only)");
    cmd->add_option("--config", "Config file with key=value lines mirroring the flags");
}

// Expand `--config file` into ordinary flags before parsing. Keys already
// present on the command line win; lines are `key=value`, '#' comments.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string cfg;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") cfg = args[i + 1];
    if (cfg.empty()) return args;

    std::set<std::string> given;
    for (const auto& a : args)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') - 2));

    std::ifstream in(cfg);
    if (!in) throw std::invalid_argument("cannot read config file: " + cfg);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty() || key == "config" || given.count(key)) continue;
        if (value == "true") {
            args.push_back("--" + key);
        } else if (value != "false") {
            args.push_back("--" + key);
            args.push_back(value);
        }
    }
    return args;
}

struct OutputFlags {
    std::string path;
    std::string format;  // empty = infer / default
    bool no_timestamp = false;
};

void add_output_flags(CLI::App* cmd, OutputFlags& o,
                      const std::vector<std::string>& formats) {
    cmd->add_option("-o,--output", o.path, "Output file (stdout when omitted)");
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember(formats));
    cmd->add_flag("--no-timestamp", o.no_timestamp,
                  "Omit the generation-time comment from SVG output");
}

std::string pick_format(const OutputFlags& o, const std::string& fallback) {
    if (!o.format.empty()) return o.format;
    if (o.path.size() > 4) {
        const auto dot = o.path.rfind('.');
        if (dot != std::string::npos) {
            const std::string ext = o.path.substr(dot + 1);
            if (ext == "csv" || ext == "json" || ext == "svg") return ext;
        }
    }
    return fallback;
}

void deliver(const OutputFlags& o, const std::string& content) {
    if (o.path.empty())
        std::cout << content;
    else
        write_file(o.path, content);
}

robens::svg::Options svg_options(const OutputFlags& o, const std::string& title,
                                 const std::string& prov) {
    robens::svg::Options opts;
    opts.timestamp = !o.no_timestamp;
    opts.title = title;
    opts.provenance = prov;
    return opts;
}

// ---------------------------------------------------------------- evolve --

int run_evolve(const ModelFlags& model, double gamma, double beta,
               std::vector<double> xbars, std::vector<double> times,
               const OutputFlags& out) {
    const auto p = model.params();
    const robens::EnsembleParams e{beta, gamma};
    robens::require_valid(e);
    if (xbars.empty()) xbars = {0.0};
    if (times.empty()) times = {0.0, 1.0, 2.0};
    std::sort(times.begin(), times.end());

    std::map<std::string, std::string> s;
    model.describe(s);
    s["gamma"] = fmt17(gamma);
    s["beta"] = fmt17(beta);
    const std::string prov = provenance("evolve", s);
    const std::string format = pick_format(out, "csv");

    std::vector<robens::io::EvolveRow> rows;
    std::vector<std::vector<robens::GaussianState>> groups;
    for (const double t : times) {
        std::vector<robens::GaussianState> group;
        for (const double xbar : xbars) {
            const auto st = robens::evolve_moments(robens::member_state(e, xbar), p, t);
            rows.push_back({xbar, t, st});
            group.push_back(st);
        }
        groups.push_back(std::move(group));
    }

    if (format == "svg") {
        deliver(out, robens::svg::ellipse_figure(times, groups,
                                                 svg_options(out, "phase-space ellipses", prov)));
    } else if (format == "json") {
        json j = json_header("evolve", s);
        for (const auto& r : rows)
            j["states"].push_back({{"xbar", r.xbar},
                                   {"t", r.t},
                                   {"mean_x", r.state.mean_x},
                                   {"mean_y", r.state.mean_y},
                                   {"var_x", r.state.var_x},
                                   {"cov_xy", r.state.cov_xy},
                                   {"var_y", r.state.var_y},
                                   {"purity", robens::purity_of(r.state)}});
        deliver(out, j.dump(2) + "\n");
    } else {
        deliver(out, robens::io::evolve_csv(rows, prov));
    }
    return 0;
}

// -------------------------------------------------------------- survival --

int run_survival(const ModelFlags& model, double gamma, double beta,
                 const std::string& measure_name, double t_max, int points,
                 const OutputFlags& out) {
    const auto p = model.params();
    const robens::EnsembleParams e{beta, gamma};
    robens::require_valid(e);
    const auto measure = robens::io::measure_from_string(measure_name);
    const auto kind = measure == robens::Measure::survival ? robens::CurveKind::survival
                                                           : robens::CurveKind::purity;
    if (t_max <= 0.0) {
        // default horizon: twice the threshold crossing when it exists
        const auto tau = measure == robens::Measure::survival
                             ? robens::survival_time(e, p)
                             : robens::purity_halflife(e, p);
        t_max = tau ? 2.0 * *tau : 10.0;
    }
    const auto curve = robens::sample_curve(e, p, kind, t_max, points);

    std::map<std::string, std::string> s;
    model.describe(s);
    s["gamma"] = fmt17(gamma);
    s["beta"] = fmt17(beta);
    s["measure"] = measure_name;
    s["tmax"] = fmt17(t_max);
    s["points"] = std::to_string(points);
    const std::string format = pick_format(out, "csv");

    if (format == "svg") {
        robens::svg::Series series{measure_name, curve.times, curve.values, ""};
        deliver(out, robens::svg::xy_figure({series}, "t (mode lifetimes)", measure_name,
                                            svg_options(out, "decay curve",
                                                        provenance("survival", s))));
    } else if (format == "json") {
        json j = json_header("survival", s);
        j["times"] = curve.times;
        j["values"] = curve.values;
        deliver(out, j.dump(2) + "\n");
    } else {
        deliver(out, robens::io::curve_csv(curve, provenance("survival", s)));
    }
    return 0;
}

// ------------------------------------------------------------------- tau --

int run_tau(const ModelFlags& model, double gamma, double beta,
            const std::string& measure_name, double horizon, const OutputFlags& out) {
    const auto p = model.params();
    const robens::EnsembleParams e{beta, gamma};
    robens::require_valid(e);
    const auto measure = robens::io::measure_from_string(measure_name);
    const auto tau = measure == robens::Measure::survival
                         ? robens::survival_time(e, p, horizon)
                         : robens::purity_halflife(e, p, horizon);
    if (!tau) throw robens::numerical_error("no threshold crossing before t_max");

    std::map<std::string, std::string> s;
    model.describe(s);
    s["gamma"] = fmt17(gamma);
    s["beta"] = fmt17(beta);
    s["measure"] = measure_name;
    if (out.path.empty()) {
        std::cout << fmt17(*tau) << "\n";
    } else {
        json j = json_header("tau", s);
        j["tau"] = *tau;
        deliver(out, j.dump(2) + "\n");
    }
    return 0;
}

// -------------------------------------------------------------- optimize --

json result_to_json(const robens::RobustnessResult& r) {
    json j;
    j["beta_star"] = r.beta_star;
    j["gamma_star"] = r.gamma_star;
    j["alpha_star"] = r.alpha_star;
    j["tau_star"] = r.tau_star;
    j["constrained"] = r.constrained;
    j["measure"] = robens::io::measure_name(r.measure);
    j["on_boundary"] = r.on_boundary;
    const double rad_to_deg = 180.0 / 3.14159265358979323846;
    j["tilt_deg"] = robens::tilt_angle(robens::member_state(r.ensemble(), 0.0)) * rad_to_deg;
    j["n_evals"] = r.n_evals;
    if (r.runner_up) {
        j["runner_up"] = {{"beta", r.runner_up->beta},
                          {"gamma", r.runner_up->gamma},
                          {"tau", r.runner_up->tau}};
    } else {
        j["runner_up"] = nullptr;
    }
    return j;
}

int run_optimize(const ModelFlags& model, bool constrained, const std::string& measure_name,
                 std::uint32_t seed, const OutputFlags& out) {
    const auto p = model.params();
    const auto measure = robens::io::measure_from_string(measure_name);
    robens::OptimizeOptions opts;
    if (seed != 0) opts.seed = seed;
    const auto r = robens::maximize_robustness(p, constrained, measure, opts);

    std::map<std::string, std::string> s;
    model.describe(s);
    s["constrained"] = constrained ? "true" : "false";
    s["measure"] = measure_name;
    const std::string format = pick_format(out, "json");

    if (format == "svg") {
        const auto e = r.ensemble();
        std::vector<double> xbars{0.0};
        if (e.gamma < 1.0) {
            const double spread = 1.29 * std::sqrt(1.0 - e.gamma);
            xbars.push_back(spread);
            xbars.push_back(-spread);
        }
        const std::vector<double> times{0.0, r.tau_star, 2.0 * r.tau_star};
        std::vector<std::vector<robens::GaussianState>> groups;
        for (const double t : times) {
            std::vector<robens::GaussianState> group;
            for (const double xbar : xbars)
                group.push_back(robens::evolve_moments(robens::member_state(e, xbar), p, t));
            groups.push_back(std::move(group));
        }
        deliver(out, robens::svg::ellipse_figure(
                         times, groups,
                         svg_options(out, "most robust ensemble", provenance("optimize", s))));
        return 0;
    }
    json j = json_header("optimize", s);
    j["result"] = result_to_json(r);
    deliver(out, j.dump(2) + "\n");
    return 0;
}

// ----------------------------------------------------------------- sweep --

int run_sweep(const ModelFlags& model, const std::string& param_name, double from, double to,
              int points, bool constrained, const std::string& measure_name, bool fit,
              bool cold_starts, const OutputFlags& out) {
    const auto p = model.params();
    const auto param = robens::io::param_from_string(param_name);
    const auto measure = robens::io::measure_from_string(measure_name);
    if (!(from < to)) throw std::invalid_argument("sweep: need --from < --to");
    if (param == robens::SweepParam::lambda && to >= 1.0)
        throw std::invalid_argument("sweep: lambda values must stay below 1");
    const auto values = robens::log_spaced(from, to, points);

    robens::SweepOptions opts;
    opts.warm_start = !cold_starts;
    auto table = robens::sweep(p, param, values, constrained, measure, opts);
    if (fit) {
        const double window_lo = param == robens::SweepParam::lambda ? from : to / 100.0;
        robens::fit_sweep(table, std::max(from, window_lo), to);
    }

    std::map<std::string, std::string> s;
    model.describe(s);
    s.erase(param_name);  // swept, not fixed
    s["param"] = param_name;
    s["from"] = fmt17(from);
    s["to"] = fmt17(to);
    s["points"] = std::to_string(points);
    s["constrained"] = constrained ? "true" : "false";
    s["measure"] = measure_name;
    s["starts"] = cold_starts ? "cold" : "warm";
    const std::string format = pick_format(out, "csv");

    if (format == "svg") {
        std::vector<robens::svg::Series> series(5);
        series[0] = {"alpha*", {}, {}, "2,2"};
        series[1] = {"gamma*", {}, {}, "6,3"};
        series[2] = {"|beta*|", {}, {}, "6,2,2,2"};
        series[3] = {"tau*", {}, {}, ""};
        series[4] = {"tau coherent", {}, {}, "8,2,2,2,2,2"};
        for (const auto& row : table.rows) {
            if (!row.ok) continue;
            const double x = row.param_value;
            series[0].x.push_back(x);
            series[0].y.push_back(row.alpha_star);
            series[1].x.push_back(x);
            series[1].y.push_back(row.gamma_star);
            series[2].x.push_back(x);
            series[2].y.push_back(std::abs(row.beta_star));
            series[3].x.push_back(x);
            series[3].y.push_back(row.tau_star);
            series[4].x.push_back(x);
            series[4].y.push_back(row.tau_coherent);
        }
        std::size_t points_drawn = 0;
        for (const auto& sr : series) points_drawn += sr.x.size();
        if (points_drawn == 0)
            throw robens::numerical_error("sweep produced no plottable points");
        deliver(out, robens::svg::loglog_figure(series, param_name, "ensemble parameters",
                                                svg_options(out, "most robust ensemble sweep",
                                                            provenance("sweep", s))));
    } else if (format == "json") {
        json j = json_header("sweep", s);
        for (const auto& row : table.rows) {
            json r = {{"param", row.param_value}, {"ok", row.ok}};
            if (row.ok) {
                r["beta_star"] = row.beta_star;
                r["gamma_star"] = row.gamma_star;
                r["alpha_star"] = row.alpha_star;
                r["tau_star"] = row.tau_star;
                r["tau_coherent"] = row.tau_coherent;
                r["on_boundary"] = row.on_boundary;
            }
            j["rows"].push_back(std::move(r));
        }
        for (const auto& [name, f] : table.fitted_exponents)
            j["fits"][name] = {{"exponent", f.exponent},
                               {"stderr", f.stderr_exponent},
                               {"prefactor", f.prefactor},
                               {"range", {f.fit_lo, f.fit_hi}}};
        deliver(out, j.dump(2) + "\n");
    } else {
        deliver(out, robens::io::sweep_csv(table, provenance("sweep", s)));
    }
    return 0;
}

// --------------------------------------------------------------- contour --

int run_contour(const ModelFlags& model, double gamma_min, double gamma_max, double beta_min,
                double beta_max, int resolution, bool constrained,
                const std::string& measure_name, const OutputFlags& out) {
    const auto p = model.params();
    const auto measure = robens::io::measure_from_string(measure_name);
    const auto grid = robens::contour_grid(p, gamma_min, gamma_max, beta_min, beta_max,
                                           resolution, resolution, measure);

    std::map<std::string, std::string> s;
    model.describe(s);
    s["gamma_min"] = fmt17(gamma_min);
    s["gamma_max"] = fmt17(gamma_max);
    s["beta_min"] = fmt17(beta_min);
    s["beta_max"] = fmt17(beta_max);
    s["resolution"] = std::to_string(resolution);
    s["measure"] = measure_name;
    s["constrained"] = constrained ? "true" : "false";
    const std::string format = pick_format(out, "csv");

    if (format == "svg") {
        const auto best = robens::maximize_robustness(p, constrained, measure);
        deliver(out, robens::svg::contour_figure(
                         grid, {}, std::make_pair(best.gamma_star, best.beta_star),
                         svg_options(out, "survival-time contours, shaded = realizable",
                                     provenance("contour", s))));
    } else if (format == "json") {
        json j = json_header("contour", s);
        j["gamma_axis"] = grid.gamma_axis;
        j["beta_axis"] = grid.beta_axis;
        j["tau"] = grid.tau;
        j["pr_mask"] = grid.pr_mask;
        deliver(out, j.dump(2) + "\n");
    } else {
        deliver(out, robens::io::grid_csv(grid, provenance("contour", s)));
    }
    return 0;
}

// ------------------------------------------------------------ transition --

int run_transition(const ModelFlags& model, const std::string& param_name, double lo, double hi,
                   bool constrained, const std::string& measure_name, const OutputFlags& out) {
    const auto p = model.params();
    const auto param = robens::io::param_from_string(param_name);
    const auto measure = robens::io::measure_from_string(measure_name);
    const auto value = robens::detect_transition(p, param, lo, hi, constrained, measure);
    if (!value)
        throw robens::numerical_error("no boundary-to-interior hand-over inside [lo, hi]");

    std::map<std::string, std::string> s;
    model.describe(s);
    s.erase(param_name);
    s["param"] = param_name;
    s["lo"] = fmt17(lo);
    s["hi"] = fmt17(hi);
    s["constrained"] = constrained ? "true" : "false";
    s["measure"] = measure_name;
    if (out.path.empty()) {
        std::cout << fmt17(*value) << "\n";
    } else {
        json j = json_header("transition", s);
        j["value"] = *value;
        deliver(out, j.dump(2) + "\n");
    }
    return 0;
}

// ---------------------------------------------------------------- report --

int run_report(const ModelFlags& model, const OutputFlags& out) {
    const auto p = model.params();
    if (!p.mu) throw std::invalid_argument("report: --mu is required");
    const auto mix = robens::stationary_mixedness(*p.mu);
    const auto regime = robens::regime_checks(p);
    const bool lambda_ok = robens::lambda_within_bounds(p.lambda, *p.mu);

    std::map<std::string, std::string> s;
    model.describe(s);
    if (out.path.empty()) {
        std::cout << "stationary purity        " << fmt17(mix.purity) << "\n"
                  << "largest eigenvalue       " << fmt17(mix.max_eigenvalue) << "\n"
                  << "asymptotics valid        " << (mix.asymptotic_valid ? "yes" : "no") << "\n"
                  << "lambda within bounds     " << (lambda_ok ? "yes" : "no") << "\n"
                  << "output coherent          " << (regime.output_coherent ? "yes" : "no")
                  << "\n"
                  << "linearization valid      " << (regime.linearization_valid ? "yes" : "no")
                  << "\n"
                  << "conditional window       " << (regime.conditional_window ? "yes" : "no")
                  << "\n"
                  << "chi / mu^(3/2)           " << fmt17(regime.chi_over_mu32) << "\n"
                  << "nu / mu^2                " << fmt17(regime.nu_over_mu2) << "\n"
                  << "chi / mu^2               " << fmt17(regime.chi_over_mu2) << "\n";
        return 0;
    }
    json j = json_header("report", s);
    j["stationary_purity"] = mix.purity;
    j["max_eigenvalue"] = mix.max_eigenvalue;
    j["asymptotic_valid"] = mix.asymptotic_valid;
    j["lambda_within_bounds"] = lambda_ok;
    j["output_coherent"] = regime.output_coherent;
    j["linearization_valid"] = regime.linearization_valid;
    j["conditional_window"] = regime.conditional_window;
    j["chi_over_mu32"] = regime.chi_over_mu32;
    j["nu_over_mu2"] = regime.nu_over_mu2;
    j["chi_over_mu2"] = regime.chi_over_mu2;
    deliver(out, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"robust pure-state ensembles of a linearized (atom) laser mode"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // evolve
    ModelFlags evolve_model;
    double evolve_gamma = 1.0, evolve_beta = 0.0;
    std::vector<double> evolve_xbars, evolve_times;
    OutputFlags evolve_out;
    auto* evolve = app.add_subcommand("evolve", "Evolve ensemble member states in time");
    add_model_flags(evolve, evolve_model);
    evolve->add_option("--gamma", evolve_gamma, "Member amplitude variance (0, 1]");
    evolve->add_option("--beta", evolve_beta, "Member x-y covariance");
    evolve->add_option("--xbar", evolve_xbars, "Member mean amplitude (repeatable)");
    evolve->add_option("--t", evolve_times, "Evolution time (repeatable)");
    add_output_flags(evolve, evolve_out, {"csv", "json", "svg"});

    // survival
    ModelFlags surv_model;
    double surv_gamma = 1.0, surv_beta = 0.0, surv_tmax = 0.0;
    int surv_points = 200;
    std::string surv_measure = "survival";
    OutputFlags surv_out;
    auto* survival = app.add_subcommand("survival", "Tabulate a decay curve");
    add_model_flags(survival, surv_model);
    survival->add_option("--gamma", surv_gamma, "Ensemble amplitude variance (0, 1]");
    survival->add_option("--beta", surv_beta, "Ensemble x-y covariance");
    survival->add_option("--measure", surv_measure, "survival or purity")
        ->check(CLI::IsMember({"survival", "purity"}));
    survival->add_option("--tmax", surv_tmax, "Last sample time (default: 2x crossing)");
    survival->add_option("--points", surv_points, "Number of samples")->check(CLI::Range(2, 100000));
    add_output_flags(survival, surv_out, {"csv", "json", "svg"});

    // tau
    ModelFlags tau_model;
    double tau_gamma = 1.0, tau_beta = 0.0, tau_horizon = 1e3;
    std::string tau_measure = "survival";
    OutputFlags tau_out;
    auto* tau = app.add_subcommand("tau", "Threshold-crossing time of one ensemble");
    add_model_flags(tau, tau_model);
    tau->add_option("--gamma", tau_gamma, "Ensemble amplitude variance (0, 1]");
    tau->add_option("--beta", tau_beta, "Ensemble x-y covariance");
    tau->add_option("--measure", tau_measure, "survival or purity")
        ->check(CLI::IsMember({"survival", "purity"}));
    tau->add_option("--horizon", tau_horizon, "Give up beyond this time");
    add_output_flags(tau, tau_out, {"json"});

    // optimize
    ModelFlags opt_model;
    bool opt_constrained = false;
    std::string opt_measure = "survival";
    std::uint32_t opt_seed = 0;
    OutputFlags opt_out;
    auto* optimize = app.add_subcommand("optimize", "Find the most robust ensemble");
    add_model_flags(optimize, opt_model);
    optimize->add_flag("--constrained", opt_constrained,
                       "Restrict to physically realizable ensembles");
    optimize->add_option("--measure", opt_measure, "survival or purity")
        ->check(CLI::IsMember({"survival", "purity"}));
    optimize->add_option("--seed", opt_seed, "Override the multistart seed");
    add_output_flags(optimize, opt_out, {"json", "svg"});

    // sweep
    ModelFlags sweep_model;
    std::string sweep_param = "chi", sweep_measure = "survival";
    double sweep_from = 1.0, sweep_to = 1e4;
    int sweep_points = 53;
    bool sweep_constrained = false, sweep_fit = false, sweep_cold = false;
    OutputFlags sweep_out;
    auto* sweep_cmd = app.add_subcommand("sweep", "Optimize across a parameter range");
    add_model_flags(sweep_cmd, sweep_model);
    sweep_cmd->add_option("--param", sweep_param, "chi, nu, or lambda")
        ->required()
        ->check(CLI::IsMember({"chi", "nu", "lambda"}));
    sweep_cmd->add_option("--from", sweep_from, "Lowest value")->required();
    sweep_cmd->add_option("--to", sweep_to, "Highest value")->required();
    sweep_cmd->add_option("--points", sweep_points, "Log-spaced point count")
        ->check(CLI::Range(2, 100000));
    sweep_cmd->add_flag("--constrained", sweep_constrained,
                        "Restrict to physically realizable ensembles");
    sweep_cmd->add_option("--measure", sweep_measure, "survival or purity")
        ->check(CLI::IsMember({"survival", "purity"}));
    sweep_cmd->add_flag("--fit", sweep_fit, "Fit power-law exponents (top two decades)");
    sweep_cmd->add_flag("--cold-starts", sweep_cold,
                        "Independent points (parallel) instead of warm-start chaining");
    add_output_flags(sweep_cmd, sweep_out, {"csv", "json", "svg"});

    // contour
    ModelFlags cont_model;
    double cont_gmin = 0.02, cont_gmax = 1.0, cont_bmin = -1.5, cont_bmax = 1.5;
    int cont_res = 41;
    bool cont_constrained = false;
    std::string cont_measure = "survival";
    OutputFlags cont_out;
    auto* contour = app.add_subcommand("contour", "Survival-time grid over (gamma, beta)");
    add_model_flags(contour, cont_model);
    contour->add_option("--gamma-min", cont_gmin, "Grid lower gamma");
    contour->add_option("--gamma-max", cont_gmax, "Grid upper gamma");
    contour->add_option("--beta-min", cont_bmin, "Grid lower beta");
    contour->add_option("--beta-max", cont_bmax, "Grid upper beta");
    contour->add_option("--resolution", cont_res, "Cells per axis")->check(CLI::Range(2, 2000));
    contour->add_flag("--constrained", cont_constrained, "Mark the realizable optimum");
    contour->add_option("--measure", cont_measure, "survival or purity")
        ->check(CLI::IsMember({"survival", "purity"}));
    add_output_flags(contour, cont_out, {"csv", "json", "svg"});

    // transition
    ModelFlags trans_model;
    std::string trans_param = "chi", trans_measure = "survival";
    double trans_lo = 1.0, trans_hi = 100.0;
    bool trans_constrained = false;
    OutputFlags trans_out;
    auto* transition = app.add_subcommand(
        "transition", "Locate the boundary-to-interior optimum hand-over");
    add_model_flags(transition, trans_model);
    transition->add_option("--param", trans_param, "chi or nu")
        ->required()
        ->check(CLI::IsMember({"chi", "nu"}));
    transition->add_option("--lo", trans_lo, "Lower bracket")->required();
    transition->add_option("--hi", trans_hi, "Upper bracket")->required();
    transition->add_flag("--constrained", trans_constrained,
                         "Restrict to physically realizable ensembles");
    transition->add_option("--measure", trans_measure, "survival or purity")
        ->check(CLI::IsMember({"survival", "purity"}));
    add_output_flags(transition, trans_out, {"json"});

    // report
    ModelFlags report_model;
    OutputFlags report_out;
    auto* report = app.add_subcommand("report", "Validity and coherence checks (needs --mu)");
    add_model_flags(report, report_model);
    add_output_flags(report, report_out, {"json"});

    try {
        auto args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "robens: invalid configuration: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (evolve->parsed())
            return run_evolve(evolve_model, evolve_gamma, evolve_beta, evolve_xbars,
                              evolve_times, evolve_out);
        if (survival->parsed())
            return run_survival(surv_model, surv_gamma, surv_beta, surv_measure, surv_tmax,
                                surv_points, surv_out);
        if (tau->parsed())
            return run_tau(tau_model, tau_gamma, tau_beta, tau_measure, tau_horizon, tau_out);
        if (optimize->parsed())
            return run_optimize(opt_model, opt_constrained, opt_measure, opt_seed, opt_out);
        if (sweep_cmd->parsed())
            return run_sweep(sweep_model, sweep_param, sweep_from, sweep_to, sweep_points,
                             sweep_constrained, sweep_measure, sweep_fit, sweep_cold, sweep_out);
        if (contour->parsed())
            return run_contour(cont_model, cont_gmin, cont_gmax, cont_bmin, cont_bmax, cont_res,
                               cont_constrained, cont_measure, cont_out);
        if (transition->parsed())
            return run_transition(trans_model, trans_param, trans_lo, trans_hi,
                                  trans_constrained, trans_measure, trans_out);
        if (report->parsed()) return run_report(report_model, report_out);
    } catch (const io_error& e) {
        std::cerr << "robens: i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const robens::numerical_error& e) {
        std::cerr << "robens: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "robens: invalid configuration: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "robens: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
