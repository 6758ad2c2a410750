#include "robens/table_io.hpp"

#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace robens::io {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* measure_name(Measure m) {
    return m == Measure::survival ? "survival" : "purity";
}

const char* param_name(SweepParam p) {
    switch (p) {
        case SweepParam::chi: return "chi";
        case SweepParam::nu: return "nu";
        case SweepParam::lambda: return "lambda";
    }
    return "chi";
}

Measure measure_from_string(const std::string& s) {
    if (s == "survival") return Measure::survival;
    if (s == "purity") return Measure::purity;
    throw std::invalid_argument("unknown measure: " + s);
}

SweepParam param_from_string(const std::string& s) {
    if (s == "chi") return SweepParam::chi;
    if (s == "nu") return SweepParam::nu;
    if (s == "lambda") return SweepParam::lambda;
    throw std::invalid_argument("unknown sweep parameter: " + s);
}

std::string sweep_csv(const SweepTable& table, const std::string& provenance) {
    std::ostringstream out;
    out << "# " << provenance << "\n" << kSweepCsvHeader << "\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& row : table.rows) {
        const double lambda =
            table.param == SweepParam::lambda ? row.param_value : table.base.lambda;
        out << fmt17(row.param_value) << ',' << fmt17(row.ok ? row.beta_star : nan) << ','
            << fmt17(row.ok ? row.gamma_star : nan) << ',' << fmt17(row.ok ? row.alpha_star : nan)
            << ',' << fmt17(row.ok ? row.tau_star : nan) << ','
            << fmt17(row.ok ? row.tau_coherent : nan) << ','
            << (table.constrained ? "true" : "false") << ',' << measure_name(table.measure)
            << ',' << fmt17(lambda) << "\n";
    }
    for (const auto& [name, fit] : table.fitted_exponents) {
        out << "# fit " << name << " exponent=" << fmt17(fit.exponent)
            << " stderr=" << fmt17(fit.stderr_exponent) << " prefactor=" << fmt17(fit.prefactor)
            << " range=[" << fmt17(fit.fit_lo) << "," << fmt17(fit.fit_hi) << "]\n";
    }
    return out.str();
}

std::string curve_csv(const SurvivalCurve& curve, const std::string& provenance) {
    std::ostringstream out;
    out << "# " << provenance << "\nt,value\n";
    for (std::size_t i = 0; i < curve.times.size(); ++i)
        out << fmt17(curve.times[i]) << ',' << fmt17(curve.values[i]) << "\n";
    return out.str();
}

std::string grid_csv(const ContourGrid& grid, const std::string& provenance) {
    std::ostringstream out;
    out << "# " << provenance << "\ngamma,beta,tau,pr\n";
    for (std::size_t i = 0; i < grid.n_gamma(); ++i)
        for (std::size_t j = 0; j < grid.n_beta(); ++j)
            out << fmt17(grid.gamma_axis[i]) << ',' << fmt17(grid.beta_axis[j]) << ','
                << fmt17(grid.tau_at(i, j)) << ',' << (grid.pr_at(i, j) ? "true" : "false")
                << "\n";
    return out.str();
}

std::string evolve_csv(const std::vector<EvolveRow>& rows, const std::string& provenance) {
    std::ostringstream out;
    out << "# " << provenance << "\nxbar,t,mean_x,mean_y,var_x,cov_xy,var_y,purity\n";
    for (const auto& r : rows)
        out << fmt17(r.xbar) << ',' << fmt17(r.t) << ',' << fmt17(r.state.mean_x) << ','
            << fmt17(r.state.mean_y) << ',' << fmt17(r.state.var_x) << ','
            << fmt17(r.state.cov_xy) << ',' << fmt17(r.state.var_y) << ','
            << fmt17(purity_of(r.state)) << "\n";
    return out.str();
}

}  // namespace robens::io
