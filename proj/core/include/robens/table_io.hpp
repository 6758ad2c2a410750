#pragma once

#include <string>
#include <vector>

#include "robens/analysis.hpp"
#include "robens/moments.hpp"
#include "robens/optimize.hpp"
#include "robens/robustness.hpp"

// CSV writers for the file formats the CLI emits. All files are UTF-8,
// comma-separated, '.' decimal, reals at 17 significant digits, and start
// with a '#' provenance comment followed by a mandatory header row.

namespace robens::io {

/// %.17g, enough digits to round-trip a double.
std::string fmt17(double v);

const char* measure_name(Measure m);
const char* param_name(SweepParam p);
Measure measure_from_string(const std::string& s);
SweepParam param_from_string(const std::string& s);

inline constexpr const char* kSweepCsvHeader =
    "param,beta_star,gamma_star,alpha_star,tau_star,tau_coherent,constrained,measure,lambda";

/// Sweep rows under the mandated column set; fitted exponents, when present,
/// follow as '# fit' comment lines.
std::string sweep_csv(const SweepTable& table, const std::string& provenance);

/// columns: t,value
std::string curve_csv(const SurvivalCurve& curve, const std::string& provenance);

/// columns: gamma,beta,tau,pr
std::string grid_csv(const ContourGrid& grid, const std::string& provenance);

struct EvolveRow {
    double xbar = 0.0;
    double t = 0.0;
    GaussianState state;
};

/// columns: xbar,t,mean_x,mean_y,var_x,cov_xy,var_y,purity
std::string evolve_csv(const std::vector<EvolveRow>& rows, const std::string& provenance);

}  // namespace robens::io
