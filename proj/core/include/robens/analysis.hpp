#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "robens/optimize.hpp"

// Parameter sweeps of the most robust ensemble, log-log exponent fits, the
// asymptotic scaling laws they should reproduce, and model-validity checks.

namespace robens {

struct FitResult {
    double exponent = 0.0;
    double prefactor = 0.0;
    double stderr_exponent = 0.0;
    double fit_lo = 0.0;  ///< fitted x-range
    double fit_hi = 0.0;
};

/// Least squares of log y on log x. Requires >= 4 strictly positive points.
FitResult fit_power_law(std::span<const double> xs, std::span<const double> ys);

struct SweepRow {
    double param_value = 0.0;
    double beta_star = 0.0;
    double gamma_star = 0.0;
    double alpha_star = 0.0;
    double tau_star = 0.0;
    double tau_coherent = 0.0;  ///< survival time of the coherent ensemble
    bool on_boundary = false;
    bool ok = false;  ///< false when the optimization failed at this point
};

struct SweepTable {
    SweepParam param = SweepParam::chi;
    bool constrained = true;
    Measure measure = Measure::survival;
    ModelParams base;  ///< non-swept parameters
    std::vector<SweepRow> rows;
    std::map<std::string, FitResult> fitted_exponents;
};

struct SweepOptions {
    bool warm_start = true;  ///< serial chain; false = independent (parallel) points
    double t_max = 1e3;
    OptimizeOptions optimize;
};

/// One maximize_robustness per value (sorted ascending), each row paired with
/// the coherent-ensemble survival time at the same parameters. Failed points
/// are recorded and skipped by the fits.
SweepTable sweep(const ModelParams& tmpl, SweepParam param, std::span<const double> values,
                 bool constrained, Measure measure, const SweepOptions& opts = {});

/// Fit the alpha/gamma/tau/|beta|/tau_coherent columns over param values in
/// [lo, hi], storing results in table.fitted_exponents. Columns without
/// enough positive data in the window are skipped.
void fit_sweep(SweepTable& table, double lo, double hi);

/// The asymptotic power-law exponents the sweeps should reproduce.
std::map<std::string, double> predicted_scalings(SweepParam param, Measure measure,
                                                 bool constrained);

/// Analytic estimate of the coherent-ensemble survival time: sqrt(8)/chi in
/// the self-energy-dominated regime, 4(1-lambda)/nu from the short-time law
/// S = 1 - nu t / 4 in the phase-noise-dominated regime. Requires exactly
/// one of chi, nu nonzero.
double tau_coherent_asymptotic(const ModelParams& p);

/// Asymptotic quantum-state-diffusion ensemble: (beta, gamma) =
/// (-1, sqrt(2) chi^{-1/2}) with chi, (0, sqrt(2) nu^{-1/2}) with nu.
/// Requires exactly one of chi, nu nonzero.
EnsembleParams qsd_ensemble(const ModelParams& p);

/// Validity and coherence windows for mean boson number mu. Ratios below 1
/// put the model inside the respective regime.
struct RegimeReport {
    double chi_over_mu32 = 0.0;  ///< chi / mu^{3/2}
    double nu_over_mu2 = 0.0;    ///< nu / mu^2
    double chi_over_mu2 = 0.0;   ///< chi / mu^2
    bool output_coherent = false;       ///< chi << mu^{3/2} and nu << mu^2
    bool linearization_valid = false;   ///< same window, survival analysis
    bool conditional_window = false;    ///< mu^{3/2} <= chi < mu^2
};
RegimeReport regime_checks(const ModelParams& p);

/// Smallest positive root of the quartic 2(1+beta^2) t / gamma
/// - 2 chi beta t^2 + 2 chi^2 gamma t^3 / 3 + chi^2 t^4 / 3 = 3, the
/// closed-form estimate of the purity half-life in the nu = 0, gamma << 1,
/// chi >> 1 regime. nullopt when no positive root exists.
std::optional<double> purity_tau_quartic_root(double beta, double gamma, double chi);

/// n log-spaced values covering [lo, hi].
std::vector<double> log_spaced(double lo, double hi, int n);

}  // namespace robens
