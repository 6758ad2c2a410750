#pragma once

#include <optional>

// Gaussian states of a linearized laser mode and their deterministic moment
// evolution. Quadratures are scaled so that [x, y] = 2i: a coherent state has
// var_x = var_y = 1 and a pure state satisfies var_x*var_y - cov_xy^2 = 1.
// Time is dimensionless throughout (units of the bare mode lifetime).

namespace robens {

/// First and second phase-space moments of a Wigner-Gaussian state.
struct GaussianState {
    double mean_x = 0.0;  ///< amplitude-quadrature mean
    double mean_y = 0.0;  ///< phase-quadrature mean
    double var_x = 1.0;   ///< amplitude variance, > 0
    double cov_xy = 0.0;  ///< amplitude-phase covariance
    double var_y = 1.0;   ///< phase variance, > 0
};

/// Dimensionless model parameters of the linearized mode.
struct ModelParams {
    double chi = 0.0;     ///< self-energy (shear strength), >= 0
    double nu = 0.0;      ///< excess phase diffusion, >= 0
    double lambda = 0.5;  ///< survival threshold, in (0, 1)
    std::optional<double> mu;  ///< mean boson number; only for validity checks

    ModelParams() = default;
    ModelParams(double chi_, double nu_, double lambda_ = 0.5)
        : chi(chi_), nu(nu_), lambda(lambda_) {}
};

/// Builds ModelParams from the physical couplings: chi = 4*mu*C, nu = 4*mu*N.
/// Throws std::invalid_argument for mu <= 0 or negative couplings.
ModelParams params_from_physical(double self_energy_c, double phase_noise_n, double mu);

/// Heisenberg bound var_x*var_y - cov_xy^2 >= 1, with an absolute tolerance
/// on the determinant to absorb round-off.
bool heisenberg_ok(const GaussianState& s, double tol = 1e-9);

/// Throw std::invalid_argument unless the state satisfies its invariants.
void require_valid(const GaussianState& s);

/// Throw std::invalid_argument unless 0 < lambda < 1, chi >= 0, nu >= 0.
void require_valid(const ModelParams& p);

/// Exact solution of the linearized moment equations at time t >= 0.
///
/// With w = e^{-t}:
///   mean_x(t) = mean_x w
///   mean_y(t) = mean_y - chi mean_x (1 - w)
///   var_x(t)  = var_x w^2 + 1 - w^2
///   cov_xy(t) = cov_xy w - chi [var_x (1-w) + (1 - var_x)(1-w)^2]
///   var_y(t)  = var_y + (2+nu) t - 2 chi cov_xy (1-w)
///               + 2 chi^2 [(t - (1-w)) - (1 - var_x)(1-w)^2 / 2]
///
/// The cov_xy/var_y braces are algebraically regrouped so that no term
/// suffers catastrophic cancellation at small t; t - (1-w) is evaluated by
/// series below a crossover.
GaussianState evolve_moments(const GaussianState& s0, const ModelParams& p, double t);

/// Purity Tr[rho^2] = [var_x var_y - cov_xy^2]^{-1/2}, in (0, 1].
double purity_of(const GaussianState& s);

/// Signed angle (radians) between the ellipse major axis and the y-axis:
/// theta = arctan(2 cov / (var_y - var_x)) / 2, zero for a circular contour.
double tilt_angle(const GaussianState& s);

/// Asymptotic growth rate of var_y: 2 + nu + 2 chi^2.
double stationary_var_y_rate(const ModelParams& p);

namespace detail {
/// t - (1 - e^{-t}) = t^2/2 - t^3/6 + ..., evaluated without cancellation.
double t_minus_decay(double t);
}  // namespace detail

}  // namespace robens
