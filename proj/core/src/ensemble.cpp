#include "robens/ensemble.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace robens {

void require_valid(const EnsembleParams& e) {
    if (!(e.gamma > 0.0) || !(e.gamma <= 1.0))
        throw std::invalid_argument("EnsembleParams: gamma must be in (0, 1]");
    if (!std::isfinite(e.beta))
        throw std::invalid_argument("EnsembleParams: beta must be finite");
}

GaussianState member_state(const EnsembleParams& e, double xbar) {
    require_valid(e);
    GaussianState s;
    s.mean_x = xbar;
    s.mean_y = 0.0;
    s.var_x = e.gamma;
    s.cov_xy = e.beta;
    s.var_y = e.alpha();
    return s;
}

double weight_density(const EnsembleParams& e, double xbar) {
    if (e.gamma > 1.0)
        throw std::invalid_argument("weight_density: gamma must be <= 1");
    const double var = 1.0 - e.gamma;
    if (var == 0.0) {
        return xbar == 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return std::exp(-xbar * xbar / (2.0 * var)) /
           std::sqrt(2.0 * std::numbers::pi * var);
}

EnsembleMemberWeight member_weight(const EnsembleParams& e, double xbar) {
    return {xbar, weight_density(e, xbar)};
}

double pr_constraint_value(const EnsembleParams& e, const ModelParams& p) {
    const double term = (-2.0 * p.chi * e.beta + 2.0 + p.nu) * (-2.0 * e.gamma + 2.0);
    const double cross = e.beta + p.chi * e.gamma;
    return term - cross * cross;
}

bool is_physically_realizable(const EnsembleParams& e, const ModelParams& p, double tol) {
    if (!(e.gamma > 0.0)) return false;
    return pr_constraint_value(e, p) >= -tol;
}

std::vector<double> pr_boundary_betas(double gamma, const ModelParams& p) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("pr_boundary_betas: gamma must be > 0");
    // The constraint is -[beta^2 + 2 chi (2 - gamma) beta + c] with
    // c = chi^2 gamma^2 - (2 + nu)(2 - 2 gamma); the quarter-discriminant
    // reduces to 2 (1 - gamma)(2 chi^2 + nu + 2), nonnegative for gamma <= 1.
    const double chi = p.chi;
    const double half_b = chi * (2.0 - gamma);
    const double c = chi * chi * gamma * gamma - (2.0 + p.nu) * (2.0 - 2.0 * gamma);
    const double quarter_disc = 2.0 * (1.0 - gamma) * (2.0 * chi * chi + p.nu + 2.0);
    if (quarter_disc < 0.0) return {};
    if (quarter_disc == 0.0) return {-half_b};
    const double s = std::sqrt(quarter_disc);
    // Avoid cancellation in the root closer to zero: product of roots is c.
    const double r_far = -(half_b + s);
    const double r_near = (r_far != 0.0) ? c / r_far : s;
    std::vector<double> roots{r_far, r_near};
    if (roots[0] > roots[1]) std::swap(roots[0], roots[1]);
    return roots;
}

double pr_boundary_beta_asymptotic(double gamma, const ModelParams& p) {
    return -p.chi * gamma * gamma / 4.0;
}

StationaryMixedness stationary_mixedness(double mu) {
    if (!(mu > 0.0))
        throw std::invalid_argument("stationary_mixedness: mu must be > 0");
    StationaryMixedness m;
    m.purity = 1.0 / std::sqrt(4.0 * std::numbers::pi * mu);
    m.max_eigenvalue = 1.0 / std::sqrt(2.0 * std::numbers::pi * mu);
    m.asymptotic_valid = mu >= 10.0;
    return m;
}

bool lambda_within_bounds(double lambda, double mu) {
    const auto m = stationary_mixedness(mu);
    return lambda > m.purity && lambda < 1.0;
}

}  // namespace robens
