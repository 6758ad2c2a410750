#include "robens/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace robens {

namespace detail {

double t_minus_decay(double t) {
    // Alternating series sum_{k>=2} (-t)^k / k!; converges in a handful of
    // terms below the crossover, above it the direct form is already stable.
    if (t < 0.5) {
        double term = t * t / 2.0;
        double sum = term;
        for (int k = 3; k < 40; ++k) {
            term *= -t / static_cast<double>(k);
            sum += term;
            if (std::abs(term) < 1e-18 * sum) break;
        }
        return sum;
    }
    return t - (-std::expm1(-t));
}

}  // namespace detail

ModelParams params_from_physical(double self_energy_c, double phase_noise_n, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("params_from_physical: mu must be > 0");
    if (self_energy_c < 0.0 || phase_noise_n < 0.0)
        throw std::invalid_argument("params_from_physical: couplings must be >= 0");
    ModelParams p;
    p.chi = 4.0 * mu * self_energy_c;
    p.nu = 4.0 * mu * phase_noise_n;
    p.lambda = 0.5;
    p.mu = mu;
    return p;
}

bool heisenberg_ok(const GaussianState& s, double tol) {
    const double det = s.var_x * s.var_y - s.cov_xy * s.cov_xy;
    // tol is absolute for states of ordinary size; the determinant of an
    // extreme member rounds at eps * var_x * var_y, so the allowance must
    // grow with that scale.
    return det >= 1.0 - tol * std::max(1.0, s.var_x * s.var_y);
}

void require_valid(const GaussianState& s) {
    if (!(s.var_x > 0.0) || !(s.var_y > 0.0))
        throw std::invalid_argument("GaussianState: variances must be > 0");
    if (!heisenberg_ok(s))
        throw std::invalid_argument("GaussianState: Heisenberg bound violated");
}

void require_valid(const ModelParams& p) {
    if (!(p.lambda > 0.0) || !(p.lambda < 1.0))
        throw std::invalid_argument("ModelParams: lambda must be in (0, 1)");
    if (p.chi < 0.0 || p.nu < 0.0)
        throw std::invalid_argument("ModelParams: chi and nu must be >= 0");
    if (p.mu && !(*p.mu > 0.0))
        throw std::invalid_argument("ModelParams: mu must be > 0 when present");
}

GaussianState evolve_moments(const GaussianState& s0, const ModelParams& p, double t) {
    require_valid(s0);
    require_valid(p);
    if (!(t >= 0.0)) throw std::invalid_argument("evolve_moments: t must be >= 0");

    const double w = std::exp(-t);
    const double w2 = w * w;
    const double z = -std::expm1(-t);        // 1 - w
    const double one_m_w2 = -std::expm1(-2.0 * t);
    const double tmz = detail::t_minus_decay(t);  // t - z
    const double chi = p.chi;
    const double g = s0.var_x;

    GaussianState s;
    s.mean_x = s0.mean_x * w;
    s.mean_y = s0.mean_y - chi * s0.mean_x * z;
    s.var_x = g * w2 + one_m_w2;
    // covariance brace 1 + w(g-2) + w^2(1-g) == g z + (1-g) z^2
    s.cov_xy = s0.cov_xy * w - chi * (g * z + (1.0 - g) * z * z);
    // var_y brace t + (g-2)(1-w) + (1-g)(1-w^2)/2 == (t - z) - (1-g) z^2 / 2
    s.var_y = s0.var_y + (2.0 + p.nu) * t - 2.0 * chi * s0.cov_xy * z +
              2.0 * chi * chi * (tmz - (1.0 - g) * z * z / 2.0);
    return s;
}

double purity_of(const GaussianState& s) {
    if (!heisenberg_ok(s))
        throw std::invalid_argument("purity_of: moment determinant below Heisenberg bound");
    const double det = s.var_x * s.var_y - s.cov_xy * s.cov_xy;
    return std::min(1.0, 1.0 / std::sqrt(det));
}

double tilt_angle(const GaussianState& s) {
    const double num = 2.0 * s.cov_xy;
    const double den = s.var_y - s.var_x;
    if (num == 0.0 && den == 0.0) return 0.0;  // circular contour
    return 0.5 * std::atan2(num, den);
}

double stationary_var_y_rate(const ModelParams& p) {
    return 2.0 + p.nu + 2.0 * p.chi * p.chi;
}

}  // namespace robens
