#include "robens/robustness.hpp"

#include <cmath>
#include <stdexcept>

namespace robens {

namespace {

struct OverlapParts {
    double det;   // det(S0 + St)
    double quad;  // d' (S0 + St)^{-1} d  for the unit displacement d = (1, chi) z
};

// Covariance sum and the quadratic form shared by member and ensemble
// survival. The mean separation of a member is xbar * z * (1, chi) with
// z = 1 - e^{-t}, so the xbar-dependence factors out of the exponent.
OverlapParts overlap_parts(const EnsembleParams& e, const ModelParams& p, double t) {
    const GaussianState s0 = member_state(e, 0.0);
    const GaussianState st = evolve_moments(s0, p, t);
    const double axx = s0.var_x + st.var_x;
    const double axy = s0.cov_xy + st.cov_xy;
    const double ayy = s0.var_y + st.var_y;
    const double det = axx * ayy - axy * axy;

    const double z = -std::expm1(-t);
    const double chi = p.chi;
    // (1, chi) (S0+St)^{-1} (1, chi)^T scaled by z^2
    const double quad = z * z * (ayy - 2.0 * chi * axy + chi * chi * axx) / det;
    return {det, quad};
}

}  // namespace

double member_survival(const EnsembleParams& e, double xbar, const ModelParams& p, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("member_survival: t must be >= 0");
    if (t == 0.0) return 1.0;  // members are pure, the overlap is exact
    const auto o = overlap_parts(e, p, t);
    if (!(o.det > 0.0)) throw std::domain_error("member_survival: singular covariance sum");
    return 2.0 * std::exp(-0.5 * xbar * xbar * o.quad) / std::sqrt(o.det);
}

double ensemble_survival(const EnsembleParams& e, const ModelParams& p, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("ensemble_survival: t must be >= 0");
    if (t == 0.0) return 1.0;
    const auto o = overlap_parts(e, p, t);
    if (!(o.det > 0.0)) throw std::domain_error("ensemble_survival: singular covariance sum");
    // Averaging exp(-quad xbar^2 / 2) over xbar ~ N(0, 1-gamma) contributes
    // the factor [1 + (1-gamma) quad]^{-1/2}; at gamma = 1 this is exactly
    // the xbar = 0 member survival.
    const double avg = 1.0 + (1.0 - e.gamma) * o.quad;
    return 2.0 / std::sqrt(o.det * avg);
}

double ensemble_purity(const EnsembleParams& e, const ModelParams& p, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("ensemble_purity: t must be >= 0");
    if (t == 0.0) return 1.0;
    return purity_of(evolve_moments(member_state(e, 0.0), p, t));
}

ThresholdOptions scan_options_for(const ModelParams& p, double t_max) {
    ThresholdOptions opts;
    double scale = 1.0;
    if (p.chi > 0.0) scale = std::max(scale, 1.0 / p.chi);
    if (p.nu > 0.0) scale = std::max(scale, 1.0 / p.nu);
    opts.t_start = 1e-6 * scale;
    opts.t_max = t_max;
    return opts;
}

std::optional<double> survival_time(const EnsembleParams& e, const ModelParams& p,
                                    double t_max) {
    require_valid(p);
    require_valid(e);
    return threshold_time([&](double t) { return ensemble_survival(e, p, t); },
                          p.lambda, scan_options_for(p, t_max));
}

std::optional<double> purity_halflife(const EnsembleParams& e, const ModelParams& p,
                                      double t_max) {
    require_valid(p);
    require_valid(e);
    return threshold_time([&](double t) { return ensemble_purity(e, p, t); },
                          0.5, scan_options_for(p, t_max));
}

SurvivalCurve sample_curve(const EnsembleParams& e, const ModelParams& p,
                           CurveKind kind, double t_max, int n) {
    if (n < 2) throw std::invalid_argument("sample_curve: need at least 2 points");
    if (!(t_max > 0.0)) throw std::invalid_argument("sample_curve: t_max must be > 0");
    SurvivalCurve c;
    c.kind = kind;
    c.times.reserve(n);
    c.values.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(n - 1);
        c.times.push_back(t);
        c.values.push_back(kind == CurveKind::survival ? ensemble_survival(e, p, t)
                                                       : ensemble_purity(e, p, t));
    }
    return c;
}

}  // namespace robens
