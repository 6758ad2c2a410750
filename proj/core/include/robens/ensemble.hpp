#pragma once

#include <vector>

#include "robens/moments.hpp"

// Stationary pure-state Gaussian ensembles of the linearized mode. An
// ensemble is indexed by (beta, gamma): every member shares the second
// moments var_x = gamma, cov_xy = beta, var_y = alpha = (1 + beta^2)/gamma
// and members differ only in their mean amplitude xbar, which is distributed
// as a zero-mean Gaussian of variance 1 - gamma (a point mass at gamma = 1).

namespace robens {

/// Pure-state ensemble descriptor. alpha is derived so that the purity
/// identity alpha*gamma - beta^2 = 1 holds by construction.
struct EnsembleParams {
    double beta = 0.0;
    double gamma = 1.0;  ///< in (0, 1]

    double alpha() const { return (1.0 + beta * beta) / gamma; }
};

/// One weighted member of the xbar distribution.
struct EnsembleMemberWeight {
    double xbar = 0.0;
    double density = 0.0;
};

/// The coherent-state ensemble (beta = 0, gamma = 1).
inline EnsembleParams coherent_ensemble() { return EnsembleParams{0.0, 1.0}; }

/// Throw std::invalid_argument unless 0 < gamma <= 1 and beta is finite.
void require_valid(const EnsembleParams& e);

/// The pure member state with mean (xbar, 0).
GaussianState member_state(const EnsembleParams& e, double xbar);

/// Gaussian member weight: pdf of N(0, 1 - gamma) at xbar. At gamma = 1 the
/// distribution is a point mass at 0 (returns +inf there, 0 elsewhere).
/// Throws for gamma > 1.
double weight_density(const EnsembleParams& e, double xbar);

/// The (xbar, density) pair for one member.
EnsembleMemberWeight member_weight(const EnsembleParams& e, double xbar);

/// Left-hand side of the realizability inequality,
/// (-2 chi beta + 2 + nu)(-2 gamma + 2) - (beta + chi gamma)^2.
double pr_constraint_value(const EnsembleParams& e, const ModelParams& p);

/// Whether some unraveling of the master equation produces this ensemble.
/// Boundary points count as realizable (tolerance tol on the constraint).
bool is_physically_realizable(const EnsembleParams& e, const ModelParams& p,
                              double tol = 1e-9);

/// Real roots in beta of the realizability boundary at fixed gamma, sorted
/// ascending. The realizable betas form the closed interval between them.
/// For gamma in (0, 1) there are always two roots; exactly one at gamma = 1;
/// none (empty result) when the discriminant is negative.
std::vector<double> pr_boundary_betas(double gamma, const ModelParams& p);

/// Large-chi small-gamma asymptote of the upper boundary root,
/// beta = -chi gamma^2 / 4.
double pr_boundary_beta_asymptotic(double gamma, const ModelParams& p);

/// Mixedness of the stationary state for mean boson number mu >> 1:
/// purity Tr[rho_ss^2] = (4 pi mu)^{-1/2} and the largest eigenvalue
/// (2 pi mu)^{-1/2}. asymptotic_valid flags whether mu is large enough for
/// the formulas to mean anything.
struct StationaryMixedness {
    double purity = 0.0;
    double max_eigenvalue = 0.0;
    bool asymptotic_valid = false;
};
StationaryMixedness stationary_mixedness(double mu);

/// Whether lambda sits strictly between the stationary purity and 1.
bool lambda_within_bounds(double lambda, double mu);

}  // namespace robens
