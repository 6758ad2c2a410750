#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "robens/ensemble.hpp"
#include "robens/moments.hpp"

// Maximizing the survival time (or purity half-life) over the ensemble
// parameters (beta, gamma), with or without the realizability constraint.
// The search is a coarse multistart grid followed by Nelder-Mead refinement
// in (ln gamma, beta); the constraint is handled by projecting beta onto the
// admissible interval at the candidate gamma, since the constrained optimum
// typically sits exactly on the boundary.

namespace robens {

enum class Measure { survival, purity };
enum class SweepParam { chi, nu, lambda };

/// Copy of p with the given parameter replaced.
ModelParams with_param(ModelParams p, SweepParam param, double value);

struct Candidate {
    double beta = 0.0;
    double gamma = 1.0;
    double tau = 0.0;
};

struct RobustnessResult {
    double beta_star = 0.0;
    double gamma_star = 1.0;
    double alpha_star = 1.0;
    double tau_star = 0.0;
    bool constrained = false;
    Measure measure = Measure::survival;
    bool on_boundary = false;  ///< realizability boundary or the gamma = 1 edge
    long n_evals = 0;
    /// Populated when a distinct local maximum comes within 1% of the winner
    /// (the competing basin near a boundary/interior hand-over).
    std::optional<Candidate> runner_up;

    EnsembleParams ensemble() const { return EnsembleParams{beta_star, gamma_star}; }
};

struct OptimizeOptions {
    double t_max = 1e3;
    int gamma_per_decade = 8;   ///< coarse-grid density in log gamma
    int refine_starts = 6;      ///< best grid seeds refined by Nelder-Mead
    int random_starts = 3;      ///< extra randomized refinement starts
    std::uint32_t seed = 20010906;  ///< fixed seed: sweeps reproduce bit-for-bit
    double tie_rel = 1e-3;      ///< edge-vs-interior preference band
    int nm_max_iter = 300;
};

/// Search box half-width for beta: max(4, 4 sqrt(chi), 4 sqrt(nu)). Optimal
/// |beta| stays O(1) in every regime; the optimizer must never rail here.
double default_beta_bound(const ModelParams& p);

/// Lower grid edge for gamma, scaled so the asymptotic scaling regimes stay
/// interior to the search box.
double default_gamma_floor(const ModelParams& p);

/// Global maximizer of the robustness measure over {0 < gamma <= 1} x
/// {|beta| <= default_beta_bound}, restricted to realizable ensembles when
/// constrained. tau_star is a direct function evaluation at the optimum.
/// Throws numerical_error if no admissible point yields a crossing.
RobustnessResult maximize_robustness(const ModelParams& p, bool constrained, Measure measure,
                                     const OptimizeOptions& opts = {},
                                     const std::optional<Candidate>& warm_start = {});

/// tau evaluated on a rectangular (gamma, beta) grid plus the realizability
/// mask. Cells where the measure has no crossing hold NaN.
struct ContourGrid {
    std::vector<double> gamma_axis;
    std::vector<double> beta_axis;
    std::vector<double> tau;           ///< row-major, gamma index major
    std::vector<std::uint8_t> pr_mask; ///< 1 = physically realizable

    std::size_t n_gamma() const { return gamma_axis.size(); }
    std::size_t n_beta() const { return beta_axis.size(); }
    double tau_at(std::size_t i, std::size_t j) const { return tau[i * n_beta() + j]; }
    bool pr_at(std::size_t i, std::size_t j) const { return pr_mask[i * n_beta() + j] != 0; }
};

ContourGrid contour_grid(const ModelParams& p, double gamma_lo, double gamma_hi,
                         double beta_lo, double beta_hi, int n_gamma, int n_beta,
                         Measure measure = Measure::survival, double t_max = 1e3);

/// Parameter value where the global optimum hands over from the gamma = 1
/// edge to an interior maximum, located by bisection on that indicator to
/// the given relative tolerance. Requires the indicator to differ at lo and
/// hi; returns nullopt when it does not ("not found").
std::optional<double> detect_transition(const ModelParams& tmpl, SweepParam param,
                                        double lo, double hi, bool constrained,
                                        Measure measure = Measure::survival,
                                        double rel_tol = 1e-2,
                                        const OptimizeOptions& opts = {});

}  // namespace robens
