#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "robens/ensemble.hpp"
#include "robens/moments.hpp"

// Survival probability, purity decay, and threshold-crossing times.
//
// The survival probability of one member is the phase-space overlap of the
// initial pure Gaussian with its evolved (generally mixed) successor,
//
//   S_xbar(t) = 2 exp(-d' (S0 + St)^{-1} d / 2) / sqrt(det(S0 + St)),
//
// with S0, St the 2x2 covariance matrices and d the difference of the mean
// vectors. Averaging over the Gaussian xbar weight is itself a Gaussian
// integral, giving the ensemble-averaged closed form evaluated here.

namespace robens {

enum class CurveKind { survival, purity };

/// A materialized decay curve, for file output. values[0] == 1.
struct SurvivalCurve {
    std::vector<double> times;
    std::vector<double> values;
    CurveKind kind = CurveKind::survival;
};

/// Survival probability at time t of the member with mean (xbar, 0).
double member_survival(const EnsembleParams& e, double xbar, const ModelParams& p, double t);

/// Ensemble-averaged survival probability at time t. Equals the xbar = 0
/// member survival when gamma = 1 (point-mass weight).
double ensemble_survival(const EnsembleParams& e, const ModelParams& p, double t);

/// Purity of an evolved member at time t; identical for every member since
/// the second moments evolve deterministically and independently of xbar.
double ensemble_purity(const EnsembleParams& e, const ModelParams& p, double t);

/// Maximum-overlap purity 2/(1 + 1/p) associated with purity p.
inline double max_overlap_purity(double p) { return 2.0 / (1.0 + 1.0 / p); }

struct ThresholdOptions {
    double t_start = 1e-6;  ///< first coarse-scan abscissa
    double t_max = 1e3;     ///< horizon; no crossing by then -> nullopt
    double growth = 1.5;    ///< coarse-scan geometric step
    double rel_tol = 1e-10; ///< bisection relative tolerance
};

/// First t with curve(t) <= threshold: geometric forward scan followed by
/// bisection. Returns nullopt when the curve stays above the threshold up to
/// t_max ("exceeds horizon"), never a sentinel number.
/// Requires curve(0) > threshold > 0.
template <class F>
std::optional<double> threshold_time(F&& curve, double threshold,
                                     const ThresholdOptions& opts = {}) {
    if (!(threshold > 0.0))
        throw std::invalid_argument("threshold_time: threshold must be > 0");
    if (!(curve(0.0) > threshold))
        throw std::invalid_argument("threshold_time: curve(0) must exceed the threshold");

    double lo = 0.0;
    double hi = opts.t_start;
    while (curve(hi) > threshold) {
        lo = hi;
        hi *= opts.growth;
        if (hi > opts.t_max) {
            if (lo < opts.t_max && curve(opts.t_max) <= threshold) {
                hi = opts.t_max;
                break;
            }
            return std::nullopt;
        }
    }
    while (hi - lo > opts.rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (curve(mid) > threshold)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Scan options adapted to the model: survival times stretch over several
/// decades as chi and nu vary, so the first scan point is scaled up when the
/// dynamics are slow.
ThresholdOptions scan_options_for(const ModelParams& p, double t_max = 1e3);

/// Survival time: first t with ensemble_survival = p.lambda.
std::optional<double> survival_time(const EnsembleParams& e, const ModelParams& p,
                                    double t_max = 1e3);

/// Purity half-life: first t with ensemble_purity = 1/2.
std::optional<double> purity_halflife(const EnsembleParams& e, const ModelParams& p,
                                      double t_max = 1e3);

/// Materialize a decay curve on n linearly spaced times in [0, t_max].
SurvivalCurve sample_curve(const EnsembleParams& e, const ModelParams& p,
                           CurveKind kind, double t_max, int n);

}  // namespace robens
