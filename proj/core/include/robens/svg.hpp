#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robens/moments.hpp"
#include "robens/optimize.hpp"

// Static SVG figures with no plotting dependency: phase-space ellipse
// portraits, log-log sweep plots, and contour maps with the realizability
// mask. Output is deterministic; the generation-time comment can be
// suppressed so identical inputs give identical bytes.

namespace robens::svg {

struct Options {
    int width = 720;
    int height = 540;
    bool timestamp = true;
    std::string title;
    std::string provenance;  ///< emitted as a comment when non-empty
};

/// One-standard-deviation Wigner ellipses. groups[k] holds the states drawn
/// for times[k]; earlier times are drawn darker.
std::string ellipse_figure(const std::vector<double>& times,
                           const std::vector<std::vector<GaussianState>>& groups,
                           const Options& opts = {});

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string dash;  ///< SVG stroke-dasharray, empty = solid
};

/// Log-log plot with decade ticks. Non-positive points are skipped.
std::string loglog_figure(const std::vector<Series>& series, const std::string& x_label,
                          const std::string& y_label, const Options& opts = {});

/// Linear-axes polyline plot (decay curves and the like).
std::string xy_figure(const std::vector<Series>& series, const std::string& x_label,
                      const std::string& y_label, const Options& opts = {});

/// Contour map of grid.tau with the realizable region shaded; optional
/// (gamma, beta) marker cross. Levels default to 9 geometrically spaced
/// values between the finite extremes.
std::string contour_figure(const ContourGrid& grid, std::vector<double> levels = {},
                           std::optional<std::pair<double, double>> mark = std::nullopt,
                           const Options& opts = {});

}  // namespace robens::svg
