#include "robens/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <numbers>
#include <sstream>

namespace robens::svg {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const char* kGreys[] = {"#000000", "#7a7a7a", "#bdbdbd", "#dedede"};

struct Canvas {
    std::ostringstream out;
    int width, height;

    Canvas(const Options& opts) : width(opts.width), height(opts.height) {
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
            << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
        if (!opts.provenance.empty()) out << "<!-- " << opts.provenance << " -->\n";
        if (opts.timestamp) {
            std::time_t now = std::time(nullptr);
            char buf[64];
            std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
            out << "<!-- generated " << buf << " -->\n";
        }
        out << "<rect width=\"" << width << "\" height=\"" << height
            << "\" fill=\"#ffffff\"/>\n";
        if (!opts.title.empty())
            out << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" "
                << "font-family=\"sans-serif\" font-size=\"14\">" << opts.title << "</text>\n";
    }

    std::string finish() {
        out << "</svg>\n";
        return out.str();
    }
};

// Data-to-screen affine map for one plot area.
struct Frame {
    double x0, x1, y0, y1;          // data range
    double px0, px1, py0, py1;      // pixels (py0 = bottom)

    double sx(double x) const { return px0 + (x - x0) / (x1 - x0) * (px1 - px0); }
    double sy(double y) const { return py0 - (y - y0) / (y1 - y0) * (py0 - py1); }
};

void draw_axes_box(Canvas& c, const Frame& f, const std::string& x_label,
                   const std::string& y_label) {
    c.out << "<rect x=\"" << num(f.px0) << "\" y=\"" << num(f.py1) << "\" width=\""
          << num(f.px1 - f.px0) << "\" height=\"" << num(f.py0 - f.py1)
          << "\" fill=\"none\" stroke=\"#000\"/>\n";
    c.out << "<text x=\"" << num(0.5 * (f.px0 + f.px1)) << "\" y=\"" << num(f.py0 + 34)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label
          << "</text>\n";
    c.out << "<text x=\"" << num(f.px0 - 40) << "\" y=\"" << num(0.5 * (f.py0 + f.py1))
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
          << "transform=\"rotate(-90 " << num(f.px0 - 40) << " " << num(0.5 * (f.py0 + f.py1))
          << ")\">" << y_label << "</text>\n";
}

void polyline(Canvas& c, const std::vector<std::pair<double, double>>& pts,
              const std::string& dash, const std::string& color = "#000") {
    if (pts.size() < 2) return;
    c.out << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.3\"";
    if (!dash.empty()) c.out << " stroke-dasharray=\"" << dash << "\"";
    c.out << " d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
        c.out << (i == 0 ? "M" : "L") << num(pts[i].first) << " " << num(pts[i].second);
    c.out << "\"/>\n";
}

void legend(Canvas& c, const Frame& f, const std::vector<Series>& series) {
    double y = f.py1 + 16;
    for (const auto& s : series) {
        const double x = f.px1 - 150;
        c.out << "<path d=\"M" << num(x) << " " << num(y - 4) << "L" << num(x + 28) << " "
              << num(y - 4) << "\" stroke=\"#000\" stroke-width=\"1.3\"";
        if (!s.dash.empty()) c.out << " stroke-dasharray=\"" << s.dash << "\"";
        c.out << " fill=\"none\"/>\n";
        c.out << "<text x=\"" << num(x + 34) << "\" y=\"" << num(y)
              << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
        y += 15;
    }
}

}  // namespace

std::string ellipse_figure(const std::vector<double>& times,
                           const std::vector<std::vector<GaussianState>>& groups,
                           const Options& opts) {
    Canvas c(opts);
    // Bounding box from the one-standard-deviation extents.
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool first = true;
    for (const auto& group : groups)
        for (const auto& s : group) {
            const double ex = std::sqrt(s.var_x), ey = std::sqrt(s.var_y);
            if (first) {
                x0 = s.mean_x - ex;
                x1 = s.mean_x + ex;
                y0 = s.mean_y - ey;
                y1 = s.mean_y + ey;
                first = false;
            } else {
                x0 = std::min(x0, s.mean_x - ex);
                x1 = std::max(x1, s.mean_x + ex);
                y0 = std::min(y0, s.mean_y - ey);
                y1 = std::max(y1, s.mean_y + ey);
            }
        }
    if (first) return Canvas(opts).finish();
    const double mx = 0.1 * (x1 - x0 + 1e-9), my = 0.1 * (y1 - y0 + 1e-9);
    Frame f{x0 - mx, x1 + mx, y0 - my, y1 + my,
            60.0, opts.width - 20.0, opts.height - 50.0, 40.0};
    draw_axes_box(c, f, "x (amplitude quadrature)", "y (phase quadrature)");

    for (std::size_t k = 0; k < groups.size(); ++k) {
        const char* color = kGreys[std::min<std::size_t>(k, 3)];
        for (const auto& s : groups[k]) {
            // Principal axes of the covariance ellipse.
            const double a = s.var_x, b = s.cov_xy, d = s.var_y;
            const double tr2 = 0.5 * (a + d);
            const double disc = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
            const double l1 = tr2 + disc, l2 = std::max(tr2 - disc, 1e-300);
            const double phi = 0.5 * std::atan2(2.0 * b, a - d);  // major axis vs x-axis
            // Screen-space: anisotropic data scale deforms the ellipse, so
            // sample the boundary and emit a path.
            std::vector<std::pair<double, double>> pts;
            const int n = 72;
            for (int i = 0; i <= n; ++i) {
                const double th = 2.0 * std::numbers::pi * i / n;
                const double ux = std::sqrt(l1) * std::cos(th);
                const double uy = std::sqrt(l2) * std::sin(th);
                const double x = s.mean_x + ux * std::cos(phi) - uy * std::sin(phi);
                const double y = s.mean_y + ux * std::sin(phi) + uy * std::cos(phi);
                pts.emplace_back(f.sx(x), f.sy(y));
            }
            polyline(c, pts, "", color);
        }
    }
    // time legend
    double ly = 56;
    for (std::size_t k = 0; k < times.size() && k < groups.size(); ++k) {
        c.out << "<text x=\"" << num(opts.width - 150.0) << "\" y=\"" << num(ly)
              << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
              << kGreys[std::min<std::size_t>(k, 3)] << "\">t = " << num(times[k])
              << "</text>\n";
        ly += 15;
    }
    return c.finish();
}

namespace {

std::string pow10_label(int k) {
    if (k == 0) return "1";
    char buf[24];
    std::snprintf(buf, sizeof buf, "1e%d", k);
    return buf;
}

void decade_ticks(Canvas& c, const Frame& f, bool x_axis) {
    const double lo = x_axis ? f.x0 : f.y0;
    const double hi = x_axis ? f.x1 : f.y1;
    for (int k = static_cast<int>(std::ceil(lo - 1e-9)); k <= std::floor(hi + 1e-9); ++k) {
        if (x_axis) {
            const double px = f.sx(k);
            c.out << "<path d=\"M" << num(px) << " " << num(f.py0) << "L" << num(px) << " "
                  << num(f.py0 + 5) << "\" stroke=\"#000\"/>\n";
            c.out << "<text x=\"" << num(px) << "\" y=\"" << num(f.py0 + 18)
                  << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
                  << pow10_label(k) << "</text>\n";
        } else {
            const double py = f.sy(k);
            c.out << "<path d=\"M" << num(f.px0 - 5) << " " << num(py) << "L" << num(f.px0)
                  << " " << num(py) << "\" stroke=\"#000\"/>\n";
            c.out << "<text x=\"" << num(f.px0 - 8) << "\" y=\"" << num(py + 3)
                  << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
                  << pow10_label(k) << "</text>\n";
        }
    }
}

}  // namespace

std::string loglog_figure(const std::vector<Series>& series, const std::string& x_label,
                          const std::string& y_label, const Options& opts) {
    Canvas c(opts);
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    std::size_t n_points = 0;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
            ++n_points;
            x0 = std::min(x0, std::log10(s.x[i]));
            x1 = std::max(x1, std::log10(s.x[i]));
            y0 = std::min(y0, std::log10(s.y[i]));
            y1 = std::max(y1, std::log10(s.y[i]));
        }
    if (n_points == 0) return c.finish();
    // degenerate (single point or flat): pad so the axes stay drawable
    if (!(x0 < x1)) {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if (!(y0 < y1)) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    const double my = 0.05 * (y1 - y0);
    Frame f{x0, x1, y0 - my, y1 + my, 64.0, opts.width - 20.0, opts.height - 50.0, 40.0};
    draw_axes_box(c, f, x_label, y_label);
    decade_ticks(c, f, true);
    decade_ticks(c, f, false);
    for (const auto& s : series) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
            pts.emplace_back(f.sx(std::log10(s.x[i])), f.sy(std::log10(s.y[i])));
        }
        polyline(c, pts, s.dash);
        for (const auto& [px, py] : pts)
            c.out << "<circle cx=\"" << num(px) << "\" cy=\"" << num(py)
                  << "\" r=\"2.2\" fill=\"#000\"/>\n";
    }
    legend(c, f, series);
    return c.finish();
}

std::string xy_figure(const std::vector<Series>& series, const std::string& x_label,
                      const std::string& y_label, const Options& opts) {
    Canvas c(opts);
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    if (!(x0 < x1)) {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if (!(y0 < y1)) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    Frame f{x0, x1, y0, y1, 64.0, opts.width - 20.0, opts.height - 50.0, 40.0};
    draw_axes_box(c, f, x_label, y_label);
    for (int k = 0; k <= 4; ++k) {
        const double x = x0 + (x1 - x0) * k / 4.0;
        c.out << "<text x=\"" << num(f.sx(x)) << "\" y=\"" << num(f.py0 + 18)
              << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
              << num(x) << "</text>\n";
        const double y = y0 + (y1 - y0) * k / 4.0;
        c.out << "<text x=\"" << num(f.px0 - 8) << "\" y=\"" << num(f.sy(y) + 3)
              << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << num(y)
              << "</text>\n";
    }
    for (const auto& s : series) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < s.x.size(); ++i)
            pts.emplace_back(f.sx(s.x[i]), f.sy(s.y[i]));
        polyline(c, pts, s.dash);
    }
    legend(c, f, series);
    return c.finish();
}

std::string contour_figure(const ContourGrid& grid, std::vector<double> levels,
                           std::optional<std::pair<double, double>> mark,
                           const Options& opts) {
    Canvas c(opts);
    const std::size_t ng = grid.n_gamma(), nb = grid.n_beta();
    if (ng < 2 || nb < 2) return c.finish();
    Frame f{grid.gamma_axis.front(), grid.gamma_axis.back(), grid.beta_axis.front(),
            grid.beta_axis.back(), 64.0, opts.width - 20.0, opts.height - 50.0, 40.0};
    draw_axes_box(c, f, "gamma", "beta");
    for (int k = 0; k <= 4; ++k) {
        const double x = f.x0 + (f.x1 - f.x0) * k / 4.0;
        c.out << "<text x=\"" << num(f.sx(x)) << "\" y=\"" << num(f.py0 + 18)
              << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
              << num(x) << "</text>\n";
        const double y = f.y0 + (f.y1 - f.y0) * k / 4.0;
        c.out << "<text x=\"" << num(f.px0 - 8) << "\" y=\"" << num(f.sy(y) + 3)
              << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << num(y)
              << "</text>\n";
    }

    // Realizable region: shaded cell rectangles.
    for (std::size_t i = 0; i + 1 < ng; ++i)
        for (std::size_t j = 0; j + 1 < nb; ++j) {
            if (!grid.pr_at(i, j)) continue;
            const double xa = f.sx(grid.gamma_axis[i]);
            const double xb = f.sx(grid.gamma_axis[i + 1]);
            const double ya = f.sy(grid.beta_axis[j + 1]);
            const double yb = f.sy(grid.beta_axis[j]);
            c.out << "<rect x=\"" << num(xa) << "\" y=\"" << num(ya) << "\" width=\""
                  << num(xb - xa) << "\" height=\"" << num(yb - ya)
                  << "\" fill=\"#cfe3f5\" stroke=\"none\"/>\n";
        }

    if (levels.empty()) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const double v : grid.tau)
            if (std::isfinite(v) && v > 0.0) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        if (std::isfinite(lo) && hi > lo)
            for (int k = 1; k <= 9; ++k)
                levels.push_back(lo * std::pow(hi / lo, k / 10.0));
    }

    // Marching squares on each level.
    auto interp = [](double va, double vb, double level) { return (level - va) / (vb - va); };
    for (const double level : levels) {
        std::ostringstream path;
        for (std::size_t i = 0; i + 1 < ng; ++i)
            for (std::size_t j = 0; j + 1 < nb; ++j) {
                const double v00 = grid.tau_at(i, j), v10 = grid.tau_at(i + 1, j);
                const double v01 = grid.tau_at(i, j + 1), v11 = grid.tau_at(i + 1, j + 1);
                if (!std::isfinite(v00) || !std::isfinite(v10) || !std::isfinite(v01) ||
                    !std::isfinite(v11))
                    continue;
                const double ga = grid.gamma_axis[i], gb = grid.gamma_axis[i + 1];
                const double ba = grid.beta_axis[j], bb = grid.beta_axis[j + 1];
                std::vector<std::pair<double, double>> hits;
                if ((v00 < level) != (v10 < level))
                    hits.emplace_back(ga + interp(v00, v10, level) * (gb - ga), ba);
                if ((v01 < level) != (v11 < level))
                    hits.emplace_back(ga + interp(v01, v11, level) * (gb - ga), bb);
                if ((v00 < level) != (v01 < level))
                    hits.emplace_back(ga, ba + interp(v00, v01, level) * (bb - ba));
                if ((v10 < level) != (v11 < level))
                    hits.emplace_back(gb, ba + interp(v10, v11, level) * (bb - ba));
                if (hits.size() >= 2)
                    path << "M" << num(f.sx(hits[0].first)) << " " << num(f.sy(hits[0].second))
                         << "L" << num(f.sx(hits[1].first)) << " " << num(f.sy(hits[1].second));
            }
        const std::string d = path.str();
        if (!d.empty())
            c.out << "<path fill=\"none\" stroke=\"#333\" stroke-width=\"1\" d=\"" << d
                  << "\"/>\n";
    }

    if (mark) {
        const double px = f.sx(mark->first), py = f.sy(mark->second);
        c.out << "<path stroke=\"#c00\" stroke-width=\"1.6\" d=\"M" << num(px - 5) << " "
              << num(py - 5) << "L" << num(px + 5) << " " << num(py + 5) << "M" << num(px - 5)
              << " " << num(py + 5) << "L" << num(px + 5) << " " << num(py - 5) << "\"/>\n";
    }
    return c.finish();
}

}  // namespace robens::svg
