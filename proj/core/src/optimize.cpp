#include "robens/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "robens/errors.hpp"
#include "robens/parallel.hpp"
#include "robens/robustness.hpp"

namespace robens {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

// Objective wrapper: clamps into the search box, projects beta onto the
// admissible interval when constrained, and evaluates the measure.
struct Objective {
    const ModelParams& p;
    bool constrained;
    Measure measure;
    double t_max;
    double beta_bound;
    double gamma_floor;
    mutable long evals = 0;

    struct Point {
        double gamma;
        double beta;
    };

    Point project(double gamma, double beta) const {
        gamma = clamp(gamma, gamma_floor, 1.0);
        beta = clamp(beta, -beta_bound, beta_bound);
        if (constrained) {
            const auto roots = pr_boundary_betas(gamma, p);
            if (roots.size() == 1)
                beta = roots[0];
            else if (roots.size() == 2)
                beta = clamp(beta, roots[0], roots[1]);
        }
        return {gamma, beta};
    }

    double value_at(const Point& q) const {
        ++evals;
        const EnsembleParams e{q.beta, q.gamma};
        const auto tau = measure == Measure::survival ? survival_time(e, p, t_max)
                                                      : purity_halflife(e, p, t_max);
        return tau ? *tau : kNegInf;
    }

    // (u, v) = (ln gamma, beta)
    double value_uv(double u, double v) const {
        return value_at(project(std::exp(u), v));
    }
};

struct Vertex {
    double u = 0.0;
    double v = 0.0;
    double f = kNegInf;
};

// Two-dimensional Nelder-Mead ascent with standard coefficients. The
// objective already projects out-of-box points, so vertices may wander; the
// returned vertex is re-projected by the caller.
Vertex nelder_mead_max(const Objective& obj, double u0, double v0, double du, double dv,
                       int max_iter) {
    std::array<Vertex, 3> s;
    s[0] = {u0, v0, obj.value_uv(u0, v0)};
    s[1] = {u0 + du, v0, obj.value_uv(u0 + du, v0)};
    s[2] = {u0, v0 + dv, obj.value_uv(u0, v0 + dv)};

    auto order = [&s] {
        std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f > b.f; });
    };
    order();

    for (int it = 0; it < max_iter; ++it) {
        if (s[0].f == kNegInf) break;  // whole simplex in a dead region
        const double fspread = s[0].f - s[2].f;
        const double size = std::abs(s[0].u - s[2].u) + std::abs(s[0].v - s[2].v) +
                            std::abs(s[1].u - s[2].u) + std::abs(s[1].v - s[2].v);
        if (fspread <= 1e-10 * (std::abs(s[0].f) + 1e-300) && size <= 1e-7) break;

        const double cu = 0.5 * (s[0].u + s[1].u);
        const double cv = 0.5 * (s[0].v + s[1].v);
        const double ru = cu + (cu - s[2].u);
        const double rv = cv + (cv - s[2].v);
        const double fr = obj.value_uv(ru, rv);

        if (fr > s[0].f) {
            const double eu = cu + 2.0 * (cu - s[2].u);
            const double ev = cv + 2.0 * (cv - s[2].v);
            const double fe = obj.value_uv(eu, ev);
            s[2] = fe > fr ? Vertex{eu, ev, fe} : Vertex{ru, rv, fr};
        } else if (fr > s[1].f) {
            s[2] = {ru, rv, fr};
        } else {
            const bool outside = fr > s[2].f;
            const double ku = outside ? cu + 0.5 * (cu - s[2].u) : cu - 0.5 * (cu - s[2].u);
            const double kv = outside ? cv + 0.5 * (cv - s[2].v) : cv - 0.5 * (cv - s[2].v);
            const double fk = obj.value_uv(ku, kv);
            if (fk > (outside ? fr : s[2].f)) {
                s[2] = {ku, kv, fk};
            } else {
                for (int i = 1; i < 3; ++i) {
                    s[i].u = s[0].u + 0.5 * (s[i].u - s[0].u);
                    s[i].v = s[0].v + 0.5 * (s[i].v - s[0].v);
                    s[i].f = obj.value_uv(s[i].u, s[i].v);
                }
            }
        }
        order();
    }
    return s[0];
}

// Deterministic reduction: lexicographic max on (tau, -gamma, beta).
bool better(const Candidate& a, const Candidate& b) {
    if (a.tau != b.tau) return a.tau > b.tau;
    if (a.gamma != b.gamma) return a.gamma < b.gamma;
    return a.beta > b.beta;
}

// 1-D golden-section ascent over beta on the gamma = 1 edge.
Candidate edge_candidate(const Objective& obj, double beta_bound) {
    if (obj.constrained) {
        // At gamma = 1 the admissible interval collapses to a single beta.
        const auto q = obj.project(1.0, 0.0);
        return {q.beta, 1.0, obj.value_at(q)};
    }
    auto f = [&](double b) { return obj.value_at({1.0, b}); };
    // Coarse bracket
    double best_b = 0.0, best_f = kNegInf;
    const int n_scan = 81;
    for (int i = 0; i < n_scan; ++i) {
        const double b = -beta_bound + 2.0 * beta_bound * i / (n_scan - 1);
        const double fb = f(b);
        if (fb > best_f) {
            best_f = fb;
            best_b = b;
        }
    }
    const double step = 2.0 * beta_bound / (n_scan - 1);
    double lo = std::max(-beta_bound, best_b - step);
    double hi = std::min(beta_bound, best_b + step);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 60 && hi - lo > 1e-9 * (1.0 + std::abs(lo)); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        }
    }
    const double b = f1 > f2 ? x1 : x2;
    return {b, 1.0, std::max(f1, f2)};
}

std::vector<double> gamma_grid_values(double floor, int per_decade) {
    const double decades = std::log10(1.0 / floor);
    const int n = std::max(2, static_cast<int>(std::ceil(decades * per_decade)) + 1);
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = std::pow(10.0, std::log10(floor) * (1.0 - static_cast<double>(i) / (n - 1)));
    g.back() = 1.0;
    return g;
}

std::vector<double> beta_grid_values(double beta_bound) {
    std::vector<double> b;
    for (double x = -4.0; x <= 4.0 + 1e-12; x += 0.5) b.push_back(x);
    for (double x = 8.0; x < beta_bound; x *= 2.0) {
        b.push_back(x);
        b.push_back(-x);
    }
    if (beta_bound > 4.0) {
        b.push_back(beta_bound);
        b.push_back(-beta_bound);
    }
    std::sort(b.begin(), b.end());
    return b;
}

}  // namespace

ModelParams with_param(ModelParams p, SweepParam param, double value) {
    switch (param) {
        case SweepParam::chi: p.chi = value; break;
        case SweepParam::nu: p.nu = value; break;
        case SweepParam::lambda: p.lambda = value; break;
    }
    return p;
}

double default_beta_bound(const ModelParams& p) {
    return std::max({4.0, 4.0 * std::sqrt(p.chi), 4.0 * std::sqrt(p.nu)});
}

double default_gamma_floor(const ModelParams& p) {
    double f = 1.0;
    if (p.chi > 0.0) f = std::min(f, std::pow(p.chi, -2.0 / 3.0));
    if (p.nu > 0.0) f = std::min(f, std::pow(p.nu, -0.5));
    return 1e-4 * f;
}

RobustnessResult maximize_robustness(const ModelParams& p, bool constrained, Measure measure,
                                     const OptimizeOptions& opts,
                                     const std::optional<Candidate>& warm_start) {
    require_valid(p);
    const double beta_bound = default_beta_bound(p);
    const double gamma_floor = default_gamma_floor(p);
    const Objective obj{p, constrained, measure, opts.t_max, beta_bound, gamma_floor};

    // Coarse grid. For the constrained search the admissible interval edges
    // at each gamma are sampled explicitly, since the optimum often sits on
    // the boundary itself.
    const auto gammas = gamma_grid_values(gamma_floor, opts.gamma_per_decade);
    const auto betas = beta_grid_values(beta_bound);
    std::vector<Candidate> cells;
    cells.reserve(gammas.size() * (betas.size() + 6));
    for (const double g : gammas) {
        std::vector<double> cand(betas.begin(), betas.end());
        if (constrained) {
            const auto roots = pr_boundary_betas(g, p);
            if (roots.size() == 2) {
                const double width = roots[1] - roots[0];
                for (const double frac : {0.0, 1e-3, 1e-2, 0.1, 0.3})
                    cand.push_back(roots[1] - frac * width);
            } else if (roots.size() == 1) {
                cand.push_back(roots[0]);
            }
        }
        double last_beta = std::numeric_limits<double>::quiet_NaN();
        std::vector<Objective::Point> pts;
        for (const double b : cand) pts.push_back(obj.project(g, b));
        std::sort(pts.begin(), pts.end(),
                  [](const auto& a, const auto& b) { return a.beta < b.beta; });
        for (const auto& q : pts) {
            if (!std::isnan(last_beta) && std::abs(q.beta - last_beta) <= 1e-9 * (1.0 + std::abs(q.beta)))
                continue;
            last_beta = q.beta;
            cells.push_back({q.beta, q.gamma, obj.value_at(q)});
        }
    }

    // Seeds for refinement: the best grid cells, separated so that distinct
    // basins each get a start.
    std::vector<Candidate> sorted = cells;
    std::sort(sorted.begin(), sorted.end(), better);
    std::vector<Candidate> seeds;
    for (const auto& c : sorted) {
        if (c.tau == kNegInf) break;
        bool close = false;
        for (const auto& s : seeds) {
            if (std::abs(std::log(c.gamma / s.gamma)) < 0.15 && std::abs(c.beta - s.beta) < 0.2) {
                close = true;
                break;
            }
        }
        if (!close) seeds.push_back(c);
        if (static_cast<int>(seeds.size()) >= opts.refine_starts) break;
    }
    // A near-edge start catches interior maxima that detach continuously
    // from the gamma = 1 boundary.
    if (!seeds.empty()) seeds.push_back({seeds.front().beta, 0.97, kNegInf});
    if (warm_start) seeds.push_back(*warm_start);
    std::mt19937 rng(opts.seed);
    std::uniform_real_distribution<double> unif_u(std::log(gamma_floor), 0.0);
    std::uniform_real_distribution<double> unif_v(-4.0, 4.0);
    for (int i = 0; i < opts.random_starts; ++i) {
        const double u = unif_u(rng);
        const double v = unif_v(rng);
        seeds.push_back({v, std::exp(u), kNegInf});
    }
    if (seeds.empty())
        throw numerical_error("maximize_robustness: every grid evaluation failed");

    std::optional<Candidate> interior;
    for (const auto& s : seeds) {
        const double u0 = std::log(s.gamma);
        // keep the initial simplex inside the box so it cannot start flat
        const double du = u0 + 0.2 > 0.0 ? -0.2 : 0.2;
        const Vertex v = nelder_mead_max(obj, u0, s.beta, du,
                                         0.1 * (1.0 + std::abs(s.beta)), opts.nm_max_iter);
        if (v.f == kNegInf) continue;
        const auto q = obj.project(std::exp(v.u), v.v);
        const Candidate c{q.beta, q.gamma, v.f};
        if (c.gamma < 1.0 - 1e-12 && (!interior || better(c, *interior))) interior = c;
    }

    const Candidate edge = edge_candidate(obj, beta_bound);
    const bool edge_ok = edge.tau != kNegInf;
    if (!interior && !edge_ok)
        throw numerical_error("maximize_robustness: no admissible optimum found");

    // Edge-vs-interior selection. When the interior maximum sits in a
    // genuinely distinct basin and the two values tie within tie_rel, prefer
    // the edge so a hand-over shows up as a parameter discontinuity instead
    // of numerical flapping. A near-edge interior maximum (gamma close to 1)
    // is the same basin, so the plain maximum decides.
    Candidate winner;
    std::optional<Candidate> runner;
    if (!interior) {
        winner = edge;
    } else if (!edge_ok) {
        winner = *interior;
    } else if (interior->gamma >= 0.9) {
        winner = better(*interior, edge) ? *interior : edge;
    } else if (interior->tau > edge.tau * (1.0 + opts.tie_rel)) {
        winner = *interior;
        if (interior->tau - edge.tau <= 0.01 * interior->tau) runner = edge;
    } else {
        winner = edge;
        if (std::abs(interior->tau - edge.tau) <= 0.01 * edge.tau) runner = *interior;
    }

    // The gamma = 1 point of a constrained run has beta pinned to -chi by
    // the constraint, not by the search box; exempt it from the rail check.
    const bool pinned_edge = constrained && winner.gamma >= 1.0 - 1e-12;
    if (!pinned_edge && std::abs(winner.beta) >= 0.999 * beta_bound)
        throw numerical_error("maximize_robustness: optimizer railed against the beta bound");

    RobustnessResult r;
    r.beta_star = winner.beta;
    r.gamma_star = winner.gamma;
    r.alpha_star = EnsembleParams{winner.beta, winner.gamma}.alpha();
    r.tau_star = winner.tau;
    r.constrained = constrained;
    r.measure = measure;
    r.n_evals = obj.evals;
    r.runner_up = runner;
    r.on_boundary = winner.gamma >= 1.0 - 1e-12;
    if (!r.on_boundary && constrained) {
        const auto roots = pr_boundary_betas(winner.gamma, p);
        for (const double root : roots)
            if (std::abs(winner.beta - root) <= 1e-9 * (1.0 + std::abs(root)))
                r.on_boundary = true;
    }
    return r;
}

ContourGrid contour_grid(const ModelParams& p, double gamma_lo, double gamma_hi,
                         double beta_lo, double beta_hi, int n_gamma, int n_beta,
                         Measure measure, double t_max) {
    require_valid(p);
    if (n_gamma < 2 || n_beta < 2)
        throw std::invalid_argument("contour_grid: resolution must be at least 2 per axis");
    if (!(gamma_lo > 0.0) || !(gamma_hi <= 1.0) || !(gamma_lo < gamma_hi))
        throw std::invalid_argument("contour_grid: need 0 < gamma_lo < gamma_hi <= 1");
    if (!(beta_lo < beta_hi)) throw std::invalid_argument("contour_grid: need beta_lo < beta_hi");

    ContourGrid grid;
    grid.gamma_axis.resize(n_gamma);
    grid.beta_axis.resize(n_beta);
    for (int i = 0; i < n_gamma; ++i)
        grid.gamma_axis[i] = gamma_lo + (gamma_hi - gamma_lo) * i / (n_gamma - 1);
    for (int j = 0; j < n_beta; ++j)
        grid.beta_axis[j] = beta_lo + (beta_hi - beta_lo) * j / (n_beta - 1);
    grid.tau.assign(static_cast<std::size_t>(n_gamma) * n_beta,
                    std::numeric_limits<double>::quiet_NaN());
    grid.pr_mask.assign(grid.tau.size(), 0);

    parallel_for(grid.tau.size(), [&](std::size_t idx) {
        const std::size_t i = idx / static_cast<std::size_t>(n_beta);
        const std::size_t j = idx % static_cast<std::size_t>(n_beta);
        const EnsembleParams e{grid.beta_axis[j], grid.gamma_axis[i]};
        grid.pr_mask[idx] = is_physically_realizable(e, p) ? 1 : 0;
        try {
            const auto tau = measure == Measure::survival ? survival_time(e, p, t_max)
                                                          : purity_halflife(e, p, t_max);
            if (tau) grid.tau[idx] = *tau;
        } catch (const std::exception&) {
            // cell stays NaN
        }
    });
    return grid;
}

std::optional<double> detect_transition(const ModelParams& tmpl, SweepParam param,
                                        double lo, double hi, bool constrained,
                                        Measure measure, double rel_tol,
                                        const OptimizeOptions& opts) {
    if (param == SweepParam::lambda)
        throw std::invalid_argument("detect_transition: param must be chi or nu");
    if (!(lo < hi)) throw std::invalid_argument("detect_transition: need lo < hi");

    auto at_edge = [&](double value) {
        const auto r = maximize_robustness(with_param(tmpl, param, value), constrained,
                                           measure, opts);
        return r.gamma_star >= 0.999;
    };
    if (!at_edge(lo) || at_edge(hi)) return std::nullopt;
    while (hi - lo > rel_tol * 0.5 * (hi + lo)) {
        const double mid = 0.5 * (lo + hi);
        if (at_edge(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace robens
