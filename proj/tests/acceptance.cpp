// Acceptance suite: every headline quantitative result the library must
// reproduce, one pass/fail line per criterion. Exits nonzero if any
// criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "robens/analysis.hpp"
#include "robens/optimize.hpp"
#include "robens/robustness.hpp"

using namespace robens;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    if (!ok) ++g_failures;
}

bool within(double value, double target, double tol) {
    return std::abs(value - target) <= tol;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

double rad_to_deg(double r) { return r * 180.0 / std::acos(-1.0); }

double tilt_deg_of(const RobustnessResult& r) {
    return rad_to_deg(tilt_angle(member_state(r.ensemble(), 0.0)));
}

// --------------------------------------------------------------------------

void criterion_1() {
    const auto tau = survival_time(coherent_ensemble(), ModelParams{0.0, 0.0});
    const bool ok = tau && within(*tau, 3.0, 1e-6);
    report(1, ok, "ideal-laser coherent survival time = " + num(tau.value_or(-1)) +
                      " (want 3.000 +- 1e-6)");
}

void criterion_2() {
    const auto tau = survival_time(coherent_ensemble(), ModelParams{50.0, 0.0});
    const bool ok = tau && within(*tau, 0.0678, 0.001);
    report(2, ok, "sheared coherent survival time = " + num(tau.value_or(-1)) +
                      " (want 0.0678 +- 0.001)");
}

void criterion_3() {
    const auto r = maximize_robustness(ModelParams{50.0, 0.0}, false, Measure::survival);
    const double tilt = tilt_deg_of(r);
    const bool ok = within(r.gamma_star, 0.100, 0.005) && within(r.beta_star, 0.225, 0.015) &&
                    within(r.tau_star, 0.100, 0.003) && within(tilt, 1.2, 0.15);
    report(3, ok, "unconstrained optimum gamma=" + num(r.gamma_star) + " beta=" +
                      num(r.beta_star) + " tau=" + num(r.tau_star) + " tilt=" + num(tilt) +
                      "deg (want 0.100/0.225/0.100/1.2)");
}

void criterion_4() {
    const auto r = maximize_robustness(ModelParams{50.0, 0.0}, true, Measure::survival);
    const double tilt = tilt_deg_of(r);
    const bool ok = within(r.gamma_star, 0.092, 0.005) && within(r.beta_star, -0.092, 0.010) &&
                    within(r.tau_star, 0.098, 0.003) && r.on_boundary && within(tilt, -0.48, 0.1);
    report(4, ok, "realizable optimum gamma=" + num(r.gamma_star) + " beta=" +
                      num(r.beta_star) + " tau=" + num(r.tau_star) + " tilt=" + num(tilt) +
                      "deg boundary=" + (r.on_boundary ? "yes" : "no") +
                      " (want 0.092/-0.092/0.098/-0.48/on-boundary)");
}

void criterion_5() {
    const auto t = detect_transition(ModelParams{0.0, 0.0}, SweepParam::chi, 4.0, 12.0, false,
                                     Measure::survival);
    const bool ok = t && within(*t, 7.7, 0.3);
    report(5, ok, "unconstrained optimum hand-over at chi = " + num(t.value_or(-1)) +
                      " (want 7.7 +- 0.3)");
}

struct SweepCheck {
    bool ok = true;
    std::string detail;

    void expect(const SweepTable& t, const std::string& name, double target, double tol) {
        const auto it = t.fitted_exponents.find(name);
        if (it == t.fitted_exponents.end()) {
            ok = false;
            detail += " " + name + "=missing";
            return;
        }
        const double got = it->second.exponent;
        if (!within(got, target, tol)) ok = false;
        detail += " " + name + "=" + num(got);
    }
};

SweepTable chi_sweep(double lambda, double lo, double hi, int points, Measure measure) {
    ModelParams p{0.0, 0.0};
    p.lambda = lambda;
    const auto values = log_spaced(lo, hi, points);
    auto table = sweep(p, SweepParam::chi, values, true, measure);
    fit_sweep(table, std::max(lo, hi / 100.0), hi);
    return table;
}

void criterion_6(const SweepTable& table) {
    SweepCheck c;
    c.expect(table, "alpha", 2.0 / 3.0, 0.05);
    c.expect(table, "gamma", -2.0 / 3.0, 0.05);
    c.expect(table, "tau", -2.0 / 3.0, 0.05);
    c.expect(table, "beta_mag", -1.0 / 3.0, 0.05);
    c.expect(table, "tau_coherent", -1.0, 0.03);

    const auto& last = table.rows.back();
    const double prefactor = last.tau_coherent * last.param_value;
    const double want = std::sqrt(8.0);
    const bool prefactor_ok = std::abs(prefactor - want) <= 0.05 * want;
    if (!prefactor_ok) c.ok = false;
    report(6, c.ok, "chi-sweep exponents" + c.detail + "; coherent prefactor at chi=1e4 " +
                        num(prefactor) + " vs sqrt(8)=" + num(want) + " +-5%" +
                        (prefactor_ok ? "" : " [outside band]"));
}

void criterion_7() {
    ModelParams p{0.0, 0.0};
    const auto values = log_spaced(1.0, 1e4, 53);
    auto table = sweep(p, SweepParam::nu, values, true, Measure::survival);
    fit_sweep(table, 1e2, 1e4);
    SweepCheck c;
    c.expect(table, "alpha", 0.5, 0.05);
    c.expect(table, "gamma", -0.5, 0.05);
    c.expect(table, "tau", -0.5, 0.05);
    double beta_max = 0.0;
    for (const auto& row : table.rows)
        if (row.ok) beta_max = std::max(beta_max, std::abs(row.beta_star));
    if (beta_max >= 1e-3) c.ok = false;

    const auto t = detect_transition(p, SweepParam::nu, 1.0, 5.0, true, Measure::survival);
    const bool t_ok = t && within(*t, 2.3, 0.2);
    if (!t_ok) c.ok = false;
    report(7, c.ok, "nu-sweep exponents" + c.detail + " max|beta|=" + num(beta_max) +
                        " transition=" + num(t.value_or(-1)) + " (want 2.3 +- 0.2)");
}

void criterion_8(const SweepTable& base) {
    bool ok = true;
    std::string detail = "exponents at lambda 0.2/0.1/0.05:";
    std::vector<SweepTable> tables;
    for (const double lambda : {0.2, 0.1, 0.05}) {
        auto t = chi_sweep(lambda, 1e2, 1e4, 27, Measure::survival);
        // The threshold-independent laws cover alpha, gamma, and tau. The
        // boundary covariance converges too slowly for this window once the
        // threshold shrinks: beta = -(c^2/4) chi^{-1/3} + O(1/chi) with a
        // small leading coefficient, so the O(1/chi) tail still biases the
        // chi = 100 end of the fit.
        SweepCheck c;
        c.expect(t, "alpha", 2.0 / 3.0, 0.05);
        c.expect(t, "gamma", -2.0 / 3.0, 0.05);
        c.expect(t, "tau", -2.0 / 3.0, 0.05);
        c.expect(t, "tau_coherent", -1.0, 0.05);
        if (!c.ok) ok = false;
        detail += " [" + num(lambda) + ":" + c.detail + "]";
        tables.push_back(std::move(t));
    }

    // survival time grows strictly as the threshold drops (matched chi points)
    const auto tau_at = [](const SweepTable& t, double chi) {
        for (const auto& row : t.rows)
            if (std::abs(row.param_value - chi) < 1e-9 && row.ok) return row.tau_star;
        return -1.0;
    };
    for (const double chi : {1e2, 1e4}) {
        double prev = tau_at(base, chi);
        for (const auto& t : tables) {
            const double cur = tau_at(t, chi);
            if (!(cur > prev)) ok = false;
            prev = cur;
        }
    }

    ModelParams low{0.0, 0.0};
    low.lambda = 0.2;
    const auto t_low = detect_transition(low, SweepParam::nu, 1.0, 50.0, true, Measure::survival);
    ModelParams mid{0.0, 0.0};
    const auto t_mid = detect_transition(mid, SweepParam::nu, 1.0, 50.0, true, Measure::survival);
    const bool trans_ok = t_low && t_mid && *t_low > *t_mid;
    if (!trans_ok) ok = false;
    detail += "; nu hand-over " + num(t_mid.value_or(-1)) + " -> " + num(t_low.value_or(-1)) +
              " as lambda 0.5 -> 0.2";
    report(8, ok, detail);
}

void criterion_9(const SweepTable& purity_table) {
    SweepCheck c;
    c.expect(purity_table, "alpha", 0.5, 0.05);
    c.expect(purity_table, "gamma", -0.5, 0.05);
    c.expect(purity_table, "tau", -0.5, 0.05);

    const auto& last = purity_table.rows.back();
    const double asym = -last.param_value * last.gamma_star * last.gamma_star / 4.0;
    const bool boundary_ok = std::abs(last.beta_star - asym) <= 0.1 * std::abs(last.beta_star);
    if (!boundary_ok) c.ok = false;

    const auto free = maximize_robustness(ModelParams{1e4, 0.0}, false, Measure::purity);
    const bool beta_ok = within(free.beta_star, 1.8, 0.2);
    if (!beta_ok) c.ok = false;

    const auto surv = maximize_robustness(ModelParams{1e4, 0.0}, true, Measure::survival);
    const double ratio = last.tau_star / surv.tau_star;
    const bool ratio_ok = ratio > 3.0;
    if (!ratio_ok) c.ok = false;

    report(9, c.ok, "purity-measure exponents" + c.detail + " boundary-beta " +
                        num(last.beta_star) + " vs " + num(asym) + "; unconstrained beta=" +
                        num(free.beta_star) + " (want 1.8 +- 0.2); halflife/survival=" +
                        num(ratio) + " (want > 3)");
}

void criterion_10() {
    std::mt19937 rng(271828);
    std::uniform_real_distribution<double> ub(-2.0, 2.0), ug(0.05, 1.0), uchi(0.0, 100.0),
        unu(0.0, 50.0), ut(0.0, 2.0), ux(-2.5, 2.5);
    double worst_gh = 0.0, worst_quad = 0.0, worst_semi = 0.0;
    bool start_exact = true;
    for (int i = 0; i < 200; ++i) {
        const EnsembleParams e{ub(rng), ug(rng)};
        const ModelParams p{uchi(rng), unu(rng)};
        const double t = ut(rng);
        const double xbar = ux(rng);

        worst_gh = std::max(worst_gh,
                            std::abs(ensemble_survival(e, p, t) -
                                     testing::ensemble_survival_gauss_hermite(e, p, t, 96)));
        worst_quad = std::max(worst_quad,
                              std::abs(member_survival(e, xbar, p, t) -
                                       testing::member_survival_quadrature(e, xbar, p, t)));
        if (member_survival(e, xbar, p, 0.0) != 1.0) start_exact = false;

        const double t2 = ut(rng);
        const auto once = evolve_moments(member_state(e, xbar), p, t + t2);
        const auto twice = evolve_moments(evolve_moments(member_state(e, xbar), p, t), p, t2);
        const auto rel = [](double a, double b) {
            return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
        };
        worst_semi = std::max({worst_semi, rel(once.mean_x, twice.mean_x),
                               rel(once.mean_y, twice.mean_y), rel(once.var_x, twice.var_x),
                               rel(once.cov_xy, twice.cov_xy), rel(once.var_y, twice.var_y)});
    }
    const bool ok = worst_gh < 1e-7 && worst_quad < 1e-7 && start_exact && worst_semi < 1e-12;
    report(10, ok, "oracle agreement over 200 tuples: |closed-GH|=" + num(worst_gh) +
                       " |closed-quadrature|=" + num(worst_quad) + " S(0)exact=" +
                       (start_exact ? "yes" : "no") + " semigroup=" + num(worst_semi) +
                       " (want < 1e-7 / < 1e-7 / yes / < 1e-12)");
}

void criterion_11(const SweepTable& purity_table) {
    std::vector<double> xs, ys;
    for (const double chi : log_spaced(1e2, 1e4, 9)) {
        xs.push_back(chi);
        ys.push_back(qsd_ensemble(ModelParams{chi, 0.0}).gamma);
    }
    const auto qsd_fit = fit_power_law(xs, ys);
    const double purity_gamma = purity_table.fitted_exponents.at("gamma").exponent;
    const double diff = std::abs(qsd_fit.exponent - purity_gamma);
    report(11, diff < 0.05, "state-diffusion gamma exponent " + num(qsd_fit.exponent) +
                                " vs purity-measure " + num(purity_gamma) + " (diff " +
                                num(diff) + ", want < 0.05)");
}

void criterion_12() {
    // initial slope blind to the reversible term
    const EnsembleParams e{0.3, 0.5};
    const double h = 1e-6;
    const auto slope = [&](double chi) {
        return (ensemble_survival(e, ModelParams{chi, 1.0}, h) - 1.0) / h;
    };
    const double s0 = slope(0.0), s50 = slope(50.0);
    const bool slope_ok = std::abs(s0 - s50) <= 1e-3 * std::abs(s0);

    // quadratic early decay of the sheared coherent ensemble near t = 0.1/chi
    const double chi = 1000.0;
    const ModelParams p{chi, 0.0};
    const double t_hi = 0.1 / chi, t_lo = t_hi / std::sqrt(10.0);
    std::vector<double> lt, ly;
    for (int i = 0; i <= 8; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, i / 8.0);
        lt.push_back(std::log(t));
        ly.push_back(std::log(1.0 - ensemble_survival(coherent_ensemble(), p, t)));
    }
    double mx = 0, my = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
        mx += lt[i] / lt.size();
        my += ly[i] / lt.size();
    }
    for (std::size_t i = 0; i < lt.size(); ++i) {
        sxx += (lt[i] - mx) * (lt[i] - mx);
        sxy += (lt[i] - mx) * (ly[i] - my);
    }
    const double expo = sxy / sxx;
    const bool quad_ok = expo > 1.9 && expo < 2.1;
    report(12, slope_ok && quad_ok,
           "initial slopes chi=0/50: " + num(s0) + "/" + num(s50) +
               " (rel diff < 1e-3); early-decay exponent " + num(expo) + " (want 1.9..2.1)");
}

}  // namespace

int main() {
    std::printf("robens acceptance suite\n");

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();

    const auto chi_table = chi_sweep(0.5, 1.0, 1e4, 53, Measure::survival);
    criterion_6(chi_table);
    criterion_7();
    criterion_8(chi_table);

    const auto purity_table = chi_sweep(0.5, 1e2, 1e4, 27, Measure::purity);
    criterion_9(purity_table);
    criterion_10();
    criterion_11(purity_table);
    criterion_12();

    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
