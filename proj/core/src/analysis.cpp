#include "robens/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "robens/errors.hpp"
#include "robens/parallel.hpp"
#include "robens/robustness.hpp"

namespace robens {

FitResult fit_power_law(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("fit_power_law: size mismatch");
    const std::size_t n = xs.size();
    if (n < 4) throw std::invalid_argument("fit_power_law: need at least 4 points");
    double sx = 0, sy = 0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw std::invalid_argument("fit_power_law: data must be strictly positive");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_power_law: degenerate x values");
    FitResult r;
    r.exponent = sxy / sxx;
    r.prefactor = std::exp(my - r.exponent * mx);
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = ly[i] - (my + r.exponent * (lx[i] - mx));
        ss_res += resid * resid;
    }
    r.stderr_exponent = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
    r.fit_lo = *std::min_element(xs.begin(), xs.end());
    r.fit_hi = *std::max_element(xs.begin(), xs.end());
    return r;
}

SweepTable sweep(const ModelParams& tmpl, SweepParam param, std::span<const double> values,
                 bool constrained, Measure measure, const SweepOptions& opts) {
    require_valid(tmpl);
    if (values.empty()) throw std::invalid_argument("sweep: no values");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0)) throw std::invalid_argument("sweep: values must be positive");
        if (i > 0 && !(values[i] > values[i - 1]))
            throw std::invalid_argument("sweep: values must be sorted ascending");
    }

    SweepTable table;
    table.param = param;
    table.constrained = constrained;
    table.measure = measure;
    table.base = tmpl;
    table.rows.resize(values.size());

    auto run_point = [&](std::size_t i, const std::optional<Candidate>& warm) {
        SweepRow& row = table.rows[i];
        row.param_value = values[i];
        const ModelParams p = with_param(tmpl, param, values[i]);
        try {
            const auto r = maximize_robustness(p, constrained, measure, opts.optimize, warm);
            row.beta_star = r.beta_star;
            row.gamma_star = r.gamma_star;
            row.alpha_star = r.alpha_star;
            row.tau_star = r.tau_star;
            row.on_boundary = r.on_boundary;
            const auto tc = survival_time(coherent_ensemble(), p, opts.t_max);
            row.tau_coherent = tc ? *tc : std::numeric_limits<double>::quiet_NaN();
            row.ok = true;
        } catch (const std::exception&) {
            row.ok = false;  // recorded; the sweep continues
        }
    };

    if (opts.warm_start) {
        std::optional<Candidate> warm;
        for (std::size_t i = 0; i < values.size(); ++i) {
            run_point(i, warm);
            if (table.rows[i].ok)
                warm = Candidate{table.rows[i].beta_star, table.rows[i].gamma_star,
                                 table.rows[i].tau_star};
        }
    } else {
        parallel_for(values.size(), [&](std::size_t i) { run_point(i, std::nullopt); });
    }
    return table;
}

void fit_sweep(SweepTable& table, double lo, double hi) {
    auto column_fit = [&](const std::string& name, auto getter) {
        std::vector<double> xs, ys;
        for (const auto& row : table.rows) {
            if (!row.ok || row.param_value < lo || row.param_value > hi) continue;
            const double y = getter(row);
            if (!(y > 0.0) || !std::isfinite(y)) return;  // column not fittable
            xs.push_back(row.param_value);
            ys.push_back(y);
        }
        if (xs.size() < 4) return;
        table.fitted_exponents[name] = fit_power_law(xs, ys);
    };
    column_fit("alpha", [](const SweepRow& r) { return r.alpha_star; });
    column_fit("gamma", [](const SweepRow& r) { return r.gamma_star; });
    column_fit("tau", [](const SweepRow& r) { return r.tau_star; });
    column_fit("beta_mag", [](const SweepRow& r) { return std::abs(r.beta_star); });
    column_fit("tau_coherent", [](const SweepRow& r) { return r.tau_coherent; });
}

std::map<std::string, double> predicted_scalings(SweepParam param, Measure measure,
                                                 bool constrained) {
    if (param == SweepParam::lambda)
        throw std::invalid_argument("predicted_scalings: no scaling laws in lambda");
    std::map<std::string, double> m;
    if (measure == Measure::survival) {
        if (param == SweepParam::chi) {
            m["alpha"] = 2.0 / 3.0;
            m["beta_mag"] = -1.0 / 3.0;
            m["gamma"] = -2.0 / 3.0;
            m["tau"] = -2.0 / 3.0;
            m["tau_coherent"] = -1.0;
        } else {
            m["alpha"] = 0.5;
            m["gamma"] = -0.5;
            m["tau"] = -0.5;
            m["tau_coherent"] = -1.0;
        }
    } else {
        if (param == SweepParam::chi) {
            m["alpha"] = 0.5;
            m["gamma"] = -0.5;
            m["tau"] = -0.5;
            if (constrained) m["beta_mag"] = 0.0;  // beta tends to a constant
        } else {
            m["alpha"] = 0.5;
            m["gamma"] = -0.5;
            m["tau"] = -0.5;
        }
    }
    return m;
}

double tau_coherent_asymptotic(const ModelParams& p) {
    require_valid(p);
    const bool chi_regime = p.chi > 0.0 && p.nu == 0.0;
    const bool nu_regime = p.nu > 0.0 && p.chi == 0.0;
    if (chi_regime) return std::sqrt(8.0) / p.chi;
    if (nu_regime) return 4.0 * (1.0 - p.lambda) / p.nu;
    throw std::invalid_argument(
        "tau_coherent_asymptotic: requires exactly one of chi, nu nonzero");
}

EnsembleParams qsd_ensemble(const ModelParams& p) {
    require_valid(p);
    const bool chi_regime = p.chi > 0.0 && p.nu == 0.0;
    const bool nu_regime = p.nu > 0.0 && p.chi == 0.0;
    if (chi_regime) return EnsembleParams{-1.0, std::sqrt(2.0) / std::sqrt(p.chi)};
    if (nu_regime) return EnsembleParams{0.0, std::sqrt(2.0) / std::sqrt(p.nu)};
    throw std::invalid_argument("qsd_ensemble: requires exactly one of chi, nu nonzero");
}

RegimeReport regime_checks(const ModelParams& p) {
    require_valid(p);
    if (!p.mu)
        throw std::invalid_argument("regime_checks: cannot evaluate without mu");
    const double mu = *p.mu;
    RegimeReport r;
    r.chi_over_mu32 = p.chi / std::pow(mu, 1.5);
    r.nu_over_mu2 = p.nu / (mu * mu);
    r.chi_over_mu2 = p.chi / (mu * mu);
    r.output_coherent = r.chi_over_mu32 < 1.0 && r.nu_over_mu2 < 1.0;
    r.linearization_valid = r.output_coherent;
    r.conditional_window = r.chi_over_mu32 >= 1.0 && r.chi_over_mu2 < 1.0;
    return r;
}

std::optional<double> purity_tau_quartic_root(double beta, double gamma, double chi) {
    if (!(gamma > 0.0)) throw std::invalid_argument("purity_tau_quartic_root: gamma must be > 0");
    auto f = [&](double t) {
        return 2.0 * (1.0 + beta * beta) * t / gamma - 2.0 * chi * beta * t * t +
               2.0 * chi * chi * gamma * t * t * t / 3.0 + chi * chi * t * t * t * t / 3.0 -
               3.0;
    };
    // f(0) = -3; scan geometrically for the first sign change.
    double lo = 0.0, hi = 1e-8;
    bool bracketed = false;
    for (int i = 0; i < 200; ++i) {
        if (f(hi) >= 0.0) {
            bracketed = true;
            break;
        }
        lo = hi;
        hi *= 1.5;
        if (hi > 1e12) break;
    }
    if (!bracketed) return std::nullopt;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log_spaced: need 0 < lo < hi");
    if (n < 2) throw std::invalid_argument("log_spaced: need n >= 2");
    std::vector<double> v(n);
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < n; ++i)
        v[i] = std::pow(10.0, llo + (lhi - llo) * i / (n - 1));
    v.front() = lo;
    v.back() = hi;
    return v;
}

}  // namespace robens
