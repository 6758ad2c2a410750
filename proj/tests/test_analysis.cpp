#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "robens/analysis.hpp"
#include "robens/robustness.hpp"

using namespace robens;

TEST_CASE("power-law fit recovers exact exponents") {
    std::vector<double> xs, ys;
    for (int i = 0; i < 12; ++i) {
        const double x = std::pow(10.0, 0.25 * i);
        xs.push_back(x);
        ys.push_back(3.7 * std::pow(x, -2.0 / 3.0));
    }
    const auto fit = fit_power_law(xs, ys);
    CHECK(fit.exponent == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
    CHECK(fit.prefactor == doctest::Approx(3.7).epsilon(1e-12));
    CHECK(fit.stderr_exponent < 1e-12);
    CHECK(fit.fit_lo == doctest::Approx(1.0));

    CHECK_THROWS_AS(fit_power_law(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        fit_power_law(std::vector<double>{1, 2, 3, -4}, std::vector<double>{1, 2, 3, 4}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        fit_power_law(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 2, 0, 4}),
        std::invalid_argument);
}

TEST_CASE("log_spaced covers the range inclusively") {
    const auto v = log_spaced(1.0, 1e4, 53);
    REQUIRE(v.size() == 53);
    CHECK(v.front() == 1.0);
    CHECK(v.back() == 1e4);
    CHECK(v[13] == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("asymptotic scaling exponents lookup") {
    const auto chi_surv = predicted_scalings(SweepParam::chi, Measure::survival, true);
    CHECK(chi_surv.at("alpha") == doctest::Approx(2.0 / 3.0));
    CHECK(chi_surv.at("beta_mag") == doctest::Approx(-1.0 / 3.0));
    CHECK(chi_surv.at("gamma") == doctest::Approx(-2.0 / 3.0));
    CHECK(chi_surv.at("tau") == doctest::Approx(-2.0 / 3.0));
    CHECK(chi_surv.at("tau_coherent") == doctest::Approx(-1.0));

    const auto nu_surv = predicted_scalings(SweepParam::nu, Measure::survival, true);
    CHECK(nu_surv.at("alpha") == doctest::Approx(0.5));
    CHECK(nu_surv.at("gamma") == doctest::Approx(-0.5));
    CHECK(nu_surv.at("tau") == doctest::Approx(-0.5));

    const auto chi_pur = predicted_scalings(SweepParam::chi, Measure::purity, true);
    CHECK(chi_pur.at("alpha") == doctest::Approx(0.5));
    CHECK(chi_pur.at("gamma") == doctest::Approx(-0.5));
    CHECK(chi_pur.at("tau") == doctest::Approx(-0.5));

    CHECK_THROWS_AS(predicted_scalings(SweepParam::lambda, Measure::survival, true),
                    std::invalid_argument);
}

TEST_CASE("coherent-ensemble asymptotic survival estimates") {
    CHECK(tau_coherent_asymptotic(ModelParams{1000.0, 0.0}) ==
          doctest::Approx(0.002828427124746190).epsilon(1e-12));

    // moderate shear: the estimate undershoots the exact value by ~17%
    const double asym = tau_coherent_asymptotic(ModelParams{50.0, 0.0});
    CHECK(asym == doctest::Approx(0.05656854249).epsilon(1e-9));
    const double exact = *survival_time(coherent_ensemble(), ModelParams{50.0, 0.0});
    CHECK(std::abs(asym - exact) / exact == doctest::Approx(0.17).epsilon(0.2));

    // phase-noise regime: short-time law checked against the exact time near
    // threshold 1 where the linear term rules
    ModelParams noisy{0.0, 1e4};
    noisy.lambda = 0.99;
    const double t_exact = *survival_time(coherent_ensemble(), noisy);
    CHECK(tau_coherent_asymptotic(noisy) == doctest::Approx(t_exact).epsilon(0.05));

    CHECK_THROWS_AS(tau_coherent_asymptotic(ModelParams{10.0, 10.0}), std::invalid_argument);
    CHECK_THROWS_AS(tau_coherent_asymptotic(ModelParams{0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("quantum-state-diffusion comparison ensembles") {
    const auto chi_e = qsd_ensemble(ModelParams{1e4, 0.0});
    CHECK(chi_e.gamma == doctest::Approx(0.014142135623731).epsilon(1e-12));
    CHECK(chi_e.beta == doctest::Approx(-1.0));
    CHECK(chi_e.alpha() == doctest::Approx(std::sqrt(2.0) * 100.0).epsilon(1e-12));

    const auto nu_e = qsd_ensemble(ModelParams{0.0, 1e4});
    CHECK(nu_e.gamma == doctest::Approx(0.014142135623731).epsilon(1e-12));
    CHECK(nu_e.beta == 0.0);
    CHECK(nu_e.alpha() == doctest::Approx(100.0 / std::sqrt(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(qsd_ensemble(ModelParams{10.0, 10.0}), std::invalid_argument);
}

TEST_CASE("coherence and validity windows") {
    ModelParams p{1e3, 0.0};
    p.mu = 1e6;
    auto r = regime_checks(p);
    CHECK(r.output_coherent);
    CHECK(r.linearization_valid);
    CHECK_FALSE(r.conditional_window);
    CHECK(r.chi_over_mu32 == doctest::Approx(1e-6));

    p = ModelParams{1e4, 0.0};
    p.mu = 100.0;
    r = regime_checks(p);
    CHECK_FALSE(r.linearization_valid);
    CHECK_FALSE(r.conditional_window);  // chi = mu^2 exactly, not below

    p = ModelParams{3e3, 0.0};
    p.mu = 100.0;
    r = regime_checks(p);
    CHECK_FALSE(r.output_coherent);
    CHECK(r.conditional_window);

    ModelParams no_mu{1.0, 0.0};
    CHECK_THROWS_AS(regime_checks(no_mu), std::invalid_argument);
}

TEST_CASE("purity half-life quartic: scaling and cross-check") {
    // gamma ~ chi^{-1/2} at fixed beta makes the root scale as chi^{-1/2}
    std::vector<double> xs, ys;
    for (const double chi : {1e3, 3e3, 1e4, 3e4, 1e5}) {
        const auto root = purity_tau_quartic_root(-0.25, 1.0 / std::sqrt(chi), chi);
        REQUIRE(root.has_value());
        xs.push_back(chi);
        ys.push_back(*root);
    }
    const auto fit = fit_power_law(xs, ys);
    CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(0.04));

    // the quartic tracks the exact half-life at the realizable optimum
    const ModelParams p{1e4, 0.0};
    const auto best = maximize_robustness(p, true, Measure::purity);
    const auto root = purity_tau_quartic_root(best.beta_star, best.gamma_star, p.chi);
    REQUIRE(root.has_value());
    CHECK(std::abs(*root - best.tau_star) / best.tau_star < 0.15);
}

TEST_CASE("sweep produces rows, warm and cold starts agree") {
    const std::vector<double> values{20.0, 40.0, 80.0};
    SweepOptions warm;
    const auto a = sweep(ModelParams{0.0, 0.0}, SweepParam::chi, values, true,
                         Measure::survival, warm);
    SweepOptions cold;
    cold.warm_start = false;
    const auto b = sweep(ModelParams{0.0, 0.0}, SweepParam::chi, values, true,
                         Measure::survival, cold);
    REQUIRE(a.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        REQUIRE(a.rows[i].ok);
        REQUIRE(b.rows[i].ok);
        CHECK(a.rows[i].param_value == values[i]);
        CHECK(a.rows[i].gamma_star ==
              doctest::Approx(b.rows[i].gamma_star).epsilon(0.01));
        CHECK(a.rows[i].tau_coherent ==
              doctest::Approx(*survival_time(coherent_ensemble(),
                                             ModelParams{values[i], 0.0})));
    }
    // monotone decreasing robustness with growing shear
    CHECK(a.rows[0].tau_star > a.rows[1].tau_star);
    CHECK(a.rows[1].tau_star > a.rows[2].tau_star);

    CHECK_THROWS_AS(sweep(ModelParams{}, SweepParam::chi, std::vector<double>{3.0, 1.0}, true,
                          Measure::survival),
                    std::invalid_argument);
    CHECK_THROWS_AS(sweep(ModelParams{}, SweepParam::chi, std::vector<double>{-1.0, 1.0}, true,
                          Measure::survival),
                    std::invalid_argument);
}

TEST_CASE("threshold sweep: robustness grows as the threshold drops") {
    const std::vector<double> lambdas{0.05, 0.1, 0.2, 0.5};
    const auto table = sweep(ModelParams{50.0, 0.0}, SweepParam::lambda, lambdas, true,
                             Measure::survival);
    REQUIRE(table.rows.size() == 4);
    for (std::size_t i = 1; i < 4; ++i) {
        REQUIRE(table.rows[i].ok);
        CHECK(table.rows[i - 1].tau_star > table.rows[i].tau_star);
    }
}

TEST_CASE("fit_sweep fits the requested window only") {
    SweepTable t;
    t.param = SweepParam::chi;
    for (const double x : {1.0, 10.0, 100.0, 1000.0, 10000.0}) {
        SweepRow r;
        r.param_value = x;
        r.ok = true;
        r.alpha_star = 2.0 * std::pow(x, 0.5);
        r.gamma_star = 0.5 * std::pow(x, -0.5);
        r.tau_star = 0.4 * std::pow(x, -0.5);
        r.beta_star = -0.25;
        r.tau_coherent = 3.0 / x;
        t.rows.push_back(r);
    }
    fit_sweep(t, 10.0, 10000.0);
    CHECK(t.fitted_exponents.at("alpha").exponent == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(t.fitted_exponents.at("alpha").fit_lo == doctest::Approx(10.0));
    CHECK(t.fitted_exponents.at("tau_coherent").exponent ==
          doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("survival time tracks gamma only at the midpoint threshold") {
    const ModelParams mid{1e4, 0.0};
    const auto mid_res = maximize_robustness(mid, true, Measure::survival);
    const double ratio = mid_res.tau_star / mid_res.gamma_star;
    CHECK(ratio > 0.8);
    CHECK(ratio < 1.25);

    ModelParams low{1e4, 0.0};
    low.lambda = 0.05;
    const auto low_res = maximize_robustness(low, true, Measure::survival);
    const double low_ratio = low_res.tau_star / low_res.gamma_star;
    CHECK((low_ratio < 0.8 || low_ratio > 1.25));
}
