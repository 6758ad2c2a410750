#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "robens/robustness.hpp"

using namespace robens;

namespace {
const ModelParams kIdeal{0.0, 0.0};
const ModelParams kSheared{50.0, 0.0};
}  // namespace

TEST_CASE("survival starts at exactly one") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> ug(0.01, 1.0), ub(-2.0, 2.0), ux(-3.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        const EnsembleParams e{ub(rng), ug(rng)};
        const ModelParams p{ub(rng) + 2.0, ug(rng)};
        CHECK(member_survival(e, ux(rng), p, 0.0) == 1.0);
        CHECK(ensemble_survival(e, p, 0.0) == 1.0);
        CHECK(ensemble_purity(e, p, 0.0) == 1.0);
    }
}

TEST_CASE("coherent ensemble under pure phase diffusion: S = (1+t)^{-1/2}") {
    for (const double t : {0.5, 3.0, 10.0}) {
        CHECK(ensemble_survival(coherent_ensemble(), kIdeal, t) ==
              doctest::Approx(1.0 / std::sqrt(1.0 + t)).epsilon(1e-12));
        CHECK(member_survival(coherent_ensemble(), 0.0, kIdeal, t) ==
              doctest::Approx(1.0 / std::sqrt(1.0 + t)).epsilon(1e-12));
    }
    CHECK(ensemble_survival(coherent_ensemble(), kIdeal, 3.0) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("strong-shear anchors") {
    // coherent ensemble at chi = 50 falls to 1/2 near t = 0.0678
    CHECK(ensemble_survival(coherent_ensemble(), kSheared, 0.0678) ==
          doctest::Approx(0.49997239401032634).epsilon(1e-12));
    // the two robust ensembles reach 1/2 near their survival times
    CHECK(ensemble_survival(EnsembleParams{0.225, 0.100}, kSheared, 0.100) ==
          doctest::Approx(0.49907588664761021).epsilon(1e-12));
    CHECK(ensemble_survival(EnsembleParams{-0.092, 0.092}, kSheared, 0.098) ==
          doctest::Approx(0.5).epsilon(2e-3));
}

TEST_CASE("member survival equals the Wigner-overlap quadrature") {
    const EnsembleParams e{0.225, 0.100};
    const double xbar = std::sqrt(1.5);
    const double closed = member_survival(e, xbar, kSheared, 0.1);
    CHECK(closed == doctest::Approx(0.30998317131182751).epsilon(1e-10));
    const double quad = testing::member_survival_quadrature(e, xbar, kSheared, 0.1);
    CHECK(std::abs(closed - quad) < 1e-8);
}

TEST_CASE("closed-form ensemble survival equals the Gauss-Hermite average") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ub(-2.0, 2.0), ug(0.05, 1.0), uchi(0.0, 100.0),
        unu(0.0, 50.0), ut(0.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const EnsembleParams e{ub(rng), ug(rng)};
        const ModelParams p{uchi(rng), unu(rng)};
        const double t = ut(rng);
        const double a = ensemble_survival(e, p, t);
        const double b = testing::ensemble_survival_gauss_hermite(e, p, t, 96);
        CHECK(std::abs(a - b) < 1e-8);
    }
}

TEST_CASE("survival probabilities stay in (0, 1] and decay to zero") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ub(-1.5, 1.5), ug(0.05, 1.0);
    for (const double chi : {0.0, 10.0})
        for (const double nu : {0.0, 5.0}) {
            const ModelParams p{chi, nu};
            for (int i = 0; i < 20; ++i) {
                const EnsembleParams e{ub(rng), ug(rng)};
                for (const double t : {0.01, 0.5, 2.0, 20.0}) {
                    const double s = ensemble_survival(e, p, t);
                    CHECK(s > 0.0);
                    CHECK(s <= 1.0);
                }
                const double late = ensemble_survival(e, p, 1e4);
                CHECK(late < 0.02);
                CHECK(late < ensemble_survival(e, p, 100.0));
            }
        }
}

TEST_CASE("purity decay of the coherent ensemble and the overlap variant") {
    for (const double t : {0.3, 1.5, 4.0})
        CHECK(ensemble_purity(coherent_ensemble(), kIdeal, t) ==
              doctest::Approx(1.0 / std::sqrt(1.0 + 2.0 * t)).epsilon(1e-12));
    CHECK(*purity_halflife(coherent_ensemble(), kIdeal) == doctest::Approx(1.5).epsilon(1e-9));

    CHECK(max_overlap_purity(1.0) == doctest::Approx(1.0));
    CHECK(max_overlap_purity(0.5) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("threshold_time finds the first crossing of analytic curves") {
    const auto inv_sqrt = [](double t) { return 1.0 / std::sqrt(1.0 + t); };
    CHECK(*threshold_time(inv_sqrt, 0.5) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(*threshold_time(inv_sqrt, 0.1, ThresholdOptions{.t_max = 1e4}) ==
          doctest::Approx(99.0).epsilon(1e-9));

    // stays above the threshold: explicit no-crossing, not a number
    const auto plateau = [](double t) { return 0.9 - 1e-9 * std::min(t, 1.0); };
    CHECK_FALSE(threshold_time(plateau, 0.5).has_value());

    CHECK_THROWS_AS(threshold_time(inv_sqrt, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(threshold_time(inv_sqrt, 0.0), std::invalid_argument);
}

TEST_CASE("survival times of the reference ensembles") {
    CHECK(*survival_time(coherent_ensemble(), kIdeal) == doctest::Approx(3.0).epsilon(1e-7));
    CHECK(*survival_time(coherent_ensemble(), kSheared) ==
          doctest::Approx(0.067794997875069374).epsilon(1e-8));
    CHECK(*survival_time(EnsembleParams{0.225, 0.100}, kSheared) ==
          doctest::Approx(0.09975234734953269).epsilon(1e-8));
    CHECK(*survival_time(EnsembleParams{-0.092, 0.092}, kSheared) ==
          doctest::Approx(0.09810411495613723).epsilon(1e-8));
    // far below the stationary phase-diffusion reach within the horizon
    ModelParams tiny_lambda = kIdeal;
    tiny_lambda.lambda = 1e-4;
    CHECK_FALSE(survival_time(coherent_ensemble(), tiny_lambda).has_value());
}

TEST_CASE("initial decay comes from the irreversible terms only") {
    const EnsembleParams e{0.3, 0.5};
    const double h = 1e-6;
    const auto slope = [&](double chi) {
        const ModelParams p{chi, 1.0};
        return (ensemble_survival(e, p, h) - 1.0) / h;
    };
    const double s0 = slope(0.0);
    const double s50 = slope(50.0);
    CHECK(s0 == doctest::Approx(s50).epsilon(1e-3));
    CHECK(s0 < 0.0);
}

TEST_CASE("purity decays twice as fast as survival at first order") {
    const EnsembleParams e{0.4, 0.3};
    const ModelParams p{5.0, 2.0};
    const double h = 1e-7;
    const double s_rate = (member_survival(e, 0.0, p, h) - 1.0) / h;
    const double p_rate = (ensemble_purity(e, p, h) - 1.0) / h;
    CHECK(p_rate == doctest::Approx(2.0 * s_rate).epsilon(1e-4));
}

TEST_CASE("almost-quadratic early decay of the strongly sheared coherent ensemble") {
    // The quadratic (reversible) term dominates the upper part of t <~ 1/chi;
    // below the crossover t ~ 4/chi^2 the linear quantum-limit decay is still
    // visible, so the local exponent is probed near the top of the window.
    const double chi = 1000.0;
    const ModelParams p{chi, 0.0};
    const auto one_minus_s = [&](double t) {
        return 1.0 - ensemble_survival(coherent_ensemble(), p, t);
    };
    const double t_hi = 0.1 / chi;
    const double t_lo = t_hi / std::sqrt(10.0);  // top half-decade
    std::vector<double> lt, ly;
    for (int i = 0; i <= 8; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, i / 8.0);
        lt.push_back(std::log(t));
        ly.push_back(std::log(one_minus_s(t)));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(lt.size());
    for (int i = 0; i < n; ++i) {
        sx += lt[i];
        sy += ly[i];
    }
    for (int i = 0; i < n; ++i) {
        sxx += (lt[i] - sx / n) * (lt[i] - sx / n);
        sxy += (lt[i] - sx / n) * (ly[i] - sy / n);
    }
    const double exponent = sxy / sxx;
    CHECK(exponent > 1.9);
    CHECK(exponent < 2.1);

    // and the linear term rules well below the crossover
    const double t_small = 1e-4 / chi;
    const double local = std::log(one_minus_s(t_small * 1.3) / one_minus_s(t_small)) /
                         std::log(1.3);
    CHECK(local < 1.3);
}

TEST_CASE("curve sampling starts at unity") {
    const auto c = sample_curve(coherent_ensemble(), kSheared, CurveKind::survival, 0.2, 41);
    REQUIRE(c.times.size() == 41);
    CHECK(c.values.front() == 1.0);
    CHECK(c.times.front() == 0.0);
    CHECK(c.times.back() == doctest::Approx(0.2));
    for (std::size_t i = 1; i < c.times.size(); ++i) CHECK(c.times[i] > c.times[i - 1]);
}
