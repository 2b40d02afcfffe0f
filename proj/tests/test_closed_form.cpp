#include <doctest.h>

#include <cmath>

#include "irslab/closed_form.hpp"
#include "irslab/hwi.hpp"
#include "irslab/monte_carlo.hpp"
#include "irslab/rng.hpp"
#include "irslab/scenario.hpp"
#include "support/quadrature.hpp"

using namespace irslab;

namespace {

const scenario::ScenarioParams kParams = scenario::default_scenario();
const scenario::LinkBudget kBudget = scenario::link_budget(kParams);

double central_diff(double (*f)(double, const scenario::ScenarioParams&,
                                const scenario::LinkBudget&),
                    double n, double h) {
    return (f(n + h, kParams, kBudget) - f(n - h, kParams, kBudget)) / (2.0 * h);
}

}  // namespace

TEST_CASE("coefficients at baseline") {
    const auto c = closed_form::coefficients(kParams, kBudget);
    // 4 * 2.963e-6 * 8e-8 / pi^2 by hand
    CHECK(c.beta == doctest::Approx(9.607e-14).epsilon(1e-3));
    CHECK(c.beta > 0.0);
    // beta < alpha^2 mu_iu mu_si strictly
    CHECK(c.beta < kParams.alpha * kParams.alpha * kBudget.mu_iu * kBudget.mu_si);
    CHECK(c.mu_su == kBudget.mu_su);

    SUBCASE("rho vanishes when the direct link is orthogonal") {
        auto p = kParams;
        p.phi_su = M_PI / 2;
        const auto c2 = closed_form::coefficients(p, kBudget);
        CHECK(c2.rho == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("no reflection, no cascade terms") {
        auto p = kParams;
        p.alpha = 1e-300;
        const auto c2 = closed_form::coefficients(p, kBudget);
        CHECK(c2.beta == doctest::Approx(0.0));
        CHECK(c2.lambda == doctest::Approx(0.0));
        CHECK(c2.rho == doctest::Approx(0.0));
    }
}

TEST_CASE("average rate approaches log2(1 + 1/kappa) for huge N") {
    CHECK(closed_form::avg_rate_hwi(1e7, kParams, kBudget) ==
          doctest::Approx(7.6511).epsilon(1e-3 / 7.6511));
    auto p = kParams;
    p.kappa_t = p.kappa_r = 0.07 * 0.07;
    CHECK(closed_form::avg_rate_hwi(1e7, p, kBudget) ==
          doctest::Approx(6.6871).epsilon(1e-3 / 6.6871));
    // at the top of the element sweep the ceiling is already within 0.01
    CHECK(std::abs(closed_form::avg_rate_hwi(5000, kParams, kBudget) - 7.6511) < 0.01);
}

TEST_CASE("average rate at N=1 agrees with Monte Carlo of the compensated signal model") {
    const auto avg = monte_carlo::average_rate(
        [&](rng::Engine& eng) {
            const auto errors = hwi::sample_phase_errors(1, eng);
            return monte_carlo::instantaneous_rate_compensated(1, kParams, kBudget, errors);
        },
        100'000, rng::Stream{42});
    const double cf = closed_form::avg_rate_hwi(1.0, kParams, kBudget);
    CHECK(cf == doctest::Approx(avg.mean).epsilon(0.02));
}

TEST_CASE("utility matches a central finite difference of the rate") {
    // probes stay inside the n >= 1 domain
    for (const double n : {1.5, 2.0, 10.0, 100.0, 1000.0, 5000.0}) {
        const double h = std::min(1e-3 * n, 0.4 * (n - 1.0));
        const double fd = central_diff(&closed_form::avg_rate_hwi, n, h);
        CHECK(closed_form::utility_hwi(n, kParams, kBudget) ==
              doctest::Approx(fd).epsilon(1e-6));
        const double fd_ideal = central_diff(&closed_form::rate_ideal, n, h);
        CHECK(closed_form::utility_ideal(n, kParams, kBudget) ==
              doctest::Approx(fd_ideal).epsilon(1e-6));
    }
}

TEST_CASE("utility is positive, decreasing, and vanishes as N grows") {
    double prev = closed_form::utility_hwi(1.0, kParams, kBudget);
    CHECK(prev > 0.0);
    for (double n = 2.0; n <= 100.0; n += 1.0) {
        const double u = closed_form::utility_hwi(n, kParams, kBudget);
        CHECK(u > 0.0);
        CHECK(u < prev);
        prev = u;
    }
    CHECK(closed_form::utility_hwi(1e7, kParams, kBudget) < 1e-9);
}

TEST_CASE("ideal rate grows without bound and ignores kappa") {
    // log2 of the N^2 scaling: a decade in N adds ~6.64 bits
    CHECK(closed_form::rate_ideal(1e5, kParams, kBudget) >
          closed_form::rate_ideal(1e4, kParams, kBudget) + 6.0);
    auto p = kParams;
    p.kappa_t = 0.5;
    p.kappa_r = 0.5;
    CHECK(closed_form::rate_ideal(123.0, p, kBudget) ==
          closed_form::rate_ideal(123.0, kParams, kBudget));
}

TEST_CASE("gap identities and positivity over the full sweep") {
    double prev_gap = 0.0;
    for (int n = 1; n <= 5000; ++n) {
        const double gap = closed_form::rate_gap(n, kParams, kBudget);
        const double direct = closed_form::rate_ideal(n, kParams, kBudget) -
                              closed_form::avg_rate_hwi(n, kParams, kBudget);
        CHECK(gap == doctest::Approx(direct).epsilon(1e-12));
        CHECK(gap > 0.0);
        CHECK(gap > prev_gap);  // the gap widens with N
        prev_gap = gap;

        const double ugap = closed_form::utility_gap(n, kParams, kBudget);
        CHECK(ugap > 0.0);
    }
}

TEST_CASE("utility gap equals the difference of utilities") {
    for (const double n : {1.0, 7.0, 50.0, 400.0, 5000.0}) {
        const double direct = closed_form::utility_ideal(n, kParams, kBudget) -
                              closed_form::utility_hwi(n, kParams, kBudget);
        CHECK(closed_form::utility_gap(n, kParams, kBudget) ==
              doctest::Approx(direct).epsilon(1e-11));
    }
}

TEST_CASE("average rate is strictly increasing in N") {
    double prev = closed_form::avg_rate_hwi(1, kParams, kBudget);
    for (int n = 2; n <= 5000; ++n) {
        const double r = closed_form::avg_rate_hwi(n, kParams, kBudget);
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("expansion identities behind the utility-gap positivity") {
    const auto c = closed_form::coefficients(kParams, kBudget);
    for (int n = 1; n <= 5000; ++n) {
        const double cross = c.dvarpi(n) * c.chi(n) - c.dchi(n) * c.varpi(n);
        const double slope = c.dvarpi(n) - c.dchi(n);
        CHECK(cross > 0.0);
        CHECK(slope > 0.0);
    }
}

TEST_CASE("rate ceiling for the three kappa pairs") {
    auto p = kParams;
    p.kappa_t = p.kappa_r = 0.05 * 0.05;
    CHECK(closed_form::rate_limit_inf(p) == doctest::Approx(7.6511).epsilon(1e-4 / 7.6511));
    p.kappa_t = p.kappa_r = 0.07 * 0.07;
    CHECK(closed_form::rate_limit_inf(p) == doctest::Approx(6.6871).epsilon(1e-4 / 6.6871));
    p.kappa_t = p.kappa_r = 0.09 * 0.09;
    CHECK(closed_form::rate_limit_inf(p) == doctest::Approx(5.9710).epsilon(1e-4 / 5.9710));

    p.kappa_t = p.kappa_r = 0.0;
    CHECK_THROWS_AS(closed_form::rate_limit_inf(p), std::domain_error);
}

TEST_CASE("quadrature oracles for the phase-error constants") {
    // uniform density on [-pi/2, pi/2] against cos -> 2/pi
    const double uniform_cos = test_support::integrate(
        [](double t) { return std::cos(t) / M_PI; }, -M_PI / 2, M_PI / 2);
    CHECK(std::abs(uniform_cos - 2.0 / M_PI) < 1e-10);

    // triangular density of the pairwise difference against cos -> 4/pi^2
    const double tri_left = test_support::integrate(
        [](double t) { return (t / (M_PI * M_PI) + 1.0 / M_PI) * std::cos(t); }, -M_PI, 0.0);
    const double tri_right = test_support::integrate(
        [](double t) { return (-t / (M_PI * M_PI) + 1.0 / M_PI) * std::cos(t); }, 0.0, M_PI);
    CHECK(std::abs(tri_left + tri_right - 4.0 / (M_PI * M_PI)) < 1e-10);
}
