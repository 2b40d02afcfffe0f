#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>

#include "irslab/channels.hpp"
#include "irslab/rng.hpp"
#include "irslab/scenario.hpp"

using namespace irslab;

namespace {

channels::ChannelRealization unit_realization(int n) {
    channels::ChannelRealization ch;
    ch.n = n;
    ch.mu_iu = ch.mu_si = ch.mu_su = 1.0;
    ch.phi_iu = Eigen::VectorXd::Zero(n);
    ch.phi_si = Eigen::VectorXd::Zero(n);
    ch.phi_su = 0.0;
    ch.amp_iu = Eigen::VectorXd::Ones(n);
    ch.amp_si = Eigen::VectorXd::Ones(n);
    ch.amp_su = 1.0;
    return ch;
}

}  // namespace

TEST_CASE("sampling is deterministic under a fixed seed") {
    const auto params = scenario::default_scenario();
    auto eng1 = rng::make_engine(123);
    auto eng2 = rng::make_engine(123);
    const auto a = channels::sample_channels(params, 4, eng1);
    const auto b = channels::sample_channels(params, 4, eng2);
    CHECK(a.phi_iu == b.phi_iu);
    CHECK(a.phi_si == b.phi_si);
    CHECK(a.amp_su == b.amp_su);
}

TEST_CASE("sampling rejects an empty surface") {
    const auto params = scenario::default_scenario();
    auto eng = rng::make_engine(1);
    CHECK_THROWS_AS(channels::sample_channels(params, 0, eng), std::invalid_argument);
}

TEST_CASE("element phases average out: CLT bound at N=1000") {
    const auto params = scenario::default_scenario();
    auto eng = rng::make_engine(2024);
    const auto ch = channels::sample_channels(params, 1000, eng);
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i < ch.n; ++i) acc += std::polar(1.0, ch.phi_si[i]);
    CHECK(std::abs(acc) / 1000.0 < 0.12);  // 3/sqrt(1000)
}

TEST_CASE("sampled magnitudes come from the link budget") {
    const auto params = scenario::default_scenario();
    auto eng = rng::make_engine(5);
    const auto ch = channels::sample_channels(params, 8, eng);
    CHECK(std::norm(ch.h_su()) == doctest::Approx(7.03e-8).epsilon(1e-3));
    for (int i = 0; i < ch.n; ++i) {
        CHECK(std::abs(ch.h_iu()[i]) == doctest::Approx(std::sqrt(ch.mu_iu)).epsilon(1e-14));
        CHECK(std::abs(ch.h_si()[i]) == doctest::Approx(std::sqrt(ch.mu_si)).epsilon(1e-14));
    }
}

TEST_CASE("cascaded diagonals: identity case") {
    const auto ch = unit_realization(3);
    const auto d = channels::cascaded_diagonals(ch);
    for (int i = 0; i < 3; ++i) {
        CHECK(d.d_iu[i].real() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(d.d_iu[i].imag() == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(d.d_si[i].real() == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(d.h_su.real() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("cascaded diagonals reconstruct elementwise") {
    const auto params = scenario::default_scenario();
    auto eng = rng::make_engine(7);
    const auto ch = channels::sample_channels(params, 2, eng);
    const auto d = channels::cascaded_diagonals(ch);
    for (int i = 0; i < 2; ++i) {
        const auto want_iu = std::polar(std::sqrt(ch.mu_iu), ch.phi_iu[i]);
        const auto want_si = std::polar(std::sqrt(ch.mu_si), ch.phi_si[i]);
        CHECK(std::abs(d.d_iu[i] - want_iu) < 1e-18);
        CHECK(std::abs(d.d_si[i] - want_si) < 1e-18);
    }
    // sqrt and Euler by hand: h_su = 2.651e-4 * (cos pi/4 + j sin pi/4)
    CHECK(d.h_su.real() == doctest::Approx(2.651e-4 * std::cos(M_PI / 4)).epsilon(1e-3));
    CHECK(d.h_su.imag() == doctest::Approx(2.651e-4 * std::sin(M_PI / 4)).epsilon(1e-3));
}

TEST_CASE("cascaded magnitude invariant |D_iu,ii * D_si,ii| = sqrt(mu_iu mu_si)") {
    const auto params = scenario::default_scenario();
    auto eng = rng::make_engine(31);
    const auto ch = channels::sample_channels(params, 64, eng);
    const auto d = channels::cascaded_diagonals(ch);
    const double want = std::sqrt(ch.mu_iu * ch.mu_si);
    for (int i = 0; i < ch.n; ++i)
        CHECK(std::abs(d.d_iu[i] * d.d_si[i]) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("phase-compensated sum collapses to N") {
    const auto params = scenario::default_scenario();
    auto eng = rng::make_engine(77);
    const int n = 257;
    const auto ch = channels::sample_channels(params, n, eng);
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const double phase = ch.phi_iu[i] + ch.phi_si[i];
        acc += std::polar(1.0, -phase) * std::polar(1.0, phase);
    }
    CHECK(acc.real() == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
    CHECK(std::abs(acc.imag()) < 1e-10);
}

TEST_CASE("csv dump/load round trip") {
    const auto params = scenario::default_scenario();
    auto eng = rng::make_engine(99);
    const auto ch = channels::sample_channels(params, 6, eng);
    std::stringstream buf;
    channels::dump_csv(ch, buf);
    const auto back = channels::load_csv(buf, params);
    REQUIRE(back.n == ch.n);
    for (int i = 0; i < ch.n; ++i) {
        CHECK(back.phi_iu[i] == ch.phi_iu[i]);
        CHECK(back.phi_si[i] == ch.phi_si[i]);
    }
    CHECK(back.mu_su == doctest::Approx(ch.mu_su).epsilon(1e-15));
}
