#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "autores/reduction.hpp"

using namespace autores;

namespace {

PhysicalParams unit_params() {
    PhysicalParams p;
    p.eps = 1e-3;
    p.omega = 1.0;
    p.alpha1 = 1.0;
    p.alpha2 = 1.0;
    p.nu1 = 0.0;
    p.nu2 = 0.0;
    p.gamma = 2.0;
    p.alpha = 1.0;
    return p;
}

// Fast trajectory synthesized from a frozen envelope, sampled at fast times
// theta_i = i*h.  envelope_to_fast expects the matching slow time.
Trajectory<FastState> synth_traj(const EnvelopeState& s, const PhysicalParams& p, double h,
                                 std::size_t n) {
    const auto [mp, sc] = reduce_params(p);
    (void)mp;
    Trajectory<FastState> traj;
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = static_cast<double>(i) * h;
        const double t = p.eps * theta / sc.chi;
        traj.times.push_back(theta);
        traj.states.push_back(envelope_to_fast(t, s, p));
    }
    return traj;
}

}  // namespace

TEST_CASE("parameter reduction at unit constants") {
    auto p = unit_params();
    auto [mp, sc] = reduce_params(p);
    CHECK(mp.f == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mp.mu1 == 0.0);
    CHECK(mp.mu2 == 0.0);
    CHECK(sc.kappa == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sc.lambda == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sc.chi == doctest::Approx(1.0).epsilon(1e-15));

    p.gamma = 24.0;
    CHECK(reduce_params(p).first.f == doctest::Approx(12.0).epsilon(1e-15));
    p.nu1 = 0.01;
    p.nu2 = 0.02;
    auto mp2 = reduce_params(p).first;
    CHECK(mp2.mu1 == doctest::Approx(0.005).epsilon(1e-15));
    CHECK(mp2.mu2 == doctest::Approx(0.01).epsilon(1e-15));
}

TEST_CASE("scaling constants satisfy the defining identities") {
    // The substitutions only close when
    //   alpha1*chi*kappa/omega = 1,  alpha2*chi*lambda^2/(omega*kappa) = 1,
    //   f = gamma*chi/(2*omega*lambda),  mu_i = nu_i*chi/2.
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (int i = 0; i < 50; ++i) {
        PhysicalParams p;
        p.eps = 1e-3;
        p.omega = u(rng);
        p.alpha1 = u(rng);
        p.alpha2 = u(rng);
        p.nu1 = 0.1 * u(rng);
        p.nu2 = 0.1 * u(rng);
        p.gamma = 10.0 * u(rng);
        p.alpha = u(rng);
        const auto [mp, sc] = reduce_params(p);
        CHECK(p.alpha1 * sc.chi * sc.kappa / p.omega == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.alpha2 * sc.chi * sc.lambda * sc.lambda / (p.omega * sc.kappa) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(mp.f == doctest::Approx(p.gamma * sc.chi / (2.0 * p.omega * sc.lambda)).epsilon(1e-12));
        CHECK(mp.mu1 == doctest::Approx(p.nu1 * sc.chi / 2.0).epsilon(1e-12));
        CHECK(mp.mu2 == doctest::Approx(p.nu2 * sc.chi / 2.0).epsilon(1e-12));
        CHECK(sc.chi * sc.chi * p.alpha == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("envelope reconstruction at rest is zero") {
    const auto p = unit_params();
    const auto s = envelope_to_fast(0.0, EnvelopeState{}, p);
    CHECK(s.x == 0.0);
    CHECK(s.xdot == 0.0);
    CHECK(s.y == 0.0);
    CHECK(s.ydot == 0.0);
}

TEST_CASE("envelope reconstruction of a real first-harmonic envelope") {
    const auto p = unit_params();
    const EnvelopeState s{Complex{0.7, 0.0}, Complex{0.0, 0.0}};
    const auto f0 = envelope_to_fast(0.0, s, p);
    CHECK(f0.x == doctest::Approx(1.4).epsilon(1e-12));   // 2*lambda*Re A at theta = 0
    CHECK(f0.xdot == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(f0.y == 0.0);
    CHECK(f0.ydot == 0.0);
}

TEST_CASE("demodulation recovers a frozen first-harmonic envelope") {
    const auto p = unit_params();
    const EnvelopeState s{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    const double period = 2.0 * std::numbers::pi / p.omega;
    const auto traj = synth_traj(s, p, period / 64.0, 64 * 20 + 1);
    const auto env = demodulate_fast(traj, p);
    REQUIRE(env.size() > 5);
    for (std::size_t i = 0; i < env.size(); ++i) {
        CHECK(std::abs(env.states[i].A - s.A) < 1e-3);
        CHECK(std::abs(env.states[i].B) < 1e-3);
    }
}

TEST_CASE("demodulation recovers a frozen second-harmonic envelope") {
    const auto p = unit_params();
    const EnvelopeState s{Complex{0.0, 0.0}, Complex{0.3, -0.4}};
    const double period = 2.0 * std::numbers::pi / p.omega;
    const auto traj = synth_traj(s, p, period / 64.0, 64 * 20 + 1);
    const auto env = demodulate_fast(traj, p);
    REQUIRE(env.size() > 5);
    for (std::size_t i = 0; i < env.size(); ++i) {
        CHECK(std::abs(env.states[i].A) < 1e-3);
        CHECK(std::abs(env.states[i].B - s.B) < 1e-3);
    }
}

TEST_CASE("demodulation separates mixed harmonics at omega = 2") {
    PhysicalParams p = unit_params();
    p.omega = 2.0;
    p.alpha1 = 2.0;
    p.alpha2 = 0.5;
    const EnvelopeState s{Complex{0.8, 0.3}, Complex{-0.2, 0.5}};
    const double period = 2.0 * std::numbers::pi / p.omega;
    const auto traj = synth_traj(s, p, period / 64.0, 64 * 24 + 1);
    const auto env = demodulate_fast(traj, p);
    REQUIRE(env.size() > 5);
    const auto mid = env.states[env.size() / 2];
    CHECK(std::abs(mid.A - s.A) < 2e-3);
    CHECK(std::abs(mid.B - s.B) < 2e-3);
}

TEST_CASE("demodulation input validation") {
    const auto p = unit_params();
    const double period = 2.0 * std::numbers::pi / p.omega;
    const EnvelopeState s{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    // trajectory shorter than one demodulation window
    const auto tiny = synth_traj(s, p, period / 64.0, 32);
    CHECK_THROWS_AS(demodulate_fast(tiny, p), std::invalid_argument);
    // sampling coarser than 32 points per carrier period
    const auto coarse = synth_traj(s, p, period / 16.0, 16 * 20 + 1);
    CHECK_THROWS_AS(demodulate_fast(coarse, p), std::invalid_argument);
}

TEST_CASE("full reduction validation at eps = 1e-2") {
    PhysicalParams p = unit_params();
    p.eps = 1e-2;
    p.gamma = 24.2;  // f = 12.1, growing solution
    const auto v = validate_reduction(p, 1.0);
    CHECK(v.n_points > 5);
    CHECK(v.max_err_a < 0.1);
    CHECK(v.max_err_b < 0.1);
}

TEST_CASE("full reduction validation pins the omega scaling") {
    // At omega != 1 the demodulated and directly integrated envelopes only
    // agree when lambda and kappa carry their omega factors.
    PhysicalParams p;
    p.eps = 1e-2;
    p.omega = 2.0;
    p.alpha1 = 2.0;
    p.alpha2 = 0.5;
    p.nu1 = 0.0;
    p.nu2 = 0.0;
    p.gamma = 16.0;  // f = 2, bounded solution
    p.alpha = 1.0;
    const auto v = validate_reduction(p, 1.0);
    CHECK(v.n_points > 5);
    CHECK(v.max_err_a < 0.1);
    CHECK(v.max_err_b < 0.1);
}
