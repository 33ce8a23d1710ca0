#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "autores/integrator.hpp"
#include "autores/model.hpp"

using namespace autores;

TEST_CASE("exponential growth to textbook accuracy") {
    auto rhs = [](double, double y) { return y; };
    IntegrationConfig cfg;
    cfg.t_end = 1.0;
    cfg.dt = 0.1;
    cfg.record_stride = 1;
    const auto traj = integrate(rhs, 1.0, cfg);
    REQUIRE(traj.size() == 11);
    CHECK(traj.times.back() == 1.0);
    CHECK(std::abs(traj.states.back() - std::numbers::e) / std::numbers::e < 1e-6);
}

TEST_CASE("harmonic oscillator stays on the circle") {
    PhysicalParams p;
    p.eps = 1e-12;  // effectively linear
    p.gamma = 0.0;
    auto rhs = [&](double t, const FastState& s) { return rhs_fast(t, s, p); };
    IntegrationConfig cfg;
    cfg.t_end = 4.0 * std::numbers::pi;
    cfg.dt = 1e-3;
    const auto traj = integrate(rhs, FastState{1.0, 0.0, 0.0, 0.0}, cfg);
    REQUIRE_FALSE(traj.terminated_early);
    const auto& f = traj.states.back();
    CHECK(f.x == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(f.xdot == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
}

TEST_CASE("final time is recorded exactly for non-integral spans") {
    auto rhs = [](double, double y) { return -y; };
    IntegrationConfig cfg;
    cfg.t_end = 1.0;
    cfg.dt = 0.3;  // 3 full steps plus a short tail
    cfg.record_stride = 1;
    const auto traj = integrate(rhs, 1.0, cfg);
    CHECK(traj.times.back() == 1.0);
    CHECK(traj.states.back() == doctest::Approx(std::exp(-1.0)).epsilon(1e-4));
    REQUIRE(traj.size() == 5);  // 0, 0.3, 0.6, 0.9, 1.0
    CHECK(traj.times[3] == doctest::Approx(0.9));
}

TEST_CASE("record stride keeps initial and final states") {
    auto rhs = [](double, double y) { return y; };
    IntegrationConfig cfg;
    cfg.t_end = 1.0;
    cfg.dt = 0.01;
    cfg.record_stride = 7;
    const auto traj = integrate(rhs, 2.0, cfg);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.states.front() == 2.0);
    CHECK(traj.times.back() == 1.0);
    for (std::size_t i = 1; i + 1 < traj.size(); ++i)
        CHECK(traj.times[i] == doctest::Approx(0.07 * static_cast<double>(i)));
}

TEST_CASE("blow-up terminates with a recorded reason") {
    auto rhs = [](double, double y) { return y * y; };  // blows up at t = 1
    IntegrationConfig cfg;
    cfg.t_end = 2.0;
    cfg.dt = 1e-4;
    cfg.record_stride = 100;
    cfg.blowup_threshold = 1e6;
    const auto traj = integrate(rhs, 1.0, cfg);
    CHECK(traj.terminated_early);
    CHECK(traj.termination_reason.find("blow-up") != std::string::npos);
    CHECK(traj.times.back() < 1.05);
    CHECK(std::isfinite(traj.states.back()));
}

TEST_CASE("non-finite states terminate without recording them") {
    auto rhs = [](double t, double) { return t < 0.5 ? 0.0 : std::nan(""); };
    IntegrationConfig cfg;
    cfg.t_end = 1.0;
    cfg.dt = 0.01;
    cfg.record_stride = 1;
    const auto traj = integrate(rhs, 1.0, cfg);
    CHECK(traj.terminated_early);
    CHECK(traj.termination_reason.find("non-finite") != std::string::npos);
    for (double y : traj.states) CHECK(std::isfinite(y));
}

TEST_CASE("config validation") {
    IntegrationConfig cfg;
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.dt = 1e-4;
    cfg.t_end = cfg.t_start;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.t_end = 1.0;
    cfg.record_stride = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.record_stride = 100;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("measured convergence order is four on a smooth scalar problem") {
    auto rhs = [](double t, double y) { return std::cos(t) * y; };
    IntegrationConfig cfg;
    cfg.t_end = 2.0;
    cfg.dt = 0.05;
    const double p = convergence_order(rhs, 1.0, cfg, 3);
    CHECK(p > 3.8);
    CHECK(p < 4.2);
}

TEST_CASE("measured convergence order is four on the envelope system") {
    const ModelParams p{5.0, 0.0, 0.0};  // below threshold, bounded solution
    auto rhs = [&](double t, const EnvelopeState& s) { return rhs_main(t, s, p); };
    IntegrationConfig cfg;
    cfg.t_end = 5.0;
    cfg.dt = 0.02;
    const double order = convergence_order(rhs, EnvelopeState{}, cfg, 3);
    CHECK(order > 3.5);
    CHECK(order < 4.5);
}

TEST_CASE("convergence order refuses the round-off floor") {
    auto rhs = [](double, double) { return 0.0; };  // every step is exact
    IntegrationConfig cfg;
    cfg.t_end = 1.0;
    cfg.dt = 0.1;
    CHECK_THROWS_AS(convergence_order(rhs, 1.0, cfg, 2), std::runtime_error);
}
