#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

// Fixed-step classical RK4 over any state type that forms a vector space.
// Fixed step keeps runs bit-for-bit reproducible; the step defaults to 1e-4.

namespace autores {

// Scalar states for simple test problems.
inline double state_inf_norm(double s) { return std::abs(s); }
inline bool state_is_finite(double s) { return std::isfinite(s); }

template <typename S>
concept IntegrableState = requires(const S& s, double c) {
    { s + s } -> std::convertible_to<S>;
    { c * s } -> std::convertible_to<S>;
    { state_inf_norm(s) } -> std::convertible_to<double>;
    { state_is_finite(s) } -> std::convertible_to<bool>;
};

struct IntegrationConfig {
    double t_start = 0.0;
    double t_end = 30.0;
    double dt = 1e-4;
    std::size_t record_stride = 100;   // store every k-th step
    double blowup_threshold = 1e6;     // far above any physical amplitude here

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("IntegrationConfig: dt must be > 0");
        if (!(t_end > t_start))
            throw std::invalid_argument("IntegrationConfig: t_end must exceed t_start");
        if (!(dt <= t_end - t_start))
            throw std::invalid_argument("IntegrationConfig: dt must not exceed the interval");
        if (record_stride == 0)
            throw std::invalid_argument("IntegrationConfig: record_stride must be >= 1");
        if (!(blowup_threshold > 0.0))
            throw std::invalid_argument("IntegrationConfig: blowup_threshold must be > 0");
    }
};

// Recorded integration output. times strictly increasing, one state per time.
template <IntegrableState State>
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    bool terminated_early = false;
    std::string termination_reason;

    std::size_t size() const { return times.size(); }
};

template <IntegrableState State, typename Rhs>
State rk4_step(Rhs&& rhs, double t, const State& s, double h) {
    const State k1 = rhs(t, s);
    const State k2 = rhs(t + 0.5 * h, s + (0.5 * h) * k1);
    const State k3 = rhs(t + 0.5 * h, s + (0.5 * h) * k2);
    const State k4 = rhs(t + h, s + h * k3);
    return s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Integrates rhs(t, state) from s0 over [t_start, t_end] with fixed step cfg.dt.
// The final step is shortened when the interval is not a whole number of steps,
// so the last recorded time is exactly t_end. Recording keeps the initial state,
// every record_stride-th step and the final state. On blow-up or a non-finite
// state the trajectory is returned with terminated_early set and a reason; the
// offending state is recorded only while still finite.
template <IntegrableState State, typename Rhs>
Trajectory<State> integrate(Rhs&& rhs, const State& s0, const IntegrationConfig& cfg) {
    cfg.validate();
    Trajectory<State> traj;

    const double span = cfg.t_end - cfg.t_start;
    const double steps_exact = span / cfg.dt;
    auto n_full = static_cast<std::size_t>(steps_exact);
    if (steps_exact - static_cast<double>(n_full) > 1.0 - 1e-9) ++n_full;  // span/dt integral

    const double tail_tol = 1e-12 * std::max(1.0, std::abs(span));
    const bool has_tail = cfg.t_end - (cfg.t_start + static_cast<double>(n_full) * cfg.dt) > tail_tol;

    traj.times.reserve(n_full / cfg.record_stride + 3);
    traj.states.reserve(n_full / cfg.record_stride + 3);
    traj.times.push_back(cfg.t_start);
    traj.states.push_back(s0);

    State s = s0;
    for (std::size_t k = 1; k <= n_full; ++k) {
        const double t_prev = cfg.t_start + static_cast<double>(k - 1) * cfg.dt;
        s = rk4_step(rhs, t_prev, s, cfg.dt);
        const double t_k = cfg.t_start + static_cast<double>(k) * cfg.dt;

        if (!state_is_finite(s)) {
            traj.terminated_early = true;
            traj.termination_reason = "non-finite state at t=" + std::to_string(t_k);
            return traj;
        }
        if (state_inf_norm(s) > cfg.blowup_threshold) {
            traj.times.push_back(t_k);
            traj.states.push_back(s);
            traj.terminated_early = true;
            traj.termination_reason =
                "state norm exceeded blow-up threshold at t=" + std::to_string(t_k);
            return traj;
        }
        if (k % cfg.record_stride == 0 && !(k == n_full && !has_tail)) {
            traj.times.push_back(t_k);
            traj.states.push_back(s);
        }
    }

    if (has_tail) {
        const double t_last = cfg.t_start + static_cast<double>(n_full) * cfg.dt;
        s = rk4_step(rhs, t_last, s, cfg.t_end - t_last);
        if (!state_is_finite(s)) {
            traj.terminated_early = true;
            traj.termination_reason = "non-finite state at t=" + std::to_string(cfg.t_end);
            return traj;
        }
    }
    traj.times.push_back(cfg.t_end);
    traj.states.push_back(s);
    if (state_inf_norm(traj.states.back()) > cfg.blowup_threshold) {
        traj.terminated_early = true;
        traj.termination_reason =
            "state norm exceeded blow-up threshold at t=" + std::to_string(cfg.t_end);
    }
    return traj;
}

// Empirical convergence order by step halving. Terminal states at
// dt/2^i (i = 0..refinements) are compared against a dt/2^(refinements+2)
// reference; the returned order is the mean of the log2 error ratios.
// Throws when the errors sit at the round-off floor and the ratios carry no
// information.
template <IntegrableState State, typename Rhs>
double convergence_order(Rhs&& rhs, const State& s0, const IntegrationConfig& cfg,
                         int refinements) {
    if (refinements < 2) throw std::invalid_argument("convergence_order: refinements must be >= 2");

    auto terminal = [&](double dt) {
        IntegrationConfig c = cfg;
        c.dt = dt;
        c.record_stride = std::numeric_limits<std::size_t>::max();
        const auto traj = integrate(rhs, s0, c);
        if (traj.terminated_early)
            throw std::runtime_error("convergence_order: integration terminated early (" +
                                     traj.termination_reason + ")");
        return traj.states.back();
    };

    const State ref = terminal(cfg.dt / std::pow(2.0, refinements + 2));
    const double scale = std::max(1.0, state_inf_norm(ref));
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;

    std::vector<double> errs;
    for (int i = 0; i <= refinements; ++i) {
        const State terminal_i = terminal(cfg.dt / std::pow(2.0, i));
        const double err = state_inf_norm(terminal_i + (-1.0) * ref);
        if (err < floor)
            throw std::runtime_error(
                "convergence_order: errors at round-off floor; order estimate unreliable");
        errs.push_back(err);
    }

    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) sum += std::log2(errs[i] / errs[i + 1]);
    return sum / static_cast<double>(errs.size() - 1);
}

}  // namespace autores
