#include "autores/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace autores {

std::pair<ModelParams, ScalingConstants> reduce_params(const PhysicalParams& p) {
    p.validate();
    const double sqrt_alpha = std::sqrt(p.alpha);
    ModelParams m;
    m.mu1 = p.nu1 / (2.0 * sqrt_alpha);
    m.mu2 = p.nu2 / (2.0 * sqrt_alpha);
    m.f = p.gamma * std::sqrt(p.alpha1 * p.alpha2) / (2.0 * p.alpha * p.omega * p.omega);
    ScalingConstants s;
    s.kappa = p.omega * sqrt_alpha / p.alpha1;
    s.lambda = p.omega * std::sqrt(p.alpha / (p.alpha1 * p.alpha2));
    s.chi = 1.0 / sqrt_alpha;
    return {m, s};
}

FastState envelope_to_fast(double t, const EnvelopeState& s, const PhysicalParams& p) {
    const auto [m, sc] = reduce_params(p);
    const double tau = sc.chi * t;
    const double theta = tau / p.eps;
    const Complex a = sc.lambda * s.A;
    const Complex b = sc.kappa * s.B;
    constexpr Complex ii{0.0, 1.0};
    const Complex cal_a = a * std::exp(ii * (p.alpha * tau * tau));
    const Complex cal_b = b * std::exp(ii * (2.0 * p.alpha * tau * tau));
    const Complex car1 = std::exp(ii * (p.omega * theta));
    const Complex car2 = car1 * car1;
    FastState out;
    out.x = 2.0 * std::real(cal_a * car1);
    out.y = 2.0 * std::real(cal_b * car2);
    out.xdot = 2.0 * std::real(ii * p.omega * cal_a * car1);
    out.ydot = 2.0 * std::real(2.0 * ii * p.omega * cal_b * car2);
    return out;
}

Trajectory<EnvelopeState> demodulate_fast(const Trajectory<FastState>& traj,
                                          const PhysicalParams& p,
                                          double window) {
    p.validate();
    const double period = 2.0 * std::numbers::pi / p.omega;
    if (window == 0.0) window = 8.0 * period;
    if (window < 2.0 * period)
        throw std::invalid_argument("demodulate_fast: window shorter than 2 carrier periods");
    if (traj.size() < 3)
        throw std::invalid_argument("demodulate_fast: trajectory too short");

    const double h = traj.times[1] - traj.times[0];
    // the 2*omega carrier has period pi/omega; require >= 16 samples over it
    if (h > period / 32.0 * (1.0 + 1e-9))
        throw std::invalid_argument("demodulate_fast: sampling coarser than 16 samples per carrier period");

    const double theta_lo = traj.times.front();
    const double theta_hi = traj.times.back();
    if (theta_hi - theta_lo < window)
        throw std::invalid_argument("demodulate_fast: window does not fit inside trajectory");

    const auto [m, sc] = reduce_params(p);
    constexpr Complex ii{0.0, 1.0};
    const double half = 0.5 * window;
    const double pi = std::numbers::pi;

    Trajectory<EnvelopeState> out;
    std::size_t lo_idx = 0;
    for (double center = theta_lo + half; center <= theta_hi - half + 1e-12; center += period) {
        while (lo_idx + 1 < traj.size() && traj.times[lo_idx + 1] < center - half) ++lo_idx;
        Complex acc1{}, acc2{};
        double norm = 0.0;
        // trapezoid accumulation of w(u) x(theta) e^{-i k omega theta} over the window
        for (std::size_t i = lo_idx; i < traj.size() && traj.times[i] <= center + half; ++i) {
            const double u = traj.times[i] - center;
            if (u < -half) continue;
            const double w = 0.5 * (1.0 + std::cos(pi * u / half));
            double step = 0.0;
            if (i > 0 && traj.times[i - 1] >= center - half) step += 0.5 * (traj.times[i] - traj.times[i - 1]);
            if (i + 1 < traj.size() && traj.times[i + 1] <= center + half) step += 0.5 * (traj.times[i + 1] - traj.times[i]);
            const Complex e1 = std::exp(-ii * (p.omega * traj.times[i]));
            acc1 += w * step * traj.states[i].x * e1;
            acc2 += w * step * traj.states[i].y * (e1 * e1);
            norm += w * step;
        }
        if (norm <= 0.0) continue;
        const Complex cal_a = acc1 / norm;
        const Complex cal_b = acc2 / norm;
        const double tau = p.eps * center;
        const Complex a = cal_a * std::exp(-ii * (p.alpha * tau * tau));
        const Complex b = cal_b * std::exp(-ii * (2.0 * p.alpha * tau * tau));
        out.times.push_back(tau / sc.chi);
        out.states.push_back({a / sc.lambda, b / sc.kappa});
    }
    return out;
}

ReductionValidation validate_reduction(const PhysicalParams& p, double tau_max, double fast_dt) {
    p.validate();
    if (tau_max <= 0.0) throw std::invalid_argument("validate_reduction: tau_max must be positive");
    const double period = 2.0 * std::numbers::pi / p.omega;
    if (fast_dt == 0.0) fast_dt = period / 256.0;

    IntegrationConfig fast_cfg;
    fast_cfg.t_start = 0.0;
    fast_cfg.t_end = tau_max / p.eps;
    fast_cfg.dt = fast_dt;
    // keep at least 64 recorded samples per carrier period for the demodulator
    fast_cfg.record_stride = std::max<std::size_t>(1, static_cast<std::size_t>(period / (64.0 * fast_dt)));
    auto fast = integrate([&p](double th, const FastState& s) { return rhs_fast(th, s, p); },
                          FastState{}, fast_cfg);
    if (fast.terminated_early)
        throw std::runtime_error("validate_reduction: fast integration terminated: " + fast.termination_reason);

    const auto demod = demodulate_fast(fast, p);
    const auto [m, sc] = reduce_params(p);

    IntegrationConfig main_cfg;
    main_cfg.t_start = 0.0;
    main_cfg.t_end = tau_max / sc.chi;
    main_cfg.dt = 1e-4;
    main_cfg.record_stride = 100;
    auto main_traj = integrate([&m](double t, const EnvelopeState& s) { return rhs_main(t, s, m); },
                               EnvelopeState{}, main_cfg);
    if (main_traj.terminated_early)
        throw std::runtime_error("validate_reduction: envelope integration terminated: " + main_traj.termination_reason);

    auto interp = [&main_traj](double t) {
        const auto& ts = main_traj.times;
        auto it = std::lower_bound(ts.begin(), ts.end(), t);
        if (it == ts.begin()) return main_traj.states.front();
        if (it == ts.end()) return main_traj.states.back();
        const std::size_t j = static_cast<std::size_t>(it - ts.begin());
        const double t1 = ts[j - 1], t2 = ts[j];
        const double w = (t - t1) / (t2 - t1);
        return (1.0 - w) * main_traj.states[j - 1] + w * main_traj.states[j];
    };

    ReductionValidation out;
    double scale_a = 0.0, scale_b = 0.0, diff_a = 0.0, diff_b = 0.0;
    for (std::size_t i = 0; i < demod.size(); ++i) {
        const double t = demod.times[i];
        if (t > main_cfg.t_end) break;
        const EnvelopeState ref = interp(t);
        scale_a = std::max(scale_a, std::abs(ref.A));
        scale_b = std::max(scale_b, std::abs(ref.B));
        diff_a = std::max(diff_a, std::abs(demod.states[i].A - ref.A));
        diff_b = std::max(diff_b, std::abs(demod.states[i].B - ref.B));
        ++out.n_points;
    }
    if (out.n_points == 0)
        throw std::runtime_error("validate_reduction: no demodulated samples inside the comparison range");
    out.max_err_a = scale_a > 0.0 ? diff_a / scale_a : diff_a;
    out.max_err_b = scale_b > 0.0 ? diff_b / scale_b : diff_b;
    return out;
}

} // namespace autores
