#include "autores/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace autores {

namespace {

Trajectory<EnvelopeState> run_main(const ModelParams& p, const IntegrationConfig& cfg,
                                   const EnvelopeState& s0 = EnvelopeState{}) {
    return integrate([&p](double t, const EnvelopeState& s) { return rhs_main(t, s, p); }, s0, cfg);
}

// vertex of the parabola through (t0,y0), (t1,y1), (t2,y2); falls back to t1
double parabolic_peak(double t0, double y0, double t1, double y1, double t2, double y2) {
    const double h1 = t1 - t0, h2 = t2 - t1;
    const double d1 = (y1 - y0) / h1, d2 = (y2 - y1) / h2;
    const double curv = (d2 - d1) / (h1 + h2);
    if (curv >= 0.0) return t1;
    const double tv = 0.5 * (t0 + t1) - d1 / (2.0 * curv);
    return std::clamp(tv, t0, t2);
}

struct PeakInfo {
    double time = 0.0;
    double amp = 0.0;
    bool interior = false;
};

PeakInfo find_peak(const Trajectory<EnvelopeState>& traj) {
    std::size_t k = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double v = std::abs(traj.states[i].A);
        if (v > best) { best = v; k = i; }
    }
    PeakInfo info;
    info.amp = best;
    info.time = traj.times[k];
    info.interior = k > 0 && k + 1 < traj.size();
    if (info.interior) {
        info.time = parabolic_peak(traj.times[k - 1], std::abs(traj.states[k - 1].A),
                                   traj.times[k], best,
                                   traj.times[k + 1], std::abs(traj.states[k + 1].A));
    }
    return info;
}

} // namespace

IntegrationConfig default_capture_config() {
    IntegrationConfig cfg;
    cfg.t_start = -kDefaultLeadIn;
    cfg.t_end = 30.0;
    cfg.dt = 1e-4;
    cfg.record_stride = 100;
    return cfg;
}

CaptureReport classify_capture(const Trajectory<EnvelopeState>& traj, double ratio_threshold) {
    if (traj.terminated_early)
        throw std::runtime_error("classify_capture: trajectory terminated early: " +
                                 traj.termination_reason);
    if (traj.size() < 2)
        throw std::invalid_argument("classify_capture: trajectory has fewer than two samples");
    const double T = traj.times.back();
    if (T <= 0.0)
        throw std::invalid_argument("classify_capture: trajectory must extend past t = 0");

    CaptureReport r;
    r.t_end = T;
    r.final_amp = std::abs(traj.states.back().A);
    r.growth_ratio = r.final_amp / (8.0 * T);
    r.captured = r.growth_ratio >= ratio_threshold;
    if (r.captured) {
        const PeakInfo peak = find_peak(traj);
        // a peak at the last sample means growth is still ongoing, not arrest
        if (peak.interior && peak.amp > r.final_amp) {
            r.arrest_time = peak.time;
            r.peak_amp = peak.amp;
        }
    }
    return r;
}

CaptureReport classify_capture(const ModelParams& p, const IntegrationConfig& cfg) {
    p.validate();
    return classify_capture(run_main(p, cfg));
}

ThresholdResult find_threshold(double mu1, double mu2, double f_lo, double f_hi, double tol,
                               const IntegrationConfig& cfg) {
    if (!(f_lo < f_hi))
        throw std::invalid_argument("find_threshold: degenerate bracket (f_lo >= f_hi)");
    if (!(tol > 0.0))
        throw std::invalid_argument("find_threshold: tol must be positive");

    auto captured_at = [&](double f) {
        ModelParams p{f, mu1, mu2};
        return classify_capture(p, cfg).captured;
    };
    if (captured_at(f_lo))
        throw std::invalid_argument("find_threshold: already captured at f_lo");
    if (!captured_at(f_hi))
        throw std::invalid_argument("find_threshold: not captured at f_hi");

    ThresholdResult res;
    res.t_end = cfg.t_end;
    double lo = f_lo, hi = f_hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (captured_at(mid) ? hi : lo) = mid;
        ++res.iterations;
    }
    res.f_lo = lo;
    res.f_hi = hi;
    res.f_star = 0.5 * (lo + hi);
    return res;
}

ArrestCheck arrest_prediction_check(const ModelParams& p, const DissipationDecomposition& d,
                                    IntegrationConfig cfg) {
    if (d.mu <= 0.0)
        throw std::invalid_argument("arrest_prediction_check: requires mu > 0");
    const double theta_star = outer_breakdown_theta(p, d);

    ArrestCheck chk;
    chk.t_predicted = theta_star / d.mu;
    chk.peak_predicted = 8.0 * theta_star / d.mu;
    if (cfg.t_end <= cfg.t_start) {
        cfg = default_capture_config();
        cfg.t_end = 1.4 * chk.t_predicted;
    }
    const auto traj = run_main(p, cfg);
    if (traj.terminated_early)
        throw std::runtime_error("arrest_prediction_check: integration terminated: " +
                                 traj.termination_reason);
    const PeakInfo peak = find_peak(traj);
    if (!peak.interior)
        throw std::runtime_error("arrest_prediction_check: no interior |A| peak; extend t_end");
    chk.t_numeric = peak.time;
    chk.peak_amp = peak.amp;
    chk.rel_dev = std::abs(chk.t_numeric - chk.t_predicted) / chk.t_predicted;
    chk.peak_rel_dev = std::abs(chk.peak_amp - chk.peak_predicted) / chk.peak_predicted;
    return chk;
}

std::vector<ComparePoint> compare_outer(const ModelParams& p, const DissipationDecomposition& d,
                                        IntegrationConfig cfg,
                                        std::pair<double, double> theta_window) {
    if (d.mu <= 0.0)
        throw std::invalid_argument("compare_outer: requires mu > 0 (theta = mu t scaling)");
    const auto [th_lo, th_hi] = theta_window;
    if (!(0.0 <= th_lo && th_lo < th_hi))
        throw std::invalid_argument("compare_outer: need 0 <= theta_lo < theta_hi");

    double th_end = th_hi;
    const double c = d.delta_sum();
    if (p.f > 12.0 && c > 0.0) {
        const double theta_star = outer_breakdown_theta(p, d);
        if (th_lo >= theta_star)
            throw std::domain_error("compare_outer: window starts at or beyond breakdown");
        if (th_end >= theta_star)
            th_end = theta_star - d.mu * cfg.dt;  // one step short of S = 0
    }
    cfg.t_start = th_lo / d.mu;
    cfg.t_end = th_end / d.mu;
    cfg.validate();

    const OuterEval start = outer_eval(th_lo, p, d);
    const EnvelopeState s0{start.a / d.mu, start.b / d.mu};
    const auto traj = run_main(p, cfg, s0);
    if (traj.terminated_early)
        throw std::runtime_error("compare_outer: integration terminated: " + traj.termination_reason);

    std::vector<ComparePoint> out;
    out.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double theta = d.mu * traj.times[i];
        const double g = 3.0 + c * theta;
        if (p.f * p.f - 16.0 * g * g <= 0.0) continue;
        const double abs_a_num = d.mu * std::abs(traj.states[i].A);
        if (abs_a_num <= 1e-8) continue;
        const OuterEval e = outer_eval(theta, p, d);
        ComparePoint pt;
        pt.t = traj.times[i];
        pt.theta = theta;
        pt.A_num = traj.states[i].A;
        pt.B_num = traj.states[i].B;
        pt.A_asym = e.a / d.mu;
        pt.B_asym = e.b / d.mu;
        pt.rel_err_a = std::abs(pt.A_num - pt.A_asym) / std::abs(pt.A_num);
        pt.rel_err_b = std::abs(pt.B_num - pt.B_asym) / std::abs(pt.B_num);
        out.push_back(pt);
    }
    return out;
}

ErrorCurve error_curve(const ModelParams& p, const DissipationDecomposition& d,
                       const IntegrationConfig& cfg, std::pair<double, double> theta_window) {
    const auto table = compare_outer(p, d, cfg, theta_window);
    ErrorCurve curve;
    curve.thetas.reserve(table.size());
    curve.rel_err_a.reserve(table.size());
    curve.rel_err_b.reserve(table.size());
    for (const auto& pt : table) {
        curve.thetas.push_back(pt.theta);
        curve.rel_err_a.push_back(pt.rel_err_a);
        curve.rel_err_b.push_back(pt.rel_err_b);
    }
    return curve;
}

std::vector<SweepRow> sweep(const std::vector<ModelParams>& grid, SweepTask task,
                            unsigned parallelism, const IntegrationConfig& cfg) {
    if (grid.empty())
        throw std::invalid_argument("sweep: empty grid");
    if (parallelism == 0)
        parallelism = std::max(1u, std::thread::hardware_concurrency());

    std::vector<SweepRow> rows(grid.size());
    auto work_on = [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.params = grid[i];
        try {
            if (task == SweepTask::classify) {
                row.report = classify_capture(grid[i], cfg);
            } else {
                const double mu = std::max(grid[i].mu1, grid[i].mu2);
                if (mu <= 0.0)
                    throw std::invalid_argument("arrest task requires dissipation (mu1 or mu2 > 0)");
                DissipationDecomposition d{mu, grid[i].mu1 / mu, grid[i].mu2 / mu};
                row.arrest = arrest_prediction_check(grid[i], d);
            }
        } catch (const std::exception& e) {
            row.status = e.what();
        }
    };

    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(parallelism, grid.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) work_on(i);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
                work_on(i);
        });
    }
    for (auto& th : pool) th.join();
    return rows;
}

} // namespace autores
