#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "autores/analysis.hpp"
#include "autores/asymptotics.hpp"
#include "autores/csv_io.hpp"
#include "autores/integrator.hpp"
#include "autores/model.hpp"
#include "autores/reduction.hpp"

using namespace autores;

namespace {

struct Opts {
    ModelParams model;
    DissipationDecomposition decomp{0.0, 1.0, 1.0};
    bool decomposed = false;    // --mu was given; mu1 = delta1*mu, mu2 = delta2*mu
    PhysicalParams phys;
    IntegrationConfig cfg;
    bool dt_given = false;
    bool t_end_given = false;
    std::string output;
};

void add_drive_opt(CLI::App* cmd, Opts& o) {
    cmd->add_option("--f", o.model.f, "reduced drive amplitude f");
}

void add_mu_opts(CLI::App* cmd, Opts& o) {
    cmd->add_option("--mu1", o.model.mu1, "dissipation mu1")->check(CLI::NonNegativeNumber);
    cmd->add_option("--mu2", o.model.mu2, "dissipation mu2")->check(CLI::NonNegativeNumber);
}

void add_decomp_opts(CLI::App* cmd, Opts& o) {
    cmd->add_option("--mu", o.decomp.mu, "common dissipation scale (mu1 = delta1*mu, ...)")
        ->check(CLI::NonNegativeNumber)
        ->each([&o](const std::string&) { o.decomposed = true; });
    cmd->add_option("--delta1", o.decomp.delta1, "order-one factor of mu1")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--delta2", o.decomp.delta2, "order-one factor of mu2")
        ->check(CLI::NonNegativeNumber);
}

void add_integration_opts(CLI::App* cmd, Opts& o) {
    cmd->add_option("--t-start", o.cfg.t_start, "integration start time");
    cmd->add_option("--t-end", o.cfg.t_end, "integration end time")
        ->each([&o](const std::string&) { o.t_end_given = true; });
    cmd->add_option("--dt", o.cfg.dt, "fixed integration step")
        ->check(CLI::PositiveNumber)
        ->each([&o](const std::string&) { o.dt_given = true; });
    cmd->add_option("--stride", o.cfg.record_stride, "record every k-th step")
        ->check(CLI::PositiveNumber);
}

void add_physical_opts(CLI::App* cmd, Opts& o) {
    cmd->add_option("--eps", o.phys.eps, "perturbation parameter")->check(CLI::PositiveNumber);
    cmd->add_option("--omega", o.phys.omega, "natural frequency of the first oscillator")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--alpha1", o.phys.alpha1, "coupling coefficient x <- x*y");
    cmd->add_option("--alpha2", o.phys.alpha2, "coupling coefficient y <- x^2");
    cmd->add_option("--nu1", o.phys.nu1, "dissipation nu1")->check(CLI::NonNegativeNumber);
    cmd->add_option("--nu2", o.phys.nu2, "dissipation nu2")->check(CLI::NonNegativeNumber);
    cmd->add_option("--gamma", o.phys.gamma, "drive amplitude");
    cmd->add_option("--alpha", o.phys.alpha, "detuning sweep rate")->check(CLI::PositiveNumber);
}

// mu1, mu2 recast as mu*delta1, mu*delta2 with mu = max(mu1, mu2).
DissipationDecomposition decomposition_for(const ModelParams& p) {
    const double mu = std::max(p.mu1, p.mu2);
    if (mu <= 0.0)
        throw std::invalid_argument("this command needs dissipation: set --mu or --mu1/--mu2");
    return DissipationDecomposition{mu, p.mu1 / mu, p.mu2 / mu};
}

DissipationDecomposition pick_decomposition(const Opts& o) {
    if (o.decomposed) return o.decomp;
    return decomposition_for(o.model);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

std::vector<double> parse_list(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string tok =
            csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (tok.empty() || used != tok.size())
            throw std::invalid_argument(std::string(what) + ": bad number '" + tok + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> grid;
    grid.reserve(n);
    if (n == 1) {
        grid.push_back(lo);
        return grid;
    }
    for (std::size_t i = 0; i < n; ++i)
        grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    return grid;
}

int run(int argc, char** argv) {
    CLI::App app{"Autoresonance capture, arrest and asymptotics of two coupled weakly "
                 "nonlinear oscillators with small dissipation"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file with option overrides");

    Opts o;
    o.cfg = default_capture_config();

    auto* sim = app.add_subcommand("simulate", "integrate one of the model systems");
    std::string system = "main";
    sim->add_option("--system", system, "main | scaled | fast")
        ->check(CLI::IsMember({"main", "scaled", "fast"}));
    add_drive_opt(sim, o);
    add_mu_opts(sim, o);
    add_decomp_opts(sim, o);
    add_integration_opts(sim, o);
    add_physical_opts(sim, o);
    sim->add_option("-o,--output", o.output, "output CSV path")->required();

    auto* asym = app.add_subcommand("asymptotic", "evaluate the closed-form representations");
    bool inner = false;
    double lo = 0.0, hi = -1.0, b1 = 0.0;
    std::size_t samples = 201;
    asym->add_flag("--inner", inner, "near-arrest representation instead of the outer one");
    add_drive_opt(asym, o);
    add_mu_opts(asym, o);
    add_decomp_opts(asym, o);
    asym->add_option("--lo", lo, "lower end of the theta (or sigma) grid");
    asym->add_option("--hi", hi, "upper end of the theta (or sigma) grid");
    asym->add_option("--samples", samples, "grid size")->check(CLI::PositiveNumber);
    asym->add_option("--b1", b1, "first-correction constant of the inner representation");
    asym->add_option("-o,--output", o.output, "output CSV path")->required();

    auto* cmp = app.add_subcommand("compare", "numeric envelope against the outer representation");
    double theta_lo = 0.1, theta_hi = 0.4;
    add_drive_opt(cmp, o);
    add_mu_opts(cmp, o);
    add_decomp_opts(cmp, o);
    add_integration_opts(cmp, o);
    cmp->add_option("--theta-lo", theta_lo, "window start in theta = mu*t");
    cmp->add_option("--theta-hi", theta_hi, "window end in theta = mu*t");
    cmp->add_option("-o,--output", o.output, "output CSV path")->required();

    auto* thr = app.add_subcommand("threshold", "bisect the capture threshold f*");
    double f_lo = 10.0, f_hi = 14.0, tol = 0.05;
    add_mu_opts(thr, o);
    add_integration_opts(thr, o);
    thr->add_option("--f-lo", f_lo, "bracket lower end");
    thr->add_option("--f-hi", f_hi, "bracket upper end");
    thr->add_option("--tol", tol, "bracket width target")->check(CLI::PositiveNumber);
    thr->add_option("-o,--output", o.output, "optional CSV result path");

    auto* arr = app.add_subcommand("arrest", "growth-arrest time against its prediction");
    add_drive_opt(arr, o);
    add_mu_opts(arr, o);
    add_decomp_opts(arr, o);
    add_integration_opts(arr, o);

    auto* swp = app.add_subcommand("sweep", "parameter sweep over f (and optionally mu)");
    std::string task = "classify", f_values, mu_values;
    unsigned jobs = 1;
    swp->add_option("--task", task, "classify | arrest")
        ->check(CLI::IsMember({"classify", "arrest"}));
    swp->add_option("--f-values", f_values, "comma-separated drive amplitudes")->required();
    swp->add_option("--mu-values", mu_values, "comma-separated mu values (mu1 = mu2 = mu)");
    add_mu_opts(swp, o);
    add_integration_opts(swp, o);
    swp->add_option("--jobs", jobs, "worker threads (0 = all hardware threads)");
    swp->add_option("-o,--output", o.output, "output CSV path")->required();

    auto* vr = app.add_subcommand("validate-reduction",
                                  "fast system demodulated against the envelope system");
    double tau_max = 1.0, fast_dt = 0.0;
    add_physical_opts(vr, o);
    vr->add_option("--tau-max", tau_max, "slow-time horizon")->check(CLI::PositiveNumber);
    vr->add_option("--fast-dt", fast_dt, "fast-system step (0 = 1/256 of a carrier period)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (o.decomposed) {
        o.model.mu1 = o.decomp.mu * o.decomp.delta1;
        o.model.mu2 = o.decomp.mu * o.decomp.delta2;
    }

    if (sim->parsed()) {
        if (system == "fast") {
            o.phys.validate();
            IntegrationConfig cfg = o.cfg;
            if (!o.dt_given) cfg.dt = (2.0 * std::numbers::pi / o.phys.omega) / 256.0;
            auto rhs = [&](double th, const FastState& s) { return rhs_fast(th, s, o.phys); };
            const auto traj = integrate(rhs, FastState{}, cfg);
            auto os = open_out(o.output);
            csv::write_fast(os, traj);
            std::printf("simulate fast: %zu samples to t=%.6g%s, final x=%.6g\n", traj.size(),
                        traj.times.back(), traj.terminated_early ? " (terminated early)" : "",
                        traj.states.back().x);
            return 0;
        }
        o.model.validate();
        Trajectory<EnvelopeState> traj;
        if (system == "scaled") {
            const DissipationDecomposition d = pick_decomposition(o);
            auto rhs = [&](double th, const EnvelopeState& s) {
                return rhs_scaled(th, s, o.model, d);
            };
            traj = integrate(rhs, EnvelopeState{}, o.cfg);
        } else {
            auto rhs = [&](double t, const EnvelopeState& s) { return rhs_main(t, s, o.model); };
            traj = integrate(rhs, EnvelopeState{}, o.cfg);
        }
        auto os = open_out(o.output);
        csv::write_envelope(os, traj);
        std::printf("simulate %s: f=%.6g, %zu samples to t=%.6g%s, final |A|=%.6g\n",
                    system.c_str(), o.model.f, traj.size(), traj.times.back(),
                    traj.terminated_early ? " (terminated early)" : "",
                    std::abs(traj.states.back().A));
        return 0;
    }

    if (asym->parsed()) {
        DissipationDecomposition d = o.decomp;
        if (!o.decomposed && (o.model.mu1 > 0.0 || o.model.mu2 > 0.0))
            d = decomposition_for(o.model);
        const ModelParams p = d.reduced(o.model.f);
        if (inner) {
            if (hi < 0.0)
                hi = d.mu > 0.0 ? kInnerValidityFactor / std::sqrt(d.mu) : 10.0;
            std::vector<InnerEval> evals;
            for (double s : linspace(lo, hi, samples)) evals.push_back(inner_eval(s, p, d, b1));
            auto os = open_out(o.output);
            csv::write_inner(os, evals);
            std::printf("asymptotic inner: f=%.6g, b0=%.6g, a0=%.6g, sigma in [%.6g, %.6g]\n",
                        p.f, evals.front().b0, evals.front().a0, lo, hi);
            return 0;
        }
        const bool has_star = p.f >= 12.0 && d.delta_sum() > 0.0;
        const double theta_star = has_star ? outer_breakdown_theta(p, d) : -1.0;
        if (hi < 0.0) {
            if (!has_star || theta_star <= 0.0)
                throw std::invalid_argument("asymptotic: --hi is required when theta* is not "
                                            "positive (f <= 12 or no dissipation)");
            hi = 0.98 * theta_star;
        }
        std::vector<OuterEval> evals;
        for (double th : linspace(lo, hi, samples)) evals.push_back(outer_eval(th, p, d));
        auto os = open_out(o.output);
        csv::write_outer(os, evals);
        if (has_star)
            std::printf("asymptotic outer: f=%.6g, theta* = %.6g, psi0(%.6g) = %.6g\n", p.f,
                        theta_star, lo, evals.front().psi0);
        else
            std::printf("asymptotic outer: f=%.6g, psi0(%.6g) = %.6g\n", p.f, lo,
                        evals.front().psi0);
        return 0;
    }

    if (cmp->parsed()) {
        const DissipationDecomposition d = pick_decomposition(o);
        const ModelParams p = d.reduced(o.model.f);
        const auto table = compare_outer(p, d, o.cfg, {theta_lo, theta_hi});
        auto os = open_out(o.output);
        csv::write_compare(os, table);
        double worst = 0.0;
        for (const auto& pt : table) worst = std::max(worst, pt.rel_err_a);
        std::printf("compare: f=%.6g, mu=%.6g, %zu points, max rel err |A| = %.6g over theta in "
                    "[%.6g, %.6g]\n",
                    p.f, d.mu, table.size(), worst, theta_lo, theta_hi);
        return 0;
    }

    if (thr->parsed()) {
        const auto res = find_threshold(o.model.mu1, o.model.mu2, f_lo, f_hi, tol, o.cfg);
        if (!o.output.empty()) {
            auto os = open_out(o.output);
            csv::write_threshold(os, res);
        }
        std::printf("threshold: f* = %.10g (bracket [%.10g, %.10g], T = %.6g, %d iterations)\n",
                    res.f_star, res.f_lo, res.f_hi, res.t_end, res.iterations);
        return 0;
    }

    if (arr->parsed()) {
        const DissipationDecomposition d = pick_decomposition(o);
        const ModelParams p = d.reduced(o.model.f);
        // horizon picked from the prediction unless --t-end was given
        const auto chk = arrest_prediction_check(
            p, d, o.t_end_given ? o.cfg : IntegrationConfig{0.0, 0.0});
        std::printf("arrest: numeric t = %.6g, predicted t* = %.6g (rel dev %.3g); peak |A| = "
                    "%.6g, predicted %.6g (rel dev %.3g)\n",
                    chk.t_numeric, chk.t_predicted, chk.rel_dev, chk.peak_amp, chk.peak_predicted,
                    chk.peak_rel_dev);
        return 0;
    }

    if (swp->parsed()) {
        const auto fs = parse_list(f_values, "--f-values");
        std::vector<ModelParams> grid;
        if (!mu_values.empty()) {
            for (const double mu : parse_list(mu_values, "--mu-values"))
                for (const double f : fs) grid.push_back(ModelParams{f, mu, mu});
        } else {
            for (const double f : fs) grid.push_back(ModelParams{f, o.model.mu1, o.model.mu2});
        }
        const SweepTask st = task == "arrest" ? SweepTask::arrest : SweepTask::classify;
        const auto rows = sweep(grid, st, jobs, o.cfg);
        auto os = open_out(o.output);
        csv::write_sweep(os, rows);
        std::size_t ok = 0;
        for (const auto& r : rows) ok += r.status.empty() ? 1 : 0;
        std::printf("sweep %s: %zu points, %zu ok, %zu failed\n", task.c_str(), rows.size(), ok,
                    rows.size() - ok);
        return 0;
    }

    if (vr->parsed()) {
        o.phys.validate();
        const auto v = validate_reduction(o.phys, tau_max, fast_dt);
        const auto mp = reduce_params(o.phys).first;
        std::printf("validate-reduction: eps=%.3g, f=%.6g, %zu samples, max rel err |A| = %.6g, "
                    "|B| = %.6g\n",
                    o.phys.eps, mp.f, v.n_points, v.max_err_a, v.max_err_b);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
