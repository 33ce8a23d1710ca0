#pragma once

// Capture classification, threshold bisection, arrest detection, and
// asymptotics-vs-numerics error curves for the main-resonance system.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autores/asymptotics.hpp"
#include "autores/integrator.hpp"
#include "autores/model.hpp"

namespace autores {

// Captured solutions track |A| ~ 8t, so |A(T)|/(8T) -> 1; non-captured
// solutions stay bounded and the ratio -> 0.  0.5 splits the two cleanly.
inline constexpr double kCaptureRatioThreshold = 0.5;

// Rest initial data are released a short lead-in before the resonance
// crossing at t = 0.  Starting exactly at 0 leaves the drive no time to build
// the phase-locked seed and shifts the empirical threshold to ~12.16; any
// lead-in in [0.05, 0.6] reproduces the near-threshold behavior (f = 11.9
// stays bounded, f = 12.1 captures) with the transition at ~12.05.
inline constexpr double kDefaultLeadIn = 0.05;

IntegrationConfig default_capture_config();

struct CaptureReport {
    bool captured = false;
    double t_end = 0.0;
    double final_amp = 0.0;
    double growth_ratio = 0.0;               // final_amp / (8 t_end)
    std::optional<double> arrest_time;       // argmax of |A|, when interior
    std::optional<double> peak_amp;
};

// Classifies a finished rhs_main trajectory.  Arrest diagnostics are filled
// for captured runs whose |A| peak lies strictly inside the time range
// (dissipative arrest); a trajectory still growing at t_end reports none.
// Throws std::runtime_error on early-terminated trajectories.
CaptureReport classify_capture(const Trajectory<EnvelopeState>& traj,
                               double ratio_threshold = kCaptureRatioThreshold);

// Integrates rhs_main from rest (A = B = 0 at cfg.t_start) and classifies.
CaptureReport classify_capture(const ModelParams& p, const IntegrationConfig& cfg);

struct ThresholdResult {
    double f_star = 0.0;      // midpoint of the final bracket
    double f_lo = 0.0;        // final bracket, width <= tol
    double f_hi = 0.0;
    double t_end = 0.0;       // classification horizon (threshold drifts with T)
    int iterations = 0;
};

// Bisection on f with the capture classifier as oracle.  Requires
// not-captured at f_lo and captured at f_hi (throws std::invalid_argument
// otherwise, including the degenerate f_lo >= f_hi case).
ThresholdResult find_threshold(double mu1, double mu2, double f_lo, double f_hi, double tol,
                               const IntegrationConfig& cfg = default_capture_config());

struct ArrestCheck {
    double t_numeric = 0.0;
    double t_predicted = 0.0;   // theta* / mu
    double rel_dev = 0.0;
    double peak_amp = 0.0;
    double peak_predicted = 0.0; // 8 theta* / mu
    double peak_rel_dev = 0.0;
};

// Integrates rhs_main from rest and compares the numeric |A| argmax (3-point
// parabolic refinement) with the breakdown prediction.  When cfg.t_end <=
// cfg.t_start the horizon defaults to 1.4 * t_predicted.
ArrestCheck arrest_prediction_check(const ModelParams& p, const DissipationDecomposition& d,
                                    IntegrationConfig cfg = IntegrationConfig{0.0, 0.0});

struct ErrorCurve {
    std::vector<double> thetas;
    std::vector<double> rel_err_a;   // |a_num - a_asym| / |a_num|
    std::vector<double> rel_err_b;
};

struct ComparePoint {
    double t = 0.0;
    double theta = 0.0;
    Complex A_num, B_num;
    Complex A_asym, B_asym;          // outer representation / mu
    double rel_err_a = 0.0;
    double rel_err_b = 0.0;
};

// Integrates rhs_main across the theta window starting from the outer
// representation at the window's lower edge (the representation describes the
// captured branch, not the capture transient).  The upper edge is clamped one
// step short of breakdown, where the correction terms diverge.  Points where
// |a_num| <= 1e-8 are dropped.
std::vector<ComparePoint> compare_outer(const ModelParams& p, const DissipationDecomposition& d,
                                        IntegrationConfig cfg,
                                        std::pair<double, double> theta_window);

ErrorCurve error_curve(const ModelParams& p, const DissipationDecomposition& d,
                       const IntegrationConfig& cfg, std::pair<double, double> theta_window);

enum class SweepTask { classify, arrest };

struct SweepRow {
    ModelParams params;
    CaptureReport report;
    std::optional<ArrestCheck> arrest;
    std::string status;              // empty on success, error text otherwise
};

// Runs the task at every grid point, optionally across worker threads.
// parallelism 0 selects the hardware concurrency.  The output order is the
// grid order regardless of scheduling; per-point failures are recorded in
// status, not thrown.
std::vector<SweepRow> sweep(const std::vector<ModelParams>& grid, SweepTask task,
                            unsigned parallelism = 1,
                            const IntegrationConfig& cfg = default_capture_config());

} // namespace autores
