#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "autores/analysis.hpp"
#include "autores/asymptotics.hpp"
#include "autores/integrator.hpp"
#include "autores/model.hpp"
#include "autores/reduction.hpp"

namespace py = pybind11;
using namespace autores;

namespace {

Trajectory<EnvelopeState> integrate_main(const ModelParams& p, const IntegrationConfig& cfg,
                                         const EnvelopeState& s0) {
    p.validate();
    return integrate([&](double t, const EnvelopeState& s) { return rhs_main(t, s, p); }, s0, cfg);
}

Trajectory<EnvelopeState> integrate_scaled(const ModelParams& p,
                                           const DissipationDecomposition& d,
                                           const IntegrationConfig& cfg,
                                           const EnvelopeState& s0) {
    p.validate();
    d.validate();
    return integrate([&](double th, const EnvelopeState& s) { return rhs_scaled(th, s, p, d); },
                     s0, cfg);
}

Trajectory<FastState> integrate_fast(const PhysicalParams& p, const IntegrationConfig& cfg,
                                     const FastState& s0) {
    p.validate();
    return integrate([&](double th, const FastState& s) { return rhs_fast(th, s, p); }, s0, cfg);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Autoresonance capture and arrest in two coupled weakly nonlinear oscillators";

    py::class_<PhysicalParams>(m, "PhysicalParams")
        .def(py::init([](double eps, double omega, double alpha1, double alpha2, double nu1,
                         double nu2, double gamma, double alpha) {
                 return PhysicalParams{eps, omega, alpha1, alpha2, nu1, nu2, gamma, alpha};
             }),
             py::arg("eps") = 1e-3, py::arg("omega") = 1.0, py::arg("alpha1") = 1.0,
             py::arg("alpha2") = 1.0, py::arg("nu1") = 0.0, py::arg("nu2") = 0.0,
             py::arg("gamma") = 1.0, py::arg("alpha") = 1.0)
        .def_readwrite("eps", &PhysicalParams::eps)
        .def_readwrite("omega", &PhysicalParams::omega)
        .def_readwrite("alpha1", &PhysicalParams::alpha1)
        .def_readwrite("alpha2", &PhysicalParams::alpha2)
        .def_readwrite("nu1", &PhysicalParams::nu1)
        .def_readwrite("nu2", &PhysicalParams::nu2)
        .def_readwrite("gamma", &PhysicalParams::gamma)
        .def_readwrite("alpha", &PhysicalParams::alpha)
        .def("validate", &PhysicalParams::validate);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("f"), py::arg("mu1") = 0.0,
             py::arg("mu2") = 0.0)
        .def_readwrite("f", &ModelParams::f)
        .def_readwrite("mu1", &ModelParams::mu1)
        .def_readwrite("mu2", &ModelParams::mu2)
        .def("validate", &ModelParams::validate)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(f=" + std::to_string(p.f) + ", mu1=" + std::to_string(p.mu1) +
                   ", mu2=" + std::to_string(p.mu2) + ")";
        });

    py::class_<DissipationDecomposition>(m, "DissipationDecomposition")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("mu"), py::arg("delta1") = 1.0,
             py::arg("delta2") = 1.0)
        .def_readwrite("mu", &DissipationDecomposition::mu)
        .def_readwrite("delta1", &DissipationDecomposition::delta1)
        .def_readwrite("delta2", &DissipationDecomposition::delta2)
        .def("delta_sum", &DissipationDecomposition::delta_sum)
        .def("reduced", &DissipationDecomposition::reduced, py::arg("f"))
        .def("consistent_with", &DissipationDecomposition::consistent_with)
        .def("validate", &DissipationDecomposition::validate);

    py::class_<EnvelopeState>(m, "EnvelopeState")
        .def(py::init<>())
        .def(py::init<Complex, Complex>(), py::arg("A"), py::arg("B"))
        .def_readwrite("A", &EnvelopeState::A)
        .def_readwrite("B", &EnvelopeState::B);

    py::class_<FastState>(m, "FastState")
        .def(py::init<>())
        .def_readwrite("x", &FastState::x)
        .def_readwrite("xdot", &FastState::xdot)
        .def_readwrite("y", &FastState::y)
        .def_readwrite("ydot", &FastState::ydot);

    py::class_<IntegrationConfig>(m, "IntegrationConfig")
        .def(py::init<>())
        .def_readwrite("t_start", &IntegrationConfig::t_start)
        .def_readwrite("t_end", &IntegrationConfig::t_end)
        .def_readwrite("dt", &IntegrationConfig::dt)
        .def_readwrite("record_stride", &IntegrationConfig::record_stride)
        .def_readwrite("blowup_threshold", &IntegrationConfig::blowup_threshold)
        .def("validate", &IntegrationConfig::validate);

    py::class_<Trajectory<EnvelopeState>>(m, "EnvelopeTrajectory")
        .def_readonly("times", &Trajectory<EnvelopeState>::times)
        .def_readonly("states", &Trajectory<EnvelopeState>::states)
        .def_readonly("terminated_early", &Trajectory<EnvelopeState>::terminated_early)
        .def_readonly("termination_reason", &Trajectory<EnvelopeState>::termination_reason)
        .def("__len__", &Trajectory<EnvelopeState>::size);

    py::class_<Trajectory<FastState>>(m, "FastTrajectory")
        .def_readonly("times", &Trajectory<FastState>::times)
        .def_readonly("states", &Trajectory<FastState>::states)
        .def_readonly("terminated_early", &Trajectory<FastState>::terminated_early)
        .def_readonly("termination_reason", &Trajectory<FastState>::termination_reason)
        .def("__len__", &Trajectory<FastState>::size);

    py::class_<CaptureReport>(m, "CaptureReport")
        .def_readonly("captured", &CaptureReport::captured)
        .def_readonly("t_end", &CaptureReport::t_end)
        .def_readonly("final_amp", &CaptureReport::final_amp)
        .def_readonly("growth_ratio", &CaptureReport::growth_ratio)
        .def_readonly("arrest_time", &CaptureReport::arrest_time)
        .def_readonly("peak_amp", &CaptureReport::peak_amp);

    py::class_<ThresholdResult>(m, "ThresholdResult")
        .def_readonly("f_star", &ThresholdResult::f_star)
        .def_readonly("f_lo", &ThresholdResult::f_lo)
        .def_readonly("f_hi", &ThresholdResult::f_hi)
        .def_readonly("t_end", &ThresholdResult::t_end)
        .def_readonly("iterations", &ThresholdResult::iterations);

    py::class_<ArrestCheck>(m, "ArrestCheck")
        .def_readonly("t_numeric", &ArrestCheck::t_numeric)
        .def_readonly("t_predicted", &ArrestCheck::t_predicted)
        .def_readonly("rel_dev", &ArrestCheck::rel_dev)
        .def_readonly("peak_amp", &ArrestCheck::peak_amp)
        .def_readonly("peak_predicted", &ArrestCheck::peak_predicted)
        .def_readonly("peak_rel_dev", &ArrestCheck::peak_rel_dev);

    py::class_<OuterEval>(m, "OuterEval")
        .def_readonly("theta", &OuterEval::theta)
        .def_readonly("amp_a", &OuterEval::amp_a)
        .def_readonly("amp_b", &OuterEval::amp_b)
        .def_readonly("psi0", &OuterEval::psi0)
        .def_readonly("psi0_prime", &OuterEval::psi0_prime)
        .def_readonly("alpha2_corr", &OuterEval::alpha2_corr)
        .def_readonly("beta2_corr", &OuterEval::beta2_corr)
        .def_readonly("S", &OuterEval::S)
        .def_readonly("valid", &OuterEval::valid)
        .def_readonly("a", &OuterEval::a)
        .def_readonly("b", &OuterEval::b);

    py::class_<InnerEval>(m, "InnerEval")
        .def_readonly("sigma", &InnerEval::sigma)
        .def_readonly("a0", &InnerEval::a0)
        .def_readonly("b0", &InnerEval::b0)
        .def_readonly("psi0_inner", &InnerEval::psi0_inner)
        .def_readonly("psi00", &InnerEval::psi00)
        .def_readonly("valid", &InnerEval::valid)
        .def_readonly("a", &InnerEval::a)
        .def_readonly("b", &InnerEval::b);

    py::class_<OuterPoint>(m, "OuterPoint")
        .def_readonly("theta", &OuterPoint::theta)
        .def_readonly("a", &OuterPoint::a)
        .def_readonly("b", &OuterPoint::b);

    py::class_<ScalingConstants>(m, "ScalingConstants")
        .def_readonly("kappa", &ScalingConstants::kappa)
        .def_readonly("lambda_", &ScalingConstants::lambda)
        .def_readonly("chi", &ScalingConstants::chi);

    py::class_<ReductionValidation>(m, "ReductionValidation")
        .def_readonly("max_err_a", &ReductionValidation::max_err_a)
        .def_readonly("max_err_b", &ReductionValidation::max_err_b)
        .def_readonly("n_points", &ReductionValidation::n_points);

    py::class_<ErrorCurve>(m, "ErrorCurve")
        .def_readonly("thetas", &ErrorCurve::thetas)
        .def_readonly("rel_err_a", &ErrorCurve::rel_err_a)
        .def_readonly("rel_err_b", &ErrorCurve::rel_err_b);

    py::class_<ComparePoint>(m, "ComparePoint")
        .def_readonly("t", &ComparePoint::t)
        .def_readonly("theta", &ComparePoint::theta)
        .def_readonly("A_num", &ComparePoint::A_num)
        .def_readonly("B_num", &ComparePoint::B_num)
        .def_readonly("A_asym", &ComparePoint::A_asym)
        .def_readonly("B_asym", &ComparePoint::B_asym)
        .def_readonly("rel_err_a", &ComparePoint::rel_err_a)
        .def_readonly("rel_err_b", &ComparePoint::rel_err_b);

    py::enum_<SweepTask>(m, "SweepTask")
        .value("classify", SweepTask::classify)
        .value("arrest", SweepTask::arrest);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("params", &SweepRow::params)
        .def_readonly("report", &SweepRow::report)
        .def_readonly("arrest", &SweepRow::arrest)
        .def_readonly("status", &SweepRow::status);

    m.attr("CAPTURE_RATIO_THRESHOLD") = kCaptureRatioThreshold;
    m.attr("DEFAULT_LEAD_IN") = kDefaultLeadIn;
    m.attr("OUTER_VALIDITY_FACTOR") = kOuterValidityFactor;
    m.attr("INNER_VALIDITY_FACTOR") = kInnerValidityFactor;

    m.def("rhs_main", &rhs_main, py::arg("t"), py::arg("state"), py::arg("params"));
    m.def("rhs_scaled", &rhs_scaled, py::arg("theta"), py::arg("state"), py::arg("params"),
          py::arg("decomposition"));
    m.def("rhs_fast", &rhs_fast, py::arg("theta"), py::arg("state"), py::arg("params"));

    m.def("default_capture_config", &default_capture_config);
    m.def("integrate_main", &integrate_main, py::arg("params"), py::arg("config"),
          py::arg("initial") = EnvelopeState{});
    m.def("integrate_scaled", &integrate_scaled, py::arg("params"), py::arg("decomposition"),
          py::arg("config"), py::arg("initial") = EnvelopeState{});
    m.def("integrate_fast", &integrate_fast, py::arg("params"), py::arg("config"),
          py::arg("initial") = FastState{});

    m.def("classify_capture",
          py::overload_cast<const ModelParams&, const IntegrationConfig&>(&classify_capture),
          py::arg("params"), py::arg("config"));
    m.def("classify_trajectory",
          py::overload_cast<const Trajectory<EnvelopeState>&, double>(&classify_capture),
          py::arg("trajectory"), py::arg("ratio_threshold") = kCaptureRatioThreshold);
    m.def("find_threshold", &find_threshold, py::arg("mu1"), py::arg("mu2"), py::arg("f_lo"),
          py::arg("f_hi"), py::arg("tol"), py::arg("config") = default_capture_config(),
          py::call_guard<py::gil_scoped_release>());
    m.def("arrest_prediction_check", &arrest_prediction_check, py::arg("params"),
          py::arg("decomposition"), py::arg("config") = IntegrationConfig{0.0, 0.0},
          py::call_guard<py::gil_scoped_release>());
    m.def("compare_outer", &compare_outer, py::arg("params"), py::arg("decomposition"),
          py::arg("config"), py::arg("theta_window"));
    m.def("error_curve", &error_curve, py::arg("params"), py::arg("decomposition"),
          py::arg("config"), py::arg("theta_window"));
    m.def("sweep", &sweep, py::arg("grid"), py::arg("task"), py::arg("parallelism") = 1,
          py::arg("config") = default_capture_config(),
          py::call_guard<py::gil_scoped_release>());

    m.def("phase_psi0", &phase_psi0, py::arg("theta"), py::arg("params"),
          py::arg("decomposition"));
    m.def("outer_eval", &outer_eval, py::arg("theta"), py::arg("params"),
          py::arg("decomposition"));
    m.def("outer_breakdown_theta", &outer_breakdown_theta, py::arg("params"),
          py::arg("decomposition"));
    m.def("inner_eval", &inner_eval, py::arg("sigma"), py::arg("params"),
          py::arg("decomposition"), py::arg("b1") = 0.0);
    m.def("outer_trajectory", &outer_trajectory, py::arg("params"), py::arg("decomposition"),
          py::arg("theta_grid"));

    m.def("reduce_params", &reduce_params, py::arg("params"));
    m.def("envelope_to_fast", &envelope_to_fast, py::arg("t"), py::arg("state"),
          py::arg("params"));
    m.def("demodulate_fast", &demodulate_fast, py::arg("trajectory"), py::arg("params"),
          py::arg("window") = 0.0);
    m.def("validate_reduction", &validate_reduction, py::arg("params"), py::arg("tau_max") = 1.0,
          py::arg("fast_dt") = 0.0, py::call_guard<py::gil_scoped_release>());
}
