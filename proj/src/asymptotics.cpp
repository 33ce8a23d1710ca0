#include "autores/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace autores {

namespace {

void check_inputs(double theta, const ModelParams& p, const DissipationDecomposition& d) {
    p.validate();
    d.validate();
    if (!d.consistent_with(p))
        throw std::invalid_argument("decomposition inconsistent with model parameters");
    if (theta < 0.0)
        throw std::invalid_argument("theta must be non-negative");
}

// S^2 = f^2 - 16 g^2 with g = 3 + c*theta
double gauge_sq(double theta, double f, double c) {
    const double g = 3.0 + c * theta;
    return f * f - 16.0 * g * g;
}

} // namespace

double phase_psi0(double theta, const ModelParams& p, const DissipationDecomposition& d) {
    check_inputs(theta, p, d);
    const double c = d.delta_sum();
    const double g = 3.0 + c * theta;
    double x = -4.0 * g / p.f;
    if (x < -1.0) {
        if (x < -1.0 - 1e-12)
            throw std::domain_error("phase_psi0: outside the outer domain (sin Psi0 < -1)");
        x = -1.0;
    }
    if (x > 1.0) x = 1.0;
    return std::asin(x);
}

OuterEval outer_eval(double theta, const ModelParams& p, const DissipationDecomposition& d) {
    check_inputs(theta, p, d);
    const double c = d.delta_sum();
    const double s2 = gauge_sq(theta, p.f, c);
    if (s2 <= 0.0)
        throw std::domain_error("outer_eval: S^2 <= 0, theta at or beyond breakdown");

    OuterEval e;
    e.theta = theta;
    e.S = std::sqrt(s2);
    e.psi0 = phase_psi0(theta, p, d);
    e.psi0_prime = -4.0 * c / e.S;
    e.alpha2_corr = (s2 - 48.0 * c) / (4.0 * e.S);
    e.beta2_corr = (-s2 + 32.0 * c) / (4.0 * e.S);
    const double mu2 = d.mu * d.mu;
    e.amp_a = 8.0 * theta + mu2 * e.alpha2_corr;
    e.amp_b = -4.0 * theta + mu2 * e.beta2_corr;
    e.valid = d.mu == 0.0 || e.S >= kOuterValidityFactor * d.mu;
    const Complex phase = std::exp(Complex(0.0, e.psi0));
    e.a = e.amp_a * phase;
    e.b = e.amp_b * phase * phase;
    return e;
}

double outer_breakdown_theta(const ModelParams& p, const DissipationDecomposition& d) {
    p.validate();
    d.validate();
    if (!d.consistent_with(p))
        throw std::invalid_argument("decomposition inconsistent with model parameters");
    if (p.f < 12.0)
        throw std::domain_error("outer_breakdown_theta: requires f >= 12");
    const double c = d.delta_sum();
    if (c <= 0.0)
        throw std::domain_error("outer_breakdown_theta: requires 2*delta1 + delta2 > 0");
    return (p.f / 4.0 - 3.0) / c;  // zero at the degenerate threshold f = 12
}

InnerEval inner_eval(double sigma, const ModelParams& p, const DissipationDecomposition& d,
                     double b1) {
    p.validate();
    d.validate();
    if (!d.consistent_with(p))
        throw std::invalid_argument("decomposition inconsistent with model parameters");
    if (sigma < 0.0)
        throw std::invalid_argument("inner_eval: sigma must be non-negative (pre-arrest side)");
    if (p.f <= 12.0)
        throw std::domain_error("inner_eval: requires f > 12 (matching needs b0 > 0)");
    const double c = d.delta_sum();
    if (c <= 0.0)
        throw std::domain_error("inner_eval: requires 2*delta1 + delta2 > 0");

    InnerEval e;
    e.sigma = sigma;
    e.psi00 = -std::numbers::pi / 2.0;
    e.b0 = (p.f - 12.0) / c;
    e.a0 = 2.0 * e.b0;
    // quadratic coefficient (f - 12 + b0 c)/(32 f c^2) = (f - 12)/(16 f c^2)
    e.psi0_inner = e.psi00 + (p.f - 12.0) / (16.0 * p.f * c * c) * sigma * sigma;
    double psi = e.psi0_inner;
    double amp_a = e.a0, amp_b = e.b0;
    if (b1 != 0.0) {
        psi += d.mu * b1 * sigma * sigma / (32.0 * p.f * c);
        e.psi0_inner = psi;
        amp_a += d.mu * 2.0 * b1;
        amp_b += d.mu * b1;
    }
    e.valid = sigma * std::sqrt(d.mu) <= kInnerValidityFactor;
    const Complex phase = std::exp(Complex(0.0, psi));
    e.a = amp_a * phase;
    e.b = amp_b * phase * phase;
    return e;
}

std::vector<OuterPoint> outer_trajectory(const ModelParams& p, const DissipationDecomposition& d,
                                         const std::vector<double>& theta_grid) {
    std::vector<OuterPoint> out;
    out.reserve(theta_grid.size());
    for (const double theta : theta_grid) {
        const OuterEval e = outer_eval(theta, p, d);
        out.push_back({theta, e.a, e.b});
    }
    return out;
}

} // namespace autores
