#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

// Parameter records and right-hand sides of the three model systems.
//
// Fast system (positions x, y over the fast time `fast_theta`):
//   x'' + eps*nu1*x' +   w^2 x = eps*alpha1*x*y + eps*2*gamma*cos(phi)
//   y'' + eps*nu2*y' + 4*w^2 y = eps*alpha2*x^2
// with drive phase phi = (w + eps*alpha*tau)*fast_theta, tau = eps*fast_theta.
// The two oscillators sit in 1:2 resonance; the drive frequency sweeps
// through w at tau = 0.
//
// Main-resonance envelope system (complex A, B over slow time t):
//   A' = -i*(2*t*A + (1/2)*conj(A)*B + f) - mu1*A
//   B' = -i*(4*t*B + (1/4)*A^2)          - mu2*B
//
// mu-scaled envelope system (theta = mu*t, a = mu*A, b = mu*B):
//   mu^2 a' = -i*(2*theta*a + (1/2)*conj(a)*b + mu^2*f) - mu^2*delta1*a
//   mu^2 b' = -i*(4*theta*b + (1/4)*a^2)                - mu^2*delta2*b

namespace autores {

using Complex = std::complex<double>;

// Constants of the fast system plus the perturbation strength eps.
struct PhysicalParams {
    double eps = 1e-3;     // small perturbation parameter
    double omega = 1.0;    // natural frequency of the first oscillator
    double alpha1 = 1.0;   // nonlinear coupling x <- x*y
    double alpha2 = 1.0;   // nonlinear coupling y <- x^2
    double nu1 = 0.0;      // dissipation coefficient, first oscillator
    double nu2 = 0.0;      // dissipation coefficient, second oscillator
    double gamma = 1.0;    // drive amplitude
    double alpha = 1.0;    // sweep rate of the drive detuning in slow time

    // Throws std::invalid_argument on violated constraints. alpha1*alpha2 > 0
    // keeps the amplitude scaling real.
    void validate() const {
        if (!(eps > 0.0)) throw std::invalid_argument("PhysicalParams: eps must be > 0");
        if (!(omega > 0.0)) throw std::invalid_argument("PhysicalParams: omega must be > 0");
        if (!(alpha > 0.0)) throw std::invalid_argument("PhysicalParams: alpha must be > 0");
        if (!(alpha1 * alpha2 > 0.0))
            throw std::invalid_argument("PhysicalParams: alpha1*alpha2 must be > 0");
        if (!(nu1 >= 0.0) || !(nu2 >= 0.0))
            throw std::invalid_argument("PhysicalParams: nu1, nu2 must be >= 0");
    }
};

// Reduced parameter triple of the main-resonance system.
struct ModelParams {
    double f = 0.0;    // reduced drive amplitude
    double mu1 = 0.0;  // reduced dissipation, first envelope
    double mu2 = 0.0;  // reduced dissipation, second envelope

    void validate() const {
        if (!(f >= 0.0)) throw std::invalid_argument("ModelParams: f must be >= 0");
        if (!(mu1 >= 0.0) || !(mu2 >= 0.0))
            throw std::invalid_argument("ModelParams: mu1, mu2 must be >= 0");
    }
};

// Splits (mu1, mu2) into a common small scale mu and order-one factors:
// mu1 = delta1*mu, mu2 = delta2*mu.
struct DissipationDecomposition {
    double mu = 0.0;
    double delta1 = 1.0;
    double delta2 = 1.0;

    double delta_sum() const { return 2.0 * delta1 + delta2; }

    // ModelParams reproduced exactly from the decomposition.
    ModelParams reduced(double f) const { return ModelParams{f, delta1 * mu, delta2 * mu}; }

    bool consistent_with(const ModelParams& p) const {
        return p.mu1 == delta1 * mu && p.mu2 == delta2 * mu;
    }

    void validate() const {
        if (!(mu >= 0.0)) throw std::invalid_argument("DissipationDecomposition: mu must be >= 0");
        if (!(delta1 >= 0.0) || !(delta2 >= 0.0))
            throw std::invalid_argument("DissipationDecomposition: delta1, delta2 must be >= 0");
    }
};

// Complex envelope pair of the main-resonance (or scaled) system.
struct EnvelopeState {
    Complex A{0.0, 0.0};
    Complex B{0.0, 0.0};
};

inline EnvelopeState operator+(const EnvelopeState& u, const EnvelopeState& v) {
    return {u.A + v.A, u.B + v.B};
}
inline EnvelopeState operator*(double c, const EnvelopeState& u) { return {c * u.A, c * u.B}; }

inline double state_inf_norm(const EnvelopeState& s) {
    return std::max(std::abs(s.A), std::abs(s.B));
}
inline bool state_is_finite(const EnvelopeState& s) {
    return std::isfinite(s.A.real()) && std::isfinite(s.A.imag()) && std::isfinite(s.B.real()) &&
           std::isfinite(s.B.imag());
}

// Positions and velocities of the fast system.
struct FastState {
    double x = 0.0;
    double xdot = 0.0;
    double y = 0.0;
    double ydot = 0.0;
};

inline FastState operator+(const FastState& u, const FastState& v) {
    return {u.x + v.x, u.xdot + v.xdot, u.y + v.y, u.ydot + v.ydot};
}
inline FastState operator*(double c, const FastState& u) {
    return {c * u.x, c * u.xdot, c * u.y, c * u.ydot};
}

inline double state_inf_norm(const FastState& s) {
    return std::max(std::max(std::abs(s.x), std::abs(s.xdot)),
                    std::max(std::abs(s.y), std::abs(s.ydot)));
}
inline bool state_is_finite(const FastState& s) {
    return std::isfinite(s.x) && std::isfinite(s.xdot) && std::isfinite(s.y) &&
           std::isfinite(s.ydot);
}

// Main-resonance right-hand side. Pure; same inputs give bit-identical outputs.
inline EnvelopeState rhs_main(double t, const EnvelopeState& s, const ModelParams& p) {
    constexpr Complex ii{0.0, 1.0};
    const Complex dA = -ii * (2.0 * t * s.A + 0.5 * std::conj(s.A) * s.B + p.f) - p.mu1 * s.A;
    const Complex dB = -ii * (4.0 * t * s.B + 0.25 * s.A * s.A) - p.mu2 * s.B;
    return {dA, dB};
}

// Fast-system right-hand side over the fast time. The drive gamma*e^{i*phi}+c.c.
// is implemented as 2*gamma*cos(phi), which keeps the state real.
inline FastState rhs_fast(double fast_theta, const FastState& s, const PhysicalParams& p) {
    const double tau = p.eps * fast_theta;
    const double phi = (p.omega + p.eps * p.alpha * tau) * fast_theta;
    const double w2 = p.omega * p.omega;
    const double xacc = -p.eps * p.nu1 * s.xdot - w2 * s.x + p.eps * p.alpha1 * s.x * s.y +
                        p.eps * 2.0 * p.gamma * std::cos(phi);
    const double yacc = -p.eps * p.nu2 * s.ydot - 4.0 * w2 * s.y + p.eps * p.alpha2 * s.x * s.x;
    return {s.xdot, xacc, s.ydot, yacc};
}

// mu-scaled right-hand side, solved for the derivatives. Undefined at mu = 0.
inline EnvelopeState rhs_scaled(double theta, const EnvelopeState& s, const ModelParams& p,
                                const DissipationDecomposition& d) {
    if (!(d.mu > 0.0)) throw std::domain_error("rhs_scaled: mu must be > 0");
    constexpr Complex ii{0.0, 1.0};
    const double mu2 = d.mu * d.mu;
    const Complex da =
        (-ii * (2.0 * theta * s.A + 0.5 * std::conj(s.A) * s.B + mu2 * p.f) - mu2 * d.delta1 * s.A) /
        mu2;
    const Complex db = (-ii * (4.0 * theta * s.B + 0.25 * s.A * s.A) - mu2 * d.delta2 * s.B) / mu2;
    return {da, db};
}

}  // namespace autores
