#pragma once

// Closed-form asymptotics of the captured (autoresonant) solution under weak
// dissipation mu1 = delta1*mu, mu2 = delta2*mu.
//
// Outer (algebraic-growth) representation, in scaled variables a = mu*A,
// b = mu*B, theta = mu*t:
//   a = (8 theta + mu^2 alpha2) e^{i Psi0},  b = (-4 theta + mu^2 beta2) e^{2i Psi0}
//   sin Psi0 = -4 g / f,   g(theta) = 3 + (2 delta1 + delta2) theta
//   S = sqrt(f^2 - 16 g^2)      (validity gauge; representation needs S/mu >> 1)
//   Psi0' = -4 (2 delta1 + delta2) / S
//   alpha2 = (S^2 - 48 c) / (4 S),  beta2 = (-S^2 + 32 c) / (4 S),  c = 2 delta1 + delta2
// S vanishes at theta* = (f/4 - 3)/c, the predicted arrest of growth.
//
// Inner (near-arrest) representation in the stretched variable sigma = S/mu:
//   a ~ a0 e^{i psi0(sigma)},  b ~ b0 e^{2i psi0(sigma)}
//   b0 = (f - 12)/c,  a0 = 2 b0,  psi0(sigma) = -pi/2 + (f-12)/(16 f c^2) sigma^2
// valid for sigma << mu^{-1/2}.

#include <vector>

#include "autores/model.hpp"

namespace autores {

// "much greater than 1" read as one order of magnitude
inline constexpr double kOuterValidityFactor = 10.0;  // valid iff S/mu >= 10
inline constexpr double kInnerValidityFactor = 0.3;   // valid iff sigma*sqrt(mu) <= 0.3

struct OuterEval {
    double theta = 0.0;
    double amp_a = 0.0;        // 8 theta + mu^2 alpha2
    double amp_b = 0.0;        // -4 theta + mu^2 beta2
    double psi0 = 0.0;
    double psi0_prime = 0.0;
    double alpha2_corr = 0.0;
    double beta2_corr = 0.0;
    double S = 0.0;
    bool valid = false;
    Complex a;                 // amp_a * e^{i psi0}
    Complex b;                 // amp_b * e^{2i psi0}
};

struct InnerEval {
    double sigma = 0.0;
    double a0 = 0.0;
    double b0 = 0.0;
    double psi0_inner = 0.0;   // psi0(sigma), including the mu*psi1 term when b1 != 0
    double psi00 = 0.0;        // matching constant, always -pi/2
    bool valid = false;
    Complex a;
    Complex b;
};

struct OuterPoint {
    double theta = 0.0;
    Complex a;
    Complex b;
};

// Leading outer phase Psi0(theta) on the branch with cos(Psi0) > 0, i.e.
// Psi0 = arcsin(-4g/f) in (-pi/2, 0], decreasing toward -pi/2 at breakdown.
// Equals Psi0(0) + integral of Psi0' (checked in tests against quadrature).
// Extends continuously to -pi/2 on the boundary f^2 = 16 g^2; throws
// std::domain_error beyond it.
double phase_psi0(double theta, const ModelParams& p, const DissipationDecomposition& d);

// Full outer evaluation at one theta >= 0.  Throws std::domain_error when
// S^2 <= 0 (at or beyond breakdown), std::invalid_argument on theta < 0 or
// inconsistent parameters.
OuterEval outer_eval(double theta, const ModelParams& p, const DissipationDecomposition& d);

// theta* = (f/4 - 3)/(2 delta1 + delta2), the root of S.  Requires f > 12 and
// 2 delta1 + delta2 > 0 (throws std::domain_error otherwise).
double outer_breakdown_theta(const ModelParams& p, const DissipationDecomposition& d);

// Inner evaluation at sigma >= 0 (the artifact evaluates the pre-arrest side
// only; S is a positive root).  b1 is the undetermined first-correction
// constant; when nonzero, a1 = 2 b1 and psi1(sigma) = b1 sigma^2/(32 f c)
// enter at order mu.  Requires f > 12 and c > 0.
InnerEval inner_eval(double sigma, const ModelParams& p, const DissipationDecomposition& d,
                     double b1 = 0.0);

// Outer representation sampled on a theta grid, in scaled (a, b) variables;
// divide by mu (A = a/mu, B = b/mu) to compare with rhs_main solutions.
std::vector<OuterPoint> outer_trajectory(const ModelParams& p, const DissipationDecomposition& d,
                                         const std::vector<double>& theta_grid);

} // namespace autores
