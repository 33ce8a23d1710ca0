#pragma once

// Parameter reduction and envelope extraction connecting the fast oscillator
// system to the main-resonance envelope equations.
//
// Chain of substitutions:
//   x = Re2[ cal_A e^{i omega theta} ],  y = Re2[ cal_B e^{2i omega theta} ]
//   cal_A = a(tau) e^{i alpha tau^2},    cal_B = b(tau) e^{2i alpha tau^2}
//   tau = chi t,  a = lambda A,  b = kappa B
// where Re2[z] = z + conj(z) and
//   kappa = omega sqrt(alpha)/alpha1,
//   lambda = omega sqrt(alpha/(alpha1 alpha2)),
//   chi = 1/sqrt(alpha).
// The resulting A, B satisfy rhs_main with
//   mu1 = nu1/(2 sqrt(alpha)), mu2 = nu2/(2 sqrt(alpha)),
//   f = gamma sqrt(alpha1 alpha2) / (2 alpha omega^2).

#include <cstddef>
#include <utility>

#include "autores/integrator.hpp"
#include "autores/model.hpp"

namespace autores {

struct ScalingConstants {
    double kappa = 1.0;
    double lambda = 1.0;
    double chi = 1.0;
};

// Physical oscillator parameters -> main-resonance parameters plus the
// amplitude/time scalings used by the envelope transforms below.
std::pair<ModelParams, ScalingConstants> reduce_params(const PhysicalParams& p);

// Reconstructs the fast-system state at fast time theta = chi*t/eps from
// envelope values A, B at main-resonance time t.  Derivatives are taken at
// carrier order (the O(eps) envelope drift is dropped).
FastState envelope_to_fast(double t, const EnvelopeState& s, const PhysicalParams& p);

// Extracts envelopes A(t), B(t) from a sampled fast trajectory by windowed
// quadrature demodulation at the carriers omega and 2*omega, then removes the
// chirp phase e^{i alpha tau^2} and the lambda/kappa scalings.  The result is
// directly comparable with rhs_main solutions.
//
// window is the demodulation window length in fast time; 0 selects the
// default of 8 carrier periods.  A Hann window over a whole number of carrier
// periods puts the conjugate-carrier leakage on a spectral zero.
// Output sample times are spaced one carrier period apart.
//
// Throws std::invalid_argument if the window is shorter than 2 carrier
// periods, does not fit inside the trajectory, or the sampling is coarser
// than 16 samples per period of the 2*omega carrier.
Trajectory<EnvelopeState> demodulate_fast(const Trajectory<FastState>& traj,
                                          const PhysicalParams& p,
                                          double window = 0.0);

struct ReductionValidation {
    double max_err_a = 0.0;   // sup |A_demod - A_main| / sup |A_main|
    double max_err_b = 0.0;
    std::size_t n_points = 0; // demodulated samples compared
};

// Integrates the fast system from rest over tau in [0, tau_max], demodulates,
// and compares against the rhs_main solution with the reduced parameters.
// fast_dt = 0 selects (2 pi / omega)/256.  Errors are sup-norm differences
// normalized by the envelope scale, so near-zero stretches do not blow up the
// relative measure.
ReductionValidation validate_reduction(const PhysicalParams& p,
                                       double tau_max = 1.0,
                                       double fast_dt = 0.0);

} // namespace autores
