#pragma once

// Deterministic CSV output: fixed schemas, %.17g doubles, no locale effects.

#include <iosfwd>
#include <string>
#include <vector>

#include "autores/analysis.hpp"
#include "autores/asymptotics.hpp"
#include "autores/integrator.hpp"
#include "autores/model.hpp"

namespace autores::csv {

std::string format(double v);  // shortest round-trippable decimal, %.17g

// t,re_A,im_A,abs_A,re_B,im_B,abs_B
void write_envelope(std::ostream& os, const Trajectory<EnvelopeState>& traj);

// t,x,xdot,y,ydot
void write_fast(std::ostream& os, const Trajectory<FastState>& traj);

// envelope columns + abs_a_asym,rel_err_a,abs_b_asym,rel_err_b
// (asymptotic amplitudes converted to unscaled units, |a|/mu)
void write_compare(std::ostream& os, const std::vector<ComparePoint>& table);

// theta,re_a,im_a,abs_a,re_b,im_b,abs_b,S,valid
void write_outer(std::ostream& os, const std::vector<OuterEval>& rows);

// sigma,re_a,im_a,abs_a,re_b,im_b,abs_b,valid
void write_inner(std::ostream& os, const std::vector<InnerEval>& rows);

// f,mu1,mu2,status,captured,growth_ratio,final_amp,arrest_time,peak_amp,predicted_arrest,rel_dev
void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows);

// f_star,f_lo,f_hi,t_end,iterations (single row)
void write_threshold(std::ostream& os, const ThresholdResult& res);

} // namespace autores::csv
