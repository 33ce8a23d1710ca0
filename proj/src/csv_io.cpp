#include "autores/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace autores::csv {

std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void put_complex(std::ostream& os, const Complex& z) {
    os << format(z.real()) << ',' << format(z.imag()) << ',' << format(std::abs(z));
}

std::string sanitize(std::string s) {
    for (char& ch : s)
        if (ch == ',' || ch == '\n') ch = ';';
    return s;
}

} // namespace

void write_envelope(std::ostream& os, const Trajectory<EnvelopeState>& traj) {
    os << "t,re_A,im_A,abs_A,re_B,im_B,abs_B\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        os << format(traj.times[i]) << ',';
        put_complex(os, traj.states[i].A);
        os << ',';
        put_complex(os, traj.states[i].B);
        os << '\n';
    }
}

void write_fast(std::ostream& os, const Trajectory<FastState>& traj) {
    os << "t,x,xdot,y,ydot\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const FastState& s = traj.states[i];
        os << format(traj.times[i]) << ',' << format(s.x) << ',' << format(s.xdot) << ','
           << format(s.y) << ',' << format(s.ydot) << '\n';
    }
}

void write_compare(std::ostream& os, const std::vector<ComparePoint>& table) {
    os << "t,re_A,im_A,abs_A,re_B,im_B,abs_B,abs_a_asym,rel_err_a,abs_b_asym,rel_err_b\n";
    for (const ComparePoint& pt : table) {
        os << format(pt.t) << ',';
        put_complex(os, pt.A_num);
        os << ',';
        put_complex(os, pt.B_num);
        os << ',' << format(std::abs(pt.A_asym)) << ',' << format(pt.rel_err_a) << ','
           << format(std::abs(pt.B_asym)) << ',' << format(pt.rel_err_b) << '\n';
    }
}

void write_outer(std::ostream& os, const std::vector<OuterEval>& rows) {
    os << "theta,re_a,im_a,abs_a,re_b,im_b,abs_b,S,valid\n";
    for (const OuterEval& e : rows) {
        os << format(e.theta) << ',';
        put_complex(os, e.a);
        os << ',';
        put_complex(os, e.b);
        os << ',' << format(e.S) << ',' << (e.valid ? 1 : 0) << '\n';
    }
}

void write_inner(std::ostream& os, const std::vector<InnerEval>& rows) {
    os << "sigma,re_a,im_a,abs_a,re_b,im_b,abs_b,valid\n";
    for (const InnerEval& e : rows) {
        os << format(e.sigma) << ',';
        put_complex(os, e.a);
        os << ',';
        put_complex(os, e.b);
        os << ',' << (e.valid ? 1 : 0) << '\n';
    }
}

void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "f,mu1,mu2,status,captured,growth_ratio,final_amp,arrest_time,peak_amp,"
          "predicted_arrest,rel_dev\n";
    for (const SweepRow& row : rows) {
        os << format(row.params.f) << ',' << format(row.params.mu1) << ','
           << format(row.params.mu2) << ',';
        if (!row.status.empty()) {
            os << sanitize(row.status) << ",,,,,,,\n";
            continue;
        }
        os << "ok,";
        if (row.arrest) {
            const ArrestCheck& a = *row.arrest;
            os << ",,," << format(a.t_numeric) << ',' << format(a.peak_amp) << ','
               << format(a.t_predicted) << ',' << format(a.rel_dev) << '\n';
        } else {
            const CaptureReport& r = row.report;
            os << (r.captured ? 1 : 0) << ',' << format(r.growth_ratio) << ','
               << format(r.final_amp) << ',';
            os << (r.arrest_time ? format(*r.arrest_time) : "") << ','
               << (r.peak_amp ? format(*r.peak_amp) : "") << ",,\n";
        }
    }
}

void write_threshold(std::ostream& os, const ThresholdResult& res) {
    os << "f_star,f_lo,f_hi,t_end,iterations\n";
    os << format(res.f_star) << ',' << format(res.f_lo) << ',' << format(res.f_hi) << ','
       << format(res.t_end) << ',' << res.iterations << '\n';
}

} // namespace autores::csv
