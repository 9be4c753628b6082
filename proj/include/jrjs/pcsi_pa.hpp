#pragma once

#include <algorithm>

#include "jrjs/fcsi_pa.hpp"
#include "jrjs/rates.hpp"

namespace jrjs {

/// One relay candidate when only the wiretap variances are known.
struct PcsiCandidateInput {
  double h_sr_sq = 0.0;
  double h_rd_sq = 0.0;
  double eps1 = 1.0;
  double eps2 = 1.0;
  double p_total = 1.0;
  double noise = 1.0;
  double rd = 0.0;
  // False when fewer than two jammers remain, so no null-steering noise exists.
  bool jamming = true;
};

/// Leakage used in the statistical eavesdropper SNR.
inline double pcsi_leakage(const PcsiCandidateInput& in) {
  return in.jamming ? effective_leakage(in.eps2, in.noise, in.p_total) : 0.0;
}

/// Coefficients of g3 (variable P_s) and g4 (variable P_r).
inline LineProblems pcsi_line_problems(const PcsiCandidateInput& in) {
  const double lam = pcsi_leakage(in);
  if (lam != in.eps2)
    return line_problems(in.h_sr_sq, in.h_rd_sq, in.eps1, in.eps2, lam, in.p_total, in.noise);

  const double e1 = in.eps1, e2 = in.eps2, n = in.noise;
  const double alpha1 = in.h_sr_sq / in.h_rd_sq + 1.0;
  const double alpha2 = in.h_rd_sq / in.h_sr_sq + 1.0;
  const double beta3 = in.h_sr_sq * e2 / in.h_rd_sq;
  const double beta4 = in.h_rd_sq * e1 / in.h_sr_sq;
  const double mu2 = in.p_total * e2 + n;
  const double theta2 = mu2 * n;

  LineProblems lp;
  lp.source_line = {theta2,
                    mu2 * in.h_sr_sq - alpha1 * n * e2,
                    alpha1 * e2 * in.h_sr_sq,
                    mu2 * e1 - alpha1 * n * e2 + beta3 * n,
                    alpha1 * e1 * e2};
  lp.relay_line = {theta2,
                   mu2 * in.h_rd_sq - alpha2 * n * e2,
                   alpha2 * e2 * in.h_rd_sq,
                   beta4 * mu2 - alpha2 * n * e2 + e2 * n,
                   alpha2 * e2 * beta4};
  return lp;
}

/// f~(P_s, P_r): the objective with the statistical eavesdropper SNR.
inline double pcsi_objective(const PcsiCandidateInput& in, double p_s, double p_r) {
  const PowerAllocation a{p_s, p_r, std::max(0.0, in.p_total - p_s - p_r)};
  const LinkGains main{in.h_sr_sq, in.h_rd_sq, 0.0, 0.0, 0.0};
  const double lam = pcsi_leakage(in);
  const double ge = in.eps1 * a.p_s / in.noise + in.eps2 * a.p_r / (in.noise + a.p_z * lam);
  return snr_ratio(gamma_d(main, a, in.noise), ge);
}

/// Closed-form sub-optimal allocation for one candidate from wiretap statistics.
inline AllocationResult pcsi_allocate(const PcsiCandidateInput& in) {
  return detail::allocate_on_lines(in, pcsi_line_problems(in),
                                   [&](double ps, double pr) { return pcsi_objective(in, ps, pr); });
}

}  // namespace jrjs
