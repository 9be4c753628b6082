#pragma once

#include <algorithm>
#include <cmath>

#include "jrjs/model.hpp"

namespace jrjs {

/// Power gains seen by one relay candidate.
struct LinkGains {
  double h_sr_sq = 0.0;
  double h_rd_sq = 0.0;
  double h_se_sq = 0.0;
  double h_re_sq = 0.0;
  double lam_e = 0.0;
};

/// Destination SNR of the two-hop DF link.
inline double gamma_d(const LinkGains& g, const PowerAllocation& a, double noise) {
  return std::min(g.h_sr_sq * a.p_s, g.h_rd_sq * a.p_r) / noise;
}

/// Eavesdropper SNR with instantaneous wiretap CSI.
inline double gamma_e_full(const LinkGains& g, const PowerAllocation& a, double noise) {
  return g.h_se_sq * a.p_s / noise + g.h_re_sq * a.p_r / (noise + a.p_z * g.lam_e);
}

/// Approximate mean eavesdropper SNR from the wiretap variances only.
inline double gamma_e_partial(double eps1, double eps2, const PowerAllocation& a, double noise) {
  return eps1 * a.p_s / noise + eps2 * a.p_r / (noise + a.p_z * eps2);
}

/// (1 + gd) / (1 + ge); the quantity every optimizer maximizes.
inline double snr_ratio(double gd, double ge) { return (1.0 + gd) / (1.0 + ge); }

/// Two-phase secrecy rate, bit/s/Hz.
inline double secrecy_rate(double gd, double ge) {
  return std::max(0.0, 0.5 * std::log2(snr_ratio(gd, ge)));
}

/// Single-phase secrecy rate for schemes without a relay hop.
inline double secrecy_rate_direct(double gd, double ge) {
  return std::max(0.0, std::log2(snr_ratio(gd, ge)));
}

inline double main_rate(const LinkGains& g, const PowerAllocation& a, double noise) {
  return 0.5 * std::log2(1.0 + gamma_d(g, a, noise));
}

}  // namespace jrjs
