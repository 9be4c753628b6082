#pragma once

#include <algorithm>
#include <cmath>

#include "jrjs/error.hpp"
#include "jrjs/model.hpp"
#include "jrjs/ratmax.hpp"
#include "jrjs/rates.hpp"

namespace jrjs {

/// Anything carrying the main-link gains and the budget/rate constraints.
template <class T>
concept MainLinkInput = requires(const T& t) {
  { t.h_sr_sq } -> std::convertible_to<double>;
  { t.h_rd_sq } -> std::convertible_to<double>;
  { t.p_total } -> std::convertible_to<double>;
  { t.noise } -> std::convertible_to<double>;
  { t.rd } -> std::convertible_to<double>;
};

/// One relay candidate under full wiretap CSI.
struct FcsiCandidateInput {
  double h_sr_sq = 0.0;
  double h_rd_sq = 0.0;
  double h_se_sq = 0.0;
  double h_re_sq = 0.0;
  double lam_e = 0.0;
  double p_total = 1.0;
  double noise = 1.0;
  double rd = 0.0;

  LinkGains gains() const { return {h_sr_sq, h_rd_sq, h_se_sq, h_re_sq, lam_e}; }
};

/// Interval ends of the two balanced-link lines.
/// [p_b1, p_b2] bounds P_s on P_r = (|h_sr|^2/|h_rd|^2) P_s;
/// [p_b3, p_b4] bounds P_r on P_s = (|h_rd|^2/|h_sr|^2) P_r.
struct PowerBounds {
  double p_b1 = 0.0;
  double p_b2 = 0.0;
  double p_b3 = 0.0;
  double p_b4 = 0.0;
};

template <MainLinkInput In>
PowerBounds bounds(const In& in) {
  if (!(in.h_sr_sq > 0.0) || !(in.h_rd_sq > 0.0))
    throw Error(ErrorCode::DegenerateChannel, "main-link gain is zero");
  const double need = (std::exp2(in.rd) - 1.0) * in.noise;
  const double sum = in.h_sr_sq + in.h_rd_sq;
  return {need / in.h_sr_sq, in.p_total * in.h_rd_sq / sum, need / in.h_rd_sq,
          in.p_total * in.h_sr_sq / sum};
}

/// True iff some split of the budget lets the relay decode at rate rd and still
/// leaves the second hop at least as strong, i.e. p_b1 <= p_b2.
template <MainLinkInput In>
bool feasible(const In& in) {
  if (!(in.h_sr_sq > 0.0) || !(in.h_rd_sq > 0.0)) return false;
  const auto b = bounds(in);
  return b.p_b1 <= b.p_b2;
}

/// The two 1-D problems obtained by pinning the link balance.
struct LineProblems {
  RatioQuadratic source_line;  // variable P_s
  RatioQuadratic relay_line;   // variable P_r
};

/// Which line the returned allocation came from.
enum class AllocationLine { Source, Relay };

struct AllocationResult {
  PowerAllocation allocation;
  double objective = 0.0;
  AllocationLine line = AllocationLine::Source;
  RatioMax source_max;
  RatioMax relay_max;
};

/// Leakage values this small relative to noise/P act as no jamming at all.
inline double effective_leakage(double lam, double noise, double p_total) {
  return lam < 1e-12 * noise / p_total ? 0.0 : lam;
}

/// Coefficients of g1 (variable P_s) and g2 (variable P_r) for a generic wiretap
/// described by (source gain, relay gain, jamming leakage).
inline LineProblems line_problems(double h_sr_sq, double h_rd_sq, double se, double re, double lam,
                                  double p_total, double noise) {
  const double alpha1 = h_sr_sq / h_rd_sq + 1.0;
  const double beta1 = h_sr_sq * re / h_rd_sq;
  const double mu1 = p_total * lam + noise;
  const double theta1 = mu1 * noise;

  LineProblems lp;
  lp.source_line.theta = theta1;
  lp.source_line.phi_num = mu1 * h_sr_sq - alpha1 * noise * lam;
  lp.source_line.tau_num = alpha1 * lam * h_sr_sq;
  lp.source_line.phi_den = mu1 * se - alpha1 * noise * lam + beta1 * noise;
  lp.source_line.tau_den = alpha1 * lam * se;

  const double alpha2 = h_rd_sq / h_sr_sq + 1.0;
  const double beta2 = h_rd_sq * se / h_sr_sq;
  lp.relay_line.theta = theta1;
  lp.relay_line.phi_num = mu1 * h_rd_sq - alpha2 * noise * lam;
  lp.relay_line.tau_num = alpha2 * lam * h_rd_sq;
  lp.relay_line.phi_den = mu1 * beta2 - alpha2 * noise * lam + re * noise;
  lp.relay_line.tau_den = alpha2 * beta2 * lam;
  return lp;
}

inline LineProblems fcsi_line_problems(const FcsiCandidateInput& in) {
  return line_problems(in.h_sr_sq, in.h_rd_sq, in.h_se_sq, in.h_re_sq,
                       effective_leakage(in.lam_e, in.noise, in.p_total), in.p_total, in.noise);
}

/// f(P_s, P_r) with P_z = P - P_s - P_r.
inline double fcsi_objective(const FcsiCandidateInput& in, double p_s, double p_r) {
  const PowerAllocation a{p_s, p_r, std::max(0.0, in.p_total - p_s - p_r)};
  auto g = in.gains();
  g.lam_e = effective_leakage(in.lam_e, in.noise, in.p_total);
  return snr_ratio(gamma_d(g, a, in.noise), gamma_e_full(g, a, in.noise));
}

namespace detail {

/// Solve both line problems and keep the better end point under `objective`.
/// Ties go to the source line.
template <MainLinkInput In, class Objective>
AllocationResult allocate_on_lines(const In& in, const LineProblems& lp, Objective&& objective) {
  if (!feasible(in)) throw Error(ErrorCode::InfeasibleRate, "target rate exceeds what the budget supports");
  const auto b = bounds(in);
  const double k = in.h_sr_sq / in.h_rd_sq;

  AllocationResult res;
  res.source_max = maximize(lp.source_line, b.p_b1, b.p_b2);
  res.relay_max = maximize(lp.relay_line, b.p_b3, std::max(b.p_b3, b.p_b4));

  const double ps_a = res.source_max.x;
  const double pr_a = k * ps_a;
  const double pr_b = res.relay_max.x;
  const double ps_b = pr_b / k;
  const double f_a = objective(ps_a, pr_a);
  const double f_b = objective(ps_b, pr_b);

  const bool take_a = f_a >= f_b;
  const double ps = take_a ? ps_a : ps_b;
  const double pr = take_a ? pr_a : pr_b;
  res.allocation = {ps, pr, std::max(0.0, in.p_total - ps - pr)};
  res.objective = take_a ? f_a : f_b;
  res.line = take_a ? AllocationLine::Source : AllocationLine::Relay;
  return res;
}

}  // namespace detail

/// Closed-form sub-optimal allocation for one candidate with full wiretap CSI.
inline AllocationResult fcsi_allocate(const FcsiCandidateInput& in) {
  return detail::allocate_on_lines(in, fcsi_line_problems(in),
                                   [&](double ps, double pr) { return fcsi_objective(in, ps, pr); });
}

}  // namespace jrjs
