#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

#include "jrjs/fcsi_pa.hpp"
#include "jrjs/model.hpp"
#include "jrjs/nulljam.hpp"
#include "jrjs/pcsi_pa.hpp"
#include "jrjs/rates.hpp"

namespace jrjs {

enum class Scheme { FcsiPa, PcsiPa, EpaFcsi, EpaPcsi, PureRelayFcsi, PureRelayPcsi, PureJam, Direct };
enum class CsiMode { Full, Partial };

inline constexpr std::array<Scheme, 8> kAllSchemes{
    Scheme::FcsiPa,        Scheme::PcsiPa,        Scheme::EpaFcsi, Scheme::EpaPcsi,
    Scheme::PureRelayFcsi, Scheme::PureRelayPcsi, Scheme::PureJam, Scheme::Direct};

inline std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::FcsiPa: return "FCSI-PA";
    case Scheme::PcsiPa: return "PCSI-PA";
    case Scheme::EpaFcsi: return "EPA-FCSI";
    case Scheme::EpaPcsi: return "EPA-PCSI";
    case Scheme::PureRelayFcsi: return "PURE-RELAY-FCSI";
    case Scheme::PureRelayPcsi: return "PURE-RELAY-PCSI";
    case Scheme::PureJam: return "PURE-JAM";
    case Scheme::Direct: return "DIRECT";
  }
  return "?";
}

inline std::optional<Scheme> parse_scheme(std::string_view label) {
  for (auto s : kAllSchemes)
    if (to_string(s) == label) return s;
  return std::nullopt;
}

struct JrjsSolution {
  std::optional<int> relay_index;  // empty for outage and for relay-free baselines
  PowerAllocation allocation;
  double predicted_objective = 0.0;
  double realized_secrecy_rate = 0.0;
  Scheme scheme = Scheme::FcsiPa;
  bool outage = false;
};

/// Gains seen when node `relay` forwards and every other node jams.
struct CandidateView {
  LinkGains gains;     // lam_e is the true leakage of the null-steering vector
  bool jamming = false;  // false when fewer than two jammers remain
};

inline CandidateView candidate_view(const ChannelRealization& re, int relay) {
  const auto r = static_cast<std::size_t>(relay);
  CandidateView cv;
  cv.gains.h_sr_sq = std::norm(re.h_si[r]);
  cv.gains.h_rd_sq = std::norm(re.h_id[r]);
  cv.gains.h_se_sq = std::norm(re.h_se);
  cv.gains.h_re_sq = std::norm(re.h_ie[r]);

  std::vector<cplx> h_d, h_e;
  h_d.reserve(re.h_id.size());
  h_e.reserve(re.h_ie.size());
  for (std::size_t j = 0; j < re.h_id.size(); ++j) {
    if (j == r) continue;
    // h_d^H z must equal sum_j h_{jd} z_j.
    h_d.push_back(std::conj(re.h_id[j]));
    h_e.push_back(std::conj(re.h_ie[j]));
  }
  if (h_d.size() >= 2) {
    const auto z = build_jamming_vector(h_d);
    cv.gains.lam_e = lambda_e(z, h_e);
    cv.jamming = true;
  }
  return cv;
}

inline FcsiCandidateInput fcsi_input(const CandidateView& cv, const SystemParams& p) {
  const auto& g = cv.gains;
  return {g.h_sr_sq, g.h_rd_sq, g.h_se_sq, g.h_re_sq, g.lam_e, p.p_total, p.noise, p.rd};
}

inline PcsiCandidateInput pcsi_input(const CandidateView& cv, const SystemParams& p) {
  return {cv.gains.h_sr_sq, cv.gains.h_rd_sq, p.eps1, p.eps2, p.p_total, p.noise, p.rd, cv.jamming};
}

/// Nodes for which some budget split meets the decoding constraint.
inline std::vector<int> decoding_candidates(const ChannelRealization& re, const SystemParams& params) {
  std::vector<int> out;
  for (int i = 0; i < re.m(); ++i) {
    const FcsiCandidateInput in{std::norm(re.h_si[i]), std::norm(re.h_id[i]), 0.0, 0.0, 0.0,
                                params.p_total, params.noise, params.rd};
    if (feasible(in)) out.push_back(i);
  }
  return out;
}

/// Nodes that decode when the source uses a fixed power p_s.
inline std::vector<int> decoding_candidates_fixed(const ChannelRealization& re, const SystemParams& params,
                                                  double p_s) {
  std::vector<int> out;
  for (int i = 0; i < re.m(); ++i)
    if (std::log2(1.0 + std::norm(re.h_si[i]) * p_s / params.noise) >= params.rd) out.push_back(i);
  return out;
}

/// Lazily built candidate views shared by every scheme run on one realization.
class CandidateCache {
 public:
  explicit CandidateCache(const ChannelRealization& re) : re_(re), views_(re.h_si.size()) {}

  const CandidateView& get(int i) const {
    auto& slot = views_[static_cast<std::size_t>(i)];
    if (!slot) slot = candidate_view(re_, i);
    return *slot;
  }

  const ChannelRealization& realization() const { return re_; }

 private:
  const ChannelRealization& re_;
  mutable std::vector<std::optional<CandidateView>> views_;
};

namespace detail {

inline JrjsSolution outage(Scheme s) {
  JrjsSolution sol;
  sol.scheme = s;
  sol.outage = true;
  return sol;
}

inline double realized_two_phase(const LinkGains& g, const PowerAllocation& a, double noise) {
  return secrecy_rate(gamma_d(g, a, noise), gamma_e_full(g, a, noise));
}

inline double partial_objective(const CandidateView& cv, const SystemParams& p, const PowerAllocation& a) {
  const double lam = cv.jamming ? p.eps2 : 0.0;
  const double ge = p.eps1 * a.p_s / p.noise + p.eps2 * a.p_r / (p.noise + a.p_z * lam);
  return snr_ratio(gamma_d(cv.gains, a, p.noise), ge);
}

/// Argmax over candidates of a per-candidate (allocation, objective) rule; ties to lower index.
template <class Rule>
JrjsSolution select_best(const CandidateCache& cache, const SystemParams& params,
                         const std::vector<int>& candidates, Scheme scheme, Rule&& rule) {
  if (candidates.empty()) return outage(scheme);
  JrjsSolution best;
  best.scheme = scheme;
  LinkGains best_gains;
  bool have = false;
  for (int i : candidates) {
    const auto& cv = cache.get(i);
    const auto [alloc, obj] = rule(cv);
    if (!have || obj > best.predicted_objective) {
      best.relay_index = i;
      best.allocation = alloc;
      best.predicted_objective = obj;
      best_gains = cv.gains;
      have = true;
    }
  }
  best.realized_secrecy_rate = realized_two_phase(best_gains, best.allocation, params.noise);
  return best;
}

}  // namespace detail

/// Joint relay/jammer selection with closed-form allocation, full wiretap CSI.
inline JrjsSolution select_fcsi(const CandidateCache& cache, const SystemParams& params) {
  return detail::select_best(cache, params, decoding_candidates(cache.realization(), params), Scheme::FcsiPa,
                             [&](const CandidateView& cv) {
                               const auto r = fcsi_allocate(fcsi_input(cv, params));
                               return std::pair{r.allocation, r.objective};
                             });
}

/// Same, but allocation and selection see only the wiretap variances. The realized rate
/// still uses the true wiretap channels.
inline JrjsSolution select_pcsi(const CandidateCache& cache, const SystemParams& params) {
  return detail::select_best(cache, params, decoding_candidates(cache.realization(), params), Scheme::PcsiPa,
                             [&](const CandidateView& cv) {
                               const auto r = pcsi_allocate(pcsi_input(cv, params));
                               return std::pair{r.allocation, r.objective};
                             });
}

/// Fixed (P/2, P/4, P/4) split; the relay is still chosen by the CSI-mode objective.
inline JrjsSolution epa(const CandidateCache& cache, const SystemParams& params, CsiMode mode) {
  const PowerAllocation a{params.p_total / 2, params.p_total / 4, params.p_total / 4};
  const auto scheme = mode == CsiMode::Full ? Scheme::EpaFcsi : Scheme::EpaPcsi;
  return detail::select_best(cache, params, decoding_candidates_fixed(cache.realization(), params, a.p_s), scheme,
                             [&](const CandidateView& cv) {
                               const double obj =
                                   mode == CsiMode::Full
                                       ? snr_ratio(gamma_d(cv.gains, a, params.noise),
                                                   gamma_e_full(cv.gains, a, params.noise))
                                       : detail::partial_objective(cv, params, a);
                               return std::pair{a, obj};
                             });
}

/// Relay selection alone: (P/2, P/2, 0), no jammers.
inline JrjsSolution pure_relay_selection(const CandidateCache& cache, const SystemParams& params,
                                         CsiMode mode) {
  const PowerAllocation a{params.p_total / 2, params.p_total / 2, 0.0};
  const auto scheme = mode == CsiMode::Full ? Scheme::PureRelayFcsi : Scheme::PureRelayPcsi;
  return detail::select_best(cache, params, decoding_candidates_fixed(cache.realization(), params, a.p_s), scheme,
                             [&](const CandidateView& cv) {
                               const double gd = gamma_d(cv.gains, a, params.noise);
                               const double ge =
                                   mode == CsiMode::Full
                                       ? (cv.gains.h_se_sq * a.p_s + cv.gains.h_re_sq * a.p_r) / params.noise
                                       : (params.eps1 * a.p_s + params.eps2 * a.p_r) / params.noise;
                               return std::pair{a, snr_ratio(gd, ge)};
                             });
}

/// Source sends directly with P/2 while all M nodes null-steer noise with P/2.
/// Single phase, so no 1/2 pre-log.
inline JrjsSolution pure_jamming(const ChannelRealization& re, const SystemParams& params) {
  JrjsSolution sol;
  sol.scheme = Scheme::PureJam;
  sol.allocation = {params.p_total / 2, 0.0, params.p_total / 2};
  double lam = 0.0;
  if (re.m() >= 2) {
    std::vector<cplx> h_d, h_e;
    for (int j = 0; j < re.m(); ++j) {
      h_d.push_back(std::conj(re.h_id[j]));
      h_e.push_back(std::conj(re.h_ie[j]));
    }
    lam = lambda_e(build_jamming_vector(h_d), h_e);
  } else {
    sol.allocation.p_z = 0.0;
  }
  const auto& a = sol.allocation;
  const double gd = std::norm(re.h_sd) * a.p_s / params.noise;
  const double ge = std::norm(re.h_se) * a.p_s / (params.noise + a.p_z * lam);
  sol.predicted_objective = snr_ratio(gd, ge);
  sol.realized_secrecy_rate = secrecy_rate_direct(gd, ge);
  return sol;
}

/// Source sends over the weak direct link with the whole budget.
inline JrjsSolution direct_transmission(const ChannelRealization& re, const SystemParams& params) {
  JrjsSolution sol;
  sol.scheme = Scheme::Direct;
  sol.allocation = {params.p_total, 0.0, 0.0};
  const double gd = std::norm(re.h_sd) * params.p_total / params.noise;
  const double ge = std::norm(re.h_se) * params.p_total / params.noise;
  sol.predicted_objective = snr_ratio(gd, ge);
  sol.realized_secrecy_rate = secrecy_rate_direct(gd, ge);
  return sol;
}

inline JrjsSolution select_fcsi(const ChannelRealization& re, const SystemParams& params) {
  return select_fcsi(CandidateCache(re), params);
}
inline JrjsSolution select_pcsi(const ChannelRealization& re, const SystemParams& params) {
  return select_pcsi(CandidateCache(re), params);
}
inline JrjsSolution epa(const ChannelRealization& re, const SystemParams& params, CsiMode mode) {
  return epa(CandidateCache(re), params, mode);
}
inline JrjsSolution pure_relay_selection(const ChannelRealization& re, const SystemParams& params,
                                         CsiMode mode) {
  return pure_relay_selection(CandidateCache(re), params, mode);
}

inline JrjsSolution run_scheme(Scheme s, const CandidateCache& cache, const SystemParams& params) {
  const auto& re = cache.realization();
  switch (s) {
    case Scheme::FcsiPa: return select_fcsi(cache, params);
    case Scheme::PcsiPa: return select_pcsi(cache, params);
    case Scheme::EpaFcsi: return epa(cache, params, CsiMode::Full);
    case Scheme::EpaPcsi: return epa(cache, params, CsiMode::Partial);
    case Scheme::PureRelayFcsi: return pure_relay_selection(cache, params, CsiMode::Full);
    case Scheme::PureRelayPcsi: return pure_relay_selection(cache, params, CsiMode::Partial);
    case Scheme::PureJam: return pure_jamming(re, params);
    case Scheme::Direct: return direct_transmission(re, params);
  }
  return detail::outage(s);
}

inline JrjsSolution run_scheme(Scheme s, const ChannelRealization& re, const SystemParams& params) {
  return run_scheme(s, CandidateCache(re), params);
}

}  // namespace jrjs
