#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "jrjs/error.hpp"

namespace jrjs {

using cplx = std::complex<double>;
using Rng = std::mt19937_64;

/// Network and channel configuration. Powers are linear mW.
struct SystemParams {
  int m = 10;             // intermediate nodes
  double p_total = 1.0;   // total budget P
  double noise = 1.0;     // noise power
  double eps1 = 1.0;      // E|h_se|^2
  double eps2 = 1.0;      // E|h_ie|^2
  double eps_sd = 0.05;   // E|h_sd|^2, baselines only
  double rd = 0.0;        // target rate, bit/s/Hz
  std::uint64_t seed = 0;

  void validate() const {
    auto ok = m >= 1 && p_total > 0 && noise > 0 && eps1 > 0 && eps2 > 0 &&
              eps_sd >= 0 && rd >= 0 && std::isfinite(p_total) && std::isfinite(noise) &&
              std::isfinite(rd);
    if (!ok) throw Error(ErrorCode::InvalidParams, "system parameters out of range");
  }
};

/// One draw of every fading coefficient in the network.
struct ChannelRealization {
  std::vector<cplx> h_si;  // source -> node i
  std::vector<cplx> h_id;  // node i -> destination
  std::vector<cplx> h_ie;  // node i -> eavesdropper
  cplx h_se{};
  cplx h_sd{};

  int m() const { return static_cast<int>(h_si.size()); }
};

struct PowerAllocation {
  double p_s = 0.0;
  double p_r = 0.0;
  double p_z = 0.0;

  double total() const { return p_s + p_r + p_z; }
};

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for one Monte-Carlo trial; depends only on (seed, trial).
inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x5851f42d4c957f2dULL)));
}

/// Circularly-symmetric complex Gaussian with E|x|^2 = variance.
inline cplx sample_cn(Rng& rng, double variance) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double s = std::sqrt(variance / 2.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {s * re, s * im};
}

/// Draw order is fixed (h_si, h_id, h_ie, h_se, h_sd) so a seed pins the realization.
inline ChannelRealization sample_realization(const SystemParams& params, Rng& rng) {
  const auto m = static_cast<std::size_t>(params.m);
  ChannelRealization re;
  re.h_si.resize(m);
  re.h_id.resize(m);
  re.h_ie.resize(m);
  for (auto& h : re.h_si) h = sample_cn(rng, 1.0);
  for (auto& h : re.h_id) h = sample_cn(rng, 1.0);
  for (auto& h : re.h_ie) h = sample_cn(rng, params.eps2);
  re.h_se = sample_cn(rng, params.eps1);
  re.h_sd = sample_cn(rng, params.eps_sd);
  return re;
}

/// Target rate used at each total power (dBm), bit/s/Hz.
inline double rd_schedule(double p_dbm) {
  if (!(p_dbm >= 0.0 && p_dbm <= 20.0))
    throw Error(ErrorCode::UnsupportedPower, "no target rate defined for P outside [0, 20] dBm");
  if (p_dbm <= 3.0) return 0.5;
  if (p_dbm <= 6.0) return 1.0;
  if (p_dbm <= 10.0) return 2.0;
  if (p_dbm <= 15.0) return 3.0;
  return 4.0;
}

}  // namespace jrjs
