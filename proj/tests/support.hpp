#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>

#include "jrjs/model.hpp"
#include "jrjs/ratmax.hpp"
#include "jrjs/selection.hpp"

namespace testsupport {

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

/// Random ratio with a denominator kept positive on [0, hi].
inline jrjs::RatioQuadratic random_ratio(jrjs::Rng& rng, double hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    jrjs::RatioQuadratic rq{0.1 + 5 * u(rng), 4 * u(rng) - 1, 2 * u(rng) - 0.5, 4 * u(rng) - 1, 2 * u(rng) - 0.5};
    bool ok = true;
    for (int i = 0; i <= 200 && ok; ++i) ok = rq.denominator(hi * i / 200.0) > 1e-3 && rq.numerator(hi * i / 200.0) > -1e3;
    if (ok) return rq;
  }
}

/// A feasible relay candidate drawn from an M-node realization; nullopt if none decodes.
inline std::optional<jrjs::CandidateView> random_candidate(jrjs::Rng& rng, const jrjs::SystemParams& p) {
  const auto re = jrjs::sample_realization(p, rng);
  const auto d = jrjs::decoding_candidates(re, p);
  if (d.empty()) return std::nullopt;
  const auto pick = d[std::uniform_int_distribution<std::size_t>(0, d.size() - 1)(rng)];
  return jrjs::candidate_view(re, pick);
}

inline jrjs::SystemParams default_params(std::uint64_t seed = 7) {
  jrjs::SystemParams p;
  p.m = 10;
  p.p_total = jrjs::dbm_to_mw(14.0);
  p.noise = 1.0;
  p.rd = 3.0;
  p.seed = seed;
  return p;
}

}  // namespace testsupport
