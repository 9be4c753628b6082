#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include "jrjs/error.hpp"
#include "jrjs/fcsi_pa.hpp"
#include "jrjs/pcsi_pa.hpp"
#include "jrjs/rates.hpp"

// Brute-force validators. These evaluate the objective straight from the rate formulas
// and never touch the closed-form line coefficients or the stationary-point kernel.

namespace jrjs::oracle {

struct GridOptions {
  int n = 2000;
  // Each pass re-grids a +/-2 cell window around the incumbent at 10x finer spacing.
  int refine_passes = 6;
};

struct GridPoint {
  double p_s = 0.0;
  double p_r = 0.0;
  double value = -1.0;
};

/// f(P_s, P_r) with P_z = P - P_s - P_r, built from gamma_d / gamma_e_full.
inline double objective(const FcsiCandidateInput& in, double p_s, double p_r) {
  const PowerAllocation a{p_s, p_r, std::max(0.0, in.p_total - p_s - p_r)};
  const LinkGains g = in.gains();
  return snr_ratio(gamma_d(g, a, in.noise), gamma_e_full(g, a, in.noise));
}

/// f~(P_s, P_r), built from gamma_d / gamma_e_partial.
inline double objective(const PcsiCandidateInput& in, double p_s, double p_r) {
  const PowerAllocation a{p_s, p_r, std::max(0.0, in.p_total - p_s - p_r)};
  const LinkGains g{in.h_sr_sq, in.h_rd_sq, 0.0, 0.0, 0.0};
  const double ge = in.jamming ? gamma_e_partial(in.eps1, in.eps2, a, in.noise)
                               : (in.eps1 * a.p_s + in.eps2 * a.p_r) / in.noise;
  return snr_ratio(gamma_d(g, a, in.noise), ge);
}

namespace detail {

inline double decode_floor(double h_sr_sq, double noise, double rd) {
  return (std::exp2(rd) - 1.0) * noise / h_sr_sq;
}

/// Scan rows P_s in [ps_lo, ps_hi] and columns P_r in [pr_lo, pr_hi] clipped to the
/// triangle. Each row also visits the kink of min(.) and the budget edge, where the
/// objective is not differentiable.
template <class F>
void scan(F& f, double p_total, double kink, double ps_lo, double ps_hi, double pr_lo, double pr_hi,
          int rows, int cols, GridPoint& best) {
  auto visit = [&](double ps, double pr) {
    const double v = f(ps, pr);
    if (v > best.value) best = {ps, pr, v};
  };
  for (int i = 0; i <= rows; ++i) {
    const double ps = rows == 0 ? ps_lo : ps_lo + (ps_hi - ps_lo) * (static_cast<double>(i) / rows);
    const double room = p_total - ps;
    if (room < 0.0) continue;
    for (int j = 0; j <= cols; ++j) {
      const double pr = cols == 0 ? pr_lo : pr_lo + (pr_hi - pr_lo) * (static_cast<double>(j) / cols);
      if (pr > room) break;
      visit(ps, pr);
    }
    // Ridge points are visited even outside the P_r window so refinement can follow them.
    const double pr_kink = kink * ps;
    if (pr_kink <= room) visit(ps, pr_kink);
    visit(ps, room);
  }
}

template <class F>
GridPoint triangle(F f, double h_sr_sq, double h_rd_sq, double p_total, double noise, double rd,
                   const GridOptions& opt) {
  if (!(h_sr_sq > 0.0) || !(h_rd_sq > 0.0))
    throw Error(ErrorCode::DegenerateChannel, "main-link gain is zero");
  const double p_b1 = decode_floor(h_sr_sq, noise, rd);
  if (p_b1 > p_total) throw Error(ErrorCode::InfeasibleRate, "decoding floor exceeds the budget");
  const double kink = h_sr_sq / h_rd_sq;

  GridPoint best;
  // Region corners and the points where the kink line meets its edges.
  const double ps_meet = p_total / (1.0 + kink);
  for (auto [ps, pr] : {std::pair{p_b1, 0.0}, {p_b1, p_total - p_b1}, {p_total, 0.0},
                        {p_b1, kink * p_b1}, {ps_meet, p_total - ps_meet}}) {
    if (ps >= p_b1 && pr >= 0.0 && ps + pr <= p_total * (1 + 1e-15)) {
      const double v = f(ps, pr);
      if (v > best.value) best = {ps, pr, v};
    }
  }

  double hs = (p_total - p_b1) / opt.n;
  double hr = p_total / opt.n;
  scan(f, p_total, kink, p_b1, p_total, 0.0, p_total, hs > 0.0 ? opt.n : 0, opt.n, best);

  for (int pass = 0; pass < opt.refine_passes; ++pass) {
    const double ps_lo = std::max(p_b1, best.p_s - 2 * hs), ps_hi = std::min(p_total, best.p_s + 2 * hs);
    const double pr_lo = std::max(0.0, best.p_r - 2 * hr), pr_hi = std::min(p_total, best.p_r + 2 * hr);
    scan(f, p_total, kink, ps_lo, ps_hi, pr_lo, pr_hi, hs > 0.0 ? 40 : 0, 40, best);
    hs /= 10.0;
    hr /= 10.0;
  }
  return best;
}

}  // namespace detail

/// Dense search of the objective over {P_s >= P_b1, P_r >= 0, P_s + P_r <= P}.
inline GridPoint grid_search_triangle(const FcsiCandidateInput& in, const GridOptions& opt = {}) {
  return detail::triangle([&](double ps, double pr) { return objective(in, ps, pr); }, in.h_sr_sq,
                          in.h_rd_sq, in.p_total, in.noise, in.rd, opt);
}

inline GridPoint grid_search_triangle(const PcsiCandidateInput& in, const GridOptions& opt = {}) {
  return detail::triangle([&](double ps, double pr) { return objective(in, ps, pr); }, in.h_sr_sq,
                          in.h_rd_sq, in.p_total, in.noise, in.rd, opt);
}

enum class Line {
  Source,  // P_r = (|h_sr|^2/|h_rd|^2) P_s, P_s in [P_b1, P_b2]
  Relay,   // P_s = (|h_rd|^2/|h_sr|^2) P_r, P_r in [P_b3, P_b4]
};

namespace detail {

template <class F>
GridPoint line(F f, double h_sr_sq, double h_rd_sq, double p_total, double noise, double rd, Line which,
               const GridOptions& opt) {
  if (!(h_sr_sq > 0.0) || !(h_rd_sq > 0.0))
    throw Error(ErrorCode::DegenerateChannel, "main-link gain is zero");
  const double need = (std::exp2(rd) - 1.0) * noise;
  const double sum = h_sr_sq + h_rd_sq;
  const bool src = which == Line::Source;
  const double lo = src ? need / h_sr_sq : need / h_rd_sq;
  const double hi = src ? p_total * h_rd_sq / sum : p_total * h_sr_sq / sum;
  if (lo > hi) throw Error(ErrorCode::InfeasibleRate, "balanced-link interval is empty");
  const double k = h_sr_sq / h_rd_sq;

  GridPoint best;
  auto visit = [&](double x) {
    const double ps = src ? x : x / k;
    const double pr = src ? k * x : x;
    const double v = f(ps, pr);
    if (v > best.value) best = {ps, pr, v};
  };
  auto sweep = [&](double a, double b, int n) {
    for (int i = 0; i <= n; ++i) visit(n == 0 ? a : a + (b - a) * (static_cast<double>(i) / n));
  };

  double h = (hi - lo) / opt.n;
  sweep(lo, hi, h > 0.0 ? opt.n : 0);
  for (int pass = 0; pass < opt.refine_passes && h > 0.0; ++pass) {
    const double x = src ? best.p_s : best.p_r;
    sweep(std::max(lo, x - 2 * h), std::min(hi, x + 2 * h), 40);
    h /= 10.0;
  }
  return best;
}

}  // namespace detail

/// Dense 1-D scan along one balanced-link line.
inline GridPoint line_search(const FcsiCandidateInput& in, Line which, const GridOptions& opt = {}) {
  return detail::line([&](double ps, double pr) { return objective(in, ps, pr); }, in.h_sr_sq, in.h_rd_sq,
                      in.p_total, in.noise, in.rd, which, opt);
}

inline GridPoint line_search(const PcsiCandidateInput& in, Line which, const GridOptions& opt = {}) {
  return detail::line([&](double ps, double pr) { return objective(in, ps, pr); }, in.h_sr_sq, in.h_rd_sq,
                      in.p_total, in.noise, in.rd, which, opt);
}

/// Best point over both lines.
template <class In>
GridPoint restricted_line_search(const In& in, const GridOptions& opt = {}) {
  const auto a = line_search(in, Line::Source, opt);
  const auto b = line_search(in, Line::Relay, opt);
  return a.value >= b.value ? a : b;
}

}  // namespace jrjs::oracle
