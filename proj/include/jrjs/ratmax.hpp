#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "jrjs/error.hpp"

namespace jrjs {

/// g(x) = (theta + phi_num x - tau_num x^2) / (theta + phi_den x - tau_den x^2)
///
/// Every per-candidate power allocation sub-problem reduces to maximizing a ratio of
/// this shape along a line through the feasible region.
struct RatioQuadratic {
  double theta = 1.0;
  double phi_num = 0.0;
  double tau_num = 0.0;
  double phi_den = 0.0;
  double tau_den = 0.0;

  double numerator(double x) const { return theta + phi_num * x - tau_num * x * x; }
  double denominator(double x) const { return theta + phi_den * x - tau_den * x * x; }
};

/// Which branch of the stationary-point analysis produced the candidate set.
enum class StationaryCase {
  Linear,      // leading coefficient zero, one root
  TwoRoots,    // discriminant > 0
  DoubleRoot,  // discriminant == 0
  NoRoots,     // discriminant < 0
  Constant,    // derivative numerator has no x dependence
};

/// q(x) = a x^2 + b x + c; dg/dx = q(x) / denominator(x)^2.
struct DerivativeNumerator {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double x) const { return (a * x + b) * x + c; }
};

struct RatioMax {
  double x = 0.0;
  double value = 0.0;
  StationaryCase stationary_case = StationaryCase::NoRoots;
};

inline double evaluate(const RatioQuadratic& rq, double x) {
  const double den = rq.denominator(x);
  if (!(den > 0.0)) throw Error(ErrorCode::DegenerateDenominator, "ratio denominator is not positive");
  return rq.numerator(x) / den;
}

inline DerivativeNumerator derivative_numerator(const RatioQuadratic& rq) {
  return {rq.tau_den * rq.phi_num - rq.tau_num * rq.phi_den,
          2.0 * (rq.tau_den - rq.tau_num) * rq.theta,
          (rq.phi_num - rq.phi_den) * rq.theta};
}

inline double derivative(const RatioQuadratic& rq, double x) {
  const double den = rq.denominator(x);
  if (!(den > 0.0)) throw Error(ErrorCode::DegenerateDenominator, "ratio denominator is not positive");
  return derivative_numerator(rq)(x) / (den * den);
}

namespace detail {

inline constexpr double kZeroTol = 1e-9;

inline bool near_zero(double v, double scale) {
  return std::abs(v) <= kZeroTol * std::max(1.0, scale);
}

/// Roots of the derivative numerator and the case label that produced them.
inline StationaryCase stationary_points(const RatioQuadratic& rq, std::vector<double>& roots) {
  const auto q = derivative_numerator(rq);
  const double a_scale = std::abs(rq.tau_den * rq.phi_num) + std::abs(rq.tau_num * rq.phi_den);
  const double b_scale = 2.0 * (std::abs(rq.tau_den) + std::abs(rq.tau_num)) * std::abs(rq.theta);

  if (near_zero(q.a, a_scale)) {
    if (near_zero(q.b, b_scale)) return StationaryCase::Constant;
    roots.push_back(-q.c / q.b);
    return StationaryCase::Linear;
  }

  const double disc = q.b * q.b - 4.0 * q.a * q.c;
  const double disc_scale = q.b * q.b + 4.0 * std::abs(q.a * q.c);
  if (near_zero(disc, disc_scale)) {
    roots.push_back(-q.b / (2.0 * q.a));
    return StationaryCase::DoubleRoot;
  }
  if (disc < 0.0) return StationaryCase::NoRoots;

  // Same pair as (-b +/- sqrt(disc)) / 2a, without cancellation.
  const double s = std::sqrt(disc);
  const double half = -0.5 * (q.b + std::copysign(s, q.b));
  roots.push_back(half / q.a);
  if (half != 0.0) roots.push_back(q.c / half);
  return StationaryCase::TwoRoots;
}

}  // namespace detail

/// Maximizer of g over [lo, hi] among the endpoints and in-range stationary points.
/// Ties go to the smaller x.
inline RatioMax maximize(const RatioQuadratic& rq, double lo, double hi) {
  if (!(lo <= hi)) throw Error(ErrorCode::InfeasibleInterval, "maximize called with lo > hi");

  std::vector<double> roots;
  roots.reserve(2);
  const auto sc = detail::stationary_points(rq, roots);

  std::vector<double> candidates{lo, hi};
  for (double r : roots)
    if (std::isfinite(r) && r > lo && r < hi) candidates.push_back(r);
  std::sort(candidates.begin(), candidates.end());

  RatioMax best{candidates.front(), evaluate(rq, candidates.front()), sc};
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double v = evaluate(rq, candidates[i]);
    if (v > best.value) {
      best.x = candidates[i];
      best.value = v;
    }
  }
  return best;
}

}  // namespace jrjs
