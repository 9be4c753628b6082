#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "jrjs/error.hpp"
#include "jrjs/model.hpp"

namespace jrjs {

/// Unit-norm jammer weights with h_d^H z = 0.
struct JammingVector {
  std::vector<cplx> z;
};

/// Null-steering weights for the jammer->destination vector h_d.
///
/// h_d follows the convention h_d^H z = sum_i h_{j_i d} z_i, i.e. callers holding raw
/// channel coefficients pass their conjugates. The result is the second column of the
/// Householder reflector that maps h_d onto e_1; the reflector is unitary and Hermitian,
/// so its columns 2..n span the orthogonal complement of h_d.
inline JammingVector build_jamming_vector(std::span<const cplx> h_d) {
  const std::size_t n = h_d.size();
  if (n < 2) throw Error(ErrorCode::NoNullSpace, "null-steering needs at least two jammers");

  double norm_sq = 0.0;
  for (const auto& h : h_d) norm_sq += std::norm(h);
  if (!(norm_sq > 0.0)) throw Error(ErrorCode::DegenerateChannel, "jammer channel vector is zero");
  const double norm = std::sqrt(norm_sq);

  // v = h + e^{i arg h_1} |h| e_1 avoids cancellation in the first entry.
  const double a0 = std::abs(h_d[0]);
  const cplx phase = a0 > 0.0 ? h_d[0] / a0 : cplx(1.0, 0.0);
  std::vector<cplx> v(h_d.begin(), h_d.end());
  v[0] += phase * norm;
  double v_sq = 0.0;
  for (const auto& x : v) v_sq += std::norm(x);

  // z = (I - 2 v v^H / v^H v) e_2
  JammingVector out;
  out.z.resize(n);
  const cplx scale = 2.0 * std::conj(v[1]) / v_sq;
  for (std::size_t i = 0; i < n; ++i) out.z[i] = -v[i] * scale;
  out.z[1] += 1.0;
  return out;
}

/// Leakage |h_e^H z|^2 of the jamming signal onto the eavesdropper.
inline double lambda_e(const JammingVector& jv, std::span<const cplx> h_e) {
  if (h_e.size() != jv.z.size())
    throw Error(ErrorCode::DimensionMismatch, "h_e and z differ in length");
  cplx acc{};
  for (std::size_t i = 0; i < h_e.size(); ++i) acc += std::conj(h_e[i]) * jv.z[i];
  return std::norm(acc);
}

/// Leakage of artificial noise spread evenly over the whole null space of h_d:
/// h_e^H (I - h_d h_d^H / |h_d|^2) h_e / (n - 1). Mean eps2, variance eps2^2 / (n - 1)
/// for i.i.d. CN(0, eps2) entries of h_e.
inline double lambda_e_isotropic(std::span<const cplx> h_d, std::span<const cplx> h_e) {
  const std::size_t n = h_d.size();
  if (h_e.size() != n) throw Error(ErrorCode::DimensionMismatch, "h_e and h_d differ in length");
  if (n < 2) throw Error(ErrorCode::NoNullSpace, "null-steering needs at least two jammers");
  double hd_sq = 0.0, he_sq = 0.0;
  cplx proj{};
  for (std::size_t i = 0; i < n; ++i) {
    hd_sq += std::norm(h_d[i]);
    he_sq += std::norm(h_e[i]);
    proj += std::conj(h_d[i]) * h_e[i];
  }
  if (!(hd_sq > 0.0)) throw Error(ErrorCode::DegenerateChannel, "jammer channel vector is zero");
  return std::max(0.0, he_sq - std::norm(proj) / hd_sq) / static_cast<double>(n - 1);
}

}  // namespace jrjs
