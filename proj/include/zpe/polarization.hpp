#pragma once

// Minkowski four-vectors and the real polarization tetrad eps_r^mu(k).
// Signature (+,-,-,-); index 0 is the time component.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>

#include "zpe/error.hpp"

namespace zpe {

using Vec3 = std::array<double, 3>;

struct FourVector {
  std::array<double, 4> components{};

  double operator[](std::size_t mu) const { return components[mu]; }
  double& operator[](std::size_t mu) { return components[mu]; }

  bool is_finite() const {
    return std::all_of(components.begin(), components.end(), [](double v) { return std::isfinite(v); });
  }
  friend bool operator==(const FourVector&, const FourVector&) = default;
};

/// diag(+1, -1, -1, -1)
struct MetricSignature {
  static constexpr std::array<double, 4> diagonal{1.0, -1.0, -1.0, -1.0};
  static constexpr double g(std::size_t mu, std::size_t nu) { return mu == nu ? diagonal[mu] : 0.0; }
};

inline double minkowski_dot(const FourVector& u, const FourVector& v) {
  return u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3];
}

/// Metric weight xi_r of polarization r: -1 for the scalar photon, +1 otherwise.
constexpr int polarization_sign(std::size_t r) { return r == 0 ? -1 : 1; }

inline double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }
inline Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

struct PolarizationBasis {
  std::array<FourVector, 4> eps{};
  std::array<int, 4> xi{-1, 1, 1, 1};
  Vec3 khat{};
};

inline constexpr double kUnitTolerance = 1e-12;

/// eps_0 = n = (1,0,0,0); eps_3 = (0, khat). The transverse pair comes from
/// Gram-Schmidt on the coordinate axis least aligned with khat, then
/// eps_2 = khat x eps_1, so (eps_1, eps_2, eps_3) is right-handed.
inline PolarizationBasis build_basis(const Vec3& khat) {
  for (double v : khat) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidDirection, "non-finite direction component");
  }
  const double norm = norm3(khat);
  if (std::abs(norm - 1.0) > kUnitTolerance) {
    std::ostringstream msg;
    msg << "direction must be a unit vector, |khat| = " << norm;
    throw Error(ErrorKind::InvalidDirection, msg.str());
  }

  std::size_t axis = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (std::abs(khat[i]) < std::abs(khat[axis])) axis = i;
  }
  Vec3 e1{};
  e1[axis] = 1.0;
  const double along = dot3(e1, khat);
  for (std::size_t i = 0; i < 3; ++i) e1[i] -= along * khat[i];
  const double len = norm3(e1);
  for (double& v : e1) v /= len;
  const Vec3 e2 = cross3(khat, e1);

  PolarizationBasis b;
  b.khat = khat;
  b.eps[0] = FourVector{{1.0, 0.0, 0.0, 0.0}};
  b.eps[1] = FourVector{{0.0, e1[0], e1[1], e1[2]}};
  b.eps[2] = FourVector{{0.0, e2[0], e2[1], e2[2]}};
  b.eps[3] = FourVector{{0.0, khat[0], khat[1], khat[2]}};
  return b;
}

/// max_{r,s} |eps_r . eps_s + xi_r delta_rs|
inline double check_orthonormality(const PolarizationBasis& b) {
  double worst = 0.0;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t s = 0; s < 4; ++s) {
      const double target = r == s ? -static_cast<double>(b.xi[r]) : 0.0;
      worst = std::max(worst, std::abs(minkowski_dot(b.eps[r], b.eps[s]) - target));
    }
  }
  return worst;
}

/// max_{mu,nu} |sum_r xi_r eps_r^mu eps_r^nu + g^{mu nu}|
inline double check_completeness(const PolarizationBasis& b) {
  double worst = 0.0;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    for (std::size_t nu = 0; nu < 4; ++nu) {
      double sum = MetricSignature::g(mu, nu);
      for (std::size_t r = 0; r < 4; ++r) sum += b.xi[r] * b.eps[r][mu] * b.eps[r][nu];
      worst = std::max(worst, std::abs(sum));
    }
  }
  return worst;
}

}  // namespace zpe
