#pragma once

// Scalar kernel of the covariant field commutator for a massless field.
//
// After the angular integration, the (e^{-ik(x-x')} - e^{ik(x-x')})/omega
// integral reduces to (-8 pi i / (c r)) * I with
//
//   I(eps, r, ct) = int_0^inf e^{-eps k} sin(k r) sin(k ct) dk
//                 = 1/2 [ eps / (eps^2 + (r-ct)^2) - eps / (eps^2 + (r+ct)^2) ].
//
// The exponential regulator turns the distributional statement into limits:
// I = O(eps) off the light cone, I ~ 1/(2 eps) on it.

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "zpe/error.hpp"

namespace zpe {

struct SeparationPoint {
  double r = 1.0;
  double ct = 0.0;
  double epsilon = 0.01;

  void validate() const {
    if (!(r > 0.0) || !(epsilon > 0.0) || !std::isfinite(ct)) {
      throw Error(ErrorKind::Config, "separation point needs r > 0, epsilon > 0, finite ct");
    }
  }
};

/// Closed form of the regulated integral; exactly odd in ct and exactly 0 at ct = 0.
inline double regulated_kernel(const SeparationPoint& p) {
  p.validate();
  if (p.ct == 0.0) return 0.0;
  const double e2 = p.epsilon * p.epsilon;
  const double minus = p.r - p.ct;
  const double plus = p.r + p.ct;
  return 0.5 * (p.epsilon / (e2 + minus * minus) - p.epsilon / (e2 + plus * plus));
}

/// Prefactor relating I to the kernel: (-8 pi i / (c r)); returned as the
/// imaginary coefficient.
inline double kernel_prefactor_imag(double r, double c = 1.0) { return -8.0 * std::numbers::pi / (c * r); }

inline constexpr int kGaussOrder = 20;

/// Composite Gauss-Legendre over [0, k_max] with n_points nodes in total.
/// Requires at least 10 nodes per period of the fastest oscillation
/// (frequency r + |ct|) and e^{-eps k_max} below 1e-8.
inline double kernel_quadrature(const SeparationPoint& p, double k_max, int n_points) {
  p.validate();
  if (!(k_max > 0.0) || n_points < kGaussOrder) throw Error(ErrorKind::Resolution, "need k_max > 0 and at least one panel");
  if (std::exp(-p.epsilon * k_max) > 1e-8) {
    std::ostringstream msg;
    msg << "cutoff k_max = " << k_max << " truncates the integrand: e^{-eps k_max} = " << std::exp(-p.epsilon * k_max)
        << " (use k_max >= " << 18.5 / p.epsilon << ")";
    throw Error(ErrorKind::Resolution, msg.str());
  }
  const double freq = p.r + std::abs(p.ct);
  const double periods = k_max * freq / (2.0 * std::numbers::pi);
  if (n_points < 10.0 * periods) {
    std::ostringstream msg;
    msg << n_points << " nodes for " << periods << " periods; need >= " << static_cast<long long>(std::ceil(10.0 * periods));
    throw Error(ErrorKind::Resolution, msg.str());
  }
  const int panels = n_points / kGaussOrder;
  const double width = k_max / panels;
  auto integrand = [&](double k) { return std::exp(-p.epsilon * k) * std::sin(k * p.r) * std::sin(k * p.ct); };
  double sum = 0.0;
  for (int j = 0; j < panels; ++j) {
    sum += boost::math::quadrature::gauss<double, kGaussOrder>::integrate(integrand, j * width, (j + 1) * width);
  }
  return sum;
}

/// Cutoff and node count that satisfy kernel_quadrature's guards with margin.
struct QuadratureSettings {
  double k_max;
  int n_points;
};

inline QuadratureSettings default_quadrature(const SeparationPoint& p, double cutoff_factor = 40.0,
                                             double nodes_per_period = 40.0) {
  const double k_max = cutoff_factor / p.epsilon;
  const double periods = k_max * (p.r + std::abs(p.ct)) / (2.0 * std::numbers::pi);
  int n = static_cast<int>(std::ceil(nodes_per_period * periods / kGaussOrder)) * kGaussOrder;
  return {k_max, std::max(n, kGaussOrder)};
}

enum class ConeClass { Spacelike, Lightcone, Timelike };

inline std::string to_string(ConeClass c) {
  switch (c) {
    case ConeClass::Spacelike: return "spacelike";
    case ConeClass::Lightcone: return "lightcone";
    case ConeClass::Timelike: return "timelike";
  }
  return "lightcone";
}

/// |r - |ct|| <= band counts as the light cone.
inline ConeClass classify(double r, double ct, double band) {
  const double gap = r - std::abs(ct);
  if (std::abs(gap) <= band) return ConeClass::Lightcone;
  return gap > 0.0 ? ConeClass::Spacelike : ConeClass::Timelike;
}

struct ScanRow {
  double r;
  double ct;
  double epsilon;
  double closed_form;
  double quadrature;
  ConeClass cone;
};

struct ScanPointSummary {
  double r;
  double ct;
  ConeClass cone;
  bool exactly_on_cone;
  /// Off cone: max_eps |I| / eps. On cone: 2 eps I at the smallest eps.
  double fitted;
  /// Off cone: 1/2 |1/(r-ct)^2 - 1/(r+ct)^2|. On cone: 1.
  double analytic;
  bool pass;
};

struct ScanTable {
  std::vector<ScanRow> rows;
  std::vector<ScanPointSummary> points;
  double band = 0.0;
};

inline double offcone_coefficient(double r, double ct) {
  const double a = r - ct;
  const double b = r + ct;
  return 0.5 * std::abs(1.0 / (a * a) - 1.0 / (b * b));
}

/// Evaluates closed form and quadrature over r_grid x ct_grid x epsilons and
/// summarises the eps -> 0 behaviour at each (r, ct). Off-cone points
/// (|r - |ct|| > 10 max eps) must satisfy |I| <= C eps with C within 10% of
/// the analytic coefficient; points with r == |ct| must have 2 eps I within
/// 5% of 1 at the smallest eps. Points inside the band but off the cone are
/// tabulated without a verdict.
inline ScanTable lightcone_scan(const std::vector<double>& r_grid, const std::vector<double>& ct_grid,
                                const std::vector<double>& epsilons) {
  if (epsilons.empty()) throw Error(ErrorKind::Config, "need at least one epsilon");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0)) throw Error(ErrorKind::Config, "epsilons must be positive");
    if (i && !(epsilons[i] < epsilons[i - 1])) throw Error(ErrorKind::Config, "epsilons must be strictly decreasing");
  }
  ScanTable table;
  table.band = 10.0 * epsilons.front();
  for (double r : r_grid) {
    for (double ct : ct_grid) {
      const ConeClass cone = classify(r, ct, table.band);
      double worst_ratio = 0.0;
      double last = 0.0;
      for (double eps : epsilons) {
        const SeparationPoint sp{r, ct, eps};
        const auto q = default_quadrature(sp);
        ScanRow row{r, ct, eps, regulated_kernel(sp), kernel_quadrature(sp, q.k_max, q.n_points), cone};
        worst_ratio = std::max(worst_ratio, std::abs(row.closed_form) / eps);
        last = 2.0 * eps * row.closed_form;
        table.rows.push_back(row);
      }
      ScanPointSummary s{r, ct, cone, r == std::abs(ct), 0.0, 0.0, true};
      if (cone != ConeClass::Lightcone) {
        s.fitted = worst_ratio;
        s.analytic = offcone_coefficient(r, ct);
        s.pass = s.analytic == 0.0 ? s.fitted == 0.0 : std::abs(s.fitted - s.analytic) <= 0.1 * s.analytic;
      } else if (s.exactly_on_cone && ct != 0.0) {
        s.fitted = std::abs(last);
        s.analytic = 1.0;
        s.pass = std::abs(s.fitted - 1.0) <= 0.05;
      }
      table.points.push_back(s);
    }
  }
  return table;
}

/// Relative agreement 1e-6, or 1e-9 absolute for values near zero.
inline bool quadrature_agrees(double closed_form, double quadrature) {
  const double diff = std::abs(closed_form - quadrature);
  return diff <= 1e-6 * std::abs(closed_form) || diff <= 1e-9;
}

inline void write_scan_csv(std::ostream& os, const ScanTable& table) {
  os << "r,ct,epsilon,closed_form,quadrature,classification\n";
  os.precision(17);
  for (const auto& row : table.rows) {
    os << row.r << ',' << row.ct << ',' << row.epsilon << ',' << row.closed_form << ',' << row.quadrature << ','
       << to_string(row.cone) << '\n';
  }
}

}  // namespace zpe
