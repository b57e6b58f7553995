#pragma once

// Mode-expanded free photon field in a periodic box of side L.
//
//   A^mu(x) = sum_k sum_r sqrt(hbar c^2 / (2 V omega)) eps_r^mu(k) [a_r(k) e^{-ikx} + a_r^+(k) e^{ikx}]
//
// with kx = omega t - k.x, omega = c|k|, k = 2 pi m / L, m a nonzero integer
// triple. Symbolic objects (Hamiltonian, momentum) carry exact coefficients;
// operator-valued fields are realized numerically on a FockRep.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zpe/error.hpp"
#include "zpe/exact.hpp"
#include "zpe/fock.hpp"
#include "zpe/opalgebra.hpp"
#include "zpe/polarization.hpp"

namespace zpe {

struct PhysicalConstants {
  Rational hbar{1};
  Rational c{1};

  void validate() const {
    if (hbar <= 0 || c <= 0) throw Error(ErrorKind::Config, "hbar and c must be positive");
  }
};

using IntVec3 = std::array<int, 3>;

class ModeSet {
 public:
  ModeSet(Rational box_length, std::vector<IntVec3> modes) : length_(std::move(box_length)), modes_(std::move(modes)) {
    if (length_ <= 0) throw Error(ErrorKind::InvalidMode, "box length must be positive");
    std::set<IntVec3> seen;
    for (const auto& m : modes_) {
      if (m == IntVec3{0, 0, 0}) throw Error(ErrorKind::InvalidMode, "zero wavevector has omega = 0");
      if (!seen.insert(m).second) {
        throw Error(ErrorKind::InvalidMode, "duplicate mode (" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "," +
                                                std::to_string(m[2]) + ")");
      }
    }
    for (const auto& m : modes_) bases_.push_back(build_basis(khat(m)));
  }

  const Rational& box_length() const { return length_; }
  double length() const { return to_double(length_); }
  double volume() const { return std::pow(length(), 3); }
  std::size_t size() const { return modes_.size(); }
  const std::vector<IntVec3>& modes() const { return modes_; }
  const IntVec3& mode(std::size_t i) const { return modes_[i]; }
  const PolarizationBasis& basis(std::size_t i) const { return bases_[i]; }

  bool is_symmetric() const {
    std::set<IntVec3> all(modes_.begin(), modes_.end());
    for (const auto& m : modes_) {
      if (!all.count({-m[0], -m[1], -m[2]})) return false;
    }
    return true;
  }

  Vec3 k(std::size_t i) const {
    const double f = 2.0 * std::numbers::pi / length();
    return {f * modes_[i][0], f * modes_[i][1], f * modes_[i][2]};
  }

  double omega(std::size_t i, const PhysicalConstants& pc) const { return to_double(pc.c) * norm3(k(i)); }

  /// omega = 2 pi c |m| / L, exact.
  Scalar omega_exact(std::size_t i, const PhysicalConstants& pc) const {
    const auto& m = modes_[i];
    const long long m2 = 1LL * m[0] * m[0] + 1LL * m[1] * m[1] + 1LL * m[2] * m[2];
    return Scalar::pi() * Scalar::sqrt(Rational(m2)) * Scalar(Rational(2 * pc.c / length_));
  }

  /// Every (mode, pol) oscillator of the set.
  std::vector<Oscillator> oscillators() const {
    std::vector<Oscillator> out;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
      for (int r = 0; r < 4; ++r) out.push_back({i, r});
    }
    return out;
  }

  int max_component() const {
    int worst = 0;
    for (const auto& m : modes_) {
      for (int v : m) worst = std::max(worst, std::abs(v));
    }
    return worst;
  }

 private:
  static Vec3 khat(const IntVec3& m) {
    const double n = std::sqrt(static_cast<double>(m[0]) * m[0] + static_cast<double>(m[1]) * m[1] +
                               static_cast<double>(m[2]) * m[2]);
    return {m[0] / n, m[1] / n, m[2] / n};
  }

  Rational length_;
  std::vector<IntVec3> modes_;
  std::vector<PolarizationBasis> bases_;
};

struct FieldPoint {
  double t = 0.0;
  Vec3 x{};
};

/// Linear combination of ladder symbols with numeric coefficients.
using LadderCombination = std::vector<std::pair<LadderSymbol, Complex>>;

enum class FieldDerivative { None, Time, X, Y, Z };

/// Coefficients of d A^mu at p over the ladder symbols of ms.
inline LadderCombination field_coefficients(int mu, const FieldPoint& p, const ModeSet& ms, const PhysicalConstants& pc,
                                            FieldDerivative d = FieldDerivative::None) {
  if (mu < 0 || mu > 3) throw Error(ErrorKind::InvalidMode, "Lorentz index outside 0..3");
  const double hbar = to_double(pc.hbar);
  const double c = to_double(pc.c);
  const double volume = ms.volume();
  LadderCombination out;
  out.reserve(ms.size() * 8);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const Vec3 k = ms.k(i);
    const double omega = ms.omega(i, pc);
    const double amp = std::sqrt(hbar * c * c / (2.0 * volume * omega));
    const double kx = omega * p.t - dot3(k, p.x);
    const Complex minus = std::polar(1.0, -kx);  // e^{-ikx}
    const Complex plus = std::polar(1.0, kx);
    // d/dt and d/dx_j of e^{-ikx}; the a^+ factors are the conjugates.
    Complex dfactor = 1.0;
    switch (d) {
      case FieldDerivative::None: break;
      case FieldDerivative::Time: dfactor = Complex(0.0, -omega); break;
      case FieldDerivative::X: dfactor = Complex(0.0, k[0]); break;
      case FieldDerivative::Y: dfactor = Complex(0.0, k[1]); break;
      case FieldDerivative::Z: dfactor = Complex(0.0, k[2]); break;
    }
    for (int r = 0; r < 4; ++r) {
      const double e = ms.basis(i).eps[static_cast<std::size_t>(r)][static_cast<std::size_t>(mu)];
      if (e == 0.0) continue;
      out.emplace_back(LadderSymbol::a(r, i), amp * e * dfactor * minus);
      out.emplace_back(LadderSymbol::ad(r, i), amp * e * std::conj(dfactor) * plus);
    }
  }
  return out;
}

inline SparseMatrix realize_combination(const LadderCombination& comb, const FockRep& rep) {
  SparseMatrix out(static_cast<Eigen::Index>(rep.dimension()), static_cast<Eigen::Index>(rep.dimension()));
  for (const auto& [sym, coeff] : comb) out += coeff * rep.ladder_matrix(sym);
  return out;
}

inline void require_cover(const ModeSet& ms, const FockRep& rep) {
  for (const auto& o : ms.oscillators()) {
    if (!rep.contains(o)) {
      throw Error(ErrorKind::Lookup, "representation does not cover mode " + std::to_string(o.mode) + " pol " +
                                         std::to_string(o.pol));
    }
  }
}

inline SparseMatrix field_operator(int mu, const FieldPoint& p, const ModeSet& ms, const FockRep& rep,
                                   const PhysicalConstants& pc = {}) {
  require_cover(ms, rep);
  return realize_combination(field_coefficients(mu, p, ms, pc), rep);
}

/// pi_mu = -(1/c^2) dA_mu/dt, index lowered with the metric.
inline LadderCombination momentum_density_coefficients(int mu, const FieldPoint& p, const ModeSet& ms,
                                                       const PhysicalConstants& pc) {
  auto comb = field_coefficients(mu, p, ms, pc, FieldDerivative::Time);
  const double c = to_double(pc.c);
  const double factor = -MetricSignature::diagonal[static_cast<std::size_t>(mu)] / (c * c);
  for (auto& [sym, coeff] : comb) coeff *= factor;
  return comb;
}

inline SparseMatrix momentum_density(int mu, const FieldPoint& p, const ModeSet& ms, const FockRep& rep,
                                     const PhysicalConstants& pc = {}) {
  require_cover(ms, rep);
  return realize_combination(momentum_density_coefficients(mu, p, ms, pc), rep);
}

/// (1/V) sum_k e^{i k.dx}, the finite-box stand-in for delta(dx).
inline Complex delta_v(const Vec3& dx, const ModeSet& ms) {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i) sum += std::polar(1.0, dot3(ms.k(i), dx));
  return sum / ms.volume();
}

struct EqualTimeCommutator {
  SparseMatrix matrix;
  Complex c_number;    ///< vacuum diagonal entry of the realized commutator
  bool is_c_number = false;
  double deviation = 0.0;  ///< max |C - c_number I| on the sub-truncation columns
  Complex expected;    ///< -(i hbar / 2V) sum_k sum_r c_r eps_r^mu eps_{r nu} (e^{ik.dx} + e^{-ik.dx})
};

inline constexpr double kCNumberTolerance = 1e-10;

/// [A^mu(x,t), pi_nu(x',t)] realized on rep, plus the mode-sum prediction
/// from the scheme constants.
inline EqualTimeCommutator equal_time_commutator(int mu, int nu, const Vec3& x, const Vec3& xp, double t,
                                                 const ModeSet& ms, const FockRep& rep,
                                                 const PhysicalConstants& pc = {}) {
  if (!ms.is_symmetric()) throw Error(ErrorKind::SymmetryRequired, "equal-time commutator needs a k <-> -k symmetric mode set");
  require_cover(ms, rep);
  const SparseMatrix a = realize_combination(field_coefficients(mu, {t, x}, ms, pc), rep);
  const SparseMatrix p = realize_combination(momentum_density_coefficients(nu, {t, xp}, ms, pc), rep);

  EqualTimeCommutator out;
  out.matrix = SparseMatrix(a * p) - SparseMatrix(p * a);
  out.c_number = out.matrix.coeff(0, 0);
  SparseMatrix shifted = out.matrix - out.c_number * rep.identity();
  out.deviation = max_abs_on_columns(shifted, rep.sub_truncation_states(1));
  out.is_c_number = out.deviation <= kCNumberTolerance;

  const Vec3 dx{x[0] - xp[0], x[1] - xp[1], x[2] - xp[2]};
  const double g_nu = MetricSignature::diagonal[static_cast<std::size_t>(nu)];
  Complex sum = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    double weight = 0.0;
    for (int r = 0; r < 4; ++r) {
      const auto& e = ms.basis(i).eps[static_cast<std::size_t>(r)];
      weight += to_double(rep.scheme().c(r)) * e[static_cast<std::size_t>(mu)] * g_nu * e[static_cast<std::size_t>(nu)];
    }
    sum += weight * 2.0 * std::cos(dot3(ms.k(i), dx));
  }
  out.expected = Complex(0.0, -to_double(pc.hbar)) * sum / (2.0 * ms.volume());
  return out;
}

inline std::vector<ModeFrequency> mode_frequencies(const ModeSet& ms, const PhysicalConstants& pc) {
  std::vector<ModeFrequency> out;
  for (std::size_t i = 0; i < ms.size(); ++i) out.push_back({i, ms.omega_exact(i, pc)});
  return out;
}

/// sum_k sum_r (hbar omega / 2) xi_r [a+ a + a a+] with exact omega.
inline OperatorPoly hamiltonian_modes(const ModeSet& ms, const PhysicalConstants& pc = {}) {
  const auto freqs = mode_frequencies(ms, pc);
  return build_hamiltonian_sym(freqs, Scalar(pc.hbar));
}

/// Trapezoid quadrature of the canonical Hamiltonian density
///   h = -1/2 [ (1/c^2) dA_mu/dt dA^mu/dt + sum_i d_iA_mu d_iA^mu ]
/// on a grid_n^3 periodic grid. The field is linear in the ladder symbols, so
/// the density integrates to a quadratic form Q over symbol pairs, which is
/// then realized as sum_jl Q_jl M_j M_l.
inline SparseMatrix hamiltonian_from_density(const ModeSet& ms, const FockRep& rep, int grid_n,
                                             const PhysicalConstants& pc = {}, double t = 0.0) {
  const int needed = 2 * ms.max_component() + 2;
  if (grid_n < needed) {
    throw Error(ErrorKind::Aliasing, "grid_n = " + std::to_string(grid_n) + " undersamples the mode set; need >= " +
                                         std::to_string(needed));
  }
  require_cover(ms, rep);

  std::vector<LadderSymbol> symbols;
  for (const auto& o : ms.oscillators()) {
    symbols.push_back(LadderSymbol::a(o.pol, o.mode));
    symbols.push_back(LadderSymbol::ad(o.pol, o.mode));
  }
  const std::size_t n = symbols.size();
  auto slot = [&](const LadderSymbol& s) { return (s.mode * 4 + static_cast<std::size_t>(s.pol)) * 2 + (s.dagger ? 1 : 0); };

  std::vector<Complex> quad(n * n, 0.0);
  const double c = to_double(pc.c);
  const double h = ms.length() / grid_n;
  const double weight = ms.volume() / (static_cast<double>(grid_n) * grid_n * grid_n);
  const std::array<FieldDerivative, 4> derivs{FieldDerivative::Time, FieldDerivative::X, FieldDerivative::Y,
                                              FieldDerivative::Z};
  std::vector<Complex> coeff(n);
  for (int ix = 0; ix < grid_n; ++ix) {
    for (int iy = 0; iy < grid_n; ++iy) {
      for (int iz = 0; iz < grid_n; ++iz) {
        const FieldPoint p{t, {ix * h, iy * h, iz * h}};
        for (std::size_t d = 0; d < derivs.size(); ++d) {
          const double dscale = d == 0 ? 1.0 / (c * c) : 1.0;
          for (int mu = 0; mu < 4; ++mu) {
            std::fill(coeff.begin(), coeff.end(), Complex(0.0));
            for (const auto& [sym, v] : field_coefficients(mu, p, ms, pc, derivs[d])) coeff[slot(sym)] += v;
            const double w = -0.5 * weight * dscale * MetricSignature::diagonal[static_cast<std::size_t>(mu)];
            for (std::size_t j = 0; j < n; ++j) {
              if (coeff[j] == 0.0) continue;
              for (std::size_t l = 0; l < n; ++l) quad[j * n + l] += w * coeff[j] * coeff[l];
            }
          }
        }
      }
    }
  }

  SparseMatrix out(static_cast<Eigen::Index>(rep.dimension()), static_cast<Eigen::Index>(rep.dimension()));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) {
      const Complex q = quad[slot(symbols[j]) * n + slot(symbols[l])];
      if (q == 0.0) continue;
      out += q * SparseMatrix(rep.ladder_matrix(symbols[j]) * rep.ladder_matrix(symbols[l]));
    }
  }
  out.prune(Complex(0.0));
  return out;
}

/// Symmetrized P^i = sum_k sum_r (hbar k^i / 2) xi_r [a+ a + a a+], exact coefficients.
inline std::array<OperatorPoly, 3> momentum_operator(const ModeSet& ms, const PhysicalConstants& pc = {}) {
  std::array<OperatorPoly, 3> out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t comp = 0; comp < 3; ++comp) {
      const int m = ms.mode(i)[comp];
      if (m == 0) continue;
      // hbar k / 2 = pi hbar m / L
      const Scalar half = Scalar::pi() * Scalar(Rational(pc.hbar * m / ms.box_length()));
      for (int r = 0; r < 4; ++r) {
        const LadderSymbol a = LadderSymbol::a(r, i);
        const LadderSymbol ad = LadderSymbol::ad(r, i);
        const Scalar coeff = Scalar(polarization_sign(static_cast<std::size_t>(r))) * half;
        out[comp].add_term({ad, a}, coeff);
        out[comp].add_term({a, ad}, coeff);
      }
    }
  }
  return out;
}

/// || (c^2 |P|^2 - H^2) state|0> || where the state is given as a polynomial
/// applied to the vacuum. Uses the squared 3-momentum magnitude.
inline double check_energy_momentum_identity(const OperatorPoly& state, const ModeSet& ms, const FockRep& rep,
                                             const PhysicalConstants& pc = {}) {
  require_cover(ms, rep);
  const Vector psi = rep.apply(state, rep.vacuum());
  const SparseMatrix h = rep.realize(hamiltonian_modes(ms, pc));
  const auto p = momentum_operator(ms, pc);
  const double c = to_double(pc.c);
  Vector lhs = Vector::Zero(psi.size());
  for (const auto& comp : p) {
    const SparseMatrix pm = rep.realize(comp);
    lhs += c * c * (pm * (pm * psi));
  }
  const Vector rhs = h * (h * psi);
  return (lhs - rhs).norm();
}

enum class VacuumVariant { Raw, NormalOrderingPrescription };

/// Exact <0|H|0> of the mode Hamiltonian. The prescription variant applies
/// N[.] first, which removes every c-number.
inline Scalar vacuum_energy(const ModeSet& ms, const CommutatorScheme& scheme, const PhysicalConstants& pc = {},
                            VacuumVariant variant = VacuumVariant::Raw) {
  OperatorPoly h = hamiltonian_modes(ms, pc);
  if (variant == VacuumVariant::NormalOrderingPrescription) h = normal_order_prescription(h);
  return vev(h, scheme);
}

}  // namespace zpe
