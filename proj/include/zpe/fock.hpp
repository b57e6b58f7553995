#pragma once

// Numerical realization of the ladder algebra on a truncated multi-oscillator
// Fock space. Serves as the independent oracle for the symbolic layer.
//
// Basis states are mixed-radix occupation vectors (oscillator 0 least
// significant), occupations 0..n_max. Per oscillator with constant c and
// vacuum role, with L the standard lowering matrix and R = L^T:
//
//   c > 0, a annihilates       a = sqrt(c) L      a+ = sqrt(c) R        eta = 1
//   c < 0, a+ annihilates      a = sqrt(|c|) R    a+ = sqrt(|c|) L      eta = 1
//   c < 0, a annihilates       a = sqrt(|c|) L    a+ = -sqrt(|c|) R     eta = (-1)^n
//   c > 0, a+ annihilates      a = -sqrt(c) R     a+ = sqrt(c) L        eta = (-1)^n
//
// so [a, a+] = c on every state whose occupations are all <= n_max - 1 and
// a+ = eta a^dagger eta throughout.

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zpe/error.hpp"
#include "zpe/opalgebra.hpp"

namespace zpe {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Vector = Eigen::VectorXcd;

inline constexpr std::size_t kDefaultDimensionCap = 4096;

struct TruncationDefect {
  double sub_truncation = 0.0;
  double full_space = 0.0;
};

class FockRep {
 public:
  FockRep(CommutatorScheme scheme, std::vector<Oscillator> oscillators, int n_max,
          std::size_t dimension_cap = kDefaultDimensionCap)
      : scheme_(std::move(scheme)), oscillators_(std::move(oscillators)), n_max_(n_max) {
    if (n_max_ < 1) throw Error(ErrorKind::Capacity, "n_max must be at least 1");
    std::sort(oscillators_.begin(), oscillators_.end());
    oscillators_.erase(std::unique(oscillators_.begin(), oscillators_.end()), oscillators_.end());
    const auto radix = static_cast<std::size_t>(n_max_ + 1);
    dimension_ = 1;
    for (std::size_t j = 0; j < oscillators_.size(); ++j) {
      if (oscillators_[j].pol < 0 || oscillators_[j].pol > 3) {
        throw Error(ErrorKind::InvalidMode, "polarization index outside 0..3");
      }
      if (dimension_ > dimension_cap / radix) {
        throw Error(ErrorKind::Capacity, "Fock dimension (" + std::to_string(n_max_ + 1) + ")^" +
                                             std::to_string(oscillators_.size()) + " exceeds cap " +
                                             std::to_string(dimension_cap));
      }
      strides_.push_back(dimension_);
      dimension_ *= radix;
    }
    build();
  }

  std::size_t dimension() const { return dimension_; }
  int n_max() const { return n_max_; }
  const CommutatorScheme& scheme() const { return scheme_; }
  const std::vector<Oscillator>& oscillators() const { return oscillators_; }
  bool contains(const Oscillator& o) const { return std::binary_search(oscillators_.begin(), oscillators_.end(), o); }

  /// Diagonal of the inner-product metric; all +1 unless an oscillator needs the indefinite construction.
  const Eigen::VectorXd& metric() const { return metric_; }
  bool is_indefinite() const { return (metric_.array() < 0).any(); }

  int occupation(std::size_t state, std::size_t oscillator_index) const {
    return static_cast<int>((state / strides_[oscillator_index]) % static_cast<std::size_t>(n_max_ + 1));
  }

  /// States whose every occupation is <= n_max - margin.
  std::vector<std::size_t> sub_truncation_states(int margin = 1) const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < dimension_; ++s) {
      bool inside = true;
      for (std::size_t j = 0; j < oscillators_.size() && inside; ++j) inside = occupation(s, j) <= n_max_ - margin;
      if (inside) out.push_back(s);
    }
    return out;
  }

  const SparseMatrix& ladder_matrix(const LadderSymbol& sym) const {
    const std::size_t j = index_of(sym.oscillator());
    return sym.dagger ? conjugates_[j] : operators_[j];
  }

  SparseMatrix identity() const {
    SparseMatrix id(static_cast<Eigen::Index>(dimension_), static_cast<Eigen::Index>(dimension_));
    id.setIdentity();
    return id;
  }

  SparseMatrix realize(const OperatorPoly& p) const {
    SparseMatrix out(static_cast<Eigen::Index>(dimension_), static_cast<Eigen::Index>(dimension_));
    for (const auto& [w, c] : p.terms()) {
      SparseMatrix term = identity();
      for (const auto& sym : w) term = SparseMatrix(term * ladder_matrix(sym));
      out += c.to_complex() * term;
    }
    out.prune(Complex(0.0));
    return out;
  }

  /// p applied to a vector, word by word from the right.
  Vector apply(const OperatorPoly& p, const Vector& v) const {
    Vector out = Vector::Zero(static_cast<Eigen::Index>(dimension_));
    for (const auto& [w, c] : p.terms()) {
      Vector x = v;
      for (auto it = w.rbegin(); it != w.rend(); ++it) x = ladder_matrix(*it) * x;
      out += c.to_complex() * x;
    }
    return out;
  }

  Vector vacuum() const {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dimension_));
    v[0] = 1.0;
    return v;
  }

  /// <0|eta p|0>. Rejects words long enough to reach the truncation boundary
  /// on a path that returns to the vacuum.
  Complex vev_numeric(const OperatorPoly& p) const {
    if (p.degree() > static_cast<std::size_t>(2 * n_max_)) {
      throw Error(ErrorKind::TruncationRisk, "degree " + std::to_string(p.degree()) + " exceeds 2*n_max = " +
                                                 std::to_string(2 * n_max_));
    }
    for (const auto& o : p.oscillators()) index_of(o);
    const Vector out = apply(p, vacuum());
    return metric_[0] * out[0];
  }

  /// eta M^dagger eta, the adjoint under this representation's inner product.
  SparseMatrix adjoint(const SparseMatrix& m) const {
    SparseMatrix out = SparseMatrix(m.adjoint());
    for (int k = 0; k < out.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(out, k); it; ++it) it.valueRef() *= metric_[it.row()] * metric_[it.col()];
    }
    return out;
  }

  TruncationDefect truncation_defect() const {
    TruncationDefect d;
    const auto inside = sub_truncation_states(1);
    std::vector<char> in_sub(dimension_, 0);
    for (auto s : inside) in_sub[s] = 1;
    for (std::size_t j = 0; j < oscillators_.size(); ++j) {
      const Complex c = to_double(scheme_.c(oscillators_[j].pol));
      SparseMatrix comm = SparseMatrix(operators_[j] * conjugates_[j]) - SparseMatrix(conjugates_[j] * operators_[j]);
      comm -= c * identity();
      for (int k = 0; k < comm.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(comm, k); it; ++it) {
          const double mag = std::abs(it.value());
          d.full_space = std::max(d.full_space, mag);
          if (in_sub[static_cast<std::size_t>(it.col())]) d.sub_truncation = std::max(d.sub_truncation, mag);
        }
      }
    }
    return d;
  }

  std::size_t index_of(const Oscillator& o) const {
    auto it = std::lower_bound(oscillators_.begin(), oscillators_.end(), o);
    if (it == oscillators_.end() || !(*it == o)) {
      throw Error(ErrorKind::Lookup, "oscillator (pol " + std::to_string(o.pol) + ", mode " + std::to_string(o.mode) +
                                         ") not present in representation");
    }
    return static_cast<std::size_t>(it - oscillators_.begin());
  }

 private:
  void build() {
    const auto n = static_cast<Eigen::Index>(dimension_);
    metric_ = Eigen::VectorXd::Ones(n);
    for (std::size_t j = 0; j < oscillators_.size(); ++j) {
      const int pol = oscillators_[j].pol;
      const Rational& c = scheme_.c(pol);
      const bool positive = c > 0;
      const bool op_annihilates = scheme_.role(pol) == VacuumRole::Operator;
      const double scale = std::sqrt(std::abs(to_double(c)));

      std::vector<Eigen::Triplet<Complex>> lower;
      for (std::size_t s = 0; s < dimension_; ++s) {
        const int occ = occupation(s, j);
        if (occ > 0) {
          lower.emplace_back(static_cast<Eigen::Index>(s - strides_[j]), static_cast<Eigen::Index>(s),
                             Complex(std::sqrt(static_cast<double>(occ)), 0.0));
        }
      }
      SparseMatrix lowering(n, n);
      lowering.setFromTriplets(lower.begin(), lower.end());
      SparseMatrix raising = SparseMatrix(lowering.transpose());

      SparseMatrix a;
      SparseMatrix ad;
      bool indefinite = false;
      if (positive && op_annihilates) {
        a = scale * lowering;
        ad = scale * raising;
      } else if (!positive && !op_annihilates) {
        a = scale * raising;
        ad = scale * lowering;
      } else if (!positive && op_annihilates) {
        a = scale * lowering;
        ad = -scale * raising;
        indefinite = true;
      } else {
        a = -scale * raising;
        ad = scale * lowering;
        indefinite = true;
      }
      if (indefinite) {
        for (std::size_t s = 0; s < dimension_; ++s) {
          if (occupation(s, j) % 2) metric_[static_cast<Eigen::Index>(s)] = -metric_[static_cast<Eigen::Index>(s)];
        }
      }
      operators_.push_back(std::move(a));
      conjugates_.push_back(std::move(ad));
    }
  }

  CommutatorScheme scheme_;
  std::vector<Oscillator> oscillators_;
  int n_max_;
  std::size_t dimension_ = 1;
  std::vector<std::size_t> strides_;
  std::vector<SparseMatrix> operators_;
  std::vector<SparseMatrix> conjugates_;
  Eigen::VectorXd metric_;
};

/// Max-abs entry of a sparse matrix.
inline double max_abs(const SparseMatrix& m) {
  double worst = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

/// Max-abs entry of m restricted to the given columns (all rows).
inline double max_abs_on_columns(const SparseMatrix& m, const std::vector<std::size_t>& columns) {
  double worst = 0.0;
  for (auto col : columns) {
    for (SparseMatrix::InnerIterator it(m, static_cast<Eigen::Index>(col)); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

/// max |eta M^dagger eta - M|
inline double self_adjoint_defect(const SparseMatrix& m, const FockRep& rep) {
  return max_abs(SparseMatrix(rep.adjoint(m) - m));
}

}  // namespace zpe
