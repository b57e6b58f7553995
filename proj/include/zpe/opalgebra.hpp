#pragma once

// Exact algebra of photon ladder operators a_r(k), a_r^+(k) under a
// configurable commutation scheme.
//
// A LadderSymbol names one oscillator (mode, polarization) plus a dagger bit.
// OperatorPoly is a formal noncommutative polynomial in those symbols with
// exact Scalar coefficients. Reordering only ever happens in normal_order,
// which uses the scheme constants; multiplication is purely formal.

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "zpe/error.hpp"
#include "zpe/exact.hpp"
#include "zpe/polarization.hpp"

namespace zpe {

struct Oscillator {
  std::size_t mode = 0;
  int pol = 0;
  auto operator<=>(const Oscillator&) const = default;
};

struct LadderSymbol {
  std::size_t mode = 0;
  int pol = 0;
  bool dagger = false;

  static LadderSymbol a(int pol, std::size_t mode) { return {mode, pol, false}; }
  static LadderSymbol ad(int pol, std::size_t mode) { return {mode, pol, true}; }

  Oscillator oscillator() const { return {mode, pol}; }
  LadderSymbol conjugate() const { return {mode, pol, !dagger}; }

  /// Total order used for words and printing: daggered symbols first, then by (mode, pol).
  auto key() const { return std::make_tuple(dagger ? 0 : 1, mode, pol); }
  friend bool operator==(const LadderSymbol&, const LadderSymbol&) = default;
};

inline void validate(const LadderSymbol& s) {
  if (s.pol < 0 || s.pol > 3) {
    throw Error(ErrorKind::InvalidMode, "polarization index " + std::to_string(s.pol) + " outside 0..3");
  }
}

using Word = std::vector<LadderSymbol>;

struct WordLess {
  bool operator()(const Word& x, const Word& y) const {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                        [](const LadderSymbol& l, const LadderSymbol& r) { return l.key() < r.key(); });
  }
};

class OperatorPoly {
 public:
  using Terms = std::map<Word, Scalar, WordLess>;

  OperatorPoly() = default;
  OperatorPoly(Scalar c) { add_term({}, std::move(c)); }  // NOLINT: scalars embed as c * identity
  OperatorPoly(const LadderSymbol& s) {                   // NOLINT
    validate(s);
    add_term({s}, Scalar(1));
  }

  static OperatorPoly identity() { return OperatorPoly(Scalar(1)); }
  static OperatorPoly monomial(Word word, Scalar c = Scalar(1)) {
    for (const auto& s : word) validate(s);
    OperatorPoly p;
    p.add_term(std::move(word), std::move(c));
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar() : it->second;
  }

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.size());
    return d;
  }

  std::set<Oscillator> oscillators() const {
    std::set<Oscillator> out;
    for (const auto& [w, c] : terms_) {
      for (const auto& s : w) out.insert(s.oscillator());
    }
    return out;
  }

  void add_term(Word word, Scalar c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(word), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  OperatorPoly& operator+=(const OperatorPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  OperatorPoly& operator-=(const OperatorPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { return a += b; }
  friend OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b) { return a -= b; }
  friend OperatorPoly operator-(const OperatorPoly& a) { return OperatorPoly() - a; }

  friend OperatorPoly operator*(const OperatorPoly& p, const OperatorPoly& q) {
    OperatorPoly out;
    for (const auto& [wp, cp] : p.terms_) {
      for (const auto& [wq, cq] : q.terms_) {
        Word w;
        w.reserve(wp.size() + wq.size());
        w.insert(w.end(), wp.begin(), wp.end());
        w.insert(w.end(), wq.begin(), wq.end());
        out.add_term(std::move(w), cp * cq);
      }
    }
    return out;
  }
  OperatorPoly& operator*=(const OperatorPoly& o) { return *this = *this * o; }

  friend OperatorPoly operator*(const Scalar& c, const OperatorPoly& p) {
    OperatorPoly out;
    for (const auto& [w, cw] : p.terms_) out.add_term(w, c * cw);
    return out;
  }

  friend bool operator==(const OperatorPoly& a, const OperatorPoly& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

inline OperatorPoly multiply(const OperatorPoly& p, const OperatorPoly& q) { return p * q; }

/// Which member of the pair (a_r, a_r^+) annihilates the vacuum.
enum class VacuumRole { Operator, Conjugate };

enum class SchemeKind { Standard, Paper, Custom };

inline std::string to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::Standard: return "standard";
    case SchemeKind::Paper: return "paper";
    case SchemeKind::Custom: return "custom";
  }
  return "custom";
}

/// [a_r(k), a_r^+(k')] = c_r delta_{kk'} for each polarization r, plus the
/// vacuum-annihilator assignment. Constants are mode independent.
class CommutatorScheme {
 public:
  /// c_r = xi_r, a_r annihilates the vacuum for every r.
  static CommutatorScheme standard() {
    return CommutatorScheme(SchemeKind::Standard, {Rational(-1), Rational(1), Rational(1), Rational(1)},
                            {VacuumRole::Operator, VacuumRole::Operator, VacuumRole::Operator, VacuumRole::Operator});
  }

  /// c_0 = -1 with a_0^+ annihilating the vacuum; c_{1,2,3} = n_{1,2,3} > 0 summing to 1.
  static CommutatorScheme paper(const std::array<Rational, 3>& n) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (n[i] <= 0) {
        throw Error(ErrorKind::NonPositiveNorm,
                    "n_" + std::to_string(i + 1) + " = " + zpe::to_string(n[i]) + " must be positive");
      }
    }
    if (n[0] + n[1] + n[2] != 1) {
      throw Error(ErrorKind::Config, "n_1 + n_2 + n_3 = " + zpe::to_string(Rational(n[0] + n[1] + n[2])) + ", expected 1");
    }
    return CommutatorScheme(SchemeKind::Paper, {Rational(-1), n[0], n[1], n[2]},
                            {VacuumRole::Conjugate, VacuumRole::Operator, VacuumRole::Operator, VacuumRole::Operator});
  }

  /// Symmetric split n_r = 1/3.
  static CommutatorScheme paper() { return paper({Rational(1, 3), Rational(1, 3), Rational(1, 3)}); }

  static CommutatorScheme custom(const std::array<Rational, 4>& c, const std::array<VacuumRole, 4>& roles) {
    for (std::size_t r = 0; r < 4; ++r) {
      if (c[r] == 0) throw Error(ErrorKind::Config, "commutator constant c_" + std::to_string(r) + " must be nonzero");
    }
    return CommutatorScheme(SchemeKind::Custom, c, roles);
  }

  SchemeKind kind() const { return kind_; }
  const Rational& c(int pol) const { return c_[static_cast<std::size_t>(pol)]; }
  const std::array<Rational, 4>& constants() const { return c_; }
  VacuumRole role(int pol) const { return roles_[static_cast<std::size_t>(pol)]; }

  /// Role layout of the modified scheme: scalar conjugate annihilates, c_0 < 0,
  /// transverse/longitudinal operators annihilate.
  bool is_paper_type() const {
    return c_[0] < 0 && roles_[0] == VacuumRole::Conjugate && roles_[1] == VacuumRole::Operator &&
           roles_[2] == VacuumRole::Operator && roles_[3] == VacuumRole::Operator;
  }

  bool annihilates_vacuum(const LadderSymbol& s) const {
    return s.dagger == (role(s.pol) == VacuumRole::Conjugate);
  }

  /// [x, x.conjugate()] for a symbol x of this scheme.
  Rational bracket(const LadderSymbol& x) const {
    return x.dagger ? Rational(-c(x.pol)) : c(x.pol);
  }

 private:
  CommutatorScheme(SchemeKind kind, std::array<Rational, 4> c, std::array<VacuumRole, 4> roles)
      : kind_(kind), c_(std::move(c)), roles_(roles) {}

  SchemeKind kind_;
  std::array<Rational, 4> c_;
  std::array<VacuumRole, 4> roles_;
};

/// Equality-preserving rewrite to the canonical normal form: within each word,
/// vacuum creators stand left of vacuum annihilators, each group sorted by
/// (mode, pol). Swapping an annihilator past its own conjugate emits the
/// scheme constant; every other pair commutes.
inline OperatorPoly normal_order(const OperatorPoly& p, const CommutatorScheme& s) {
  auto order_key = [&s](const LadderSymbol& x) {
    return std::make_tuple(s.annihilates_vacuum(x) ? 1 : 0, x.mode, x.pol);
  };
  OperatorPoly out;
  std::vector<std::pair<Word, Scalar>> pending(p.terms().begin(), p.terms().end());
  while (!pending.empty()) {
    auto [word, coeff] = std::move(pending.back());
    pending.pop_back();
    std::size_t i = 0;
    while (i + 1 < word.size()) {
      if (order_key(word[i]) <= order_key(word[i + 1])) {
        ++i;
        continue;
      }
      if (word[i].oscillator() == word[i + 1].oscillator()) {
        Word contracted;
        contracted.reserve(word.size() - 2);
        contracted.insert(contracted.end(), word.begin(), word.begin() + static_cast<std::ptrdiff_t>(i));
        contracted.insert(contracted.end(), word.begin() + static_cast<std::ptrdiff_t>(i) + 2, word.end());
        pending.emplace_back(std::move(contracted), coeff * Scalar(s.bracket(word[i])));
      }
      std::swap(word[i], word[i + 1]);
      if (i > 0) --i;
    }
    out.add_term(std::move(word), std::move(coeff));
  }
  return out;
}

inline OperatorPoly commutator(const OperatorPoly& p, const OperatorPoly& q, const CommutatorScheme& s) {
  return normal_order(p * q - q * p, s);
}

/// The textbook N[.]: daggered symbols moved left, commutator remainders dropped.
/// Not an equality; vacuum roles are ignored.
inline OperatorPoly normal_order_prescription(const OperatorPoly& p) {
  OperatorPoly out;
  for (const auto& [w, c] : p.terms()) {
    Word sorted = w;
    std::sort(sorted.begin(), sorted.end(), [](const LadderSymbol& l, const LadderSymbol& r) { return l.key() < r.key(); });
    out.add_term(std::move(sorted), c);
  }
  return out;
}

/// <0|p|0>: the identity coefficient of the normal form.
inline Scalar vev(const OperatorPoly& p, const CommutatorScheme& s) { return normal_order(p, s).coefficient({}); }

/// Replaces every symbol by its image and multiplies out.
inline OperatorPoly substitute(const OperatorPoly& p, const std::function<OperatorPoly(const LadderSymbol&)>& image) {
  OperatorPoly out;
  for (const auto& [w, c] : p.terms()) {
    OperatorPoly term(c);
    for (const auto& sym : w) term = term * image(sym);
    out += term;
  }
  return out;
}

/// Rescaled operators with unit commutators: b_r = a_r / sqrt(n_r) for
/// r = 1..3 and the role-swapped b_0 = a_0^+ / sqrt(|c_0|). Every b-pair obeys
/// [b, b^+] = 1 with b annihilating the vacuum.
class CanonicalB {
 public:
  explicit CanonicalB(const CommutatorScheme& s) : a_scheme_(s) {
    if (!s.is_paper_type()) {
      throw Error(ErrorKind::SchemeType, "b-operator rescaling needs the role-swapped scheme, got " + to_string(s.kind()));
    }
    for (int r = 1; r <= 3; ++r) {
      if (s.c(r) <= 0) {
        throw Error(ErrorKind::NonPositiveNorm, "n_" + std::to_string(r) + " = " + zpe::to_string(s.c(r)) + " must be positive");
      }
    }
    for (int r = 0; r < 4; ++r) {
      const Rational magnitude = r == 0 ? Rational(-s.c(0)) : s.c(r);
      sqrt_c_[static_cast<std::size_t>(r)] = Scalar::sqrt(magnitude);
      inv_sqrt_c_[static_cast<std::size_t>(r)] = Scalar::sqrt(Rational(1) / magnitude);
    }
  }

  /// Scheme the b-operators obey: c_r = 1, b annihilates the vacuum.
  static CommutatorScheme b_scheme() {
    return CommutatorScheme::custom({Rational(1), Rational(1), Rational(1), Rational(1)},
                                    {VacuumRole::Operator, VacuumRole::Operator, VacuumRole::Operator, VacuumRole::Operator});
  }

  const CommutatorScheme& a_scheme() const { return a_scheme_; }

  /// a-symbol written in b-symbols: a_r = sqrt(n_r) b_r, a_0 = b_0^+.
  OperatorPoly a_in_b(const LadderSymbol& a) const {
    const auto r = static_cast<std::size_t>(a.pol);
    LadderSymbol b = a.pol == 0 ? a.conjugate() : a;
    return sqrt_c_[r] * OperatorPoly(b);
  }

  /// b-symbol written in a-symbols: b_r = a_r / sqrt(n_r), b_0 = a_0^+.
  OperatorPoly b_in_a(const LadderSymbol& b) const {
    const auto r = static_cast<std::size_t>(b.pol);
    LadderSymbol a = b.pol == 0 ? b.conjugate() : b;
    return inv_sqrt_c_[r] * OperatorPoly(a);
  }

  OperatorPoly to_b(const OperatorPoly& p) const {
    return substitute(p, [this](const LadderSymbol& s) { return a_in_b(s); });
  }
  OperatorPoly to_a(const OperatorPoly& p) const {
    return substitute(p, [this](const LadderSymbol& s) { return b_in_a(s); });
  }

 private:
  CommutatorScheme a_scheme_;
  std::array<Scalar, 4> sqrt_c_;
  std::array<Scalar, 4> inv_sqrt_c_;
};

inline CanonicalB canonicalize_b(const CommutatorScheme& s) { return CanonicalB(s); }

struct ModeFrequency {
  std::size_t mode = 0;
  Scalar omega;
};

inline bool is_positive_real(const Scalar& x) {
  for (const auto& [unit, z] : x.terms()) {
    if (z.im != 0) return false;
  }
  return !x.is_zero() && x.to_complex().real() > 0.0;
}

/// sum_k sum_r (hbar omega_k / 2) xi_r [a_r^+ a_r + a_r a_r^+]
inline OperatorPoly build_hamiltonian_sym(std::span<const ModeFrequency> modes, const Scalar& hbar = Scalar(1)) {
  OperatorPoly h;
  for (const auto& m : modes) {
    if (!is_positive_real(m.omega)) {
      throw Error(ErrorKind::InvalidMode, "mode " + std::to_string(m.mode) + " has nonpositive frequency " + to_string(m.omega));
    }
    const Scalar half_energy = Scalar(Rational(1, 2)) * hbar * m.omega;
    for (int r = 0; r < 4; ++r) {
      const LadderSymbol a = LadderSymbol::a(r, m.mode);
      const LadderSymbol ad = LadderSymbol::ad(r, m.mode);
      const Scalar coeff = Scalar(polarization_sign(static_cast<std::size_t>(r))) * half_energy;
      h.add_term({ad, a}, coeff);
      h.add_term({a, ad}, coeff);
    }
  }
  return h;
}

}  // namespace zpe
