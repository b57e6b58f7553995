#pragma once

// Exact scalars for the operator algebra.
//
// Rational is an arbitrary-precision fraction. ComplexRational is Q(i).
// Scalar extends Q(i) with the real units pi^p * sqrt(s) (s squarefree), which
// is closed under multiplication and is enough to keep hbar*omega = 2*pi*hbar*c*|m|/L
// and the sqrt(n_r) rescalings exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include "zpe/error.hpp"

namespace zpe {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Decimal digits to Integer; leading zeros would otherwise select octal.
inline Integer decimal_integer(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return Integer(0);
  return Integer(std::string(digits.substr(first)));
}

/// Parses "7", "-3/4", "+0.125" exactly; decimals are converted by place value.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw Error(ErrorKind::Parse, "malformed rational '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    ++pos;
  }
  auto digits = [&](std::size_t from) {
    std::size_t end = from;
    while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
    return end;
  };
  std::size_t int_end = digits(pos);
  Rational value;
  if (int_end < text.size() && text[int_end] == '/') {
    if (int_end == pos) fail();
    std::size_t den_end = digits(int_end + 1);
    if (den_end != text.size() || den_end == int_end + 1) fail();
    Integer num = decimal_integer(text.substr(pos, int_end - pos));
    Integer den = decimal_integer(text.substr(int_end + 1));
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    value = Rational(num, den);
  } else if (int_end < text.size() && text[int_end] == '.') {
    std::size_t frac_end = digits(int_end + 1);
    if (frac_end != text.size() || (int_end == pos && frac_end == int_end + 1)) fail();
    std::string all = std::string(text.substr(pos, int_end - pos)) +
                      std::string(text.substr(int_end + 1, frac_end - int_end - 1));
    Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac_end - int_end - 1));
    value = Rational(decimal_integer(all), den);
  } else {
    if (int_end != text.size() || int_end == pos) fail();
    value = Rational(decimal_integer(text.substr(pos)));
  }
  return negative ? Rational(-value) : value;
}

/// An element of Q(i).
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by intent
  ComplexRational(long long r) : re(r) {}            // NOLINT
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static ComplexRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  ComplexRational conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ComplexRational& operator+=(const ComplexRational& o) { return *this = *this + o; }
  ComplexRational& operator*=(const ComplexRational& o) { return *this = *this * o; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline std::string to_string(const ComplexRational& z) {
  if (z.im == 0) return to_string(z.re);
  auto imag = [](const Rational& q) {
    if (q == 1) return std::string("i");
    if (q == -1) return std::string("-i");
    return to_string(q) + "i";
  };
  if (z.re == 0) return imag(z.im);
  std::string im = imag(z.im);
  if (im.front() != '-') im = "+" + im;
  return "(" + to_string(z.re) + im + ")";
}

namespace detail {

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// n = outer^2 * squarefree. Trial division up to the cube root leaves a
/// cofactor with at most two prime factors, which is square iff it is a
/// perfect square.
inline std::pair<std::uint64_t, std::uint64_t> squarefree_split(std::uint64_t n) {
  if (n == 0) return {0, 1};
  std::uint64_t outer = 1;
  std::uint64_t inner = 1;
  for (std::uint64_t p = 2; p * p * p <= n; ++p) {
    unsigned count = 0;
    while (n % p == 0) {
      n /= p;
      ++count;
    }
    for (unsigned k = 0; k < count / 2; ++k) outer *= p;
    if (count % 2) inner *= p;
  }
  std::uint64_t root = isqrt(n);
  if (root * root == n) {
    outer *= root;
  } else {
    inner *= n;
  }
  return {outer, inner};
}

}  // namespace detail

/// Real irrational unit pi^pi_power * sqrt(radicand), radicand squarefree.
struct Unit {
  int pi_power = 0;
  std::uint64_t radicand = 1;

  bool is_one() const { return pi_power == 0 && radicand == 1; }
  double value() const {
    return std::pow(std::numbers::pi, pi_power) * std::sqrt(static_cast<double>(radicand));
  }
  auto operator<=>(const Unit&) const = default;
};

/// Exact scalar: finite Q(i)-linear combination of Units.
class Scalar {
 public:
  using Terms = std::map<Unit, ComplexRational>;

  Scalar() = default;
  Scalar(ComplexRational z) { add(Unit{}, std::move(z)); }  // NOLINT
  Scalar(Rational q) : Scalar(ComplexRational(std::move(q))) {}  // NOLINT
  Scalar(long long q) : Scalar(Rational(q)) {}                   // NOLINT
  Scalar(int q) : Scalar(Rational(q)) {}                         // NOLINT

  static Scalar i() { return Scalar(ComplexRational::i()); }

  static Scalar pi(int power = 1) {
    Scalar s;
    s.add(Unit{power, 1}, ComplexRational(1));
    return s;
  }

  /// sqrt(q) for q >= 0, reduced to (rational) * sqrt(squarefree integer).
  static Scalar sqrt(const Rational& q) {
    if (q < 0) throw Error(ErrorKind::NonPositiveNorm, "square root of negative rational " + zpe::to_string(q));
    if (q == 0) return Scalar();
    const Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    const Integer product = num * den;
    if (product > Integer(std::uint64_t{1} << 62)) {
      throw Error(ErrorKind::Capacity, "radicand too large for exact square root: " + zpe::to_string(q));
    }
    auto [outer, inner] = detail::squarefree_split(product.convert_to<std::uint64_t>());
    Scalar s;
    s.add(Unit{0, inner}, ComplexRational(Rational(Integer(outer), den)));
    return s;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// True when the value lies in Q(i).
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

  ComplexRational rational_part() const {
    auto it = terms_.find(Unit{});
    return it == terms_.end() ? ComplexRational() : it->second;
  }

  std::complex<double> to_complex() const {
    std::complex<double> sum = 0.0;
    for (const auto& [unit, z] : terms_) sum += unit.value() * z.to_complex();
    return sum;
  }

  Scalar conj() const {
    Scalar out;
    for (const auto& [unit, z] : terms_) out.terms_.emplace(unit, z.conj());
    return out;
  }

  Scalar& operator+=(const Scalar& o) {
    for (const auto& [unit, z] : o.terms_) add(unit, z);
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    for (const auto& [unit, z] : o.terms_) add(unit, -z);
    return *this;
  }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator-(const Scalar& a) {
    Scalar out;
    for (const auto& [unit, z] : a.terms_) out.terms_.emplace(unit, -z);
    return out;
  }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar out;
    for (const auto& [ua, za] : a.terms_) {
      for (const auto& [ub, zb] : b.terms_) {
        // sqrt(s1) sqrt(s2) = g sqrt(s1 s2 / g^2) with g = gcd; the quotient stays squarefree.
        const std::uint64_t g = std::gcd(ua.radicand, ub.radicand);
        Unit u{ua.pi_power + ub.pi_power, (ua.radicand / g) * (ub.radicand / g)};
        out.add(u, za * zb * ComplexRational(Rational(static_cast<long long>(g))));
      }
    }
    return out;
  }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

 private:
  void add(const Unit& unit, const ComplexRational& z) {
    if (z.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(unit, z);
    if (!inserted) {
      it->second += z;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Terms terms_;
};

namespace detail {

inline std::string unit_suffix(const Unit& u) {
  std::string out;
  if (u.pi_power == 1) out += "*pi";
  else if (u.pi_power != 0) out += "*pi^" + std::to_string(u.pi_power);
  if (u.radicand != 1) out += "*sqrt(" + std::to_string(u.radicand) + ")";
  return out;
}

/// One unit term, written without a leading sign. Returns whether the term is negative.
inline std::pair<bool, std::string> format_unit_term(const Unit& u, const ComplexRational& z) {
  bool negative = false;
  std::string head;
  if (z.im == 0 || z.re == 0) {
    const Rational& q = z.im == 0 ? z.re : z.im;
    negative = q < 0;
    const Rational mag = negative ? Rational(-q) : q;
    if (z.im == 0) {
      head = to_string(mag);
    } else {
      head = mag == 1 ? std::string("i") : to_string(mag) + "i";
    }
  } else {
    head = to_string(z);
  }
  std::string suffix = unit_suffix(u);
  if (head == "1" && !suffix.empty()) return {negative, suffix.substr(1)};
  return {negative, head + suffix};
}

}  // namespace detail

/// Canonical text: "0", "3/4", "-i", "1/2*pi*sqrt(3)", or a parenthesised sum
/// when more than one unit is present.
inline std::string to_string(const Scalar& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [unit, z] : s.terms()) {
    auto [negative, text] = detail::format_unit_term(unit, z);
    if (first) {
      out += negative ? "-" + text : text;
    } else {
      out += negative ? " - " + text : " + " + text;
    }
    first = false;
  }
  return s.terms().size() > 1 ? "(" + out + ")" : out;
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << to_string(s); }

}  // namespace zpe
