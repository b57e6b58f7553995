#pragma once

// Seeded generators shared by the property tests and the acceptance runner.

#include <array>
#include <random>
#include <vector>

#include "zpe/opalgebra.hpp"

namespace zpe::testing {

inline Rational random_rational(std::mt19937_64& rng, int lo = -5, int hi = 5, int max_den = 6) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, max_den);
  return Rational(num(rng), den(rng));
}

inline Scalar random_coefficient(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 5);
  switch (pick(rng)) {
    case 0: return Scalar(ComplexRational(random_rational(rng), random_rational(rng)));
    case 1: return Scalar(random_rational(rng)) * Scalar::pi();
    case 2: return Scalar(random_rational(rng)) * Scalar::sqrt(Rational(std::uniform_int_distribution<int>(2, 30)(rng)));
    default: {
      Rational q = random_rational(rng);
      return Scalar(q == 0 ? Rational(1) : q);
    }
  }
}

/// (n1, n2, n3) with positive rational entries summing to 1.
inline std::array<Rational, 3> random_split(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> w(1, 20);
  const int a = w(rng), b = w(rng), c = w(rng);
  const int s = a + b + c;
  return {Rational(a, s), Rational(b, s), Rational(c, s)};
}

inline LadderSymbol random_symbol(std::mt19937_64& rng, std::size_t modes, int max_pol = 3) {
  std::uniform_int_distribution<std::size_t> m(0, modes - 1);
  std::uniform_int_distribution<int> r(0, max_pol);
  std::bernoulli_distribution d;
  return {m(rng), r(rng), d(rng)};
}

/// Up to max_terms terms of degree <= max_degree over the given modes.
inline OperatorPoly random_poly(std::mt19937_64& rng, std::size_t max_degree, std::size_t modes, std::size_t max_terms = 4,
                                int max_pol = 3, bool rational_only = false) {
  std::uniform_int_distribution<std::size_t> nterms(1, max_terms), deg(0, max_degree);
  OperatorPoly p;
  const std::size_t n = nterms(rng);
  for (std::size_t t = 0; t < n; ++t) {
    Word w;
    const std::size_t d = deg(rng);
    for (std::size_t k = 0; k < d; ++k) w.push_back(random_symbol(rng, modes, max_pol));
    Scalar c = rational_only ? Scalar(ComplexRational(random_rational(rng), random_rational(rng))) : random_coefficient(rng);
    if (c.is_zero()) c = Scalar(1);
    p.add_term(std::move(w), c);
  }
  return p;
}

}  // namespace zpe::testing
