#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "support.hpp"
#include "zpe/exprdsl.hpp"
#include "zpe/opalgebra.hpp"

using namespace zpe;
using zpe::testing::random_poly;
using zpe::testing::random_split;

namespace {

const LadderSymbol a0 = LadderSymbol::a(0, 0), ad0 = LadderSymbol::ad(0, 0);
const LadderSymbol a1 = LadderSymbol::a(1, 0), ad1 = LadderSymbol::ad(1, 0);
const LadderSymbol a2 = LadderSymbol::a(2, 0), ad2 = LadderSymbol::ad(2, 0);
const LadderSymbol a3 = LadderSymbol::a(3, 0), ad3 = LadderSymbol::ad(3, 0);

OperatorPoly P(const LadderSymbol& s) { return OperatorPoly(s); }

std::vector<ModeFrequency> unit_modes(std::size_t n) {
  std::vector<ModeFrequency> out;
  for (std::size_t m = 0; m < n; ++m) out.push_back({m, Scalar(1)});
  return out;
}

}  // namespace

TEST(OperatorPoly, NoZeroTermsStored) {
  OperatorPoly p = P(a1) + P(ad1);
  p.add_term({a1}, Scalar(-1));
  EXPECT_EQ(p.size(), 1u);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_TRUE((Scalar(0) * p).is_zero());
}

TEST(Multiply, Examples) {
  const OperatorPoly id = OperatorPoly::identity();
  const OperatorPoly p = P(a1) * P(ad2) + Scalar(Rational(1, 3));
  EXPECT_EQ(id * p, p);
  EXPECT_EQ(p * id, p);

  const OperatorPoly prod = multiply(P(a1), P(ad1));
  ASSERT_EQ(prod.size(), 1u);
  EXPECT_EQ(prod.coefficient({a1, ad1}), Scalar(1));

  EXPECT_EQ((P(a1) + P(a2)) * P(ad1), P(a1) * P(ad1) + P(a2) * P(ad1));
}

TEST(Multiply, AssociativeOnRandomPolys) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_poly(rng, 2, 2), q = random_poly(rng, 2, 2), r = random_poly(rng, 2, 2);
    EXPECT_EQ((p * q) * r, p * (q * r));
  }
}

TEST(Schemes, Construction) {
  const auto st = CommutatorScheme::standard();
  EXPECT_EQ(st.c(0), -1);
  for (int r = 1; r <= 3; ++r) EXPECT_EQ(st.c(r), 1);
  EXPECT_FALSE(st.is_paper_type());
  EXPECT_TRUE(st.annihilates_vacuum(a0));

  const auto pa = CommutatorScheme::paper();
  EXPECT_TRUE(pa.is_paper_type());
  EXPECT_EQ(pa.c(2), Rational(1, 3));
  EXPECT_TRUE(pa.annihilates_vacuum(ad0));
  EXPECT_FALSE(pa.annihilates_vacuum(a0));
  EXPECT_TRUE(pa.annihilates_vacuum(a3));

  try {
    CommutatorScheme::paper({Rational(0), Rational(1, 2), Rational(1, 2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPositiveNorm);
  }
  try {
    CommutatorScheme::paper({Rational(-1, 2), Rational(1), Rational(1, 2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPositiveNorm);
  }
  try {
    CommutatorScheme::paper({Rational(1, 2), Rational(1, 2), Rational(1, 2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
  }
  EXPECT_THROW(CommutatorScheme::custom({Rational(0), Rational(1), Rational(1), Rational(1)}, {}), Error);
  EXPECT_THROW(validate(LadderSymbol{0, 4, false}), Error);
  EXPECT_THROW(OperatorPoly(LadderSymbol{0, -1, true}), Error);
}

TEST(Commutator, ScalarPhotonUnderPaper) {
  const auto s = CommutatorScheme::paper();
  EXPECT_EQ(commutator(P(a0), P(ad0), s), OperatorPoly(Scalar(-1)));
}

TEST(Commutator, SpatialSumIsIdentity) {
  for (const auto& s : {CommutatorScheme::paper(),
                        CommutatorScheme::paper({Rational(1, 2), Rational(1, 4), Rational(1, 4)})}) {
    const OperatorPoly sum = commutator(P(a1), P(ad1), s) + commutator(P(a2), P(ad2), s) + commutator(P(a3), P(ad3), s);
    EXPECT_EQ(sum, OperatorPoly::identity());
  }
}

TEST(Commutator, CrossTermsVanish) {
  const auto s = CommutatorScheme::paper();
  for (int r = 0; r < 4; ++r) {
    for (int q = 0; q < 4; ++q) {
      for (std::size_t m = 0; m < 2; ++m) {
        if (r == q && m == 0) continue;
        EXPECT_TRUE(commutator(P(LadderSymbol::a(r, 0)), P(LadderSymbol::ad(q, m)), s).is_zero()) << r << q << m;
        EXPECT_TRUE(commutator(P(LadderSymbol::a(r, 0)), P(LadderSymbol::a(q, m)), s).is_zero());
      }
    }
  }
}

TEST(Commutator, AntisymmetricBilinearJacobi) {
  std::mt19937_64 rng(1234);
  for (const auto& s : {CommutatorScheme::paper(), CommutatorScheme::standard()}) {
    for (int trial = 0; trial < 60; ++trial) {
      const auto p = random_poly(rng, 2, 2, 3), q = random_poly(rng, 2, 2, 3), r = random_poly(rng, 2, 2, 3);
      const Scalar alpha = zpe::testing::random_coefficient(rng);
      EXPECT_EQ(commutator(p, q, s), -commutator(q, p, s));
      EXPECT_EQ(commutator(alpha * p + r, q, s), normal_order(alpha * commutator(p, q, s) + commutator(r, q, s), s));
      const OperatorPoly jacobi = commutator(p, commutator(q, r, s), s) + commutator(q, commutator(r, p, s), s) +
                                  commutator(r, commutator(p, q, s), s);
      EXPECT_TRUE(jacobi.is_zero());
    }
  }
}

TEST(NormalOrder, Examples) {
  const auto paper = CommutatorScheme::paper();
  EXPECT_EQ(normal_order(P(a1) * P(ad1), paper), P(ad1) * P(a1) + Scalar(Rational(1, 3)));
  EXPECT_EQ(normal_order(P(ad0) * P(a0), paper), P(a0) * P(ad0) + Scalar(1));
  EXPECT_EQ(normal_order(P(a1) * P(ad1), CommutatorScheme::standard()), P(ad1) * P(a1) + Scalar(1));
  EXPECT_EQ(normal_order(OperatorPoly::identity(), paper), OperatorPoly::identity());
}

TEST(NormalOrder, IdempotentOnRandomPolys) {
  std::mt19937_64 rng(77);
  for (const auto& s : {CommutatorScheme::paper(), CommutatorScheme::standard()}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto p = random_poly(rng, 4, 2);
      const auto n = normal_order(p, s);
      EXPECT_EQ(normal_order(n, s), n);
    }
  }
}

TEST(NormalOrderPrescription, Examples) {
  EXPECT_EQ(normal_order_prescription(P(a1) * P(ad1)), P(ad1) * P(a1));
  EXPECT_EQ(normal_order_prescription(P(ad1) * P(a1)), P(ad1) * P(a1));
  EXPECT_EQ(normal_order_prescription(OperatorPoly::identity()), OperatorPoly::identity());
}

TEST(Vev, Examples) {
  const auto paper = CommutatorScheme::paper();
  const auto std_ = CommutatorScheme::standard();
  EXPECT_EQ(vev(P(a1) * P(ad1), paper), Scalar(Rational(1, 3)));
  EXPECT_EQ(vev(P(a0) * P(ad0), std_), Scalar(-1));
  EXPECT_EQ(vev(P(ad0) * P(a0), paper), Scalar(1));
  EXPECT_EQ(vev(OperatorPoly::identity(), paper), Scalar(1));
  const auto modes = unit_modes(1);
  EXPECT_TRUE(vev(build_hamiltonian_sym(modes), paper).is_zero());
}

TEST(Hamiltonian, SingleModeStructure) {
  const auto modes = unit_modes(1);
  const auto h = build_hamiltonian_sym(modes);
  EXPECT_EQ(h.size(), 8u);
  for (const auto& [w, c] : h.terms()) {
    EXPECT_EQ(c, Scalar(w[0].pol == 0 ? Rational(-1, 2) : Rational(1, 2)));
  }
  EXPECT_EQ(format(normal_order(h, CommutatorScheme::paper())),
            "ad[1,0]*a[1,0] + ad[2,0]*a[2,0] + ad[3,0]*a[3,0] - a[0,0]*ad[0,0]");
  EXPECT_EQ(format(normal_order_prescription(h)),
            "-ad[0,0]*a[0,0] + ad[1,0]*a[1,0] + ad[2,0]*a[2,0] + ad[3,0]*a[3,0]");
  EXPECT_EQ(normal_order(h, CommutatorScheme::standard()).coefficient({}), Scalar(2));
}

TEST(Hamiltonian, RejectsNonpositiveFrequency) {
  for (const Scalar& bad : {Scalar(0), Scalar(-1), Scalar::i()}) {
    const std::vector<ModeFrequency> modes{{0, bad}};
    try {
      build_hamiltonian_sym(modes);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidMode);
    }
  }
}

TEST(Hamiltonian, PaperVevVanishesForRandomSplits) {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::size_t> count(1, 12);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = CommutatorScheme::paper(random_split(rng));
    std::vector<ModeFrequency> modes;
    const std::size_t m = count(rng);
    for (std::size_t k = 0; k < m; ++k) {
      modes.push_back({k, Scalar(zpe::testing::random_rational(rng, 1, 9)) * Scalar::pi() *
                              Scalar::sqrt(Rational(static_cast<long long>(k + 1)))});
    }
    EXPECT_TRUE(vev(build_hamiltonian_sym(modes), s).is_zero());
  }
}

TEST(Hamiltonian, StandardVevIsTwoHbarOmegaPerMode) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ModeFrequency> modes;
    Scalar expected;
    const Scalar hbar(Rational(3, 2));
    for (std::size_t k = 0; k < 5; ++k) {
      const Scalar w = Scalar(zpe::testing::random_rational(rng, 1, 9)) * Scalar::pi();
      modes.push_back({k, w});
      expected = expected + Scalar(2) * hbar * w;
    }
    const auto h = build_hamiltonian_sym(modes, hbar);
    EXPECT_EQ(vev(h, CommutatorScheme::standard()), expected);
    EXPECT_TRUE(vev(normal_order_prescription(h), CommutatorScheme::standard()).is_zero());
  }
}

TEST(Hamiltonian, SinglePhotonEnergyIsHbarOmegaTimesN) {
  const auto s = CommutatorScheme::paper({Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  const auto modes = unit_modes(1);
  const auto h = build_hamiltonian_sym(modes);
  EXPECT_EQ(commutator(h, P(ad2), s), Scalar(Rational(1, 3)) * P(ad2));
}

TEST(CanonicalB, UnitCommutators) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = CommutatorScheme::paper(random_split(rng));
    const auto cb = canonicalize_b(s);
    for (int r = 0; r < 4; ++r) {
      for (int q = 0; q < 4; ++q) {
        const OperatorPoly br = cb.b_in_a(LadderSymbol::a(r, 0));
        const OperatorPoly bq_dag = cb.b_in_a(LadderSymbol::ad(q, 0));
        const OperatorPoly expected = r == q ? OperatorPoly::identity() : OperatorPoly();
        EXPECT_EQ(commutator(br, bq_dag, s), expected) << r << q;
      }
      EXPECT_EQ(cb.to_a(cb.to_b(P(LadderSymbol::a(r, 0)))), P(LadderSymbol::a(r, 0)));
    }
  }
}

TEST(CanonicalB, RejectsWrongSchemes) {
  try {
    canonicalize_b(CommutatorScheme::standard());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SchemeType);
  }
  const auto bad = CommutatorScheme::custom(
      {Rational(-1), Rational(-1, 2), Rational(1), Rational(1, 2)},
      {VacuumRole::Conjugate, VacuumRole::Operator, VacuumRole::Operator, VacuumRole::Operator});
  try {
    canonicalize_b(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPositiveNorm);
  }
}
