#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "zpe/causality.hpp"

using namespace zpe;

namespace {

// Reference values from an independent arbitrary-precision oscillatory quadrature.
struct Frozen {
  double r, ct, eps, value;
};
constexpr Frozen kFrozen[] = {
    {2.0, 1.0, 0.01, 0.00444395066721036},
    {1.0, 1.0, 0.01, 49.9987500312492},
    {3.0, 0.5, 0.05, 0.0019580007213601},
    {0.5, 2.0, 0.01, 0.00142213626097471},
};

double quad(const SeparationPoint& p) {
  const auto q = default_quadrature(p);
  return kernel_quadrature(p, q.k_max, q.n_points);
}

}  // namespace

TEST(RegulatedKernel, MatchesFrozenReference) {
  for (const auto& f : kFrozen) {
    const SeparationPoint p{f.r, f.ct, f.eps};
    EXPECT_NEAR(regulated_kernel(p), f.value, 1e-12 * std::abs(f.value)) << f.r << "," << f.ct;
  }
}

TEST(KernelQuadrature, MatchesFrozenReference) {
  for (const auto& f : kFrozen) {
    const SeparationPoint p{f.r, f.ct, f.eps};
    EXPECT_NEAR(quad(p), f.value, 1e-6 * std::abs(f.value)) << f.r << "," << f.ct;
  }
}

TEST(RegulatedKernel, VanishesAtEqualTimes) {
  EXPECT_EQ(regulated_kernel({1.0, 0.0, 0.01}), 0.0);
  EXPECT_EQ(regulated_kernel({7.5, 0.0, 0.3}), 0.0);
}

TEST(RegulatedKernel, OddInTime) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ur(0.1, 5.0), uct(-5.0, 5.0), ue(0.005, 0.2);
  for (int trial = 0; trial < 200; ++trial) {
    const double r = ur(rng), ct = uct(rng), eps = ue(rng);
    EXPECT_DOUBLE_EQ(regulated_kernel({r, -ct, eps}), -regulated_kernel({r, ct, eps}));
  }
}

TEST(RegulatedKernel, ClosedFormAgreesWithQuadratureOnRandomPoints) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ur(0.2, 4.0), uct(-4.0, 4.0), ue(0.01, 0.1);
  for (int trial = 0; trial < 40; ++trial) {
    const SeparationPoint p{ur(rng), uct(rng), ue(rng)};
    EXPECT_TRUE(quadrature_agrees(regulated_kernel(p), quad(p))) << p.r << " " << p.ct << " " << p.epsilon;
  }
}

TEST(RegulatedKernel, ScalesLinearlyInEpsilonOffCone) {
  const double c = offcone_coefficient(2.0, 1.0);
  for (double eps : {1e-3, 1e-4}) {
    EXPECT_NEAR(regulated_kernel({2.0, 1.0, eps}) / eps, c, 1e-3 * c);
  }
}

TEST(RegulatedKernel, DivergesAsInverseEpsilonOnCone) {
  for (double eps : {0.01, 0.001}) EXPECT_NEAR(2.0 * eps * regulated_kernel({1.0, 1.0, eps}), 1.0, 1e-3);
}

TEST(KernelQuadrature, ResolutionGuards) {
  const SeparationPoint p{1.0, 1.0, 0.01};
  try {
    kernel_quadrature(p, 100.0, 4000);
    FAIL() << "short cutoff accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Resolution);
  }
  try {
    kernel_quadrature(p, 4000.0, 200);
    FAIL() << "too few nodes accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Resolution);
  }
  EXPECT_THROW(regulated_kernel({0.0, 1.0, 0.01}), Error);
  EXPECT_THROW(regulated_kernel({1.0, 1.0, 0.0}), Error);
}

TEST(Classify, Bands) {
  EXPECT_EQ(classify(2.0, 1.0, 0.1), ConeClass::Spacelike);
  EXPECT_EQ(classify(1.0, 2.0, 0.1), ConeClass::Timelike);
  EXPECT_EQ(classify(1.0, -2.0, 0.1), ConeClass::Timelike);
  EXPECT_EQ(classify(1.0, 1.05, 0.1), ConeClass::Lightcone);
}

TEST(LightconeScan, DefaultGridPasses) {
  const auto t = lightcone_scan({0.5, 1.0, 2.0}, {0.0, 1.0, 2.0}, {0.04, 0.02, 0.01});
  EXPECT_EQ(t.rows.size(), 27u);
  EXPECT_EQ(t.points.size(), 9u);
  int on_cone = 0;
  for (const auto& p : t.points) {
    EXPECT_TRUE(p.pass) << p.r << "," << p.ct;
    on_cone += p.exactly_on_cone && p.ct != 0.0;
  }
  EXPECT_EQ(on_cone, 2);
  for (const auto& row : t.rows) EXPECT_TRUE(quadrature_agrees(row.closed_form, row.quadrature));
}

TEST(LightconeScan, RejectsBadEpsilons) {
  EXPECT_THROW(lightcone_scan({1.0}, {1.0}, {}), Error);
  EXPECT_THROW(lightcone_scan({1.0}, {1.0}, {0.01, 0.02}), Error);
  EXPECT_THROW(lightcone_scan({1.0}, {1.0}, {0.01, -0.02}), Error);
}

TEST(LightconeScan, CsvLayout) {
  const auto t = lightcone_scan({2.0}, {1.0}, {0.02, 0.01});
  std::ostringstream os;
  write_scan_csv(os, t);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "r,ct,epsilon,closed_form,quadrature,classification");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_NE(line.find(",spacelike"), std::string::npos);
  }
  EXPECT_EQ(rows, 2);
}
