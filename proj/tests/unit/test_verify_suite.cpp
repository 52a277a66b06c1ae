#include "serddr/verify_suite.hpp"

#include <gtest/gtest.h>

using namespace serddr;

TEST(VerifySuite, ComplexNames) {
  for (ComplexKind k : {ComplexKind::ddr, ComplexKind::sddr, ComplexKind::rotrot, ComplexKind::srotrot, ComplexKind::all})
    EXPECT_EQ(parse_complex(to_string(k)), k);
  EXPECT_THROW(parse_complex("stokes"), std::invalid_argument);
}

TEST(VerifySuite, ExpectedBetti) {
  EXPECT_EQ(expected_betti(generate_family(MeshFamily::hexagonal, 2)), (std::array<int, 3>{1, 0, 0}));
  EXPECT_EQ(expected_betti(generate_family(MeshFamily::annulus, 3)), (std::array<int, 3>{1, 1, 0}));
}

TEST(VerifySuite, RandomPolynomialDerivatives) {
  std::mt19937_64 rng(3);
  const RandomPolynomial p = random_polynomial(rng, 3);
  EXPECT_EQ(p.coeffs.size(), 10u);
  const Point x(0.3, 0.8);
  const double eps = 1e-6;
  EXPECT_NEAR(p.eval(x, 1, 0), (p.value(x + Point(eps, 0.)) - p.value(x - Point(eps, 0.))) / (2 * eps), 1e-8);
  EXPECT_NEAR(p.eval(x, 0, 1), (p.value(x + Point(0., eps)) - p.value(x - Point(0., eps))) / (2 * eps), 1e-8);
  EXPECT_NEAR(p.value(Point(0.5, 0.5)), p.coeffs[0], 1e-15);
}

TEST(VerifySuite, AllComplexesPassOnAnnulus) {
  const CheckReport r = verify_complex(generate_family(MeshFamily::annulus, 3), 2, ComplexKind::all);
  EXPECT_TRUE(r.passed()) << r;
  bool saw_betti = false;
  for (const CheckLine& l : r.lines)
    if (l.name == "srotrot.betti" && l.index == 1) {
      saw_betti = true;
      EXPECT_EQ(l.detail, "betti=1 expected=1");
    }
  EXPECT_TRUE(saw_betti);
}

TEST(VerifySuite, SparseResidual) {
  SparseMatrix a(2, 1), b(1, 2);
  a.insert(0, 0) = 1.;
  a.insert(1, 0) = 2.;
  b.insert(0, 0) = 2.;
  b.insert(0, 1) = -1.;
  EXPECT_EQ(sparse_complex_residual(a, b), 0.);
  b.coeffRef(0, 1) = 1.;
  EXPECT_GT(sparse_complex_residual(a, b), 0.1);
}

TEST(VerifySuite, RejectsDegreeZeroForRotRot) {
  EXPECT_THROW(verify_complex(generate_family(MeshFamily::cartesian, 1), 0, ComplexKind::rotrot), std::invalid_argument);
  EXPECT_TRUE(verify_complex(generate_family(MeshFamily::cartesian, 2), 0, ComplexKind::sddr).passed());
}
