#include "serddr/ddr2d.hpp"
#include "serddr/sddr2d.hpp"
#include "serddr/verify_suite.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace serddr;

TEST(DDR, Dimensions) {
  const Mesh2D m = generate_family(MeshFamily::hexagonal, 2);
  for (int k = 0; k <= 3; ++k) {
    const DDRComplex d = build_ddr(m, k);
    EXPECT_EQ(d.xgrad.dimension(), m.n_vertices() + m.n_edges() * k + m.n_faces() * dim_poly(k - 1));
    EXPECT_EQ(d.xrot.dimension(), m.n_edges() * (k + 1) + m.n_faces() * (dim_R(k - 1) + dim_Rc(k)));
    EXPECT_EQ(d.xl.dimension(), m.n_faces() * dim_poly(k));
    EXPECT_EQ(d.G.rows(), d.xrot.dimension());
    EXPECT_EQ(d.rot.cols(), d.xrot.dimension());
  }
}

TEST(DDR, EdgeOperators) {
  // the edge potential of a cubic from its endpoint values and P^1 moments is the cubic itself
  const Mesh2D m = cells::square_cell();
  const int k = 2;
  const EdgeFrame fr = edge_frame(m, 0);
  const Eigen::MatrixXd P = edge_potential(m, 0, k);
  ASSERT_EQ(P.rows(), k + 2);
  // q(s) = s^3 on the scaled coordinate: endpoint values -1/8, 1/8; moments with 1/h_E weights
  Eigen::VectorXd data(k + 2);
  const Eigen::VectorXd moments = project_edge(m, 0, k - 1, [&](const Point& x) {
    const double s = fr.coordinate(x);
    return s * s * s;
  }, 8);
  data << -0.125, 0.125, moments;
  const Eigen::VectorXd coef = P * data;
  EXPECT_NEAR(coef(3), 1., 1e-12);
  EXPECT_NEAR(coef.head(3).norm(), 0., 1e-12);
  const Eigen::MatrixXd D = edge_gradient(m, 0, k);
  const Eigen::VectorXd dcoef = D * data;  // 3 s^2 / h
  EXPECT_NEAR(dcoef(2), 3. / m.edge(0).length, 1e-12);
}

class Consistency : public ::testing::TestWithParam<int> {};

TEST_P(Consistency, LocalOperatorsReproducePolynomials) {
  const int k = GetParam();
  std::mt19937_64 rng(2024 + k);
  for (const auto& cell : cells::reference_cells()) {
    const cells::ConsistencyErrors e = cells::local_consistency(cell.mesh, k, rng, 10);
    SCOPED_TRACE(cell.name + " k=" + std::to_string(k));
    EXPECT_LT(e.gamma_E, 1e-10);
    EXPECT_LT(e.gamma_F, 1e-10);
    EXPECT_LT(e.G_F, 1e-10);
    EXPECT_LT(e.C_F, 1e-10);
    EXPECT_LT(e.gamma_t, 1e-10);
    EXPECT_LT(e.S_grad, 1e-10);
    EXPECT_LT(e.S_rot, 1e-10);
  }
}

INSTANTIATE_TEST_SUITE_P(Degrees, Consistency, ::testing::Values(0, 1, 2, 3));

TEST(DDR, GlobalCommutation) {
  for (MeshFamily fam : {MeshFamily::cartesian, MeshFamily::triangular, MeshFamily::hexagonal}) {
    const Mesh2D m = generate_family(fam, 2);
    for (int k = 0; k <= 3; ++k) {
      VerifyOptions o;
      o.dense = false;
      o.seed = 11;
      const CheckReport r = verify_complex(m, k, ComplexKind::ddr, o);
      EXPECT_TRUE(r.passed()) << to_string(fam) << " k=" << k << '\n' << r;
    }
  }
}

TEST(DDR, GradientOfConstantsVanishes) {
  const Mesh2D m = generate_family(MeshFamily::hexagonal, 2);
  for (int k = 0; k <= 3; ++k) {
    const DDRComplex d = build_ddr(m, k);
    const Eigen::VectorXd one = interpolate_grad(m, d.degrees, [](const Point&) { return 1.; });
    EXPECT_LT((d.G * one).norm(), 1e-14 * d.G.norm() * one.norm());
  }
}

TEST(DDR, RotorOfGradientsVanishes) {
  const Mesh2D m = generate_family(MeshFamily::triangular, 2);
  const DDRComplex d = build_ddr(m, 2);
  const Eigen::VectorXd g = interpolate_rot(m, d.degrees, [](const Point& x) {
    return Eigen::Vector2d(std::cos(x.x()) * std::exp(x.y()), std::sin(x.x()) * std::exp(x.y()));
  });
  EXPECT_LT((d.rot * g).norm(), 1e-10);
}

TEST(DDR, GatherFollowsLocalNumbering) {
  const Mesh2D m = generate_family(MeshFamily::cartesian, 2);
  const DDRComplex d = build_ddr(m, 1);
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(d.xgrad.dimension(), 0., d.xgrad.dimension() - 1.);
  const std::vector<int> dofs = d.xgrad.face_dofs(m, 3);
  const Eigen::VectorXd g = gather(v, dofs);
  for (size_t i = 0; i < dofs.size(); ++i) EXPECT_EQ(g(i), dofs[i]);
  EXPECT_EQ(static_cast<int>(dofs.size()), d.xgrad.local_dimension(m, 3));
}
