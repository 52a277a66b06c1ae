#include "serddr/polybasis.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace serddr;

TEST(PolyBasis, Dimensions) {
  EXPECT_EQ(dim_poly(-1), 0);
  EXPECT_EQ(dim_poly(0), 1);
  EXPECT_EQ(dim_poly(3), 10);
  EXPECT_EQ(dim_poly_edge(2), 3);
  for (int d = 0; d <= 4; ++d) {
    // P^d vector = R^d + Rc^d (Koszul decomposition), G^d + Gc^d likewise
    EXPECT_EQ(dim_R(d) + dim_Rc(d), 2 * dim_poly(d));
    EXPECT_EQ(dimension({PolyKind::G, d}) + dimension({PolyKind::Gc, d}), 2 * dim_poly(d));
    EXPECT_EQ(dimension({PolyKind::P_vector, d}), 2 * dim_poly(d));
  }
  EXPECT_EQ(dim_Rc(0), 0);
}

TEST(PolyBasis, MonomialOrdering) {
  const auto& e = monomial_exponents(3);
  ASSERT_EQ(static_cast<int>(e.size()), 10);
  for (size_t i = 1; i < e.size(); ++i) EXPECT_LE(e[i - 1][0] + e[i - 1][1], e[i][0] + e[i][1]);
  // hierarchical prefix
  const auto& e2 = monomial_exponents(2);
  for (size_t i = 0; i < e2.size(); ++i) EXPECT_EQ(e2[i], e[i]);
}

TEST(PolyBasis, KoszulSpacesAreDivergenceOrRotFree) {
  const Mesh2D m = cells::hexagon_cell();
  const FaceFrame fr = face_frame(m, 0);
  const QuadRule q = face_quadrature(m, 0, 6);
  for (int d = 0; d <= 3; ++d) {
    const VectorTable R = eval_vector(fr, PolyKind::R, d, q.nodes);
    const VectorTable G = eval_vector(fr, PolyKind::G, d, q.nodes);
    EXPECT_LT(R.div.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(G.rot.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PolyBasis, DerivativeTablesMatchFiniteDifferences) {
  const Mesh2D m = cells::triangle_cell();
  const FaceFrame fr = face_frame(m, 0);
  const Point x = m.face(0).centroid;
  const double eps = 1e-6;
  const std::vector<Point> pts{x, x + Point(eps, 0.), x - Point(eps, 0.), x + Point(0., eps), x - Point(0., eps)};
  const ScalarTable t = eval_scalar(fr, 3, pts);
  for (int i = 0; i < t.val.rows(); ++i) {
    EXPECT_NEAR(t.dx(i, 0), (t.val(i, 1) - t.val(i, 2)) / (2 * eps), 1e-6);
    EXPECT_NEAR(t.dy(i, 0), (t.val(i, 3) - t.val(i, 4)) / (2 * eps), 1e-6);
  }
  for (PolyKind kind : {PolyKind::P_vector, PolyKind::R, PolyKind::Rc, PolyKind::G, PolyKind::Gc}) {
    const VectorTable v = eval_vector(fr, kind, 2, pts);
    for (int i = 0; i < v.size(); ++i) {
      const double dxx = (v.x(i, 1) - v.x(i, 2)) / (2 * eps), dyy = (v.y(i, 3) - v.y(i, 4)) / (2 * eps);
      const double dxy = (v.y(i, 1) - v.y(i, 2)) / (2 * eps), dyx = (v.x(i, 3) - v.x(i, 4)) / (2 * eps);
      EXPECT_NEAR(v.div(i, 0), dxx + dyy, 1e-6);
      EXPECT_NEAR(v.rot(i, 0), dxy - dyx, 1e-6);
    }
  }
}

TEST(PolyBasis, ProjectionReproducesPolynomials) {
  for (const auto& c : cells::reference_cells()) {
    const FaceFrame fr = face_frame(c.mesh, 0);
    const ScalarFn q = [](const Point& x) { return 1. + x.x() - 2. * x.y() * x.y() + x.x() * x.x() * x.y(); };
    const Eigen::VectorXd coef = project(c.mesh, 0, {PolyKind::P_scalar, 3}, q, 8);
    const VectorFn v = [](const Point& x) { return Eigen::Vector2d(x.y() * x.y(), 1. - x.x() * x.y()); };
    const Eigen::VectorXd vcoef = project(c.mesh, 0, {PolyKind::P_vector, 2}, v, 8);
    for (const Point& x : face_quadrature(c.mesh, 0, 4).nodes) {
      EXPECT_NEAR(eval_scalar_poly(fr, 3, coef, x), q(x), 1e-12) << c.name;
      EXPECT_LT((eval_vector_poly(fr, PolyKind::P_vector, 2, vcoef, x) - v(x)).norm(), 1e-12) << c.name;
    }
  }
}

TEST(PolyBasis, EdgeBasisIsScaled) {
  const Mesh2D m = cells::square_cell();
  for (int e = 0; e < m.n_edges(); ++e) {
    const EdgeFrame fr = edge_frame(m, e);
    const Edge& edge = m.edge(e);
    EXPECT_NEAR(fr.coordinate(m.vertex(edge.vertices[0])), -0.5, 1e-15);
    EXPECT_NEAR(fr.coordinate(m.vertex(edge.vertices[1])), 0.5, 1e-15);
    Eigen::MatrixXd val, ds;
    eval_edge(fr, 2, {edge.midpoint}, val, &ds);
    EXPECT_NEAR(val(0, 0), 1., 1e-15);
    EXPECT_NEAR(ds(1, 0), 1. / edge.length, 1e-14);
  }
}

TEST(PolyBasis, GramCache) {
  const Mesh2D m = cells::square_cell();
  BasisMatrixCache cache(m);
  const auto& a = cache.get(0, {PolyKind::P_scalar, 2}, 4);
  const auto& b = cache.get(0, {PolyKind::P_scalar, 2}, 4);
  EXPECT_EQ(&a, &b);
  EXPECT_EQ(a.gram.rows(), 6);
  EXPECT_LT((a.gram - a.gram.transpose()).norm(), 1e-15);
  EXPECT_NEAR(a.gram(0, 0), 1., 1e-14);
}
