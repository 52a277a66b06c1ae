#include "serddr/manufactured.hpp"
#include "serddr/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace serddr;

// Reference values from an independent symbolic differentiation of phi = sin^2(pi x) sin^2(pi y).
TEST(Manufactured, OracleValues) {
  const ManufacturedSolution s = quadrot_solution();
  const Point a(0.3, 0.7), b(0.1, 0.25), c(0.5, 0.5);
  EXPECT_NEAR(s.f(a).x(), -5204.8239286023516981, 1e-9);
  EXPECT_NEAR(s.f(a).y(), -5207.8117607670932540, 1e-9);
  EXPECT_NEAR(s.rot_u(a), 7.9846776882390659823, 1e-12);
  EXPECT_NEAR(s.u(a).x(), -1.9555615399933921615, 1e-13);
  EXPECT_NEAR(s.u(a).y(), -1.9555615399933921615, 1e-13);
  EXPECT_NEAR(s.f(b).x(), -5474.9330042295344283, 1e-9);
  EXPECT_NEAR(s.f(b).y(), -1441.1035774085741136, 1e-9);
  EXPECT_NEAR(s.rot_u(b), -7.9846776882390659823, 1e-12);
  EXPECT_NEAR(s.u(b).x(), 0.29999540371608166528, 1e-13);
  EXPECT_NEAR(s.u(b).y(), -0.92329091524522837863, 1e-13);
  EXPECT_NEAR(s.f(c).norm(), 0., 1e-9);
  EXPECT_NEAR(s.rot_u(c), 39.478417604357434475, 1e-11);
}

TEST(Manufactured, DivergenceFreeAndClamped) {
  const ManufacturedSolution s = quadrot_solution();
  const double eps = 1e-5;
  for (const Point& x : {Point(0.2, 0.3), Point(0.61, 0.17), Point(0.9, 0.8)}) {
    const double div = (s.u(x + Point(eps, 0.)).x() - s.u(x - Point(eps, 0.)).x() + s.u(x + Point(0., eps)).y() -
                        s.u(x - Point(0., eps)).y()) /
                       (2. * eps);
    EXPECT_NEAR(div, 0., 1e-8);
    const double rot = (s.u(x + Point(eps, 0.)).y() - s.u(x - Point(eps, 0.)).y() - s.u(x + Point(0., eps)).x() +
                        s.u(x - Point(0., eps)).x()) /
                       (2. * eps);
    EXPECT_NEAR(rot, s.rot_u(x), 1e-6);
    const Eigen::Vector2d gp((s.p(x + Point(eps, 0.)) - s.p(x - Point(eps, 0.))) / (2. * eps),
                             (s.p(x + Point(0., eps)) - s.p(x - Point(0., eps))) / (2. * eps));
    EXPECT_LT((gp - s.grad_p(x)).norm(), 1e-8);
  }
  for (double t : {0., 0.25, 0.5, 0.9}) {
    EXPECT_LT(s.u(Point(t, 0.)).norm(), 1e-15);
    EXPECT_LT(s.u(Point(1., t)).norm(), 1e-14);
    // rot u = -Laplacian(phi)
    EXPECT_NEAR(s.rot_u(Point(0., t)), -2. * std::numbers::pi * std::numbers::pi * std::pow(std::sin(std::numbers::pi * t), 2), 1e-12);
  }
}

TEST(Manufactured, PressureHasZeroMean) {
  const Mesh2D m = generate_family(MeshFamily::cartesian, 3);
  const ManufacturedSolution s = quadrot_solution();
  double mean = 0.;
  for (int f = 0; f < m.n_faces(); ++f) {
    const QuadRule q = face_quadrature(m, f, 12);
    for (int i = 0; i < q.size(); ++i) mean += q.weights[i] * s.p(q.nodes[i]);
  }
  EXPECT_NEAR(mean, 0., 1e-14);
}
