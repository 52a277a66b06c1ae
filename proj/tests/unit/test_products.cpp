#include "serddr/products.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

using namespace serddr;

namespace {

double asymmetry(const SparseMatrix& M) {
  const SparseMatrix d = M - SparseMatrix(M.transpose());
  return d.norm() / std::max(1e-300, M.norm());
}

double min_eigenvalue(const SparseMatrix& M) {
  Eigen::SelfAdjointEigenSolver<Matrix> es{Matrix(M)};
  return es.eigenvalues().minCoeff() / es.eigenvalues().maxCoeff();
}

}  // namespace

TEST(Products, SymmetricAndDefinite) {
  for (MeshFamily fam : {MeshFamily::cartesian, MeshFamily::triangular, MeshFamily::hexagonal}) {
    const Mesh2D m = generate_family(fam, 2);
    for (int k = 1; k <= 3; ++k) {
      const RotRotComplex rr = build_rotrot(m, k);
      const DiscreteProducts p = build_products(m, rr);
      SCOPED_TRACE(to_string(fam) + " k=" + std::to_string(k));
      for (const SparseMatrix* M : {&p.V, &p.Sigma, &p.W, &p.rotrot}) EXPECT_LT(asymmetry(*M), 1e-12);
      EXPECT_GT(min_eigenvalue(p.V), 1e-12);
      EXPECT_GT(min_eigenvalue(p.Sigma), 1e-12);
      EXPECT_GT(min_eigenvalue(p.W), 1e-12);
      EXPECT_GT(min_eigenvalue(p.rotrot), -1e-12);
    }
  }
}

TEST(Products, NormOfConstantIsArea) {
  for (MeshFamily fam : {MeshFamily::cartesian, MeshFamily::hexagonal, MeshFamily::annulus}) {
    const Mesh2D m = generate_family(fam, 3);
    const RotRotComplex rr = build_rotrot(m, 2);
    const SparseMatrix V = product_v(m, rr);
    const Eigen::VectorXd one = interpolate_v(m, rr, [](const Point&) { return 1.; });
    EXPECT_NEAR(norm(V, one) * norm(V, one), m.total_area(), 1e-12);
    EXPECT_EQ(norm(V, Eigen::VectorXd::Zero(rr.n_v)), 0.);
  }
}

TEST(Products, NormsOfInterpolatesAreStable) {
  const ScalarFn q = [](const Point& x) { return std::exp(x.x()) * std::sin(3. * x.y()); };
  const VectorFn v = [](const Point& x) { return Eigen::Vector2d(x.y() * std::cos(x.x()), std::sin(x.x() + x.y())); };
  const ScalarFn rv = [](const Point& x) { return std::cos(x.x() + x.y()) - std::cos(x.x()); };
  for (MeshFamily fam : {MeshFamily::cartesian, MeshFamily::triangular, MeshFamily::hexagonal}) {
    std::vector<double> nq, nv;
    for (int level = 4; level <= 5; ++level) {
      const Mesh2D m = generate_family(fam, level);
      const RotRotComplex rr = build_rotrot(m, 2);
      nq.push_back(norm(product_v(m, rr), interpolate_v(m, rr, q)));
      nv.push_back(norm(product_sigma(m, rr), interpolate_sigma(m, rr, v, rv)));
    }
    EXPECT_NEAR(nq[1] / nq[0], 1., 0.02) << to_string(fam);
    EXPECT_NEAR(nv[1] / nv[0], 1., 0.02) << to_string(fam);
  }
}

TEST(Products, RotRotFormVanishesOnGradients) {
  const Mesh2D m = generate_family(MeshFamily::hexagonal, 2);
  const RotRotComplex rr = build_rotrot(m, 2);
  const SparseMatrix A = rotrot_form(m, rr);
  const Matrix AG = Matrix(A) * Matrix(rr.uGh);
  EXPECT_LT(AG.norm() / Matrix(A).norm(), 1e-12);
}
