#include "serddr/rotrot.hpp"
#include "serddr/verify_suite.hpp"

#include <gtest/gtest.h>

using namespace serddr;

TEST(RotRot, Dimensions) {
  const Mesh2D m = generate_family(MeshFamily::hexagonal, 2);
  for (int k = 1; k <= 3; ++k) {
    const RotRotComplex rr = build_rotrot(m, k);
    EXPECT_EQ(rr.n_v, rr.ddr.xgrad.dimension());
    EXPECT_EQ(rr.n_sigma_complement, m.n_edges() * k + m.n_vertices());
    EXPECT_EQ(rr.n_sigma, rr.ddr.xrot.dimension() + rr.n_sigma_complement);
    EXPECT_EQ(rr.n_w, m.n_vertices() + m.n_edges() * k + m.n_faces() * dim_poly(k));
    EXPECT_EQ(rr.w_natural.dimension(), rr.n_w);
    EXPECT_EQ(rr.sigma_edge_offset(0), rr.ddr.xrot.dimension());
    EXPECT_EQ(rr.sigma_vertex_offset(0), rr.ddr.xrot.dimension() + m.n_edges() * k);
  }
  EXPECT_THROW(build_rotrot(m, 0), std::invalid_argument);
}

TEST(RotRot, SplitOrderPermutation) {
  const Mesh2D m = generate_family(MeshFamily::triangular, 2);
  const RotRotComplex rr = build_rotrot(m, 2);
  const Matrix P(rr.w_to_natural);
  EXPECT_LT((P.transpose() * P - Matrix::Identity(rr.n_w, rr.n_w)).norm(), 1e-15);
  EXPECT_EQ(rr.w_to_natural.nonZeros(), rr.n_w);
}

TEST(RotRot, ComplexAndCommutation) {
  for (MeshFamily fam : {MeshFamily::cartesian, MeshFamily::triangular, MeshFamily::hexagonal, MeshFamily::annulus}) {
    const Mesh2D m = generate_family(fam, fam == MeshFamily::annulus ? 3 : 2);
    for (int k = 1; k <= 3; ++k) {
      const CheckReport r = verify_complex(m, k, ComplexKind::rotrot);
      EXPECT_TRUE(r.passed()) << to_string(fam) << " k=" << k << '\n' << r;
    }
  }
}

TEST(RotRot, SerendipityMapsMatchGenericConstruction) {
  const Mesh2D m = generate_family(MeshFamily::hexagonal, 2);
  for (int k = 1; k <= 3; ++k) {
    const RotRotComplex rr = build_rotrot(m, k);
    const SDDRComplex s = build_sddr(m, rr.ddr);
    const SerendipityBuild b = build_serendipity_rotrot(rr, s);
    const SerendipityRotRotMaps maps = serendipity_rotrot_maps(rr, s);
    EXPECT_LT((Matrix(maps.E_V) - b.v_maps.ext[0]).norm(), 1e-10);
    EXPECT_LT((Matrix(maps.E_sigma) - b.v_maps.ext[1]).norm(), 1e-10);
    const SerendipityRotRot sr = serendipity_rotrot(rr, s);
    EXPECT_LT((Matrix(sr.uGh) - b.Vh.diff(0)).norm(), 1e-10);
    EXPECT_LT((Matrix(sr.uRh) - b.Vh.diff(1)).norm(), 1e-10);
    EXPECT_LT(sr.n_sigma, rr.n_sigma);
  }
}

TEST(RotRot, SerendipityBuildPasses) {
  for (MeshFamily fam : {MeshFamily::cartesian, MeshFamily::triangular, MeshFamily::hexagonal, MeshFamily::annulus}) {
    const Mesh2D m = generate_family(fam, fam == MeshFamily::annulus ? 3 : 2);
    for (int k = 1; k <= 3; ++k) {
      const CheckReport r = verify_complex(m, k, ComplexKind::srotrot);
      EXPECT_TRUE(r.passed()) << to_string(fam) << " k=" << k << '\n' << r;
    }
  }
}

TEST(RotRot, InterpolatesOfSmoothFields) {
  const Mesh2D m = generate_family(MeshFamily::cartesian, 2);
  const RotRotComplex rr = build_rotrot(m, 2);
  // uGh of a gradient field is consistent with the Sigma interpolate of (grad q, 0)
  const ScalarFn q = [](const Point& x) { return std::sin(x.x()) * std::cos(2. * x.y()); };
  const VectorFn gq = [](const Point& x) {
    return Eigen::Vector2d(std::cos(x.x()) * std::cos(2. * x.y()), -2. * std::sin(x.x()) * std::sin(2. * x.y()));
  };
  const Eigen::VectorXd lhs = rr.uGh * interpolate_v(m, rr, q);
  const Eigen::VectorXd rhs = interpolate_sigma(m, rr, gq, [](const Point&) { return 0.; });
  EXPECT_LT((lhs - rhs).norm() / rhs.norm(), 1e-10);
}
