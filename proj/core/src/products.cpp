#include "serddr/products.hpp"

#include <algorithm>
#include <cmath>

namespace serddr {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void scatter(Triplets& t, const MatrixXd& M, const std::vector<int>& dofs) {
  for (int j = 0; j < M.cols(); ++j)
    for (int i = 0; i < M.rows(); ++i)
      if (M(i, j) != 0.) t.emplace_back(dofs[i], dofs[j], M(i, j));
}

SparseMatrix from_triplets(int n, const Triplets& t) {
  SparseMatrix M(n, n);
  M.setFromTriplets(t.begin(), t.end());
  return M;
}

MatrixXd vertex_values(const FaceContext& c, const Mesh2D& mesh, int degree) {
  std::vector<Point> pts;
  for (int v : mesh.face(c.face).vertices) pts.push_back(mesh.vertex(v));
  return eval_scalar(c.frame, degree, pts).val.transpose();  // m x dim
}

// Local scalar potential terms shared by the V and W products and by a_h.
// Returns the face potential gamma_F (P^{k+1}) and the terms built from it.
struct PotentialTerms {
  MatrixXd G, gammaF, face_int, edge_jump, vertex_jump;
};

PotentialTerms potential_terms(const Mesh2D& mesh, const FaceContext& c, int n) {
  PotentialTerms t;
  const int k = c.k, np = dim_poly(k + 1);
  t.G = face_gradient(mesh, c, n);
  t.gammaF = face_potential_from(mesh, c, t.G);
  const int ncols = static_cast<int>(t.G.cols());
  t.face_int = t.gammaF.transpose() * c.gram_scalar(k + 1, k + 1) * t.gammaF;
  const auto gam = local_edge_potentials(mesh, c);
  t.edge_jump = MatrixXd::Zero(ncols, ncols);
  for (int j = 0; j < c.m; ++j) {
    const auto& ed = c.edges[j];
    MatrixXd D = -ed.face_mono.topRows(np).transpose() * t.gammaF;
    D.leftCols(gam[j].cols()) += ed.edge_mono.transpose() * gam[j];
    t.edge_jump += D.transpose() * ed.w.asDiagonal() * D;
  }
  MatrixXd Dv = -vertex_values(c, mesh, k + 1) * t.gammaF;
  Dv.leftCols(c.m) += MatrixXd::Identity(c.m, c.m);
  t.vertex_jump = Dv.transpose() * Dv;
  return t;
}

}  // namespace

double norm(const SparseMatrix& M, const VectorXd& x) { return std::sqrt(std::max(0., x.dot(M * x))); }

SparseMatrix product_v(const Mesh2D& mesh, const RotRotComplex& rr) {
  const int k = rr.k;
  Triplets t;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const FaceContext c = make_face_context(mesh, f, k);
    const double h = c.frame.h;
    const PotentialTerms p = potential_terms(mesh, c, k - 1);
    scatter(t, p.face_int + h * p.edge_jump + h * h * p.vertex_jump, rr.ddr.xgrad.face_dofs(mesh, f));
  }
  return from_triplets(rr.n_v, t);
}

SparseMatrix product_w(const Mesh2D& mesh, const RotRotComplex& rr) {
  const int k = rr.k;
  Triplets t;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const FaceContext c = make_face_context(mesh, f, k);
    const double h = c.frame.h;
    const PotentialTerms p = potential_terms(mesh, c, k);
    const int nk = dim_poly(k);
    MatrixXd D = -project_scalar(c, k + 1, k) * p.gammaF;
    D.rightCols(nk) += MatrixXd::Identity(nk, nk);
    const MatrixXd face = D.transpose() * c.gram_scalar(k, k) * D;
    scatter(t, p.face_int + face + h * p.edge_jump + h * h * p.vertex_jump, rr.w_natural.face_dofs(mesh, f));
  }
  const SparseMatrix nat = from_triplets(rr.n_w, t);
  return rr.w_to_natural.transpose() * nat * rr.w_to_natural;
}

SparseMatrix product_sigma(const Mesh2D& mesh, const RotRotComplex& rr) {
  const int k = rr.k;
  const DofLayout& xr = rr.ddr.xrot;
  Triplets t;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const FaceContext c = make_face_context(mesh, f, k);
    const double h = c.frame.h;
    const MatrixXd gt = tangential_potential(c, k);
    MatrixXd loc = gt.transpose() * c.gram_pk() * gt;
    for (int j = 0; j < c.m; ++j) {
      const auto& ed = c.edges[j];
      MatrixXd D = -(ed.pk.x * ed.tangent.x() + ed.pk.y * ed.tangent.y()).transpose() * gt;
      D.middleCols(j * (k + 1), k + 1) += ed.edge_mono.topRows(k + 1).transpose();
      loc += h * D.transpose() * ed.w.asDiagonal() * D;
    }
    scatter(t, loc, xr.face_dofs(mesh, f));
  }
  // complement blocks, accumulated face by face: h_E * L2(E) on edges, h_F^2 on vertices
  std::vector<MatrixXd> edge_mass(mesh.n_edges());
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const QuadRule q = edge_quadrature(mesh, e, 2 * k);
    MatrixXd val;
    eval_edge(edge_frame(mesh, e), k - 1, q.nodes, val);
    edge_mass[e] = mesh.edge(e).length * gram(val, val, weights_vector(q));
  }
  for (const Face& face : mesh.faces()) {
    for (int e : face.edges) {
      std::vector<int> dofs;
      for (int i = 0; i < k; ++i) dofs.push_back(rr.sigma_edge_offset(e) + i);
      scatter(t, edge_mass[e], dofs);
    }
    for (int v : face.vertices)
      t.emplace_back(rr.sigma_vertex_offset(v), rr.sigma_vertex_offset(v), face.diameter * face.diameter);
  }
  return from_triplets(rr.n_sigma, t);
}

SparseMatrix rotrot_form(const Mesh2D& mesh, const RotRotComplex& rr) {
  const int k = rr.k;
  Triplets t;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const FaceContext c = make_face_context(mesh, f, k);
    const double h = c.frame.h;
    const PotentialTerms p = potential_terms(mesh, c, k);
    const int nk = dim_poly(k);
    MatrixXd D = -project_scalar(c, k + 1, k) * p.gammaF;
    D.rightCols(nk) += MatrixXd::Identity(nk, nk);
    const MatrixXd loc = p.G.transpose() * c.gram_pk() * p.G + D.transpose() * c.gram_scalar(k, k) * D / (h * h) +
                         p.edge_jump / h + p.vertex_jump;
    scatter(t, loc, rr.w_natural.face_dofs(mesh, f));
  }
  const SparseMatrix nat = from_triplets(rr.n_w, t);
  const SparseMatrix R = rr.w_to_natural * rr.uRh;
  return SparseMatrix(R.transpose() * nat * R);
}

DiscreteProducts build_products(const Mesh2D& mesh, const RotRotComplex& rr) {
  return {product_v(mesh, rr), product_sigma(mesh, rr), product_w(mesh, rr), rotrot_form(mesh, rr)};
}

}  // namespace serddr
