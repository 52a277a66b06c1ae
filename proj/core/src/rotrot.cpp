#include "serddr/rotrot.hpp"

#include <stdexcept>

namespace serddr {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SparseMatrix from_triplets(int rows, int cols, const Triplets& t) {
  SparseMatrix M(rows, cols);
  M.setFromTriplets(t.begin(), t.end());
  return M;
}

void append(Triplets& t, const SparseMatrix& M, int row0, int col0) {
  for (int j = 0; j < M.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(M, j); it; ++it) t.emplace_back(row0 + it.row(), col0 + it.col(), it.value());
}

void identity(Triplets& t, int n, int row0, int col0) {
  for (int i = 0; i < n; ++i) t.emplace_back(row0 + i, col0 + i, 1.);
}

}  // namespace

RotRotComplex build_rotrot(const Mesh2D& mesh, int k) { return build_rotrot(mesh, build_ddr(mesh, k)); }

RotRotComplex build_rotrot(const Mesh2D& mesh, const DDRComplex& ddr) {
  const int k = ddr.degrees.k;
  if (k < 1) throw std::invalid_argument("the rot-rot complex needs k >= 1");
  RotRotComplex rr;
  rr.k = k;
  rr.ddr = ddr;
  rr.w_natural = xgrad_layout(mesh, DegreeVectors::uniform(mesh, k, k, k));
  const int nx = ddr.xrot.dimension(), nl = ddr.xl.dimension();
  const int nce = mesh.n_edges() * k, ncv = mesh.n_vertices();
  rr.n_v = ddr.xgrad.dimension();
  rr.n_sigma_complement = nce + ncv;
  rr.n_sigma = nx + rr.n_sigma_complement;
  rr.n_w = nl + nce + ncv;

  Triplets tg;
  append(tg, ddr.G, 0, 0);
  rr.uGh = from_triplets(rr.n_sigma, rr.n_v, tg);
  Triplets tr;
  append(tr, ddr.rot, 0, 0);
  identity(tr, nce + ncv, nl, nx);
  rr.uRh = from_triplets(rr.n_w, rr.n_sigma, tr);

  Triplets tp;
  for (int f = 0; f < mesh.n_faces(); ++f)
    identity(tp, dim_poly(k), rr.w_natural.face_offset(f), ddr.xl.face_offset(f));
  identity(tp, nce, rr.w_natural.edge_offset(0), nl);
  identity(tp, ncv, rr.w_natural.vertex_offset(0), nl + nce);
  rr.w_to_natural = from_triplets(rr.n_w, rr.n_w, tp);
  return rr;
}

FiniteComplex to_finite_complex(const RotRotComplex& rr) {
  return FiniteComplex({rr.n_v, rr.n_sigma, rr.n_w}, {MatrixXd(rr.uGh), MatrixXd(rr.uRh)});
}

MorphismPair rotrot_morphisms(const RotRotComplex& rr) {
  const int dims_small[3] = {rr.ddr.xgrad.dimension(), rr.ddr.xrot.dimension(), rr.ddr.xl.dimension()};
  const int dims_big[3] = {rr.n_v, rr.n_sigma, rr.n_w};
  MorphismPair p;
  for (int i = 0; i < 3; ++i) {
    p.ext.push_back(MatrixXd::Identity(dims_big[i], dims_small[i]));
    p.red.push_back(MatrixXd::Identity(dims_small[i], dims_big[i]));
  }
  return p;
}

std::vector<Matrix> rotrot_complement_bases(const RotRotComplex& rr) {
  const int dims_small[3] = {rr.ddr.xgrad.dimension(), rr.ddr.xrot.dimension(), rr.ddr.xl.dimension()};
  const int dims_big[3] = {rr.n_v, rr.n_sigma, rr.n_w};
  std::vector<Matrix> out;
  for (int i = 0; i < 3; ++i) {
    const int nc = dims_big[i] - dims_small[i];
    Matrix K = Matrix::Zero(dims_big[i], nc);
    K.bottomRows(nc).setIdentity();
    out.push_back(K);
  }
  return out;
}

SerendipityBuild build_serendipity_rotrot(const RotRotComplex& rr, const SDDRComplex& s) {
  return build_enhanced_serendipity(to_finite_complex(rr.ddr), to_finite_complex(s), to_finite_complex(rr),
                                    sddr_maps(s), rotrot_morphisms(rr), rotrot_complement_bases(rr));
}

SerendipityRotRotMaps serendipity_rotrot_maps(const RotRotComplex& rr, const SDDRComplex& s) {
  SerendipityRotRotMaps m;
  m.E_V = s.E_grad;
  Triplets t;
  append(t, s.E_rot, 0, 0);
  identity(t, rr.n_sigma_complement, rr.ddr.xrot.dimension(), s.sxrot.dimension());
  m.E_sigma = from_triplets(rr.n_sigma, s.sxrot.dimension() + rr.n_sigma_complement, t);
  return m;
}

SerendipityRotRot serendipity_rotrot(const RotRotComplex& rr, const SDDRComplex& s) {
  SerendipityRotRot out;
  const int nc = rr.n_sigma_complement, nl = s.xl.dimension();
  out.n_v = s.sxgrad.dimension();
  out.n_sigma = s.sxrot.dimension() + nc;
  out.n_w = rr.n_w;
  Triplets tg;
  append(tg, s.G, 0, 0);
  out.uGh = from_triplets(out.n_sigma, out.n_v, tg);
  Triplets tr;
  append(tr, s.rot, 0, 0);
  identity(tr, nc, nl, s.sxrot.dimension());
  out.uRh = from_triplets(out.n_w, out.n_sigma, tr);
  return out;
}

VectorXd interpolate_v(const Mesh2D& mesh, const RotRotComplex& rr, const ScalarFn& q) {
  return interpolate_grad(mesh, rr.ddr.degrees, q);
}

VectorXd interpolate_sigma(const Mesh2D& mesh, const RotRotComplex& rr, const VectorFn& v, const ScalarFn& rot_v) {
  const int k = rr.k, nx = rr.ddr.xrot.dimension();
  VectorXd out(rr.n_sigma);
  out.head(nx) = interpolate_rot(mesh, rr.ddr.degrees, v);
  for (int e = 0; e < mesh.n_edges(); ++e)
    out.segment(nx + e * k, k) = project_edge(mesh, e, k - 1, rot_v, interpolation_order(k));
  for (int v = 0; v < mesh.n_vertices(); ++v) out(nx + mesh.n_edges() * k + v) = rot_v(mesh.vertex(v));
  return out;
}

VectorXd interpolate_w(const Mesh2D& mesh, const RotRotComplex& rr, const ScalarFn& w) {
  const VectorXd nat = interpolate_grad(mesh, DegreeVectors::uniform(mesh, rr.k, rr.k, rr.k), w);
  return rr.w_to_natural.transpose() * nat;
}

}  // namespace serddr
