#include "serddr/ddr2d.hpp"

#include <cmath>
#include <stdexcept>

namespace serddr {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd spd_solve(const MatrixXd& M, const MatrixXd& rhs) {
  if (M.rows() == 0) return MatrixXd(0, rhs.cols());
  Eigen::LLT<MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw std::runtime_error("singular Gram matrix (degenerate face)");
  return llt.solve(rhs);
}

MatrixXd square_solve(const MatrixXd& A, const MatrixXd& rhs) {
  if (A.rows() == 0) return MatrixXd(0, rhs.cols());
  Eigen::FullPivLU<MatrixXd> lu(A);
  if (!lu.isInvertible()) throw std::runtime_error("singular local system (degenerate face)");
  return lu.solve(rhs);
}

// Normal component of a vector table at edge nodes.
MatrixXd normal_component(const VectorTable& t, const Point& n) { return t.x * n.x() + t.y * n.y(); }

}  // namespace

DegreeVectors DegreeVectors::standard(const Mesh2D& mesh, int k) { return uniform(mesh, k, k - 1, k); }

DegreeVectors DegreeVectors::uniform(const Mesh2D& mesh, int k, int n, int s) {
  if (k < 0) throw std::invalid_argument("polynomial degree must be >= 0");
  DegreeVectors dv;
  dv.k = k;
  dv.n.assign(mesh.n_faces(), std::max(n, -1));
  dv.s.assign(mesh.n_faces(), std::max(s, -1));
  return dv;
}

DofLayout xgrad_layout(const Mesh2D& mesh, const DegreeVectors& dv) {
  std::vector<int> pf;
  for (int n : dv.n) pf.push_back(dim_poly(n));
  return DofLayout(mesh, 1, dv.k, pf);
}

DofLayout xrot_layout(const Mesh2D& mesh, const DegreeVectors& dv) {
  std::vector<int> pf;
  for (int s : dv.s) pf.push_back(dim_R(dv.k - 1) + dim_Rc(s));
  return DofLayout(mesh, 0, dv.k + 1, pf);
}

DofLayout xl_layout(const Mesh2D& mesh, int k) {
  return DofLayout(mesh, 0, 0, std::vector<int>(mesh.n_faces(), dim_poly(k)));
}

MatrixXd edge_derivative(double h, int d) {
  MatrixXd D = MatrixXd::Zero(dim_poly_edge(d - 1), dim_poly_edge(d));
  for (int i = 1; i <= d; ++i) D(i - 1, i) = i / h;
  return D;
}

MatrixXd edge_potential(const Mesh2D& mesh, int e, int k) {
  const EdgeFrame fr = edge_frame(mesh, e);
  const QuadRule q = edge_quadrature(mesh, e, 2 * k + 4);
  MatrixXd val;
  eval_edge(fr, k + 1, q.nodes, val);
  const VectorXd w = weights_vector(q);
  const int n = k + 2;
  MatrixXd A(n, n), B = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    A(0, i) = std::pow(-0.5, i);
    A(1, i) = std::pow(0.5, i);
  }
  if (k > 0) {
    A.bottomRows(k) = val.topRows(k) * w.asDiagonal() * val.transpose();
    B.bottomRightCorner(k, k) = val.topRows(k) * w.asDiagonal() * val.topRows(k).transpose();
  }
  B(0, 0) = 1.;
  B(1, 1) = 1.;
  return square_solve(A, B);
}

MatrixXd edge_gradient(const Mesh2D& mesh, int e, int k) {
  return edge_derivative(mesh.edge(e).length, k + 1) * edge_potential(mesh, e, k);
}

MatrixXd FaceContext::gram_scalar(int d1, int d2) const {
  return mono.val.topRows(dim_poly(d1)) * w.asDiagonal() * mono.val.topRows(dim_poly(d2)).transpose();
}

MatrixXd FaceContext::gram_pk() const { return gram(pk, pk, w); }

MatrixXd FaceContext::gram_rc(int d1, int d2) const {
  return gram(head_rows(rc, dim_Rc(d1)), head_rows(rc, dim_Rc(d2)), w);
}

MatrixXd FaceContext::gram_rc_pk(int d) const { return gram(head_rows(rc, dim_Rc(d)), pk, w); }

VectorTable FaceContext::head_rows(const VectorTable& t, int n) {
  return {t.x.topRows(n), t.y.topRows(n), t.div.topRows(n), t.rot.topRows(n)};
}

FaceContext make_face_context(const Mesh2D& mesh, int f, int k) {
  const Face& face = mesh.face(f);
  FaceContext c;
  c.face = f;
  c.k = k;
  c.m = face.n_edges();
  c.frame = face_frame(mesh, f);
  const int order = 2 * k + 4;
  const QuadRule q = face_quadrature(mesh, f, order);
  c.nodes = q.nodes;
  c.w = weights_vector(q);
  c.mono = eval_scalar(c.frame, k + 2, c.nodes);
  c.pk = eval_vector(c.frame, PolyKind::P_vector, k, c.nodes);
  c.rk1 = eval_vector(c.frame, PolyKind::R, k - 1, c.nodes);
  c.rk = eval_vector(c.frame, PolyKind::R, k, c.nodes);
  c.rc = eval_vector(c.frame, PolyKind::Rc, k + 2, c.nodes);
  c.gc = eval_vector(c.frame, PolyKind::Gc, k, c.nodes);
  for (int j = 0; j < c.m; ++j) {
    FaceContext::EdgeData ed;
    ed.edge = face.edges[j];
    ed.omega = face.orientations[j];
    ed.normal = face.normals[j];
    ed.tangent = mesh.edge(ed.edge).tangent;
    ed.frame = edge_frame(mesh, ed.edge);
    const QuadRule qe = edge_quadrature(mesh, ed.edge, order);
    ed.nodes = qe.nodes;
    ed.w = weights_vector(qe);
    ed.face_mono = eval_scalar(c.frame, k + 2, ed.nodes).val;
    ed.pk = eval_vector(c.frame, PolyKind::P_vector, k, ed.nodes);
    ed.rc = eval_vector(c.frame, PolyKind::Rc, k + 2, ed.nodes);
    eval_edge(ed.frame, k + 1, ed.nodes, ed.edge_mono);
    ed.tail = ed.omega > 0 ? j : (j + 1) % c.m;
    ed.head = ed.omega > 0 ? (j + 1) % c.m : j;
    c.edges.push_back(std::move(ed));
  }
  return c;
}

std::vector<MatrixXd> local_edge_potentials(const Mesh2D& mesh, const FaceContext& c) {
  const int k = c.k, nb = xgrad_boundary_size(c);
  std::vector<MatrixXd> out;
  for (int j = 0; j < c.m; ++j) {
    const auto& ed = c.edges[j];
    const MatrixXd g = edge_potential(mesh, ed.edge, k);
    MatrixXd L = MatrixXd::Zero(k + 2, nb);
    L.col(ed.tail) += g.col(0);
    L.col(ed.head) += g.col(1);
    if (k > 0) L.middleCols(c.m + j * k, k) = g.rightCols(k);
    out.push_back(std::move(L));
  }
  return out;
}

MatrixXd face_gradient(const Mesh2D& mesh, const FaceContext& c, int n) {
  const int nb = xgrad_boundary_size(c), nf = dim_poly(n);
  const int nv = c.pk.size();
  MatrixXd rhs = MatrixXd::Zero(nv, nb + nf);
  rhs.rightCols(nf) = -c.pk.div * c.w.asDiagonal() * c.mono.val.topRows(nf).transpose();
  const auto gam = local_edge_potentials(mesh, c);
  for (int j = 0; j < c.m; ++j) {
    const auto& ed = c.edges[j];
    const MatrixXd B = normal_component(ed.pk, ed.normal) * ed.w.asDiagonal() * ed.edge_mono.transpose();
    rhs.leftCols(nb) += ed.omega * B * gam[j];
  }
  return spd_solve(c.gram_pk(), rhs);
}

MatrixXd face_potential_from(const Mesh2D& mesh, const FaceContext& c, const MatrixXd& G) {
  const int k = c.k, nb = xgrad_boundary_size(c);
  const int np = dim_poly(k + 1);
  const MatrixXd D = c.rc.div * c.w.asDiagonal() * c.mono.val.topRows(np).transpose();
  MatrixXd rhs = -gram(c.rc, c.pk, c.w) * G;
  const auto gam = local_edge_potentials(mesh, c);
  for (int j = 0; j < c.m; ++j) {
    const auto& ed = c.edges[j];
    const MatrixXd B = normal_component(ed.rc, ed.normal) * ed.w.asDiagonal() * ed.edge_mono.transpose();
    rhs.leftCols(nb) += ed.omega * B * gam[j];
  }
  return square_solve(D, rhs);
}

MatrixXd face_potential(const Mesh2D& mesh, const FaceContext& c, int n) {
  return face_potential_from(mesh, c, face_gradient(mesh, c, n));
}

MatrixXd face_scalar_rotor(const FaceContext& c, int s) {
  const int k = c.k, np = dim_poly(k);
  const int nb = xrot_boundary_size(c), nr = dim_R(k - 1), nc = dim_Rc(s);
  MatrixXd rhs = MatrixXd::Zero(np, nb + nr + nc);
  // rot_perp r = (dr/dy, -dr/dx)
  const MatrixXd rx = c.mono.dy.topRows(np), ry = -c.mono.dx.topRows(np);
  rhs.middleCols(nb, nr) = rx * c.w.asDiagonal() * c.rk1.x.transpose() + ry * c.w.asDiagonal() * c.rk1.y.transpose();
  for (int j = 0; j < c.m; ++j) {
    const auto& ed = c.edges[j];
    rhs.middleCols(j * (k + 1), k + 1) =
        ed.omega * ed.face_mono.topRows(np) * ed.w.asDiagonal() * ed.edge_mono.topRows(k + 1).transpose();
  }
  return spd_solve(c.gram_scalar(k, k), rhs);
}

MatrixXd tangential_potential(const FaceContext& c, int s) {
  const int k = c.k;
  const int nb = xrot_boundary_size(c), nr = dim_R(k - 1), nc = dim_Rc(s);
  const int ncols = nb + nr + nc;
  const int nR = dim_R(k), nRc = dim_Rc(k);
  const double h = c.frame.h;
  // test functions: R^k = {h rot_perp m}, paired with r = h m, then Rc^k
  MatrixXd A(nR + nRc, c.pk.size());
  A.topRows(nR) = gram(c.rk, c.pk, c.w);
  A.bottomRows(nRc) = c.gram_rc_pk(k);
  MatrixXd rhs = MatrixXd::Zero(nR + nRc, ncols);
  const MatrixXd C = face_scalar_rotor(c, s);
  const MatrixXd r = h * c.mono.val.middleRows(1, nR);
  rhs.topRows(nR) = r * c.w.asDiagonal() * c.mono.val.topRows(dim_poly(k)).transpose() * C;
  for (int j = 0; j < c.m; ++j) {
    const auto& ed = c.edges[j];
    rhs.block(0, j * (k + 1), nR, k + 1) -= ed.omega * h * ed.face_mono.middleRows(1, nR) * ed.w.asDiagonal() *
                                             ed.edge_mono.topRows(k + 1).transpose();
  }
  if (nc > 0) rhs.block(nR, nb + nr, nRc, nc) = c.gram_rc(k, s);
  return square_solve(A, rhs);
}

MatrixXd project_pk_to(const FaceContext& c, PolyKind kind, int d) {
  const VectorTable t = eval_vector(c.frame, kind, d, c.nodes);
  return spd_solve(gram(t, t, c.w), gram(t, c.pk, c.w));
}

MatrixXd project_scalar(const FaceContext& c, int from, int to) {
  return spd_solve(c.gram_scalar(to, to), c.gram_scalar(to, from));
}

MatrixXd project_rc(const FaceContext& c, int from, int to) {
  return spd_solve(c.gram_rc(to, to), c.gram_rc(to, from));
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void scatter(Triplets& t, const MatrixXd& M, int row0, const std::vector<int>& cols) {
  for (int j = 0; j < M.cols(); ++j)
    for (int i = 0; i < M.rows(); ++i)
      if (M(i, j) != 0.) t.emplace_back(row0 + i, cols[j], M(i, j));
}

}  // namespace

SparseMatrix assemble_grad(const Mesh2D& mesh, const DegreeVectors& dv) {
  const int k = dv.k;
  const DofLayout xg = xgrad_layout(mesh, dv), xr = xrot_layout(mesh, dv);
  Triplets t;
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const MatrixXd GE = edge_gradient(mesh, e, k);
    std::vector<int> cols{xg.vertex_offset(mesh.edge(e).vertices[0]), xg.vertex_offset(mesh.edge(e).vertices[1])};
    for (int i = 0; i < k; ++i) cols.push_back(xg.edge_offset(e) + i);
    scatter(t, GE, xr.edge_offset(e), cols);
  }
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const FaceContext c = make_face_context(mesh, f, k);
    const MatrixXd G = face_gradient(mesh, c, dv.n[f]);
    const std::vector<int> cols = xg.face_dofs(mesh, f);
    scatter(t, project_pk_to(c, PolyKind::R, k - 1) * G, xr.face_offset(f), cols);
    scatter(t, project_pk_to(c, PolyKind::Rc, dv.s[f]) * G, xr.face_offset(f) + dim_R(k - 1), cols);
  }
  SparseMatrix M(xr.dimension(), xg.dimension());
  M.setFromTriplets(t.begin(), t.end());
  return M;
}

SparseMatrix assemble_rot(const Mesh2D& mesh, const DegreeVectors& dv) {
  const int k = dv.k;
  const DofLayout xr = xrot_layout(mesh, dv), xl = xl_layout(mesh, k);
  Triplets t;
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const FaceContext c = make_face_context(mesh, f, k);
    scatter(t, face_scalar_rotor(c, dv.s[f]), xl.face_offset(f), xr.face_dofs(mesh, f));
  }
  SparseMatrix M(xl.dimension(), xr.dimension());
  M.setFromTriplets(t.begin(), t.end());
  return M;
}

DDRComplex build_ddr(const Mesh2D& mesh, const DegreeVectors& dv) {
  return {dv, xgrad_layout(mesh, dv), xrot_layout(mesh, dv), xl_layout(mesh, dv.k), assemble_grad(mesh, dv),
          assemble_rot(mesh, dv)};
}

DDRComplex build_ddr(const Mesh2D& mesh, int k) { return build_ddr(mesh, DegreeVectors::standard(mesh, k)); }

VectorXd interpolate_grad(const Mesh2D& mesh, const DegreeVectors& dv, const ScalarFn& q) {
  const DofLayout xg = xgrad_layout(mesh, dv);
  const int order = interpolation_order(dv.k);
  VectorXd out(xg.dimension());
  for (int v = 0; v < mesh.n_vertices(); ++v) out(xg.vertex_offset(v)) = q(mesh.vertex(v));
  if (dv.k > 0)
    for (int e = 0; e < mesh.n_edges(); ++e)
      out.segment(xg.edge_offset(e), dv.k) = project_edge(mesh, e, dv.k - 1, q, order);
  for (int f = 0; f < mesh.n_faces(); ++f)
    if (xg.per_face(f) > 0)
      out.segment(xg.face_offset(f), xg.per_face(f)) = project(mesh, f, {PolyKind::P_scalar, dv.n[f]}, q, order);
  return out;
}

VectorXd interpolate_rot(const Mesh2D& mesh, const DegreeVectors& dv, const VectorFn& v) {
  const DofLayout xr = xrot_layout(mesh, dv);
  const int k = dv.k, order = interpolation_order(k);
  VectorXd out(xr.dimension());
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const Point t = mesh.edge(e).tangent;
    out.segment(xr.edge_offset(e), k + 1) = project_edge(mesh, e, k, [&](const Point& x) { return v(x).dot(t); }, order);
  }
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const int nr = dim_R(k - 1), nc = dim_Rc(dv.s[f]);
    if (nr > 0) out.segment(xr.face_offset(f), nr) = project(mesh, f, {PolyKind::R, k - 1}, v, order);
    if (nc > 0) out.segment(xr.face_offset(f) + nr, nc) = project(mesh, f, {PolyKind::Rc, dv.s[f]}, v, order);
  }
  return out;
}

VectorXd interpolate_l(const Mesh2D& mesh, int k, const ScalarFn& r) {
  const DofLayout xl = xl_layout(mesh, k);
  VectorXd out(xl.dimension());
  for (int f = 0; f < mesh.n_faces(); ++f)
    out.segment(xl.face_offset(f), dim_poly(k)) = project(mesh, f, {PolyKind::P_scalar, k}, r, interpolation_order(k));
  return out;
}

VectorXd gather(const VectorXd& global, const std::vector<int>& dofs) {
  VectorXd v(dofs.size());
  for (size_t i = 0; i < dofs.size(); ++i) v(i) = global(dofs[i]);
  return v;
}

}  // namespace serddr
