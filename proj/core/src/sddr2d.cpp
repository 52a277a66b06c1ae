#include "serddr/sddr2d.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace serddr {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd solve_spd(const MatrixXd& M, const MatrixXd& rhs) {
  if (M.rows() == 0) return MatrixXd(0, rhs.cols());
  return M.llt().solve(rhs);
}

MatrixXd solve_square(const MatrixXd& A, const MatrixXd& rhs, int face, int eta) {
  if (A.rows() == 0) return MatrixXd(0, rhs.cols());
  Eigen::FullPivLU<MatrixXd> lu(A);
  if (!lu.isInvertible()) {
    std::ostringstream os;
    os << "rank-deficient serendipity reconstruction on face " << face << " (eta = " << eta << ")";
    throw std::runtime_error(os.str());
  }
  return lu.solve(rhs);
}

MatrixXd selector(int rows, int cols, int offset) {
  MatrixXd S = MatrixXd::Zero(rows, cols);
  S.middleCols(offset, rows).setIdentity();
  return S;
}

// Edge Gram data in the monomials s^i, i <= deg.
MatrixXd edge_gram(const FaceContext::EdgeData& ed, int d1, int d2) {
  return ed.edge_mono.topRows(d1 + 1) * ed.w.asDiagonal() * ed.edge_mono.topRows(d2 + 1).transpose();
}

}  // namespace

SerendipityChoice select_edges(const Mesh2D& mesh, int f, int k) {
  const Face& face = mesh.face(f);
  const double tol = 1e-12 * face.diameter;
  SerendipityChoice ch;
  std::vector<std::pair<Point, Point>> lines;  // point, unit normal
  for (int j = 0; j < face.n_edges() && static_cast<int>(ch.edges.size()) < k + 2; ++j) {
    const Edge& e = mesh.edge(face.edges[j]);
    const Point a = mesh.vertex(e.vertices[0]), b = mesh.vertex(e.vertices[1]);
    const Point n(e.tangent.y(), -e.tangent.x());
    double lo = 0., hi = 0.;
    for (int v : face.vertices) {
      const double d = (mesh.vertex(v) - a).dot(n);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    if (lo < -tol && hi > tol) continue;
    bool aligned = false;
    for (const auto& [p, m] : lines)
      if (std::abs((a - p).dot(m)) <= tol && std::abs((b - p).dot(m)) <= tol) aligned = true;
    if (aligned) continue;
    lines.emplace_back(a, n);
    ch.edges.push_back(j);
  }
  if (ch.edges.size() < 2) {
    std::ostringstream os;
    os << "face " << f << " has fewer than two admissible edges";
    throw std::runtime_error(os.str());
  }
  ch.eta = static_cast<int>(ch.edges.size());
  ch.ell = k + 1 - ch.eta;
  return ch;
}

std::vector<SerendipityChoice> select_all_edges(const Mesh2D& mesh, int k) {
  std::vector<SerendipityChoice> out;
  for (int f = 0; f < mesh.n_faces(); ++f) out.push_back(select_edges(mesh, f, k));
  return out;
}

DegreeVectors serendipity_degrees(const Mesh2D& mesh, int k, const std::vector<SerendipityChoice>& choices) {
  DegreeVectors dv = DegreeVectors::standard(mesh, k);
  for (int f = 0; f < mesh.n_faces(); ++f) {
    dv.n[f] = choices[f].ell;
    dv.s[f] = choices[f].ell + 1;
  }
  return dv;
}

DegreeVectors serendipity_degrees(const Mesh2D& mesh, int k) {
  return serendipity_degrees(mesh, k, select_all_edges(mesh, k));
}

SerendipityFace serendipity_face(const Mesh2D& mesh, const FaceContext& c, const SerendipityChoice& choice) {
  const int k = c.k, m = c.m, ell = choice.ell;
  const double hF = c.frame.h;
  SerendipityFace out;
  out.choice = choice;

  // Gradient side: columns [vertices (m), edges (m k), P^ell].
  const int nbg = xgrad_boundary_size(c), nl = dim_poly(ell), ng = nbg + nl;
  const int np1 = dim_poly(k + 1), nk1 = dim_poly(k - 1);
  const auto gam = local_edge_potentials(mesh, c);
  MatrixXd N = MatrixXd::Zero(np1, np1), rhs = MatrixXd::Zero(np1, ng);
  for (int j : choice.edges) {
    const auto& ed = c.edges[j];
    const double hE = mesh.edge(ed.edge).length;
    const MatrixXd fm = ed.face_mono.topRows(np1);
    N += fm * ed.w.asDiagonal() * fm.transpose() / hE;
    rhs.leftCols(nbg) += fm * ed.w.asDiagonal() * ed.edge_mono.transpose() * gam[j] / hE;
  }
  MatrixXd P_ell_k1;  // pi^ell on P^{k+1}
  if (nl > 0) {
    const MatrixXd Ml = c.gram_scalar(ell, ell);
    P_ell_k1 = solve_spd(Ml, c.gram_scalar(ell, k + 1));
    N += P_ell_k1.transpose() * Ml * P_ell_k1 / (hF * hF);
    rhs.rightCols(nl) += P_ell_k1.transpose() * Ml / (hF * hF);
  }
  const MatrixXd Phat = solve_square(N, rhs, c.face, choice.eta);
  // q* = q_F + pi^{k-1} Phat - pi^ell Phat in P^{k-1}
  MatrixXd qstar = project_scalar(c, k + 1, k - 1) * Phat;
  if (nl > 0) {
    qstar.topRows(nl) -= P_ell_k1 * Phat;
    qstar.topRows(nl) += selector(nl, ng, nbg);
  }
  MatrixXd ext_grad(nbg + nk1, ng);
  ext_grad.topRows(nbg) = selector(nbg, ng, 0);
  ext_grad.bottomRows(nk1) = qstar;
  out.S_grad = face_gradient(mesh, c, k - 1) * ext_grad;

  // E_poly from integration by parts against Rc^k with the edge potentials.
  {
    const VectorTable rck = FaceContext::head_rows(c.rc, dim_Rc(k));
    const MatrixXd D = rck.div * c.w.asDiagonal() * c.mono.val.topRows(nk1).transpose();
    MatrixXd r = -gram(rck, c.pk, c.w) * out.S_grad;
    for (int j = 0; j < m; ++j) {
      const auto& ed = c.edges[j];
      const VectorTable rce = FaceContext::head_rows(ed.rc, dim_Rc(k));
      const MatrixXd wn = rce.x * ed.normal.x() + rce.y * ed.normal.y();
      r.leftCols(nbg) += ed.omega * wn * ed.w.asDiagonal() * ed.edge_mono.transpose() * gam[j];
    }
    out.E_poly = solve_square(D, r, c.face, choice.eta);
  }

  // Rotor side: columns [edges (m (k+1)), R^{k-1}, Rc^{ell+1}].
  const int nbr = xrot_boundary_size(c), nr = dim_R(k - 1), ncs = dim_Rc(ell + 1);
  const int nrot = nbr + nr + ncs, ngc = dim_Rc(k);
  const MatrixXd rho = face_scalar_rotor(c, ell + 1);
  // c in Gc^k with rot c = pi^{k-1} rho
  MatrixXd a = MatrixXd::Zero(ngc, nrot);
  if (ngc > 0) {
    const MatrixXd A = c.mono.val.topRows(nk1) * c.w.asDiagonal() * c.gc.rot.transpose();
    a = solve_square(A, c.gram_scalar(k - 1, k) * rho, c.face, choice.eta);
  }
  // Boundary potential: dPhi/ds = v_E - pi^k (c . t_E), walked along the loop.
  MatrixXd phiV = MatrixXd::Zero(m, nrot);
  std::vector<MatrixXd> phiE(m);
  std::vector<MatrixXd> gcoef(m);
  for (int j = 0; j < m; ++j) {
    const auto& ed = c.edges[j];
    const VectorTable gce = eval_vector(c.frame, PolyKind::Gc, k, ed.nodes);
    const MatrixXd ct = gce.x * ed.tangent.x() + gce.y * ed.tangent.y();
    const MatrixXd Mk = edge_gram(ed, k, k);
    MatrixXd g = selector(k + 1, nrot, j * (k + 1));
    if (ngc > 0) g -= solve_spd(Mk, ed.edge_mono.topRows(k + 1) * ed.w.asDiagonal() * ct.transpose()) * a;
    gcoef[j] = g;
  }
  for (int j = 0; j + 1 < m; ++j) {
    const auto& ed = c.edges[j];
    const VectorXd mean = ed.edge_mono.topRows(k + 1) * ed.w;  // integrals of s^i over E
    phiV.row(j + 1) = phiV.row(j) + ed.omega * (mean.transpose() * gcoef[j]);
  }
  for (int j = 0; j < m; ++j) {
    const auto& ed = c.edges[j];
    const double hE = mesh.edge(ed.edge).length;
    MatrixXd P = MatrixXd::Zero(k + 2, nrot);
    P.row(0) = phiV.row(ed.tail);
    for (int i = 0; i <= k; ++i) {
      P.row(i + 1) += hE * gcoef[j].row(i) / (i + 1);
      P.row(0) -= hE * gcoef[j].row(i) * std::pow(-0.5, i + 1) / (i + 1);
    }
    phiE[j] = P;
  }
  // Face value phi in P^ell from integration by parts against Rc^{ell+1}.
  MatrixXd phiF(nl, nrot);
  if (nl > 0) {
    const VectorTable rcl = FaceContext::head_rows(c.rc, dim_Rc(ell + 1));
    const MatrixXd D = rcl.div * c.w.asDiagonal() * c.mono.val.topRows(nl).transpose();
    MatrixXd r = gram(rcl, c.gc, c.w) * a - c.gram_rc(ell + 1, ell + 1) * selector(ncs, nrot, nbr + nr);
    for (int j = 0; j < m; ++j) {
      const auto& ed = c.edges[j];
      const VectorTable rce = FaceContext::head_rows(ed.rc, dim_Rc(ell + 1));
      const MatrixXd wn = rce.x * ed.normal.x() + rce.y * ed.normal.y();
      r += ed.omega * wn * ed.w.asDiagonal() * ed.edge_mono.transpose() * phiE[j];
    }
    phiF = solve_square(D, r, c.face, choice.eta);
  }
  MatrixXd qtilde(ng, nrot);
  qtilde.topRows(m) = phiV;
  for (int j = 0; j < m && k > 0; ++j) {
    const auto& ed = c.edges[j];
    qtilde.middleRows(m + j * k, k) = solve_spd(edge_gram(ed, k - 1, k - 1), edge_gram(ed, k - 1, k + 1)) * phiE[j];
  }
  if (nl > 0) qtilde.bottomRows(nl) = phiF;
  // v^{c*} = X + vhat^c - pi_{Rc^{ell+1}} X with X = pi_{Rc^k}(S_grad qtilde + c)
  MatrixXd vc = MatrixXd::Zero(ngc, nrot);
  if (ngc > 0) {
    const VectorTable rck = FaceContext::head_rows(c.rc, ngc);
    const MatrixXd Mrc = c.gram_rc(k, k);
    const MatrixXd X = solve_spd(Mrc, c.gram_rc_pk(k) * out.S_grad * qtilde + gram(rck, c.gc, c.w) * a);
    vc = X;
    if (ncs > 0) {
      vc.topRows(ncs) += selector(ncs, nrot, nbr + nr);
      vc.topRows(ncs) -= project_rc(c, k, ell + 1) * X;
    }
  }
  out.E_rot_c = vc;
  MatrixXd full(nbr + nr + ngc, nrot);
  full.topRows(nbr + nr) = selector(nbr + nr, nrot, 0);
  full.bottomRows(ngc) = vc;
  out.S_rot = tangential_potential(c, k) * full;
  return out;
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void add_block(Triplets& t, const MatrixXd& M, int row0, int col0) {
  for (int j = 0; j < M.cols(); ++j)
    for (int i = 0; i < M.rows(); ++i)
      if (M(i, j) != 0.) t.emplace_back(row0 + i, col0 + j, M(i, j));
}

void add_identity(Triplets& t, int n, int row0, int col0) {
  for (int i = 0; i < n; ++i) t.emplace_back(row0 + i, col0 + i, 1.);
}

void add_scattered(Triplets& t, const MatrixXd& M, int row0, const std::vector<int>& cols) {
  for (int j = 0; j < M.cols(); ++j)
    for (int i = 0; i < M.rows(); ++i)
      if (M(i, j) != 0.) t.emplace_back(row0 + i, cols[j], M(i, j));
}

SparseMatrix from_triplets(int rows, int cols, const Triplets& t) {
  SparseMatrix M(rows, cols);
  M.setFromTriplets(t.begin(), t.end());
  return M;
}

}  // namespace

SDDRComplex build_sddr(const Mesh2D& mesh, const DDRComplex& ddr) {
  const int k = ddr.degrees.k;
  SDDRComplex s;
  s.choices = select_all_edges(mesh, k);
  s.degrees = serendipity_degrees(mesh, k, s.choices);
  s.sxgrad = xgrad_layout(mesh, s.degrees);
  s.sxrot = xrot_layout(mesh, s.degrees);
  s.xl = xl_layout(mesh, k);
  const DofLayout &xg = ddr.xgrad, &xr = ddr.xrot;
  Triplets eg, rg, er, rr;
  const int nbg = xg.n_vertex_dofs() + xg.n_edge_dofs();
  add_identity(eg, nbg, 0, 0);
  add_identity(rg, nbg, 0, 0);
  add_identity(er, xr.n_edge_dofs(), 0, 0);
  add_identity(rr, xr.n_edge_dofs(), 0, 0);
  for (int f = 0; f < mesh.n_faces(); ++f) {
    const FaceContext c = make_face_context(mesh, f, k);
    const SerendipityChoice& ch = s.choices[f];
    const int nl = dim_poly(ch.ell);
    if (ddr.degrees.n[f] != k - 1 || ddr.degrees.s[f] != k)
      throw std::invalid_argument("serendipity reduction expects the standard DDR degrees");
    const SerendipityFace sf = serendipity_face(mesh, c, ch);
    add_scattered(eg, sf.E_poly, xg.face_offset(f), s.sxgrad.face_dofs(mesh, f));
    if (nl > 0) add_block(rg, project_scalar(c, k - 1, ch.ell), s.sxgrad.face_offset(f), xg.face_offset(f));
    const int nr = dim_R(k - 1), ncs = dim_Rc(ch.ell + 1);
    add_identity(er, nr, xr.face_offset(f), s.sxrot.face_offset(f));
    add_identity(rr, nr, s.sxrot.face_offset(f), xr.face_offset(f));
    add_scattered(er, sf.E_rot_c, xr.face_offset(f) + nr, s.sxrot.face_dofs(mesh, f));
    if (ncs > 0) add_block(rr, project_rc(c, k, ch.ell + 1), s.sxrot.face_offset(f) + nr, xr.face_offset(f) + nr);
  }
  s.E_grad = from_triplets(xg.dimension(), s.sxgrad.dimension(), eg);
  s.R_grad = from_triplets(s.sxgrad.dimension(), xg.dimension(), rg);
  s.E_rot = from_triplets(xr.dimension(), s.sxrot.dimension(), er);
  s.R_rot = from_triplets(s.sxrot.dimension(), xr.dimension(), rr);
  s.G = (s.R_rot * ddr.G * s.E_grad).pruned();
  s.rot = (ddr.rot * s.E_rot).pruned();
  return s;
}

VectorXd interpolate_sgrad(const Mesh2D& mesh, const SDDRComplex& s, const ScalarFn& q) {
  return s.R_grad * interpolate_grad(mesh, DegreeVectors::standard(mesh, s.degrees.k), q);
}

VectorXd interpolate_srot(const Mesh2D& mesh, const SDDRComplex& s, const VectorFn& v) {
  return s.R_rot * interpolate_rot(mesh, DegreeVectors::standard(mesh, s.degrees.k), v);
}

FiniteComplex to_finite_complex(const DDRComplex& d) {
  return FiniteComplex({d.xgrad.dimension(), d.xrot.dimension(), d.xl.dimension()},
                       {MatrixXd(d.G), MatrixXd(d.rot)});
}

FiniteComplex to_finite_complex(const SDDRComplex& s) {
  return FiniteComplex({s.sxgrad.dimension(), s.sxrot.dimension(), s.xl.dimension()},
                       {MatrixXd(s.G), MatrixXd(s.rot)});
}

MorphismPair sddr_maps(const SDDRComplex& s) {
  const int nl = s.xl.dimension();
  MorphismPair p;
  p.ext = {MatrixXd(s.E_grad), MatrixXd(s.E_rot), MatrixXd::Identity(nl, nl)};
  p.red = {MatrixXd(s.R_grad), MatrixXd(s.R_rot), MatrixXd::Identity(nl, nl)};
  return p;
}

}  // namespace serddr
