#include "serddr/quadrot.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <stdexcept>

namespace serddr {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Variant parse_variant(const std::string& name) {
  if (name == "standard") return Variant::standard;
  if (name == "serendipity") return Variant::serendipity;
  throw std::invalid_argument("unknown variant '" + name + "'");
}

std::string to_string(Variant v) { return v == Variant::standard ? "standard" : "serendipity"; }

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SparseMatrix identity(int n) {
  SparseMatrix I(n, n);
  I.setIdentity();
  return I;
}

void append(Triplets& t, const SparseMatrix& M, int row0, int col0) {
  for (int j = 0; j < M.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(M, j); it; ++it) t.emplace_back(row0 + it.row(), col0 + it.col(), it.value());
}

// l_h(v) = sum_F int_F f . gamma_t(v) on the XRot block of Sigma_h.
VectorXd load_vector(const Mesh2D& mesh, const RotRotComplex& rr, const VectorFn& f) {
  const int k = rr.k;
  VectorXd out = VectorXd::Zero(rr.n_sigma);
  for (int fc = 0; fc < mesh.n_faces(); ++fc) {
    const FaceContext c = make_face_context(mesh, fc, k);
    const int nq = static_cast<int>(c.nodes.size());
    VectorXd fx(nq), fy(nq);
    for (int q = 0; q < nq; ++q) {
      const Eigen::Vector2d v = f(c.nodes[q]);
      fx(q) = v.x() * c.w(q);
      fy(q) = v.y() * c.w(q);
    }
    const VectorXd moments = c.pk.x * fx + c.pk.y * fy;
    const VectorXd loc = tangential_potential(c, k).transpose() * moments;
    const std::vector<int> dofs = rr.ddr.xrot.face_dofs(mesh, fc);
    for (size_t i = 0; i < dofs.size(); ++i) out(dofs[i]) += loc(i);
  }
  return out;
}

VectorXd extended_residual(const SparseMatrix& A, const VectorXd& y, const VectorXd& b) {
  std::vector<long double> r(b.data(), b.data() + b.size());
  for (int j = 0; j < A.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(A, j); it; ++it)
      r[it.row()] -= static_cast<long double>(it.value()) * static_cast<long double>(y(j));
  VectorXd out(b.size());
  for (int i = 0; i < out.size(); ++i) out(i) = static_cast<double>(r[i]);
  return out;
}

std::vector<bool> sigma_mask(const Mesh2D& mesh, const DofLayout& xrot, int n_complement) {
  std::vector<bool> m = xrot.boundary_mask(mesh);
  const int k = xrot.per_edge() - 1;
  for (int e = 0; e < mesh.n_edges(); ++e)
    for (int i = 0; i < k; ++i) m.push_back(mesh.edge(e).boundary);
  for (int v = 0; v < mesh.n_vertices(); ++v) m.push_back(mesh.vertex_on_boundary(v));
  if (static_cast<int>(m.size()) != xrot.dimension() + n_complement) throw std::logic_error("sigma mask size");
  return m;
}

}  // namespace

QuadRotProblem::QuadRotProblem(const Mesh2D& mesh, int k, Variant variant, const ManufacturedSolution& exact) {
  if (k < 1) throw std::invalid_argument("the quad-rot scheme needs k >= 1");
  h_ = mesh.meshsize();
  const RotRotComplex rr = build_rotrot(mesh, k);
  const DiscreteProducts prod = build_products(mesh, rr);
  VectorXd Iu = interpolate_sigma(mesh, rr, exact.u, exact.rot_u);
  VectorXd Ip = interpolate_v(mesh, rr, exact.p);
  VectorXd Fu = load_vector(mesh, rr, exact.f);

  SparseMatrix Es = identity(rr.n_sigma), Ev = identity(rr.n_v);
  SparseMatrix Rs = Es, Rv = Ev;
  std::vector<bool> mask_s, mask_v;
  if (variant == Variant::standard) {
    mask_s = sigma_mask(mesh, rr.ddr.xrot, rr.n_sigma_complement);
    mask_v = rr.ddr.xgrad.boundary_mask(mesh);
  } else {
    const SDDRComplex s = build_sddr(mesh, rr.ddr);
    const SerendipityRotRotMaps maps = serendipity_rotrot_maps(rr, s);
    Es = maps.E_sigma;
    Ev = maps.E_V;
    Triplets t;
    append(t, s.R_rot, 0, 0);
    for (int i = 0; i < rr.n_sigma_complement; ++i)
      t.emplace_back(s.sxrot.dimension() + i, rr.ddr.xrot.dimension() + i, 1.);
    Rs = SparseMatrix(static_cast<int>(Es.cols()), rr.n_sigma);
    Rs.setFromTriplets(t.begin(), t.end());
    Rv = s.R_grad;
    mask_s = sigma_mask(mesh, s.sxrot, rr.n_sigma_complement);
    mask_v = s.sxgrad.boundary_mask(mesh);
  }
  n_sigma_ = static_cast<int>(Es.cols());
  n_v_ = static_cast<int>(Ev.cols());

  M_sigma_full_ = prod.Sigma;
  M_sigma_ = Es.transpose() * prod.Sigma * Es;
  M_v_ = Ev.transpose() * prod.V * Ev;
  A_ = Es.transpose() * prod.rotrot * Es;
  // uGh on the variant spaces, expressed through the full Sigma product
  G_ = rr.uGh * Ev;
  B_ = Es.transpose() * prod.Sigma * G_;

  Triplets t;
  append(t, A_, 0, 0);
  append(t, B_, 0, n_sigma_);
  append(t, SparseMatrix(B_.transpose()), n_sigma_, 0);
  K_ = SparseMatrix(n_sigma_ + n_v_, n_sigma_ + n_v_);
  K_.setFromTriplets(t.begin(), t.end());
  F_ = VectorXd::Zero(n_sigma_ + n_v_);
  F_.head(n_sigma_) = Es.transpose() * Fu;
  interp_.resize(n_sigma_ + n_v_);
  interp_ << Rs * Iu, Rv * Ip;

  dirichlet_ = mask_s;
  dirichlet_.insert(dirichlet_.end(), mask_v.begin(), mask_v.end());
  for (int i = 0; i < static_cast<int>(dirichlet_.size()); ++i)
    if (!dirichlet_[i]) free_.push_back(i);
}

SparseMatrix QuadRotProblem::reduced_matrix() const {
  std::vector<int> pos(K_.rows(), -1);
  for (size_t i = 0; i < free_.size(); ++i) pos[free_[i]] = static_cast<int>(i);
  Triplets t;
  for (int j = 0; j < K_.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(K_, j); it; ++it)
      if (pos[it.row()] >= 0 && pos[it.col()] >= 0) t.emplace_back(pos[it.row()], pos[it.col()], it.value());
  SparseMatrix R(free_.size(), free_.size());
  R.setFromTriplets(t.begin(), t.end());
  return R;
}

VectorXd QuadRotProblem::reduced_rhs(const VectorXd& dirichlet) const { return reduced_rhs(dirichlet, F_); }

VectorXd QuadRotProblem::reduced_rhs(const VectorXd& dirichlet, const VectorXd& load) const {
  VectorXd g = VectorXd::Zero(K_.rows());
  for (int i = 0; i < g.size(); ++i)
    if (dirichlet_[i]) g(i) = dirichlet(i);
  const VectorXd r = load - K_ * g;
  VectorXd out(free_.size());
  for (size_t i = 0; i < free_.size(); ++i) out(i) = r(free_[i]);
  return out;
}

QuadRotProblem::Solution QuadRotProblem::solve() const { return solve(interp_, F_); }

QuadRotProblem::Solution QuadRotProblem::solve(const VectorXd& dirichlet, const VectorXd& load) const {
  const VectorXd b = reduced_rhs(dirichlet, load);
  const SparseMatrix A = reduced_matrix();
  // symmetric equilibration by the largest entry of each row
  VectorXd scale = VectorXd::Zero(A.rows());
  for (int j = 0; j < A.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(A, j); it; ++it)
      scale(it.row()) = std::max(scale(it.row()), std::abs(it.value()));
  for (int i = 0; i < scale.size(); ++i) scale(i) = scale(i) > 0. ? 1. / std::sqrt(scale(i)) : 1.;
  SparseMatrix As = scale.asDiagonal() * A * scale.asDiagonal();
  As.makeCompressed();
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(As);
  if (lu.info() != Eigen::Success) throw std::runtime_error("quad-rot system factorization failed: " + lu.lastErrorMessage());
  VectorXd y = scale.asDiagonal() * lu.solve(scale.asDiagonal() * b);
  if (lu.info() != Eigen::Success) throw std::runtime_error("quad-rot system solve failed");
  // iterative refinement with residuals accumulated in extended precision
  for (int step = 0; step < 2; ++step) y += scale.asDiagonal() * lu.solve(scale.asDiagonal() * extended_residual(A, y, b));
  Solution s;
  s.x = VectorXd::Zero(K_.rows());
  for (int i = 0; i < s.x.size(); ++i)
    if (dirichlet_[i]) s.x(i) = dirichlet(i);
  for (size_t i = 0; i < free_.size(); ++i) s.x(free_[i]) = y(i);
  const double bn = b.norm();
  s.residual = (A * y - b).norm() / (bn > 0. ? bn : 1.);
  return s;
}

ErrorNorms QuadRotProblem::errors(const VectorXd& x) const {
  const VectorXd e = x - interp_;
  const VectorXd eu = e.head(n_sigma_), ep = e.tail(n_v_);
  const VectorXd iu = interp_.head(n_sigma_), ip = interp_.tail(n_v_);
  auto rel = [](double a, double b) { return b > 0. ? a / b : a; };
  ErrorNorms n;
  n.u_l2 = rel(norm(M_sigma_, eu), norm(M_sigma_, iu));
  n.u_rotrot = rel(norm(A_, eu), norm(A_, iu));
  n.p_l2 = rel(norm(M_v_, ep), norm(M_v_, ip));
  // uGh maps into the full Sigma space
  n.p_grad = rel(norm(M_sigma_full_, G_ * ep), norm(M_sigma_full_, G_ * ip));
  return n;
}

VectorXd QuadRotProblem::divergence_residual(const VectorXd& x) const {
  const VectorXd all = B_.transpose() * x.head(n_sigma_);
  std::vector<double> out;
  for (int i = 0; i < n_v_; ++i)
    if (!dirichlet_[n_sigma_ + i]) out.push_back(all(i));
  return Eigen::Map<const VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

}  // namespace serddr
