#pragma once

#include "serddr/dof_layout.hpp"
#include "serddr/mesh2d.hpp"
#include "serddr/polybasis.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace serddr {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Degree of the whole complex plus the per-face degrees of the face blocks.
struct DegreeVectors {
  int k = 1;
  std::vector<int> n;  // XGrad face block P^{n_F}
  std::vector<int> s;  // XRot face complement block Rc^{s_F}

  static DegreeVectors standard(const Mesh2D& mesh, int k);
  static DegreeVectors uniform(const Mesh2D& mesh, int k, int n, int s);
};

DofLayout xgrad_layout(const Mesh2D& mesh, const DegreeVectors& dv);
DofLayout xrot_layout(const Mesh2D& mesh, const DegreeVectors& dv);
DofLayout xl_layout(const Mesh2D& mesh, int k);

/// Edge potential in P^{k+1}(E) from [q_tail, q_head, q_E]; shape (k+2) x (k+2).
Eigen::MatrixXd edge_potential(const Mesh2D& mesh, int e, int k);
/// Derivative along t_E of the edge potential; shape (k+1) x (k+2).
Eigen::MatrixXd edge_gradient(const Mesh2D& mesh, int e, int k);
/// d/ds on edge monomials: P^{d} -> P^{d-1}, with s the arclength.
Eigen::MatrixXd edge_derivative(double h, int d);

/// Quadrature tables of one face and its edges, for operators of degree k.
struct FaceContext {
  struct EdgeData {
    int edge = -1;
    int omega = 1;
    Point normal, tangent;  // n_FE and t_E
    EdgeFrame frame;
    Eigen::VectorXd w;
    std::vector<Point> nodes;
    Eigen::MatrixXd face_mono;  // face monomials of degree k+2 at the edge nodes
    VectorTable pk;             // vector P^k at the edge nodes
    VectorTable rc;             // Rc^{k+2} at the edge nodes
    Eigen::MatrixXd edge_mono;  // edge monomials of degree k+1
    int tail = 0, head = 0;     // local vertex positions of the edge endpoints
  };

  int face = -1;
  int k = 1;
  int m = 0;  // number of edges
  FaceFrame frame;
  Eigen::VectorXd w;
  std::vector<Point> nodes;
  ScalarTable mono;  // degree k+2
  VectorTable pk, rk1, rk, rc, gc;  // vector P^k, R^{k-1}, R^k, Rc^{k+2}, Gc^k
  std::vector<EdgeData> edges;

  // Gram matrices on the face
  Eigen::MatrixXd gram_scalar(int d1, int d2) const;       // P^{d1} x P^{d2}
  Eigen::MatrixXd gram_pk() const;                         // vector P^k
  Eigen::MatrixXd gram_rc(int d1, int d2) const;           // Rc^{d1} x Rc^{d2}
  Eigen::MatrixXd gram_rc_pk(int d) const;                 // Rc^d x vector P^k
  /// Row block of a table restricted to the first n functions.
  static VectorTable head_rows(const VectorTable& t, int n);
};

FaceContext make_face_context(const Mesh2D& mesh, int f, int k);

/// Number of boundary DOFs of the local XGrad vector (vertices then edges).
inline int xgrad_boundary_size(const FaceContext& c) { return c.m * (1 + c.k); }
inline int xrot_boundary_size(const FaceContext& c) { return c.m * (c.k + 1); }

/// Edge potentials of the face edges as maps from the local XGrad boundary DOFs.
std::vector<Eigen::MatrixXd> local_edge_potentials(const Mesh2D& mesh, const FaceContext& c);

/// Face gradient G_F in vector P^k from local XGrad data with face block P^n.
Eigen::MatrixXd face_gradient(const Mesh2D& mesh, const FaceContext& c, int n);
/// Face potential in P^{k+1} from a face gradient matrix acting on local data whose first
/// columns are the boundary DOFs.
Eigen::MatrixXd face_potential_from(const Mesh2D& mesh, const FaceContext& c, const Eigen::MatrixXd& G);
Eigen::MatrixXd face_potential(const Mesh2D& mesh, const FaceContext& c, int n);
/// Scalar rotor C_F in P^k from local XRot data [edges, R^{k-1}, Rc^s].
Eigen::MatrixXd face_scalar_rotor(const FaceContext& c, int s);
/// Tangential potential in vector P^k from local XRot data [edges, R^{k-1}, Rc^s].
Eigen::MatrixXd tangential_potential(const FaceContext& c, int s);

/// L2 projection of vector P^k coefficients onto R^d or Rc^d.
Eigen::MatrixXd project_pk_to(const FaceContext& c, PolyKind kind, int d);
/// L2 projection P^{from} -> P^{to} on the face.
Eigen::MatrixXd project_scalar(const FaceContext& c, int from, int to);
/// L2 projection Rc^{from} -> Rc^{to} on the face.
Eigen::MatrixXd project_rc(const FaceContext& c, int from, int to);

struct DDRComplex {
  DegreeVectors degrees;
  DofLayout xgrad, xrot, xl;
  SparseMatrix G;    // XGrad -> XRot
  SparseMatrix rot;  // XRot -> XL
};

SparseMatrix assemble_grad(const Mesh2D& mesh, const DegreeVectors& dv);
SparseMatrix assemble_rot(const Mesh2D& mesh, const DegreeVectors& dv);
DDRComplex build_ddr(const Mesh2D& mesh, int k);
DDRComplex build_ddr(const Mesh2D& mesh, const DegreeVectors& dv);

/// Quadrature order used by interpolators for general (non polynomial) data.
inline int interpolation_order(int k) { return 2 * k + 8; }

Eigen::VectorXd interpolate_grad(const Mesh2D& mesh, const DegreeVectors& dv, const ScalarFn& q);
Eigen::VectorXd interpolate_rot(const Mesh2D& mesh, const DegreeVectors& dv, const VectorFn& v);
Eigen::VectorXd interpolate_l(const Mesh2D& mesh, int k, const ScalarFn& r);

/// Restriction of a global vector to the local numbering of a face.
Eigen::VectorXd gather(const Eigen::VectorXd& global, const std::vector<int>& dofs);

}  // namespace serddr
