#pragma once

#include "serddr/complex_core.hpp"
#include "serddr/ddr2d.hpp"
#include "serddr/sddr2d.hpp"

namespace serddr {

/// Rot-rot complex V -> Sigma -> W built on the DDR complex of degree k.
/// V = XGrad^{k-1,k}; Sigma = XRot^{k,k} x (P^{k-1} per edge, one value per vertex);
/// W = XGrad^{k,k}, stored in the split order [faces P^k | edges P^{k-1} | vertices].
struct RotRotComplex {
  int k = 1;
  DDRComplex ddr;
  DofLayout w_natural;  // XGrad^{k,k} in the usual vertex/edge/face order
  int n_v = 0, n_sigma = 0, n_w = 0;
  int n_sigma_complement = 0;  // edges then vertices, after the XRot block
  SparseMatrix uGh;            // V -> Sigma
  SparseMatrix uRh;            // Sigma -> W (split order)
  SparseMatrix w_to_natural;   // permutation: natural = w_to_natural * split

  int sigma_edge_offset(int e) const { return ddr.xrot.dimension() + e * k; }
  int sigma_vertex_offset(int v) const { return ddr.xrot.dimension() + ddr.xrot.n_edge_dofs() / (k + 1) * k + v; }
};

RotRotComplex build_rotrot(const Mesh2D& mesh, int k);
RotRotComplex build_rotrot(const Mesh2D& mesh, const DDRComplex& ddr);

FiniteComplex to_finite_complex(const RotRotComplex& rr);
/// Injections DDR -> rot-rot (pad with zero) and coordinate projections back.
MorphismPair rotrot_morphisms(const RotRotComplex& rr);
/// Coordinate injections spanning the kernels of the reductions.
std::vector<Matrix> rotrot_complement_bases(const RotRotComplex& rr);

/// Serendipity rot-rot complex through the generic construction (dense; small meshes).
SerendipityBuild build_serendipity_rotrot(const RotRotComplex& rr, const SDDRComplex& s);

/// Sparse extensions of the serendipity rot-rot spaces: E_V = E_grad, E_Sigma = diag(E_rot, I).
struct SerendipityRotRotMaps {
  SparseMatrix E_V, E_sigma;
};
SerendipityRotRotMaps serendipity_rotrot_maps(const RotRotComplex& rr, const SDDRComplex& s);

/// Serendipity rot-rot differentials with coordinate complements: sG = (R_rot G_h E_grad, 0) and
/// sR = [rot_h E_rot, 0; 0, I], the same matrices as the generic construction.
struct SerendipityRotRot {
  int n_v = 0, n_sigma = 0, n_w = 0;
  SparseMatrix uGh, uRh;
};
SerendipityRotRot serendipity_rotrot(const RotRotComplex& rr, const SDDRComplex& s);

Eigen::VectorXd interpolate_v(const Mesh2D& mesh, const RotRotComplex& rr, const ScalarFn& q);
/// Sigma interpolate: (I_rot v, pi^{k-1}_E rot v, rot v(x_V)).
Eigen::VectorXd interpolate_sigma(const Mesh2D& mesh, const RotRotComplex& rr, const VectorFn& v,
                                  const ScalarFn& rot_v);
/// W interpolate in split order.
Eigen::VectorXd interpolate_w(const Mesh2D& mesh, const RotRotComplex& rr, const ScalarFn& w);

}  // namespace serddr
