#pragma once

#include "serddr/complex_core.hpp"
#include "serddr/ddr2d.hpp"

#include <vector>

namespace serddr {

/// Edges retained on one face for the serendipity reconstruction.
struct SerendipityChoice {
  std::vector<int> edges;  // local edge positions in loop order
  int eta = 0;
  int ell = 0;             // k + 1 - eta
};

/// Greedy scan in loop order keeping one-sided edges with distinct supporting lines, capped at k+2.
SerendipityChoice select_edges(const Mesh2D& mesh, int f, int k);
std::vector<SerendipityChoice> select_all_edges(const Mesh2D& mesh, int k);

/// Degree vectors of the serendipity spaces: n_F = ell_F, s_F = ell_F + 1.
DegreeVectors serendipity_degrees(const Mesh2D& mesh, int k);
DegreeVectors serendipity_degrees(const Mesh2D& mesh, int k, const std::vector<SerendipityChoice>& choices);

/// Local serendipity operators of one face. Columns follow the local serendipity numbering:
/// gradient side [vertices, edges, P^ell], rotor side [edges, R^{k-1}, Rc^{ell+1}].
struct SerendipityFace {
  SerendipityChoice choice;
  Eigen::MatrixXd S_grad;     // vector P^k
  Eigen::MatrixXd E_poly;     // P^{k-1} face block of the gradient extension
  Eigen::MatrixXd S_rot;      // vector P^k
  Eigen::MatrixXd E_rot_c;    // Rc^k face block of the rotor extension
};

SerendipityFace serendipity_face(const Mesh2D& mesh, const FaceContext& c, const SerendipityChoice& choice);

/// Serendipity DDR complex with its extension and reduction maps to the full DDR complex.
struct SDDRComplex {
  DegreeVectors degrees;
  std::vector<SerendipityChoice> choices;
  DofLayout sxgrad, sxrot, xl;
  SparseMatrix G, rot;                 // R_rot G_h E_grad and rot_h E_rot
  SparseMatrix E_grad, R_grad, E_rot, R_rot;
};

SDDRComplex build_sddr(const Mesh2D& mesh, const DDRComplex& ddr);

Eigen::VectorXd interpolate_sgrad(const Mesh2D& mesh, const SDDRComplex& s, const ScalarFn& q);
Eigen::VectorXd interpolate_srot(const Mesh2D& mesh, const SDDRComplex& s, const VectorFn& v);

FiniteComplex to_finite_complex(const DDRComplex& d);
FiniteComplex to_finite_complex(const SDDRComplex& s);
/// Extensions (SDDR -> DDR) and reductions (DDR -> SDDR), identity on XL.
MorphismPair sddr_maps(const SDDRComplex& s);

}  // namespace serddr
