#pragma once

#include "serddr/rotrot.hpp"

namespace serddr {

/// Discrete L2-like products of the rot-rot spaces and the rot-rot form.
struct DiscreteProducts {
  SparseMatrix V;       // on V_h
  SparseMatrix Sigma;   // on Sigma_h
  SparseMatrix W;       // on W_h, split order
  SparseMatrix rotrot;  // a_h on Sigma_h
};

SparseMatrix product_v(const Mesh2D& mesh, const RotRotComplex& rr);
SparseMatrix product_sigma(const Mesh2D& mesh, const RotRotComplex& rr);
SparseMatrix product_w(const Mesh2D& mesh, const RotRotComplex& rr);
/// a_h(u, v) on Sigma_h, built from the gradient of w = uRh u in XGrad^{k,k} plus stabilization.
SparseMatrix rotrot_form(const Mesh2D& mesh, const RotRotComplex& rr);

DiscreteProducts build_products(const Mesh2D& mesh, const RotRotComplex& rr);

/// sqrt(x^T M x).
double norm(const SparseMatrix& M, const Eigen::VectorXd& x);

}  // namespace serddr
