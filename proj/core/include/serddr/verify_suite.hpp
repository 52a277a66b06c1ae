#pragma once

#include "serddr/complex_core.hpp"
#include "serddr/ddr2d.hpp"

#include <array>
#include <random>
#include <string>

namespace serddr {

enum class ComplexKind { ddr, sddr, rotrot, srotrot, all };

ComplexKind parse_complex(const std::string& name);
std::string to_string(ComplexKind kind);

struct VerifyOptions {
  double complex_tol = 1e-10;   // relative ||D_{i+1} D_i||
  double check_tol = kCheckTolerance;
  unsigned long long seed = 1;
  int n_random = 5;             // random polynomials per commutation check
  bool dense = true;            // SVD based checks (assumptions, cohomology)
};

/// Polynomial of total degree d in (x - 1/2, y - 1/2) with coefficients uniform in [-1, 1].
struct RandomPolynomial {
  std::vector<std::array<int, 2>> powers;
  std::vector<double> coeffs;

  double value(const Point& x) const { return eval(x, 0, 0); }
  Eigen::Vector2d grad(const Point& x) const { return {eval(x, 1, 0), eval(x, 0, 1)}; }
  /// Partial derivative of order (dx, dy), each 0 or 1.
  double eval(const Point& x, int dx, int dy) const;
};
RandomPolynomial random_polynomial(std::mt19937_64& rng, int degree);

/// Betti numbers of a connected planar mesh: (1, number of holes, 0).
std::array<int, 3> expected_betti(const Mesh2D& mesh);

/// Relative ||B A||_F / (||B||_F ||A||_F) of sparse differentials.
double sparse_complex_residual(const SparseMatrix& A, const SparseMatrix& B);

/// All checks of one complex (and of the complexes it is built from) on one mesh.
CheckReport verify_complex(const Mesh2D& mesh, int k, ComplexKind kind, const VerifyOptions& options = {});

}  // namespace serddr
