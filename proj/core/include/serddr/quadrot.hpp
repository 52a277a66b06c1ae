#pragma once

#include "serddr/manufactured.hpp"
#include "serddr/products.hpp"
#include "serddr/sddr2d.hpp"

#include <optional>
#include <string>

namespace serddr {

enum class Variant { standard, serendipity };
Variant parse_variant(const std::string& name);
std::string to_string(Variant v);

/// Relative errors of one solve, each normalized by the norm of the interpolate.
struct ErrorNorms {
  double u_l2 = 0., u_rotrot = 0., p_l2 = 0., p_grad = 0.;
};

/// Quad-rot scheme on the rot-rot complex or on its serendipity version.
/// Unknowns are (u, p) in Sigma x V (or their serendipity counterparts); boundary blocks take
/// interpolated values and are eliminated.
class QuadRotProblem {
public:
  QuadRotProblem(const Mesh2D& mesh, int k, Variant variant,
                 const ManufacturedSolution& exact = quadrot_solution());

  int n_sigma() const { return n_sigma_; }
  int n_v() const { return n_v_; }
  /// Number of unknowns after Dirichlet elimination.
  int dim_linear_system() const { return static_cast<int>(free_.size()); }

  const SparseMatrix& system_matrix() const { return K_; }  // full, before elimination
  const Eigen::VectorXd& load() const { return F_; }
  /// Reduced matrix and right-hand side on the free DOFs.
  SparseMatrix reduced_matrix() const;
  Eigen::VectorXd reduced_rhs(const Eigen::VectorXd& dirichlet) const;
  Eigen::VectorXd reduced_rhs(const Eigen::VectorXd& dirichlet, const Eigen::VectorXd& load) const;
  const std::vector<int>& free_dofs() const { return free_; }
  const std::vector<bool>& dirichlet_mask() const { return dirichlet_; }

  /// Interpolate of the exact solution in the variant spaces, stacked (u, p).
  const Eigen::VectorXd& exact_interpolate() const { return interp_; }

  struct Solution {
    Eigen::VectorXd x;        // stacked (u, p), variant spaces
    double residual = 0.;     // relative residual of the reduced system
  };
  /// Solves with boundary values taken from `dirichlet` (default: the exact interpolate).
  Solution solve() const;
  Solution solve(const Eigen::VectorXd& dirichlet, const Eigen::VectorXd& load) const;

  ErrorNorms errors(const Eigen::VectorXd& x) const;

  /// b_h(u, q) for every free test function q of the pressure space.
  Eigen::VectorXd divergence_residual(const Eigen::VectorXd& x) const;

  double meshsize() const { return h_; }

private:
  int n_sigma_ = 0, n_v_ = 0;
  double h_ = 0.;
  SparseMatrix K_, B_;            // variant spaces
  SparseMatrix M_sigma_, M_v_, A_;  // pulled back to the variant spaces
  SparseMatrix M_sigma_full_, G_;   // full Sigma product and uGh from the variant V
  Eigen::VectorXd F_, interp_;
  std::vector<bool> dirichlet_;
  std::vector<int> free_;
};

}  // namespace serddr
