#pragma once

#include "serddr/mesh2d.hpp"
#include "serddr/quadrature.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace serddr {

using ScalarFn = std::function<double(const Point&)>;
using VectorFn = std::function<Eigen::Vector2d(const Point&)>;

enum class PolyKind { P_scalar, P_vector, G, Gc, R, Rc };
enum class CellKind { face, edge };

struct PolySpaceTag {
  PolyKind kind = PolyKind::P_scalar;
  int degree = 0;
  CellKind cell = CellKind::face;
};

/// dim P^d on a face; 0 for d < 0.
inline int dim_poly(int d) { return d < 0 ? 0 : (d + 1) * (d + 2) / 2; }
/// dim P^d on an edge; 0 for d < 0.
inline int dim_poly_edge(int d) { return d < 0 ? 0 : d + 1; }
inline int dim_R(int d) { return d < 0 ? 0 : dim_poly(d + 1) - 1; }
inline int dim_Rc(int d) { return dim_poly(d - 1); }

int dimension(const PolySpaceTag& tag);

/// Exponents (a, b) of the monomials X^a Y^b of total degree <= d, ordered by degree.
const std::vector<std::array<int, 2>>& monomial_exponents(int d);

/// Scaling frame of a face: X = (x - center) / h.
struct FaceFrame {
  Point center;
  double h = 1.;
};

/// Scaling frame of an edge: s = (x - center) . tangent / h, s in [-1/2, 1/2].
struct EdgeFrame {
  Point center;
  Point tangent;
  double h = 1.;
  double coordinate(const Point& x) const { return (x - center).dot(tangent) / h; }
};

FaceFrame face_frame(const Mesh2D& mesh, int face);
EdgeFrame edge_frame(const Mesh2D& mesh, int edge);

// Evaluation tables: one row per basis function, one column per point.
struct ScalarTable {
  Eigen::MatrixXd val, dx, dy;
};
struct VectorTable {
  Eigen::MatrixXd x, y, div, rot;
  int size() const { return static_cast<int>(x.rows()); }
};

ScalarTable eval_scalar(const FaceFrame& frame, int degree, const std::vector<Point>& pts);
/// Vector bases: P_vector = {(m,0)} then {(0,m)}; R = {h rot_perp m}; Rc = {X m};
/// G = {h grad m}; Gc = {X_perp m} with X_perp = (-Y, X).
VectorTable eval_vector(const FaceFrame& frame, PolyKind kind, int degree,
                        const std::vector<Point>& pts);
/// Edge monomials s^i and their derivative with respect to arclength.
void eval_edge(const EdgeFrame& frame, int degree, const std::vector<Point>& pts,
               Eigen::MatrixXd& val, Eigen::MatrixXd* ds = nullptr);

/// Evaluable basis functions (vector valued; scalar spaces use the first component).
std::vector<std::function<Eigen::Vector2d(const Point&)>> basis(const FaceFrame& frame,
                                                                const PolySpaceTag& tag);

Eigen::VectorXd weights_vector(const QuadRule& q);
/// A diag(w) B^T.
Eigen::MatrixXd gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::VectorXd& w);
Eigen::MatrixXd gram(const VectorTable& A, const VectorTable& B, const Eigen::VectorXd& w);

/// L2 projection of f onto a face space; returns coefficients in the basis above.
Eigen::VectorXd project(const Mesh2D& mesh, int face, const PolySpaceTag& tag, const ScalarFn& f,
                        int order);
Eigen::VectorXd project(const Mesh2D& mesh, int face, const PolySpaceTag& tag, const VectorFn& f,
                        int order);
/// L2 projection onto P^degree of an edge.
Eigen::VectorXd project_edge(const Mesh2D& mesh, int edge, int degree, const ScalarFn& f, int order);

/// Evaluates a face polynomial (scalar or vector) given by coefficients at a point.
double eval_scalar_poly(const FaceFrame& frame, int degree, const Eigen::VectorXd& coef, const Point& x);
Eigen::Vector2d eval_vector_poly(const FaceFrame& frame, PolyKind kind, int degree,
                                 const Eigen::VectorXd& coef, const Point& x);

/// Lazily built Gram matrices and Cholesky factors per (face, tag, order).
class BasisMatrixCache {
public:
  struct Entry {
    QuadRule quad;
    VectorTable table;  // scalar spaces store values in table.x
    Eigen::MatrixXd gram;
    Eigen::LLT<Eigen::MatrixXd> llt;
  };

  explicit BasisMatrixCache(const Mesh2D& mesh) : mesh_(mesh) {}
  const Entry& get(int face, const PolySpaceTag& tag, int order);

private:
  const Mesh2D& mesh_;
  std::mutex mutex_;
  std::map<std::tuple<int, int, int, int>, std::unique_ptr<Entry>> entries_;
};

}  // namespace serddr
