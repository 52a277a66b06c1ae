#include "serddr/polybasis.hpp"

#include <cmath>
#include <stdexcept>

namespace serddr {

int dimension(const PolySpaceTag& tag) {
  const int d = tag.degree;
  if (tag.cell == CellKind::edge) {
    if (tag.kind != PolyKind::P_scalar) throw std::invalid_argument("edges carry scalar spaces only");
    return dim_poly_edge(d);
  }
  switch (tag.kind) {
    case PolyKind::P_scalar: return dim_poly(d);
    case PolyKind::P_vector: return 2 * dim_poly(d);
    case PolyKind::G:
    case PolyKind::R: return dim_R(d);
    case PolyKind::Gc:
    case PolyKind::Rc: return dim_Rc(d);
  }
  return 0;
}

const std::vector<std::array<int, 2>>& monomial_exponents(int d) {
  static const std::vector<std::vector<std::array<int, 2>>> table = [] {
    std::vector<std::vector<std::array<int, 2>>> t;
    for (int deg = 0; deg <= 24; ++deg) {
      std::vector<std::array<int, 2>> e;
      for (int s = 0; s <= deg; ++s)
        for (int b = 0; b <= s; ++b) e.push_back({s - b, b});
      t.push_back(std::move(e));
    }
    return t;
  }();
  static const std::vector<std::array<int, 2>> empty;
  if (d < 0) return empty;
  if (d >= static_cast<int>(table.size())) throw std::invalid_argument("polynomial degree too large");
  return table[d];
}

FaceFrame face_frame(const Mesh2D& mesh, int face) {
  return {mesh.face(face).centroid, mesh.face(face).diameter};
}

EdgeFrame edge_frame(const Mesh2D& mesh, int edge) {
  const Edge& e = mesh.edge(edge);
  return {e.midpoint, e.tangent, e.length};
}

namespace {

double ipow(double x, int n) {
  double r = 1.;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// d^{i+j}/dx^i dy^j of X^a Y^b with X = (x - c)/h.
double mono_derivative(int a, int b, int i, int j, double X, double Y, double h) {
  if (i > a || j > b) return 0.;
  double c = 1.;
  for (int t = 0; t < i; ++t) c *= (a - t);
  for (int t = 0; t < j; ++t) c *= (b - t);
  return c * ipow(X, a - i) * ipow(Y, b - j) / ipow(h, i + j);
}

}  // namespace

ScalarTable eval_scalar(const FaceFrame& frame, int degree, const std::vector<Point>& pts) {
  const auto& ex = monomial_exponents(degree);
  const int n = static_cast<int>(ex.size());
  const int q = static_cast<int>(pts.size());
  ScalarTable t{Eigen::MatrixXd(n, q), Eigen::MatrixXd(n, q), Eigen::MatrixXd(n, q)};
  for (int p = 0; p < q; ++p) {
    const double X = (pts[p].x() - frame.center.x()) / frame.h;
    const double Y = (pts[p].y() - frame.center.y()) / frame.h;
    for (int i = 0; i < n; ++i) {
      const int a = ex[i][0], b = ex[i][1];
      t.val(i, p) = mono_derivative(a, b, 0, 0, X, Y, frame.h);
      t.dx(i, p) = mono_derivative(a, b, 1, 0, X, Y, frame.h);
      t.dy(i, p) = mono_derivative(a, b, 0, 1, X, Y, frame.h);
    }
  }
  return t;
}

VectorTable eval_vector(const FaceFrame& frame, PolyKind kind, int degree,
                        const std::vector<Point>& pts) {
  const int q = static_cast<int>(pts.size());
  const double h = frame.h;
  VectorTable t;
  auto alloc = [&](int n) {
    t.x = Eigen::MatrixXd::Zero(n, q);
    t.y = Eigen::MatrixXd::Zero(n, q);
    t.div = Eigen::MatrixXd::Zero(n, q);
    t.rot = Eigen::MatrixXd::Zero(n, q);
  };
  switch (kind) {
    case PolyKind::P_scalar: {
      const auto& ex = monomial_exponents(degree);
      alloc(static_cast<int>(ex.size()));
      for (int p = 0; p < q; ++p) {
        const double X = (pts[p].x() - frame.center.x()) / h, Y = (pts[p].y() - frame.center.y()) / h;
        for (size_t i = 0; i < ex.size(); ++i) t.x(i, p) = mono_derivative(ex[i][0], ex[i][1], 0, 0, X, Y, h);
      }
      break;
    }
    case PolyKind::P_vector: {
      const auto& ex = monomial_exponents(degree);
      const int n = static_cast<int>(ex.size());
      alloc(2 * n);
      for (int p = 0; p < q; ++p) {
        const double X = (pts[p].x() - frame.center.x()) / h, Y = (pts[p].y() - frame.center.y()) / h;
        for (int i = 0; i < n; ++i) {
          const int a = ex[i][0], b = ex[i][1];
          const double v = mono_derivative(a, b, 0, 0, X, Y, h);
          const double mx = mono_derivative(a, b, 1, 0, X, Y, h);
          const double my = mono_derivative(a, b, 0, 1, X, Y, h);
          t.x(i, p) = v;
          t.div(i, p) = mx;
          t.rot(i, p) = -my;
          t.y(n + i, p) = v;
          t.div(n + i, p) = my;
          t.rot(n + i, p) = mx;
        }
      }
      break;
    }
    case PolyKind::R:
    case PolyKind::G: {
      if (degree < 0) {
        alloc(0);
        break;
      }
      const auto& ex = monomial_exponents(degree + 1);
      const int n = static_cast<int>(ex.size()) - 1;
      alloc(n);
      for (int p = 0; p < q; ++p) {
        const double X = (pts[p].x() - frame.center.x()) / h, Y = (pts[p].y() - frame.center.y()) / h;
        for (int i = 0; i < n; ++i) {
          const int a = ex[i + 1][0], b = ex[i + 1][1];
          const double mx = mono_derivative(a, b, 1, 0, X, Y, h);
          const double my = mono_derivative(a, b, 0, 1, X, Y, h);
          const double lap = mono_derivative(a, b, 2, 0, X, Y, h) + mono_derivative(a, b, 0, 2, X, Y, h);
          if (kind == PolyKind::R) {
            t.x(i, p) = h * my;
            t.y(i, p) = -h * mx;
            t.rot(i, p) = -h * lap;
          } else {
            t.x(i, p) = h * mx;
            t.y(i, p) = h * my;
            t.div(i, p) = h * lap;
          }
        }
      }
      break;
    }
    case PolyKind::Rc:
    case PolyKind::Gc: {
      const auto& ex = monomial_exponents(degree - 1);
      const int n = static_cast<int>(ex.size());
      alloc(n);
      for (int p = 0; p < q; ++p) {
        const double X = (pts[p].x() - frame.center.x()) / h, Y = (pts[p].y() - frame.center.y()) / h;
        for (int i = 0; i < n; ++i) {
          const int a = ex[i][0], b = ex[i][1];
          const double m = mono_derivative(a, b, 0, 0, X, Y, h);
          const double mx = mono_derivative(a, b, 1, 0, X, Y, h);
          const double my = mono_derivative(a, b, 0, 1, X, Y, h);
          const double radial = 2. * m / h + X * mx + Y * my;
          if (kind == PolyKind::Rc) {
            t.x(i, p) = X * m;
            t.y(i, p) = Y * m;
            t.div(i, p) = radial;
            t.rot(i, p) = Y * mx - X * my;
          } else {
            t.x(i, p) = -Y * m;
            t.y(i, p) = X * m;
            t.div(i, p) = -Y * mx + X * my;
            t.rot(i, p) = radial;
          }
        }
      }
      break;
    }
  }
  return t;
}

void eval_edge(const EdgeFrame& frame, int degree, const std::vector<Point>& pts,
               Eigen::MatrixXd& val, Eigen::MatrixXd* ds) {
  const int n = dim_poly_edge(degree);
  const int q = static_cast<int>(pts.size());
  val.resize(n, q);
  if (ds) ds->resize(n, q);
  for (int p = 0; p < q; ++p) {
    const double s = frame.coordinate(pts[p]);
    for (int i = 0; i < n; ++i) {
      val(i, p) = ipow(s, i);
      if (ds) (*ds)(i, p) = i == 0 ? 0. : i * ipow(s, i - 1) / frame.h;
    }
  }
}

std::vector<std::function<Eigen::Vector2d(const Point&)>> basis(const FaceFrame& frame,
                                                                const PolySpaceTag& tag) {
  if (tag.cell != CellKind::face) throw std::invalid_argument("basis(): face spaces only");
  std::vector<std::function<Eigen::Vector2d(const Point&)>> out;
  const int n = dimension(tag);
  for (int i = 0; i < n; ++i) {
    out.push_back([frame, tag, i](const Point& x) {
      VectorTable t = eval_vector(frame, tag.kind, tag.degree, {x});
      return Eigen::Vector2d(t.x(i, 0), t.y(i, 0));
    });
  }
  return out;
}

Eigen::VectorXd weights_vector(const QuadRule& q) {
  return Eigen::Map<const Eigen::VectorXd>(q.weights.data(), q.size());
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Eigen::VectorXd& w) {
  return A * w.asDiagonal() * B.transpose();
}

Eigen::MatrixXd gram(const VectorTable& A, const VectorTable& B, const Eigen::VectorXd& w) {
  return A.x * w.asDiagonal() * B.x.transpose() + A.y * w.asDiagonal() * B.y.transpose();
}

namespace {

Eigen::VectorXd solve_gram(const Eigen::MatrixXd& M, const Eigen::VectorXd& rhs) {
  if (M.rows() == 0) return Eigen::VectorXd(0);
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) throw std::runtime_error("singular Gram matrix (degenerate cell geometry)");
  return llt.solve(rhs);
}

}  // namespace

Eigen::VectorXd project(const Mesh2D& mesh, int face, const PolySpaceTag& tag, const ScalarFn& f,
                        int order) {
  if (tag.kind != PolyKind::P_scalar) throw std::invalid_argument("scalar projection needs P_scalar");
  QuadRule q = face_quadrature(mesh, face, order);
  const FaceFrame fr = face_frame(mesh, face);
  ScalarTable t = eval_scalar(fr, tag.degree, q.nodes);
  const Eigen::VectorXd w = weights_vector(q);
  Eigen::VectorXd fv(q.size());
  for (int i = 0; i < q.size(); ++i) fv(i) = f(q.nodes[i]);
  return solve_gram(gram(t.val, t.val, w), t.val * w.asDiagonal() * fv);
}

Eigen::VectorXd project(const Mesh2D& mesh, int face, const PolySpaceTag& tag, const VectorFn& f,
                        int order) {
  if (tag.kind == PolyKind::P_scalar) throw std::invalid_argument("vector projection needs a vector space");
  QuadRule q = face_quadrature(mesh, face, order);
  const FaceFrame fr = face_frame(mesh, face);
  VectorTable t = eval_vector(fr, tag.kind, tag.degree, q.nodes);
  const Eigen::VectorXd w = weights_vector(q);
  Eigen::VectorXd fx(q.size()), fy(q.size());
  for (int i = 0; i < q.size(); ++i) {
    const Eigen::Vector2d v = f(q.nodes[i]);
    fx(i) = v.x();
    fy(i) = v.y();
  }
  return solve_gram(gram(t, t, w), t.x * w.asDiagonal() * fx + t.y * w.asDiagonal() * fy);
}

Eigen::VectorXd project_edge(const Mesh2D& mesh, int edge, int degree, const ScalarFn& f, int order) {
  QuadRule q = edge_quadrature(mesh, edge, order);
  Eigen::MatrixXd val;
  eval_edge(edge_frame(mesh, edge), degree, q.nodes, val);
  const Eigen::VectorXd w = weights_vector(q);
  Eigen::VectorXd fv(q.size());
  for (int i = 0; i < q.size(); ++i) fv(i) = f(q.nodes[i]);
  return solve_gram(gram(val, val, w), val * w.asDiagonal() * fv);
}

double eval_scalar_poly(const FaceFrame& frame, int degree, const Eigen::VectorXd& coef, const Point& x) {
  ScalarTable t = eval_scalar(frame, degree, {x});
  return coef.dot(t.val.col(0));
}

Eigen::Vector2d eval_vector_poly(const FaceFrame& frame, PolyKind kind, int degree,
                                 const Eigen::VectorXd& coef, const Point& x) {
  VectorTable t = eval_vector(frame, kind, degree, {x});
  return {coef.dot(t.x.col(0)), coef.dot(t.y.col(0))};
}

const BasisMatrixCache::Entry& BasisMatrixCache::get(int face, const PolySpaceTag& tag, int order) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto key = std::make_tuple(face, static_cast<int>(tag.kind), tag.degree, order);
  auto it = entries_.find(key);
  if (it != entries_.end()) return *it->second;
  auto e = std::make_unique<Entry>();
  e->quad = face_quadrature(mesh_, face, order);
  e->table = eval_vector(face_frame(mesh_, face), tag.kind, tag.degree, e->quad.nodes);
  e->gram = gram(e->table, e->table, weights_vector(e->quad));
  e->llt.compute(e->gram);
  if (e->gram.rows() > 0 && e->llt.info() != Eigen::Success)
    throw std::runtime_error("singular Gram matrix on face " + std::to_string(face));
  return *entries_.emplace(key, std::move(e)).first->second;
}

}  // namespace serddr
