#include "serddr/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace serddr {

double QuadRule::sum_weights() const { return std::accumulate(weights.begin(), weights.end(), 0.); }

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  static std::mutex mutex;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    // Golub-Welsch on the Jacobi matrix of the Legendre recurrence
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
      const double b = i / std::sqrt(4. * i * i - 1.);
      J(i, i - 1) = b;
      J(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    std::vector<std::pair<double, double>> nw(n);
    for (int i = 0; i < n; ++i) {
      const double v0 = es.eigenvectors()(0, i);
      nw[i] = {0.5 * (es.eigenvalues()(i) + 1.), v0 * v0};
    }
    std::sort(nw.begin(), nw.end());
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) std::tie(x[i], w[i]) = nw[i];
    it = cache.emplace(n, std::make_pair(x, w)).first;
  }
  nodes = it->second.first;
  weights = it->second.second;
}

QuadRule triangle_quadrature(const Point& a, const Point& b, const Point& c, int order) {
  // x = a + s (b - a) + s t (c - b); Jacobian s |det|
  order = std::max(order, 0);
  const int ns = (order + 3) / 2;
  const int nt = (order + 2) / 2;
  std::vector<double> xs, ws, xt, wt;
  gauss_legendre(ns, xs, ws);
  gauss_legendre(nt, xt, wt);
  const Point ab = b - a, bc = c - b;
  const double det = std::abs(ab.x() * bc.y() - ab.y() * bc.x());
  QuadRule rule;
  rule.nodes.reserve(ns * nt);
  rule.weights.reserve(ns * nt);
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < nt; ++j) {
      const double s = xs[i], t = xt[j];
      rule.nodes.push_back(a + s * ab + s * t * bc);
      rule.weights.push_back(ws[i] * wt[j] * s * det);
    }
  }
  return rule;
}

QuadRule polygon_quadrature(const std::vector<Point>& polygon, const Point& center, int order) {
  QuadRule rule;
  const size_t m = polygon.size();
  for (size_t i = 0; i < m; ++i) {
    const Point& p = polygon[i];
    const Point& q = polygon[(i + 1) % m];
    const Point u = p - center, v = q - center;
    if (!(u.x() * v.y() - u.y() * v.x() > 0.))
      throw MeshError("polygon is not star-shaped with respect to its centroid");
    QuadRule t = triangle_quadrature(center, p, q, order);
    rule.nodes.insert(rule.nodes.end(), t.nodes.begin(), t.nodes.end());
    rule.weights.insert(rule.weights.end(), t.weights.begin(), t.weights.end());
  }
  return rule;
}

QuadRule face_quadrature(const Mesh2D& mesh, int face, int order) {
  const Face& f = mesh.face(face);
  std::vector<Point> poly;
  for (int v : f.vertices) poly.push_back(mesh.vertex(v));
  return polygon_quadrature(poly, f.centroid, order);
}

QuadRule segment_quadrature(const Point& a, const Point& b, int order) {
  const int n = std::max(order, 0) / 2 + 1;
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  const double len = (b - a).norm();
  QuadRule rule;
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back(a + x[i] * (b - a));
    rule.weights.push_back(w[i] * len);
  }
  return rule;
}

QuadRule edge_quadrature(const Mesh2D& mesh, int edge, int order) {
  const Edge& e = mesh.edge(edge);
  return segment_quadrature(mesh.vertex(e.vertices[0]), mesh.vertex(e.vertices[1]), order);
}

bool is_star_shaped_wrt_centroid(const Mesh2D& mesh, int face) {
  const Face& f = mesh.face(face);
  const size_t m = f.vertices.size();
  for (size_t i = 0; i < m; ++i) {
    const Point u = mesh.vertex(f.vertices[i]) - f.centroid;
    const Point v = mesh.vertex(f.vertices[(i + 1) % m]) - f.centroid;
    if (!(u.x() * v.y() - u.y() * v.x() > 0.)) return false;
  }
  return true;
}

}  // namespace serddr
