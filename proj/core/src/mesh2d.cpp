#include "serddr/mesh2d.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace serddr {

namespace {

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

// Closed-segment intersection test; tol is an absolute length scale.
bool segments_intersect(const Point& p1, const Point& p2, const Point& q1, const Point& q2,
                        double tol) {
  auto orient = [tol](const Point& a, const Point& b, const Point& c) {
    double v = cross(b - a, c - a);
    double scale = tol * std::max((b - a).norm(), 1e-300);
    if (v > scale) return 1;
    if (v < -scale) return -1;
    return 0;
  };
  auto on_segment = [tol](const Point& a, const Point& b, const Point& c) {
    return c.x() <= std::max(a.x(), b.x()) + tol && c.x() >= std::min(a.x(), b.x()) - tol &&
           c.y() <= std::max(a.y(), b.y()) + tol && c.y() >= std::min(a.y(), b.y()) - tol;
  };
  int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace

int Face::local_edge(int e) const {
  auto it = std::find(edges.begin(), edges.end(), e);
  return it == edges.end() ? -1 : static_cast<int>(it - edges.begin());
}

Mesh2D::Mesh2D(std::vector<Point> vertices, std::vector<Edge> edges, std::vector<Face> faces,
               std::vector<bool> vertex_boundary)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      faces_(std::move(faces)),
      vertex_boundary_(std::move(vertex_boundary)) {}

double Mesh2D::meshsize() const {
  double h = 0.;
  for (const auto& f : faces_) h = std::max(h, f.diameter);
  return h;
}

double Mesh2D::total_area() const {
  double a = 0.;
  for (const auto& f : faces_) a += f.area;
  return a;
}

std::vector<std::vector<int>> Mesh2D::face_loops() const {
  std::vector<std::vector<int>> loops;
  loops.reserve(faces_.size());
  for (const auto& f : faces_) loops.push_back(f.vertices);
  return loops;
}

double signed_area(const std::vector<Point>& polygon) {
  double a = 0.;
  const size_t n = polygon.size();
  for (size_t i = 0; i < n; ++i) a += cross(polygon[i], polygon[(i + 1) % n]);
  return 0.5 * a;
}

Mesh2D build_mesh(const std::vector<Point>& points, const std::vector<std::vector<int>>& loops) {
  const int nv = static_cast<int>(points.size());
  std::vector<Edge> edges;
  std::vector<Face> faces(loops.size());
  std::map<std::pair<int, int>, int> edge_index;
  std::vector<std::array<int, 2>> traversals;  // how many times each edge is run tail->head, head->tail
  std::vector<bool> used(nv, false);

  for (size_t f = 0; f < loops.size(); ++f) {
    const auto& loop = loops[f];
    const int m = static_cast<int>(loop.size());
    if (m < 3) throw MeshError("face " + std::to_string(f) + ": fewer than 3 vertices");
    for (int v : loop) {
      if (v < 0 || v >= nv) throw MeshError("face " + std::to_string(f) + ": unknown vertex index " + std::to_string(v));
    }
    std::vector<int> sorted(loop);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw MeshError("face " + std::to_string(f) + ": non-simple polygon (repeated vertex)");

    std::vector<Point> poly;
    for (int v : loop) poly.push_back(points[v]);
    double diam = 0.;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) diam = std::max(diam, (poly[i] - poly[j]).norm());
    const double area = signed_area(poly);
    if (!(area > 0.))
      throw MeshError("face " + std::to_string(f) + ": loop is not counter-clockwise or is degenerate");
    const double tol = 1e-12 * diam;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        if (j == i + 1 || (i == 0 && j == m - 1)) continue;
        if (segments_intersect(poly[i], poly[(i + 1) % m], poly[j], poly[(j + 1) % m], tol))
          throw MeshError("face " + std::to_string(f) + ": non-simple polygon (self-intersection)");
      }
    }

    Face& face = faces[f];
    face.vertices = loop;
    face.area = area;
    face.diameter = diam;
    Point c = Point::Zero();
    for (int i = 0; i < m; ++i) {
      const Point& a = poly[i];
      const Point& b = poly[(i + 1) % m];
      c += (a + b) * cross(a, b);
    }
    face.centroid = c / (6. * area);

    for (int i = 0; i < m; ++i) {
      const int a = loop[i], b = loop[(i + 1) % m];
      auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = edge_index.find(key);
      int e;
      if (it == edge_index.end()) {
        e = static_cast<int>(edges.size());
        edge_index.emplace(key, e);
        Edge edge;
        edge.vertices = {key.first, key.second};
        const Point d = points[key.second] - points[key.first];
        edge.length = d.norm();
        edge.tangent = d / edge.length;
        edge.midpoint = 0.5 * (points[key.first] + points[key.second]);
        edges.push_back(edge);
        traversals.push_back({0, 0});
      } else {
        e = it->second;
      }
      const int omega = (a == key.first) ? 1 : -1;
      traversals[e][omega > 0 ? 0 : 1] += 1;
      if (traversals[e][0] > 1 || traversals[e][1] > 1)
        throw MeshError("edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                        "): inconsistent shared-edge orientation");
      edges[e].faces.push_back(static_cast<int>(f));
      face.edges.push_back(e);
      face.orientations.push_back(omega);
      const Point& t = edges[e].tangent;
      face.normals.emplace_back(t.y(), -t.x());
      used[a] = true;
    }
  }

  for (int v = 0; v < nv; ++v)
    if (!used[v]) throw MeshError("dangling vertex " + std::to_string(v));

  std::vector<bool> vertex_boundary(nv, false);
  for (auto& e : edges) {
    e.boundary = e.faces.size() == 1;
    if (e.boundary) {
      vertex_boundary[e.vertices[0]] = true;
      vertex_boundary[e.vertices[1]] = true;
    }
  }
  for (auto& f : faces) {
    f.boundary = false;
    for (int e : f.edges) f.boundary = f.boundary || edges[e].boundary;
  }
  return Mesh2D(points, std::move(edges), std::move(faces), std::move(vertex_boundary));
}

}  // namespace serddr
