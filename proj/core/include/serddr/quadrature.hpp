#pragma once

#include "serddr/mesh2d.hpp"

#include <vector>

namespace serddr {

struct QuadRule {
  std::vector<Point> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(weights.size()); }
  double sum_weights() const;
};

/// Gauss-Legendre nodes and weights on [0, 1] with n points (exact to degree 2n-1).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Collapsed Gauss rule on the triangle (a, b, c), exact to the given total degree.
QuadRule triangle_quadrature(const Point& a, const Point& b, const Point& c, int order);

/// Centroid-fan rule on a polygon that is star-shaped with respect to `center`.
QuadRule polygon_quadrature(const std::vector<Point>& polygon, const Point& center, int order);

QuadRule face_quadrature(const Mesh2D& mesh, int face, int order);
QuadRule edge_quadrature(const Mesh2D& mesh, int edge, int order);
QuadRule segment_quadrature(const Point& a, const Point& b, int order);

/// Checks that every fan triangle (centroid, edge) has positive signed area.
bool is_star_shaped_wrt_centroid(const Mesh2D& mesh, int face);

}  // namespace serddr
