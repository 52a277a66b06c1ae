#pragma once

#include <Eigen/Dense>

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace serddr {

using Point = Eigen::Vector2d;

/// Raised for invalid topology, geometry or mesh files.
class MeshError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  std::array<int, 2> vertices;  // tail, head: the tangent points from tail to head
  Point tangent;
  Point midpoint;
  double length = 0.;
  std::vector<int> faces;
  bool boundary = false;
};

struct Face {
  std::vector<int> vertices;      // counter-clockwise loop
  std::vector<int> edges;         // edges[j] joins vertices[j] and vertices[j+1]
  std::vector<int> orientations;  // omega_FE: +1 iff the loop runs along the edge tangent
  std::vector<Point> normals;     // n_FE, the tangent rotated by -pi/2; omega*n points outwards
  double area = 0.;
  Point centroid;
  double diameter = 0.;
  bool boundary = false;

  int n_edges() const { return static_cast<int>(edges.size()); }
  /// Position of a global edge index inside the loop, -1 if absent.
  int local_edge(int e) const;
};

class Mesh2D {
public:
  Mesh2D() = default;
  Mesh2D(std::vector<Point> vertices, std::vector<Edge> edges, std::vector<Face> faces,
         std::vector<bool> vertex_boundary);

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_edges() const { return static_cast<int>(edges_.size()); }
  int n_faces() const { return static_cast<int>(faces_.size()); }

  const Point& vertex(int i) const { return vertices_[i]; }
  const Edge& edge(int i) const { return edges_[i]; }
  const Face& face(int i) const { return faces_[i]; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Face>& faces() const { return faces_; }
  bool vertex_on_boundary(int i) const { return vertex_boundary_[i]; }

  /// Largest face diameter.
  double meshsize() const;
  double total_area() const;
  int euler_characteristic() const { return n_vertices() - n_edges() + n_faces(); }
  /// Vertex loops of all faces, as accepted by build_mesh.
  std::vector<std::vector<int>> face_loops() const;

private:
  std::vector<Point> vertices_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::vector<bool> vertex_boundary_;
};

/// Builds a mesh from points and counter-clockwise vertex loops, deduplicating edges.
Mesh2D build_mesh(const std::vector<Point>& points, const std::vector<std::vector<int>>& loops);

/// Signed area of a closed polygon (positive when counter-clockwise).
double signed_area(const std::vector<Point>& polygon);

enum class MeshFamily { cartesian, triangular, hexagonal, annulus };

struct MeshFamilySpec {
  MeshFamily family = MeshFamily::cartesian;
  int level = 1;
  Point lower{0., 0.};
  Point upper{1., 1.};
};

MeshFamily parse_family(const std::string& name);
std::string to_string(MeshFamily family);

/// Number of cells per side of the underlying grid at a given level.
int cells_per_side(MeshFamily family, int level);

Mesh2D generate_family(const MeshFamilySpec& spec);
inline Mesh2D generate_family(MeshFamily family, int level) {
  return generate_family(MeshFamilySpec{family, level});
}

Mesh2D read_mesh(std::istream& in);
void write_mesh(const Mesh2D& mesh, std::ostream& out);
Mesh2D load_mesh(const std::string& path);
void save_mesh(const Mesh2D& mesh, const std::string& path);

}  // namespace serddr
