#pragma once

#include "serddr/mesh2d.hpp"

#include <vector>

namespace serddr {

/// Global numbering of a discrete space: all vertex blocks, then edge blocks, then face blocks.
class DofLayout {
public:
  DofLayout() = default;
  DofLayout(const Mesh2D& mesh, int per_vertex, int per_edge, std::vector<int> per_face);

  int dimension() const { return dim_; }
  int per_vertex() const { return per_vertex_; }
  int per_edge() const { return per_edge_; }
  int per_face(int f) const { return per_face_[f]; }

  int vertex_offset(int v) const { return v * per_vertex_; }
  int edge_offset(int e) const { return n_vertices_ * per_vertex_ + e * per_edge_; }
  int face_offset(int f) const { return face_offsets_[f]; }
  int n_vertex_dofs() const { return n_vertices_ * per_vertex_; }
  int n_edge_dofs() const { return n_edges_ * per_edge_; }
  int n_face_dofs() const { return dim_ - n_vertex_dofs() - n_edge_dofs(); }

  /// Global indices of the local numbering of a face: loop vertices, loop edges, face block.
  std::vector<int> face_dofs(const Mesh2D& mesh, int f) const;
  int local_dimension(const Mesh2D& mesh, int f) const;
  /// True for the vertex and edge blocks lying on the boundary.
  std::vector<bool> boundary_mask(const Mesh2D& mesh) const;

private:
  int per_vertex_ = 0, per_edge_ = 0;
  int n_vertices_ = 0, n_edges_ = 0;
  std::vector<int> per_face_;
  std::vector<int> face_offsets_;
  int dim_ = 0;
};

}  // namespace serddr
