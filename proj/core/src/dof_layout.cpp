#include "serddr/dof_layout.hpp"

#include <stdexcept>

namespace serddr {

DofLayout::DofLayout(const Mesh2D& mesh, int per_vertex, int per_edge, std::vector<int> per_face)
    : per_vertex_(per_vertex),
      per_edge_(per_edge),
      n_vertices_(mesh.n_vertices()),
      n_edges_(mesh.n_edges()),
      per_face_(std::move(per_face)) {
  if (static_cast<int>(per_face_.size()) != mesh.n_faces())
    throw std::invalid_argument("DofLayout: one face block size per face expected");
  int off = n_vertices_ * per_vertex_ + n_edges_ * per_edge_;
  for (int n : per_face_) {
    face_offsets_.push_back(off);
    off += n;
  }
  dim_ = off;
}

std::vector<int> DofLayout::face_dofs(const Mesh2D& mesh, int f) const {
  const Face& face = mesh.face(f);
  std::vector<int> dofs;
  dofs.reserve(local_dimension(mesh, f));
  for (int v : face.vertices)
    for (int i = 0; i < per_vertex_; ++i) dofs.push_back(vertex_offset(v) + i);
  for (int e : face.edges)
    for (int i = 0; i < per_edge_; ++i) dofs.push_back(edge_offset(e) + i);
  for (int i = 0; i < per_face_[f]; ++i) dofs.push_back(face_offsets_[f] + i);
  return dofs;
}

int DofLayout::local_dimension(const Mesh2D& mesh, int f) const {
  return mesh.face(f).n_edges() * (per_vertex_ + per_edge_) + per_face_[f];
}

std::vector<bool> DofLayout::boundary_mask(const Mesh2D& mesh) const {
  std::vector<bool> mask(dim_, false);
  for (int v = 0; v < mesh.n_vertices(); ++v)
    if (mesh.vertex_on_boundary(v))
      for (int i = 0; i < per_vertex_; ++i) mask[vertex_offset(v) + i] = true;
  for (int e = 0; e < mesh.n_edges(); ++e)
    if (mesh.edge(e).boundary)
      for (int i = 0; i < per_edge_; ++i) mask[edge_offset(e) + i] = true;
  return mask;
}

}  // namespace serddr
