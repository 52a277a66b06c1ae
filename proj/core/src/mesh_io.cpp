#include "serddr/mesh2d.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace serddr {

namespace {

class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line split into tokens; false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      tokens.clear();
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }
  int line() const { return line_no_; }
  [[noreturn]] void fail(const std::string& what) const {
    throw MeshError("line " + std::to_string(line_no_) + ": " + what);
  }

private:
  std::istream& in_;
  int line_no_ = 0;
};

long parse_int(const LineReader& r, const std::string& s) {
  char* end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') r.fail("expected integer, got '" + s + "'");
  return v;
}

double parse_double(const LineReader& r, const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') r.fail("expected number, got '" + s + "'");
  return v;
}

}  // namespace

Mesh2D read_mesh(std::istream& in) {
  LineReader reader(in);
  std::vector<std::string> tok;
  if (!reader.next(tok)) throw MeshError("line 1: empty mesh file");
  if (tok.size() != 4 || tok[0] != "polymesh2d" || tok[1] != "v1")
    reader.fail("expected header 'polymesh2d v1 <nv> <nf>'");
  const long nv = parse_int(reader, tok[2]);
  const long nf = parse_int(reader, tok[3]);
  if (nv < 0 || nf < 0) reader.fail("negative entity count");

  std::vector<Point> points;
  points.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    if (!reader.next(tok)) reader.fail("unexpected end of file while reading vertices");
    if (tok.size() != 2) reader.fail("expected 'x y'");
    points.emplace_back(parse_double(reader, tok[0]), parse_double(reader, tok[1]));
  }
  std::vector<std::vector<int>> loops;
  loops.reserve(nf);
  for (long f = 0; f < nf; ++f) {
    if (!reader.next(tok)) reader.fail("unexpected end of file while reading faces");
    const long m = parse_int(reader, tok[0]);
    if (m < 3) reader.fail("face with fewer than 3 vertices");
    if (static_cast<long>(tok.size()) != m + 1) reader.fail("face vertex count mismatch");
    std::vector<int> loop;
    for (long j = 1; j <= m; ++j) {
      const long v = parse_int(reader, tok[j]);
      if (v < 0 || v >= nv) reader.fail("unknown vertex index " + tok[j]);
      loop.push_back(static_cast<int>(v));
    }
    loops.push_back(std::move(loop));
  }
  if (reader.next(tok)) reader.fail("trailing content after last face");
  return build_mesh(points, loops);
}

void write_mesh(const Mesh2D& mesh, std::ostream& out) {
  out << "polymesh2d v1 " << mesh.n_vertices() << ' ' << mesh.n_faces() << '\n';
  char buf[64];
  for (const auto& p : mesh.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g", p.x(), p.y());
    out << buf << '\n';
  }
  for (const auto& f : mesh.faces()) {
    out << f.vertices.size();
    for (int v : f.vertices) out << ' ' << v;
    out << '\n';
  }
}

Mesh2D load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file '" + path + "'");
  return read_mesh(in);
}

void save_mesh(const Mesh2D& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MeshError("cannot write mesh file '" + path + "'");
  write_mesh(mesh, out);
  if (!out) throw MeshError("write failed for '" + path + "'");
}

}  // namespace serddr
