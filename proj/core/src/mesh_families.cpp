#include "serddr/mesh2d.hpp"

#include <cmath>
#include <functional>
#include <map>

namespace serddr {

MeshFamily parse_family(const std::string& name) {
  if (name == "cartesian") return MeshFamily::cartesian;
  if (name == "triangular") return MeshFamily::triangular;
  if (name == "hexagonal") return MeshFamily::hexagonal;
  if (name == "annulus") return MeshFamily::annulus;
  throw std::invalid_argument("unknown mesh family '" + name + "'");
}

std::string to_string(MeshFamily family) {
  switch (family) {
    case MeshFamily::cartesian: return "cartesian";
    case MeshFamily::triangular: return "triangular";
    case MeshFamily::hexagonal: return "hexagonal";
    case MeshFamily::annulus: return "annulus";
  }
  return "unknown";
}

int cells_per_side(MeshFamily family, int level) {
  if (level < 1) throw std::invalid_argument("mesh level must be >= 1");
  if (family == MeshFamily::annulus) {
    if (level < 3) throw std::invalid_argument("annulus family requires level >= 3 to remove a hole");
    return 3 << (level - 3);
  }
  return 1 << (level - 1);
}

namespace {

using Loops = std::vector<std::vector<int>>;

Point map_to_box(const MeshFamilySpec& spec, double u, double v) {
  return {spec.lower.x() + u * (spec.upper.x() - spec.lower.x()),
          spec.lower.y() + v * (spec.upper.y() - spec.lower.y())};
}

// Grid of n x n cells; keep(i, j) decides which cells survive. Unused vertices are dropped.
Mesh2D grid_mesh(const MeshFamilySpec& spec, int n, bool split,
                 const std::function<bool(int, int)>& keep) {
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  Loops loops;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (!keep(i, j)) continue;
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      if (split) {
        loops.push_back({a, b, c});
        loops.push_back({a, c, d});
      } else {
        loops.push_back({a, b, c, d});
      }
    }
  }
  std::vector<int> renum((n + 1) * (n + 1), -1);
  std::vector<Point> points;
  for (auto& loop : loops) {
    for (int& v : loop) {
      if (renum[v] < 0) {
        renum[v] = -2;  // mark used; numbered below in grid order
      }
    }
  }
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      if (renum[id(i, j)] == -2) {
        renum[id(i, j)] = static_cast<int>(points.size());
        points.push_back(map_to_box(spec, double(i) / n, double(j) / n));
      }
    }
  }
  for (auto& loop : loops)
    for (int& v : loop) v = renum[v];
  return build_mesh(points, loops);
}

// Sutherland-Hodgman clip of a convex polygon by {x : a.x <= b}.
std::vector<Point> clip(const std::vector<Point>& poly, const Point& a, double b) {
  std::vector<Point> out;
  const size_t m = poly.size();
  for (size_t i = 0; i < m; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % m];
    const double fp = a.dot(p) - b, fq = a.dot(q) - b;
    if (fp <= 0.) out.push_back(p);
    if ((fp < 0. && fq > 0.) || (fp > 0. && fq < 0.)) {
      const double t = fp / (fp - fq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

// Voronoi cells of a staggered lattice with spacing 1/n, clipped to the unit square.
// All vertices lie on the grid of spacing 1/(8n), which makes deduplication exact.
Mesh2D hexagonal_mesh(const MeshFamilySpec& spec, int n) {
  std::vector<Point> gens;
  for (int j = 0; j <= n; ++j) {
    if (j % 2 == 0) {
      for (int i = 0; i <= n; ++i) gens.emplace_back(double(i) / n, double(j) / n);
    } else {
      for (int i = 0; i < n; ++i) gens.emplace_back((i + 0.5) / n, double(j) / n);
    }
  }
  const double a = 1. / n;
  const long scale = 8L * n;
  std::map<std::pair<long, long>, int> index;
  std::vector<std::pair<long, long>> keys;
  Loops loops;
  for (size_t g = 0; g < gens.size(); ++g) {
    std::vector<Point> cell{{0., 0.}, {1., 0.}, {1., 1.}, {0., 1.}};
    for (size_t h = 0; h < gens.size(); ++h) {
      if (h == g || (gens[h] - gens[g]).norm() > 1.5 * a) continue;
      const Point d = gens[h] - gens[g];
      cell = clip(cell, d, d.dot(0.5 * (gens[h] + gens[g])));
    }
    std::vector<int> loop;
    for (const auto& p : cell) {
      auto key = std::make_pair(std::lround(p.x() * scale), std::lround(p.y() * scale));
      auto it = index.find(key);
      int v;
      if (it == index.end()) {
        v = static_cast<int>(keys.size());
        index.emplace(key, v);
        keys.push_back(key);
      } else {
        v = it->second;
      }
      if (loop.empty() || (loop.back() != v && loop.front() != v)) loop.push_back(v);
    }
    loops.push_back(loop);
  }
  std::vector<Point> points;
  for (const auto& k : keys) points.push_back(map_to_box(spec, double(k.first) / scale, double(k.second) / scale));
  return build_mesh(points, loops);
}

}  // namespace

Mesh2D generate_family(const MeshFamilySpec& spec) {
  const int n = cells_per_side(spec.family, spec.level);
  switch (spec.family) {
    case MeshFamily::cartesian:
      return grid_mesh(spec, n, false, [](int, int) { return true; });
    case MeshFamily::triangular:
      return grid_mesh(spec, n, true, [](int, int) { return true; });
    case MeshFamily::annulus: {
      const int lo = n / 3, hi = 2 * n / 3;
      return grid_mesh(spec, n, false, [lo, hi](int i, int j) {
        return !(i >= lo && i < hi && j >= lo && j < hi);
      });
    }
    case MeshFamily::hexagonal:
      return hexagonal_mesh(spec, n);
  }
  throw std::invalid_argument("unknown mesh family");
}

}  // namespace serddr
