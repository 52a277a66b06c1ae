#include "serddr/benchmark_run.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace serddr {

ResultRow run_case(const Mesh2D& mesh, int level, int k, Variant variant) {
  const QuadRotProblem problem(mesh, k, variant);
  const QuadRotProblem::Solution sol = problem.solve();
  if (!(sol.residual <= 1e-9)) throw std::runtime_error("linear solve residual too large");
  ResultRow row;
  row.level = level;
  row.h = problem.meshsize();
  row.dim_linear_system = problem.dim_linear_system();
  row.errors = problem.errors(sol.x);
  row.residual = sol.residual;
  return row;
}

std::vector<ResultRow> run_benchmark(const BenchConfig& config, Variant variant,
                                     const std::function<void(const ResultRow&)>& on_row) {
  if (config.family == MeshFamily::annulus)
    throw std::invalid_argument("the quad-rot benchmark runs on the unit square families only");
  if (config.k < 1) throw std::invalid_argument("the quad-rot benchmark needs k >= 1");
  if (config.level_min < 1 || config.level_max < config.level_min) throw std::invalid_argument("empty level range");
  std::vector<ResultRow> rows;
  for (int level = config.level_min; level <= config.level_max; ++level) {
    rows.push_back(run_case(generate_family(config.family, level), level, config.k, variant));
    if (on_row) on_row(rows.back());
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  char buf[256];
  for (const ResultRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.16e,%.16e,%.16e,%.16e,%.16e", r.dim_linear_system, r.h, r.errors.u_l2,
                  r.errors.u_rotrot, r.errors.p_l2, r.errors.p_grad);
    out << buf << '\n';
  }
}

void write_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(out, rows);
  if (!out) throw std::runtime_error("error writing " + path);
}

}  // namespace serddr
