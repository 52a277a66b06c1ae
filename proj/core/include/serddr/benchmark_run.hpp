#pragma once

#include "serddr/quadrot.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace serddr {

struct ResultRow {
  int level = 0;
  double h = 0.;
  int dim_linear_system = 0;
  ErrorNorms errors;
  double residual = 0.;
};

struct BenchConfig {
  MeshFamily family = MeshFamily::cartesian;
  int level_min = 1, level_max = 3;
  int k = 1;
};

ResultRow run_case(const Mesh2D& mesh, int level, int k, Variant variant);
/// One row per level, in ascending level order.
std::vector<ResultRow> run_benchmark(const BenchConfig& config, Variant variant,
                                     const std::function<void(const ResultRow&)>& on_row = {});

inline constexpr const char* kCsvHeader = "DimLinSys,h,ErrUL2,ErrURotRot,ErrPL2,ErrPGrad";
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_csv(const std::string& path, const std::vector<ResultRow>& rows);

}  // namespace serddr
