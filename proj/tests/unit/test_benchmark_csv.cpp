#include "serddr/benchmark_run.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

using namespace serddr;

TEST(BenchmarkCsv, HeaderAndRowFormat) {
  std::vector<ResultRow> rows(2);
  rows[0].dim_linear_system = 34;
  rows[0].h = 0.5;
  rows[0].errors = {1., 0.25, 1e-3, 3.};
  rows[1].dim_linear_system = 178;
  rows[1].h = 0.25;
  std::ostringstream os;
  write_csv(os, rows);
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "DimLinSys,h,ErrUL2,ErrURotRot,ErrPL2,ErrPGrad");
  EXPECT_NE(text.find("\n34,5.0000000000000000e-01,1.0000000000000000e+00,2.5000000000000000e-01,"
                      "1.0000000000000000e-03,3.0000000000000000e+00\n"),
            std::string::npos);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}

TEST(BenchmarkCsv, RunIsSortedAndDeterministic) {
  const BenchConfig cfg{MeshFamily::hexagonal, 1, 3, 1};
  const auto a = run_benchmark(cfg, Variant::serendipity);
  const auto b = run_benchmark(cfg, Variant::serendipity);
  ASSERT_EQ(a.size(), 3u);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].level, static_cast<int>(i) + 1);
    if (i > 0) EXPECT_LT(a[i].h, a[i - 1].h);
    EXPECT_LE(a[i].residual, 1e-9);
  }
  std::ostringstream sa, sb;
  write_csv(sa, a);
  write_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  const std::regex row(R"(\d+(,-?\d\.\d{16}e[+-]\d{2}){5})");
  std::istringstream in(sa.str());
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) EXPECT_TRUE(std::regex_match(line, row)) << line;
}

TEST(BenchmarkCsv, WritesFile) {
  const std::string path = ::testing::TempDir() + "serddr_bench_test.csv";
  write_csv(path, run_benchmark({MeshFamily::cartesian, 2, 2, 1}, Variant::standard));
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str().rfind(kCsvHeader, 0), 0u);
  std::remove(path.c_str());
  EXPECT_THROW(write_csv("/nonexistent/dir/out.csv", {}), std::runtime_error);
}

TEST(BenchmarkCsv, RejectsInvalidConfigs) {
  EXPECT_THROW(run_benchmark({MeshFamily::annulus, 3, 4, 1}, Variant::standard), std::invalid_argument);
  EXPECT_THROW(run_benchmark({MeshFamily::cartesian, 1, 2, 0}, Variant::standard), std::invalid_argument);
  EXPECT_THROW(run_benchmark({MeshFamily::cartesian, 3, 2, 1}, Variant::standard), std::invalid_argument);
}
