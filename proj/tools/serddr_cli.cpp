#include "serddr/benchmark_run.hpp"
#include "serddr/rotrot.hpp"
#include "serddr/sddr2d.hpp"
#include "serddr/verify_suite.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <regex>

using namespace serddr;

namespace {

struct LevelRange {
  int first = 1, last = 1;
};

LevelRange parse_levels(const std::string& text) {
  static const std::regex range(R"(\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, range)) throw std::invalid_argument("levels must read 'a..b' or 'n', got '" + text + "'");
  LevelRange r;
  r.first = std::stoi(m[1]);
  r.last = m[2].matched ? std::stoi(m[2]) : r.first;
  if (r.first < 1 || r.last < r.first) throw std::invalid_argument("empty level range '" + text + "'");
  return r;
}

struct MeshOptions {
  std::string family = "cartesian";
  int level = 1;
  std::string mesh_path;

  Mesh2D load() const {
    if (!mesh_path.empty()) return load_mesh(mesh_path);
    return generate_family(parse_family(family), level);
  }
  std::string label() const { return mesh_path.empty() ? family + " level " + std::to_string(level) : mesh_path; }
};

int run_verify(const MeshOptions& mo, const std::string& complex, int k, const VerifyOptions& opt) {
  const Mesh2D mesh = mo.load();
  const CheckReport rep = verify_complex(mesh, k, parse_complex(complex), opt);
  std::cout << "# verify " << complex << " on " << mo.label() << " k=" << k << " faces=" << mesh.n_faces() << '\n'
            << rep;
  const bool ok = rep.passed();
  std::printf("# %zu checks, %zu failed, max residual %.3e: %s\n", rep.lines.size(), rep.failures().size(),
              rep.max_residual(), ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

struct DofRow {
  int dims[3];
  int reference[3];
  bool has_reference = false;
};

DofRow dof_row(const Mesh2D& mesh, int k, ComplexKind kind) {
  DofRow r{};
  const DDRComplex ddr = build_ddr(mesh, k);
  const int ddr_dims[3] = {ddr.xgrad.dimension(), ddr.xrot.dimension(), ddr.xl.dimension()};
  auto set = [](int* out, int a, int b, int c) { out[0] = a, out[1] = b, out[2] = c; };
  switch (kind) {
    case ComplexKind::ddr:
      set(r.dims, ddr_dims[0], ddr_dims[1], ddr_dims[2]);
      break;
    case ComplexKind::sddr: {
      const SDDRComplex s = build_sddr(mesh, ddr);
      set(r.dims, s.sxgrad.dimension(), s.sxrot.dimension(), s.xl.dimension());
      set(r.reference, ddr_dims[0], ddr_dims[1], ddr_dims[2]);
      r.has_reference = true;
      break;
    }
    case ComplexKind::rotrot: {
      const RotRotComplex rr = build_rotrot(mesh, ddr);
      set(r.dims, rr.n_v, rr.n_sigma, rr.n_w);
      break;
    }
    case ComplexKind::srotrot: {
      const RotRotComplex rr = build_rotrot(mesh, ddr);
      const SerendipityRotRot sr = serendipity_rotrot(rr, build_sddr(mesh, ddr));
      set(r.dims, sr.n_v, sr.n_sigma, sr.n_w);
      set(r.reference, rr.n_v, rr.n_sigma, rr.n_w);
      r.has_reference = true;
      break;
    }
    case ComplexKind::all:
      throw std::invalid_argument("dofs needs a single complex");
  }
  return r;
}

int run_dofs(const std::string& family, const std::string& levels, const std::string& complex, int k) {
  const LevelRange lr = parse_levels(levels);
  const ComplexKind kind = parse_complex(complex);
  std::printf("# %s dimensions, %s family, k=%d\n", complex.c_str(), family.c_str(), k);
  std::printf("%5s %6s %9s %9s %9s %9s", "level", "faces", "dim0", "dim1", "dim2", "total");
  if (kind == ComplexKind::sddr || kind == ComplexKind::srotrot) std::printf(" %9s %8s", "full", "saved%");
  std::printf("\n");
  for (int level = lr.first; level <= lr.last; ++level) {
    const Mesh2D mesh = generate_family(parse_family(family), level);
    const DofRow r = dof_row(mesh, k, kind);
    const int total = r.dims[0] + r.dims[1] + r.dims[2];
    std::printf("%5d %6d %9d %9d %9d %9d", level, mesh.n_faces(), r.dims[0], r.dims[1], r.dims[2], total);
    if (r.has_reference) {
      const int full = r.reference[0] + r.reference[1] + r.reference[2];
      std::printf(" %9d %8.2f", full, 100. * (full - total) / full);
    }
    std::printf("\n");
  }
  return 0;
}

std::string variant_path(const std::string& out, const std::string& variant) {
  const std::filesystem::path p(out);
  std::filesystem::path q = p.parent_path() / (p.stem().string() + "_" + variant + p.extension().string());
  return q.string();
}

int run_bench(const std::string& family, const std::string& levels, int k, const std::string& variant,
              const std::string& out) {
  const LevelRange lr = parse_levels(levels);
  BenchConfig cfg{parse_family(family), lr.first, lr.last, k};
  std::vector<Variant> variants;
  if (variant == "both") variants = {Variant::standard, Variant::serendipity};
  else variants = {parse_variant(variant)};
  for (const Variant v : variants) {
    const std::string path = variants.size() > 1 ? variant_path(out, to_string(v)) : out;
    std::fprintf(stderr, "# %s %s k=%d levels %d..%d -> %s\n", family.c_str(), to_string(v).c_str(), k, lr.first,
                 lr.last, path.c_str());
    const auto rows = run_benchmark(cfg, v, [](const ResultRow& r) {
      std::fprintf(stderr, "level %d dim %d uL2 %.3e uRR %.3e pL2 %.3e pGrad %.3e residual %.1e\n", r.level,
                   r.dim_linear_system, r.errors.u_l2, r.errors.u_rotrot, r.errors.p_l2, r.errors.p_grad, r.residual);
    });
    write_csv(path, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serendipity discrete de Rham and rot-rot complexes on polygonal meshes"};
  app.require_subcommand(1);

  MeshOptions mo;
  std::string complex = "all";
  int k = 1;
  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "run the homological checks of a complex on one mesh");
  verify->add_option("--complex", complex, "ddr, sddr, rotrot, srotrot or all")
      ->check(CLI::IsMember({"ddr", "sddr", "rotrot", "srotrot", "all"}));
  auto* fam = verify->add_option("--family", mo.family, "cartesian, triangular, hexagonal or annulus")
                  ->check(CLI::IsMember({"cartesian", "triangular", "hexagonal", "annulus"}));
  verify->add_option("--level", mo.level, "refinement level")->check(CLI::PositiveNumber);
  verify->add_option("--mesh", mo.mesh_path, "mesh file in polymesh2d format")->excludes(fam)->check(CLI::ExistingFile);
  verify->add_option("--degree,-k", k, "polynomial degree")->check(CLI::Range(0, 3));
  verify->add_option("--seed", vopt.seed, "seed of the random polynomial checks");
  verify->add_option("--samples", vopt.n_random, "random polynomials per commutation check")->check(CLI::PositiveNumber);
  verify->add_option("--complex-tol", vopt.complex_tol, "tolerance on ||D_{i+1} D_i|| (relative)");
  verify->add_option("--check-tol", vopt.check_tol, "tolerance of the remaining checks");
  bool no_dense = false;
  verify->add_flag("--no-dense", no_dense, "skip the SVD based checks");

  std::string family = "cartesian", levels = "1..3";
  auto* dofs = app.add_subcommand("dofs", "print space dimensions over a range of levels");
  dofs->add_option("--complex", complex, "ddr, sddr, rotrot or srotrot")
      ->check(CLI::IsMember({"ddr", "sddr", "rotrot", "srotrot"}));
  dofs->add_option("--family", family)->check(CLI::IsMember({"cartesian", "triangular", "hexagonal", "annulus"}));
  dofs->add_option("--levels", levels, "level range a..b");
  dofs->add_option("--degree,-k", k)->check(CLI::Range(0, 3));

  std::string variant = "both", out = "bench.csv";
  auto* bench = app.add_subcommand("bench", "quad-rot convergence benchmark written as CSV");
  bench->add_option("--family", family)->check(CLI::IsMember({"cartesian", "triangular", "hexagonal"}));
  bench->add_option("--levels", levels, "level range a..b");
  bench->add_option("--degree,-k", k)->check(CLI::Range(1, 3));
  bench->add_option("--variant", variant)->check(CLI::IsMember({"standard", "serendipity", "both"}));
  bench->add_option("--out", out, "CSV path; 'both' appends _standard and _serendipity to the stem");

  CLI11_PARSE(app, argc, argv);
  try {
    if (verify->parsed()) {
      vopt.dense = !no_dense;
      return run_verify(mo, complex, k, vopt);
    }
    if (dofs->parsed()) {
      if (complex == "all") complex = "ddr";
      return run_dofs(family, levels, complex, k);
    }
    return run_bench(family, levels, k, variant, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
