#include "serddr/verify_suite.hpp"

#include "serddr/rotrot.hpp"
#include "serddr/sddr2d.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace serddr {

using Eigen::VectorXd;

ComplexKind parse_complex(const std::string& name) {
  if (name == "ddr") return ComplexKind::ddr;
  if (name == "sddr") return ComplexKind::sddr;
  if (name == "rotrot") return ComplexKind::rotrot;
  if (name == "srotrot") return ComplexKind::srotrot;
  if (name == "all") return ComplexKind::all;
  throw std::invalid_argument("unknown complex '" + name + "'");
}

std::string to_string(ComplexKind kind) {
  switch (kind) {
    case ComplexKind::ddr: return "ddr";
    case ComplexKind::sddr: return "sddr";
    case ComplexKind::rotrot: return "rotrot";
    case ComplexKind::srotrot: return "srotrot";
    case ComplexKind::all: return "all";
  }
  return "";
}

std::array<int, 3> expected_betti(const Mesh2D& mesh) { return {1, 1 - mesh.euler_characteristic(), 0}; }

double sparse_complex_residual(const SparseMatrix& A, const SparseMatrix& B) {
  const double scale = B.norm() * A.norm();
  if (scale == 0.) return 0.;
  const SparseMatrix BA = B * A;
  return BA.norm() / scale;
}

double RandomPolynomial::eval(const Point& x, int dx, int dy) const {
  const double u = x.x() - 0.5, v = x.y() - 0.5;
  double s = 0.;
  for (size_t i = 0; i < powers.size(); ++i) {
    const int a = powers[i][0], b = powers[i][1];
    if (a < dx || b < dy) continue;
    const double fa = dx ? a : 1., fb = dy ? b : 1.;
    s += coeffs[i] * fa * fb * std::pow(u, a - dx) * std::pow(v, b - dy);
  }
  return s;
}

RandomPolynomial random_polynomial(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> dist(-1., 1.);
  RandomPolynomial p;
  for (int n = 0; n <= degree; ++n)
    for (int a = n; a >= 0; --a) {
      p.powers.push_back({a, n - a});
      p.coeffs.push_back(dist(rng));
    }
  return p;
}

namespace {

double rel(const VectorXd& a, const VectorXd& b) {
  const double n = b.norm();
  return n > 0. ? (a - b).norm() / n : (a - b).norm();
}

struct Context {
  const Mesh2D& mesh;
  int k;
  VerifyOptions opt;
  std::mt19937_64 rng;
  DDRComplex ddr;
  std::optional<SDDRComplex> sddr;
  std::optional<RotRotComplex> rr;

  Context(const Mesh2D& m, int kk, const VerifyOptions& o) : mesh(m), k(kk), opt(o), rng(o.seed), ddr(build_ddr(m, kk)) {}

  const SDDRComplex& s() {
    if (!sddr) sddr = build_sddr(mesh, ddr);
    return *sddr;
  }
  const RotRotComplex& r() {
    if (!rr) rr = build_rotrot(mesh, ddr);
    return *rr;
  }
};

void add_betti(CheckReport& rep, const std::string& name, const FiniteComplex& fc, const std::array<int, 3>& expected) {
  const CohomologyReport c = cohomology(fc);
  for (int i = 0; i < 3; ++i) {
    std::ostringstream os;
    os << "betti=" << c.betti[i] << " expected=" << expected[i];
    rep.add(name + ".betti", i, c.betti[i] == expected[i] ? 0. : 1., c.betti[i] == expected[i], os.str());
  }
}

void add_commute(CheckReport& rep, const std::string& name, int index, double worst, double tol) {
  rep.add(name, index, worst, worst <= tol);
}

void verify_ddr(Context& c, CheckReport& rep) {
  const DDRComplex& d = c.ddr;
  const double r = sparse_complex_residual(d.G, d.rot);
  rep.add("ddr.complex", 0, r, r <= c.opt.complex_tol);
  double wg = 0., wr = 0.;
  for (int t = 0; t < c.opt.n_random; ++t) {
    const RandomPolynomial q = random_polynomial(c.rng, c.k + 1);
    const VectorXd Iq = interpolate_grad(c.mesh, d.degrees, [&](const Point& x) { return q.value(x); });
    const VectorXd Ig = interpolate_rot(c.mesh, d.degrees, [&](const Point& x) { return q.grad(x); });
    wg = std::max(wg, rel(d.G * Iq, Ig));
    const RandomPolynomial a = random_polynomial(c.rng, c.k + 1), b = random_polynomial(c.rng, c.k + 1);
    const VectorXd Iv = interpolate_rot(c.mesh, d.degrees, [&](const Point& x) {
      return Eigen::Vector2d(a.value(x), b.value(x));
    });
    const VectorXd Ir = interpolate_l(c.mesh, c.k, [&](const Point& x) { return b.eval(x, 1, 0) - a.eval(x, 0, 1); });
    wr = std::max(wr, rel(d.rot * Iv, Ir));
  }
  add_commute(rep, "ddr.commute", 0, wg, c.opt.check_tol);
  add_commute(rep, "ddr.commute", 1, wr, c.opt.check_tol);
  if (c.opt.dense) add_betti(rep, "ddr", to_finite_complex(d), expected_betti(c.mesh));
}

void verify_sddr(Context& c, CheckReport& rep) {
  const SDDRComplex& s = c.s();
  const double r = sparse_complex_residual(s.G, s.rot);
  rep.add("sddr.complex", 0, r, r <= c.opt.complex_tol);
  double wg = 0., wr = 0.;
  for (int t = 0; t < c.opt.n_random; ++t) {
    const RandomPolynomial q = random_polynomial(c.rng, c.k + 1);
    const VectorXd Iq = interpolate_sgrad(c.mesh, s, [&](const Point& x) { return q.value(x); });
    const VectorXd Ig = interpolate_srot(c.mesh, s, [&](const Point& x) { return q.grad(x); });
    wg = std::max(wg, rel(s.G * Iq, Ig));
    const RandomPolynomial a = random_polynomial(c.rng, c.k + 1), b = random_polynomial(c.rng, c.k + 1);
    const VectorXd Iv = interpolate_srot(c.mesh, s, [&](const Point& x) { return Eigen::Vector2d(a.value(x), b.value(x)); });
    const VectorXd Ir = interpolate_l(c.mesh, c.k, [&](const Point& x) { return b.eval(x, 1, 0) - a.eval(x, 0, 1); });
    wr = std::max(wr, rel(s.rot * Iv, Ir));
  }
  add_commute(rep, "sddr.commute", 0, wg, c.opt.check_tol);
  add_commute(rep, "sddr.commute", 1, wr, c.opt.check_tol);
  if (!c.opt.dense) return;
  const FiniteComplex W = to_finite_complex(c.ddr), Wh = to_finite_complex(s);
  rep.append(check_assumption_A(W, Wh, sddr_maps(s), c.opt.check_tol), "sddr.");
  add_betti(rep, "sddr", Wh, expected_betti(c.mesh));
}

void verify_rotrot(Context& c, CheckReport& rep) {
  const RotRotComplex& rr = c.r();
  const double r = sparse_complex_residual(rr.uGh, rr.uRh);
  rep.add("rotrot.complex", 0, r, r <= c.opt.complex_tol);
  double wg = 0., wr = 0.;
  for (int t = 0; t < c.opt.n_random; ++t) {
    const RandomPolynomial q = random_polynomial(c.rng, c.k);
    const VectorXd Iq = interpolate_v(c.mesh, rr, [&](const Point& x) { return q.value(x); });
    const VectorXd Ig = interpolate_sigma(c.mesh, rr, [&](const Point& x) { return q.grad(x); },
                                          [](const Point&) { return 0.; });
    wg = std::max(wg, rel(rr.uGh * Iq, Ig));
    const RandomPolynomial a = random_polynomial(c.rng, c.k + 1), b = random_polynomial(c.rng, c.k + 1);
    auto rot = [&](const Point& x) { return b.eval(x, 1, 0) - a.eval(x, 0, 1); };
    const VectorXd Is = interpolate_sigma(c.mesh, rr, [&](const Point& x) { return Eigen::Vector2d(a.value(x), b.value(x)); }, rot);
    wr = std::max(wr, rel(rr.uRh * Is, interpolate_w(c.mesh, rr, rot)));
  }
  add_commute(rep, "rotrot.commute", 0, wg, c.opt.check_tol);
  add_commute(rep, "rotrot.commute", 1, wr, c.opt.check_tol);
  if (!c.opt.dense) return;
  const FiniteComplex V = to_finite_complex(rr), W = to_finite_complex(c.ddr);
  rep.append(check_assumption_B(V, W, rotrot_morphisms(rr), c.opt.check_tol), "rotrot.");
  add_betti(rep, "rotrot", V, expected_betti(c.mesh));
}

void verify_srotrot(Context& c, CheckReport& rep) {
  const RotRotComplex& rr = c.r();
  const SDDRComplex& s = c.s();
  const SerendipityRotRot sr = serendipity_rotrot(rr, s);
  const double r = sparse_complex_residual(sr.uGh, sr.uRh);
  rep.add("srotrot.complex_sparse", 0, r, r <= c.opt.complex_tol);
  if (!c.opt.dense) return;
  const SerendipityBuild b = build_serendipity_rotrot(rr, s);
  rep.append(verify_build(b, c.opt.check_tol), "srotrot.");
  // the generic construction and the sparse assembly must give the same differentials
  const Matrix dG = b.Vh.diff(0) - Matrix(sr.uGh), dR = b.Vh.diff(1) - Matrix(sr.uRh);
  const double m = std::max(dG.norm() / std::max(1., Matrix(sr.uGh).norm()), dR.norm() / std::max(1., Matrix(sr.uRh).norm()));
  rep.add("srotrot.sparse_match", 0, m, m <= c.opt.check_tol);
  add_betti(rep, "srotrot", b.Vh, expected_betti(c.mesh));
}

}  // namespace

CheckReport verify_complex(const Mesh2D& mesh, int k, ComplexKind kind, const VerifyOptions& options) {
  if (k < 1 && (kind == ComplexKind::rotrot || kind == ComplexKind::srotrot || kind == ComplexKind::all))
    throw std::invalid_argument("the rot-rot complexes need k >= 1");
  if (k < 0) throw std::invalid_argument("degree must be nonnegative");
  Context c(mesh, k, options);
  CheckReport rep;
  if (kind == ComplexKind::ddr || kind == ComplexKind::all) verify_ddr(c, rep);
  if (kind == ComplexKind::sddr || kind == ComplexKind::all) verify_sddr(c, rep);
  if (kind == ComplexKind::rotrot || kind == ComplexKind::all) verify_rotrot(c, rep);
  if (kind == ComplexKind::srotrot || kind == ComplexKind::all) verify_srotrot(c, rep);
  return rep;
}

}  // namespace serddr
