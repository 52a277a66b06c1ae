#include "serddr/complex_core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace serddr {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Recovers x = p/q with q <= 2^20 when the double is exactly such a fraction.
std::optional<Rational> as_rational(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  if (x == std::floor(x) && std::abs(x) < 1e15) return Rational(static_cast<long long>(x));
  // continued fraction convergents
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    const double a = std::floor(r);
    if (std::abs(a) > 1e12) break;
    const long long ai = static_cast<long long>(a);
    const long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > (1LL << 20)) break;
    if (static_cast<double>(p2) / static_cast<double>(q2) == x) return Rational(p2, q2);
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double frac = r - a;
    if (frac == 0.) break;
    r = 1. / frac;
  }
  return std::nullopt;
}

std::optional<int> exact_rank(const Matrix& M) {
  const int m = static_cast<int>(M.rows()), n = static_cast<int>(M.cols());
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      auto r = as_rational(M(i, j));
      if (!r) return std::nullopt;
      a[i][j] = *r;
    }
  }
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int piv = -1;
    for (int i = rank; i < m; ++i)
      if (a[i][col] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    for (int i = rank + 1; i < m; ++i) {
      if (a[i][col] == 0) continue;
      const Rational f = a[i][col] / a[rank][col];
      for (int j = col; j < n; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

int count_above(const Eigen::VectorXd& sv, double tau) {
  if (sv.size() == 0) return 0;
  const double smax = sv.maxCoeff();
  if (!(smax > 0.)) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i) r += sv(i) > tau * smax ? 1 : 0;
  return r;
}

double fro(const Matrix& M) { return M.size() == 0 ? 0. : M.norm(); }

double rel_diff(const Matrix& L, const Matrix& R) {
  if (L.rows() != R.rows() || L.cols() != R.cols()) throw std::invalid_argument("rel_diff: shape mismatch");
  if (L.size() == 0) return 0.;
  return (L - R).norm() / std::max({fro(L), fro(R), 1.});
}

void require_shape(const Matrix& M, int rows, int cols, const std::string& what) {
  if (M.rows() != rows || M.cols() != cols) {
    std::ostringstream os;
    os << what << ": expected " << rows << "x" << cols << ", got " << M.rows() << "x" << M.cols();
    throw std::invalid_argument(os.str());
  }
}

void check_maps_shapes(const FiniteComplex& big, const FiniteComplex& small, const MorphismPair& maps) {
  if (big.n_spaces() != small.n_spaces()) throw std::invalid_argument("complexes of different lengths");
  if (static_cast<int>(maps.ext.size()) != big.n_spaces() || static_cast<int>(maps.red.size()) != big.n_spaces())
    throw std::invalid_argument("morphism pair length does not match the complexes");
  for (int i = 0; i < big.n_spaces(); ++i) {
    require_shape(maps.ext[i], big.dim(i), small.dim(i), "extension " + std::to_string(i));
    require_shape(maps.red[i], small.dim(i), big.dim(i), "reduction " + std::to_string(i));
  }
}

// Number of independent directions of X outside the range described by sp.
int rank_increase(const Spectrum& sp, const Matrix& X, double tau, double& residual) {
  if (X.cols() == 0) {
    residual = 0.;
    return 0;
  }
  Matrix P = X;
  if (sp.range.cols() > 0) P -= sp.range * (sp.range.transpose() * X);
  residual = fro(P);
  Eigen::BDCSVD<Matrix> svd(P);
  // kernel bases are orthonormal, so 1 is the natural floor of the scale
  const double scale = std::max({sp.sigma_max, fro(X), 1.});
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) r += svd.singularValues()(i) > tau * scale ? 1 : 0;
  return r;
}

// Shared body of the A and B suites; `full_identity` selects B1 over A1.
CheckReport check_pair(const FiniteComplex& big, const FiniteComplex& small, const MorphismPair& maps,
                       double tol, bool full_identity) {
  check_maps_shapes(big, small, maps);
  CheckReport rep;
  const std::string p = full_identity ? "B" : "A";
  const int m = big.n_spaces();
  for (int i = 0; i < m; ++i) {
    if (full_identity) {
      const Matrix I = Matrix::Identity(small.dim(i), small.dim(i));
      const double r = rel_diff(maps.red[i] * maps.ext[i], I);
      rep.add("B1", i, r, r <= tol);
    } else {
      const Matrix K = small.kernel(i);
      const double r = rel_diff(maps.red[i] * (maps.ext[i] * K), K);
      rep.add("A1", i, r, r <= tol);
    }
  }
  for (int i = 0; i < m; ++i) {
    const Matrix K = big.kernel(i);
    const Matrix X = maps.ext[i] * (maps.red[i] * K) - K;
    double res = 0.;
    const Spectrum empty{0, 0., Matrix(big.dim(i), 0), Matrix()};
    const int inc = rank_increase(i == 0 ? empty : big.spectrum(i - 1), X, kRankTolerance, res);
    res /= std::max(fro(K), 1.);
    std::string detail = inc ? "rank increases by " + std::to_string(inc) : "";
    rep.add(p + "2", i, res, inc == 0, detail);
  }
  for (int i = 0; i + 1 < m; ++i) {
    const double r1 = rel_diff(maps.red[i + 1] * big.diff(i), small.diff(i) * maps.red[i]);
    rep.add(p + "3.red", i, r1, r1 <= tol);
    const double r2 = rel_diff(maps.ext[i + 1] * small.diff(i), big.diff(i) * maps.ext[i]);
    rep.add(p + "3.ext", i, r2, r2 <= tol);
    if (!full_identity) {
      const double r3 = rel_diff(small.diff(i), maps.red[i + 1] * big.diff(i) * maps.ext[i]);
      rep.add("A.reduced_diff", i, r3, r3 <= tol);
    }
  }
  return rep;
}

Matrix hstack(const Matrix& A, const Matrix& B) {
  Matrix M(A.rows(), A.cols() + B.cols());
  M << A, B;
  return M;
}

Matrix vstack(const Matrix& A, const Matrix& B) {
  Matrix M(A.rows() + B.rows(), A.cols());
  M << A, B;
  return M;
}

Matrix blockdiag(const Matrix& A, const Matrix& B) {
  Matrix M = Matrix::Zero(A.rows() + B.rows(), A.cols() + B.cols());
  M.topLeftCorner(A.rows(), A.cols()) = A;
  M.bottomRightCorner(B.rows(), B.cols()) = B;
  return M;
}

}  // namespace

RankResult rank_details(const Matrix& M, double tau) {
  if (!(tau > 0. && tau <= 1e-6)) throw std::invalid_argument("rank tolerance must lie in (0, 1e-6]");
  RankResult r;
  if (M.size() == 0) return r;
  Eigen::BDCSVD<Matrix> svd(M);
  r.numeric = count_above(svd.singularValues(), tau);
  r.rank = r.numeric;
  if (M.size() <= 400) {
    r.exact = exact_rank(M);
    if (r.exact) r.rank = *r.exact;
  }
  return r;
}

int numeric_rank(const Matrix& M, double tau) { return rank_details(M, tau).rank; }

Spectrum spectrum(const Matrix& M, double tau) {
  Spectrum s;
  const int rows = static_cast<int>(M.rows()), cols = static_cast<int>(M.cols());
  if (rows == 0 || cols == 0) {
    s.range = Matrix(rows, 0);
    s.kernel = Matrix::Identity(cols, cols);
    return s;
  }
  Eigen::BDCSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  s.sigma_max = sv(0);
  s.rank = count_above(sv, tau);
  s.range = svd.matrixU().leftCols(s.rank);
  s.kernel = svd.matrixV().rightCols(cols - s.rank);
  return s;
}

struct FiniteComplex::Cache {
  std::mutex mutex;
  std::vector<std::unique_ptr<Spectrum>> spectra;
};

FiniteComplex::FiniteComplex(std::vector<int> dims, std::vector<Matrix> diffs)
    : dims_(std::move(dims)), diffs_(std::move(diffs)), cache_(std::make_shared<Cache>()) {
  if (dims_.empty()) throw std::invalid_argument("complex needs at least one space");
  if (diffs_.size() + 1 != dims_.size()) throw std::invalid_argument("complex needs one differential per consecutive pair");
  for (size_t i = 0; i < diffs_.size(); ++i)
    require_shape(diffs_[i], dims_[i + 1], dims_[i], "differential " + std::to_string(i));
  cache_->spectra.resize(diffs_.size());
}

const Spectrum& FiniteComplex::spectrum(int i) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto& slot = cache_->spectra.at(i);
  if (!slot) slot = std::make_unique<Spectrum>(serddr::spectrum(diffs_[i]));
  return *slot;
}

Matrix FiniteComplex::kernel(int i) const {
  if (i == n_spaces() - 1) return Matrix::Identity(dims_[i], dims_[i]);
  return spectrum(i).kernel;
}

double FiniteComplex::complex_residual() const {
  double worst = 0.;
  for (size_t i = 0; i + 1 < diffs_.size(); ++i) {
    const double scale = fro(diffs_[i + 1]) * fro(diffs_[i]);
    if (scale == 0.) continue;
    worst = std::max(worst, fro(diffs_[i + 1] * diffs_[i]) / scale);
  }
  return worst;
}

bool CheckReport::passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
}

double CheckReport::max_residual() const {
  double r = 0.;
  for (const auto& l : lines) r = std::max(r, l.residual);
  return r;
}

void CheckReport::add(std::string name, int index, double residual, bool pass, std::string detail) {
  lines.push_back({std::move(name), index, residual, pass, std::move(detail)});
}

void CheckReport::append(const CheckReport& other, const std::string& prefix) {
  for (auto l : other.lines) {
    l.name = prefix + l.name;
    lines.push_back(std::move(l));
  }
}

std::vector<CheckLine> CheckReport::failures() const {
  std::vector<CheckLine> f;
  for (const auto& l : lines)
    if (!l.pass) f.push_back(l);
  return f;
}

std::ostream& operator<<(std::ostream& os, const CheckReport& report) {
  for (const auto& l : report.lines) {
    os << l.name << ' ' << l.index << ' ' << std::scientific << std::setprecision(3) << l.residual << ' '
       << (l.pass ? "PASS" : "FAIL");
    if (!l.detail.empty()) os << ' ' << l.detail;
    os << '\n';
  }
  os << std::defaultfloat;
  return os;
}

int CohomologyReport::euler_dims() const {
  int s = 0;
  for (size_t i = 0; i < dims.size(); ++i) s += (i % 2 ? -1 : 1) * dims[i];
  return s;
}

int CohomologyReport::euler_betti() const {
  int s = 0;
  for (size_t i = 0; i < betti.size(); ++i) s += (i % 2 ? -1 : 1) * betti[i];
  return s;
}

CohomologyReport cohomology(const FiniteComplex& complex) {
  CohomologyReport r;
  const int m = complex.n_spaces();
  std::vector<int> ranks(m, 0);
  for (int i = 0; i + 1 < m; ++i) ranks[i] = complex.spectrum(i).rank;
  for (int i = 0; i < m; ++i) {
    r.dims.push_back(complex.dim(i));
    r.kernel_dims.push_back(complex.dim(i) - ranks[i]);
    r.image_ranks.push_back(i == 0 ? 0 : ranks[i - 1]);
    r.betti.push_back(r.kernel_dims.back() - r.image_ranks.back());
  }
  return r;
}

CheckReport check_complex(const FiniteComplex& complex, const std::string& name, double tol) {
  CheckReport rep;
  for (int i = 0; i + 2 < complex.n_spaces(); ++i) {
    const double scale = fro(complex.diff(i + 1)) * fro(complex.diff(i));
    const double r = scale == 0. ? 0. : fro(complex.diff(i + 1) * complex.diff(i)) / scale;
    rep.add(name, i, r, r <= tol);
  }
  return rep;
}

CheckReport check_assumption_A(const FiniteComplex& W, const FiniteComplex& Wh, const MorphismPair& maps,
                               double tol) {
  return check_pair(W, Wh, maps, tol, false);
}

CheckReport check_assumption_B(const FiniteComplex& V, const FiniteComplex& W, const MorphismPair& maps,
                               double tol) {
  return check_pair(V, W, maps, tol, true);
}

ComplementDecomposition complement_decomposition(const FiniteComplex& V, const FiniteComplex& W,
                                                 const MorphismPair& maps,
                                                 const std::optional<std::vector<Matrix>>& explicit_bases,
                                                 double tol) {
  check_maps_shapes(V, W, maps);
  const int m = V.n_spaces();
  ComplementDecomposition c;
  for (int i = 0; i < m; ++i) {
    const int nv = V.dim(i), nw = W.dim(i);
    const double b1 = rel_diff(maps.red[i] * maps.ext[i], Matrix::Identity(nw, nw));
    if (b1 > tol)
      throw std::runtime_error("complement_decomposition: reduction is not a left inverse at index " +
                               std::to_string(i));
    Matrix K;
    if (explicit_bases) {
      K = explicit_bases->at(i);
      require_shape(K, nv, nv - nw, "complement basis " + std::to_string(i));
      if (rel_diff(maps.red[i] * K, Matrix::Zero(nw, K.cols())) > tol || numeric_rank(K) != nv - nw)
        throw std::runtime_error("explicit complement basis does not span the reduction kernel at index " +
                                 std::to_string(i));
    } else {
      K = spectrum(maps.red[i]).kernel;
      if (K.cols() != nv - nw)
        throw std::runtime_error("reduction kernel has unexpected dimension at index " + std::to_string(i));
    }
    const Matrix proj = Matrix::Identity(nv, nv) - maps.ext[i] * maps.red[i];
    Matrix coords = (K.transpose() * K).ldlt().solve(K.transpose() * proj);
    c.basis.push_back(K);
    c.coords.push_back(coords);
    c.projector.push_back(K * coords);
  }
  for (int i = 0; i + 1 < m; ++i) {
    const double r = rel_diff(c.projector[i + 1] * V.diff(i), V.diff(i) * c.projector[i]);
    if (r > tol)
      throw std::runtime_error("complement not compatible with the differential at index " + std::to_string(i));
    c.restricted.push_back(c.coords[i + 1] * V.diff(i) * c.basis[i]);
  }
  return c;
}

SerendipityBuild build_enhanced_serendipity(const FiniteComplex& W, const FiniteComplex& Wh,
                                            const FiniteComplex& V, const MorphismPair& maps_A,
                                            const MorphismPair& maps_B,
                                            const std::optional<std::vector<Matrix>>& complement_bases,
                                            double tol) {
  auto describe = [](const CheckReport& rep) {
    std::ostringstream os;
    for (const auto& l : rep.failures()) os << ' ' << l.name << '[' << l.index << "]=" << l.residual;
    return os.str();
  };
  CheckReport a = check_assumption_A(W, Wh, maps_A, tol);
  if (!a.passed()) throw std::runtime_error("build_enhanced_serendipity: assumption A fails:" + describe(a));
  CheckReport b = check_assumption_B(V, W, maps_B, tol);
  if (!b.passed()) throw std::runtime_error("build_enhanced_serendipity: assumption B fails:" + describe(b));

  SerendipityBuild s{W, Wh, V, maps_A, maps_B, complement_decomposition(V, W, maps_B, complement_bases, tol),
                     {}, {}, {}};
  const int m = V.n_spaces();
  std::vector<int> dims;
  std::vector<Matrix> diffs;
  for (int i = 0; i < m; ++i) {
    const int nw = Wh.dim(i), nc = static_cast<int>(s.complement.basis[i].cols());
    dims.push_back(nw + nc);
    s.hat.ext.push_back(vstack(Matrix::Identity(nw, nw), Matrix::Zero(nc, nw)));
    s.hat.red.push_back(hstack(Matrix::Identity(nw, nw), Matrix::Zero(nw, nc)));
    s.v_maps.ext.push_back(hstack(maps_B.ext[i] * maps_A.ext[i], s.complement.basis[i]));
    s.v_maps.red.push_back(vstack(maps_A.red[i] * maps_B.red[i], s.complement.coords[i]));
    if (i + 1 < m) diffs.push_back(blockdiag(Wh.diff(i), s.complement.restricted[i]));
  }
  s.Vh = FiniteComplex(dims, diffs);
  return s;
}

CheckReport verify_build(const SerendipityBuild& s, double tol) {
  CheckReport rep;
  rep.append(check_complex(s.Vh, "complex"));
  const int m = s.V.n_spaces();
  for (int i = 0; i < m; ++i) {
    const Matrix& calR = s.maps_B.red[i];
    const Matrix& calE = s.maps_B.ext[i];
    double r;
    r = rel_diff(s.maps_A.red[i] * calR, s.hat.red[i] * s.v_maps.red[i]);
    rep.add("relation.red_red", i, r, r <= tol);
    r = rel_diff(s.hat.ext[i] * s.maps_A.red[i], s.v_maps.red[i] * calE);
    rep.add("relation.ext_red", i, r, r <= tol);
    r = rel_diff(s.maps_A.ext[i] * s.hat.red[i], calR * s.v_maps.ext[i]);
    rep.add("relation.red_ext", i, r, r <= tol);
    r = rel_diff(calE * s.maps_A.ext[i], s.v_maps.ext[i] * s.hat.ext[i]);
    rep.add("relation.ext_ext", i, r, r <= tol);
    if (i + 1 < m) {
      r = rel_diff(s.Wh.diff(i) * s.hat.red[i], s.hat.red[i + 1] * s.Vh.diff(i));
      rep.add("relation.hat_chain", i, r, r <= tol);
    }
  }
  CheckReport t = check_assumption_A(s.V, s.Vh, s.v_maps, tol);
  for (auto& l : t.lines) {
    if (l.name == "A1") l.name = "transfer.A1";
    else if (l.name == "A2") l.name = "transfer.A2";
    else if (l.name == "A3.red") l.name = "transfer.A3.red";
    else if (l.name == "A3.ext") l.name = "transfer.A3.ext";
    else if (l.name == "A.reduced_diff") l.name = "transfer.reduced_diff";
  }
  rep.append(t);
  const CohomologyReport cw = cohomology(s.W), cwh = cohomology(s.Wh), cv = cohomology(s.V), cvh = cohomology(s.Vh);
  for (int i = 0; i < m; ++i) {
    const bool same = cw.betti[i] == cwh.betti[i] && cw.betti[i] == cv.betti[i] && cw.betti[i] == cvh.betti[i];
    std::ostringstream os;
    os << "betti W=" << cw.betti[i] << " Wh=" << cwh.betti[i] << " V=" << cv.betti[i] << " Vh=" << cvh.betti[i];
    rep.add("betti_match", i, same ? 0. : 1., same, os.str());
  }
  return rep;
}

}  // namespace serddr
