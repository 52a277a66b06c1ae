#include "serddr/complex_core.hpp"

#include <random>

namespace serddr {

namespace {

class Generator {
public:
  explicit Generator(unsigned long long seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Matrix gaussian(int r, int c) {
    std::normal_distribution<double> n(0., 1.);
    Matrix M(r, c);
    for (int j = 0; j < c; ++j)
      for (int i = 0; i < r; ++i) M(i, j) = n(rng_);
    return M;
  }
  // Well conditioned invertible matrix: orthogonal times diagonal in [0.5, 2].
  Matrix basis_change(int n) {
    if (n == 0) return Matrix(0, 0);
    Eigen::HouseholderQR<Matrix> qr(gaussian(n, n));
    Matrix Q = qr.householderQ();
    std::uniform_real_distribution<double> u(0.5, 2.);
    for (int j = 0; j < n; ++j) Q.col(j) *= u(rng_);
    return Q;
  }
  // Invertible r x r block of the canonical differential.
  Matrix invertible(int r) {
    Matrix M = gaussian(r, r) / std::sqrt(std::max(r, 1));
    M += 2. * Matrix::Identity(r, r);
    return M;
  }

private:
  std::mt19937_64 rng_;
};

// Canonical complex with coordinates [image | harmonic | coimage] per space.
struct Canonical {
  std::vector<int> ranks, harmonic, dims;
  std::vector<Matrix> diffs;
};

Canonical canonical(Generator& g, const std::vector<int>& ranks, const std::vector<int>& harmonic) {
  Canonical c{ranks, harmonic, {}, {}};
  const int m = static_cast<int>(harmonic.size());
  for (int i = 0; i < m; ++i) {
    const int in = i > 0 ? ranks[i - 1] : 0;
    const int out = i + 1 < m ? ranks[i] : 0;
    c.dims.push_back(in + harmonic[i] + out);
  }
  for (int i = 0; i + 1 < m; ++i) {
    Matrix D = Matrix::Zero(c.dims[i + 1], c.dims[i]);
    const int r = ranks[i];
    D.block(0, c.dims[i] - r, r, r) = g.invertible(r);
    c.diffs.push_back(D);
  }
  return c;
}

Matrix zeros(int r, int c) { return Matrix::Zero(r, c); }

Matrix blockdiag(const Matrix& A, const Matrix& B) {
  Matrix M = Matrix::Zero(A.rows() + B.rows(), A.cols() + B.cols());
  M.topLeftCorner(A.rows(), A.cols()) = A;
  M.bottomRightCorner(B.rows(), B.cols()) = B;
  return M;
}

}  // namespace

RandomInstance random_complex_instance(unsigned long long seed, ComplexPattern pattern) {
  Generator g(seed);
  const int m = pattern == ComplexPattern::stokes ? 4 : 3;

  std::vector<int> r_hat, h_hat, r_a, r_b;
  for (int i = 0; i + 1 < m; ++i) {
    r_hat.push_back(g.uniform(1, 3));
    r_a.push_back(g.uniform(0, 2));
    r_b.push_back(g.uniform(0, 2));
  }
  for (int i = 0; i < m; ++i) h_hat.push_back(g.uniform(0, 2));
  const std::vector<int> no_h(m, 0);
  const Canonical wh = canonical(g, r_hat, h_hat);
  const Canonical a = canonical(g, r_a, no_h);  // acyclic padding of W
  const Canonical b = canonical(g, r_b, no_h);  // acyclic padding of V

  auto d_at = [m](const Canonical& c, int i) -> Matrix {
    // differential c_i, with zero maps outside the range of indices
    if (i < 0 || i + 1 >= m) return Matrix();
    return c.diffs[i];
  };

  // W = Wh (+) A, V = W (+) B
  std::vector<int> dw(m), dv(m);
  std::vector<Matrix> Dw, Dv;
  for (int i = 0; i < m; ++i) {
    dw[i] = wh.dims[i] + a.dims[i];
    dv[i] = dw[i] + b.dims[i];
  }
  for (int i = 0; i + 1 < m; ++i) {
    Dw.push_back(blockdiag(wh.diffs[i], a.diffs[i]));
    Dv.push_back(blockdiag(Dw[i], b.diffs[i]));
  }

  // Homotopy-type perturbations keep the cochain relations exact.
  // U[i] : Wh_i -> A_{i-1}, S[i] : Wh_{i+1} -> Wh_{i-1}, U2[i] : W_i -> B_{i-1}
  std::vector<Matrix> U(m + 1), S(m), U2(m + 1);
  for (int i = 0; i <= m; ++i) {
    const int src = i < m ? wh.dims[i] : 0;
    const int dst = (i >= 1 && i - 1 < m) ? a.dims[i - 1] : 0;
    U[i] = 0.5 * g.gaussian(dst, src);
    const int src2 = i < m ? dw[i] : 0;
    const int dst2 = (i >= 1 && i - 1 < m) ? b.dims[i - 1] : 0;
    U2[i] = 0.5 * g.gaussian(dst2, src2);
  }
  for (int i = 0; i < m; ++i) {
    const int src = i + 1 < m ? wh.dims[i + 1] : 0;
    const int dst = i >= 1 ? wh.dims[i - 1] : 0;
    S[i] = 0.5 * g.gaussian(dst, src);
  }

  std::vector<Matrix> Ec(m), Rc(m), CalE(m), CalR(m);
  for (int i = 0; i < m; ++i) {
    // T_i = dA_{i-1} U_i + U_{i+1} dWh_i
    Matrix T = zeros(a.dims[i], wh.dims[i]);
    if (i >= 1) T += d_at(a, i - 1) * U[i];
    if (i + 1 < m) T += U[i + 1] * d_at(wh, i);
    Ec[i] = Matrix(dw[i], wh.dims[i]);
    Ec[i] << Matrix::Identity(wh.dims[i], wh.dims[i]), T;
    // N_i = dWh_{i-1} S_i dWh_i vanishes on ker dWh_i
    Matrix N = zeros(wh.dims[i], wh.dims[i]);
    if (i >= 1 && i + 1 < m) N = d_at(wh, i - 1) * S[i] * d_at(wh, i);
    Rc[i] = Matrix::Zero(wh.dims[i], dw[i]);
    Rc[i].leftCols(wh.dims[i]) = Matrix::Identity(wh.dims[i], wh.dims[i]) + N;

    Matrix T2 = zeros(b.dims[i], dw[i]);
    if (i >= 1) T2 += d_at(b, i - 1) * U2[i];
    if (i + 1 < m) T2 += U2[i + 1] * Dw[i];
    CalE[i] = Matrix(dv[i], dw[i]);
    CalE[i] << Matrix::Identity(dw[i], dw[i]), T2;
    CalR[i] = Matrix::Zero(dw[i], dv[i]);
    CalR[i].leftCols(dw[i]) = Matrix::Identity(dw[i], dw[i]);
  }

  // Random bases everywhere.
  std::vector<Matrix> Pwh(m), Pw(m), Pv(m), Pwh_inv(m), Pw_inv(m), Pv_inv(m);
  for (int i = 0; i < m; ++i) {
    Pwh[i] = g.basis_change(wh.dims[i]);
    Pw[i] = g.basis_change(dw[i]);
    Pv[i] = g.basis_change(dv[i]);
    Pwh_inv[i] = Pwh[i].inverse();
    Pw_inv[i] = Pw[i].inverse();
    Pv_inv[i] = Pv[i].inverse();
  }
  RandomInstance inst;
  std::vector<Matrix> dWh, dW, dV;
  for (int i = 0; i + 1 < m; ++i) {
    dWh.push_back(Pwh[i + 1] * wh.diffs[i] * Pwh_inv[i]);
    dW.push_back(Pw[i + 1] * Dw[i] * Pw_inv[i]);
    dV.push_back(Pv[i + 1] * Dv[i] * Pv_inv[i]);
  }
  inst.Wh = FiniteComplex(wh.dims, dWh);
  inst.W = FiniteComplex(dw, dW);
  inst.V = FiniteComplex(dv, dV);
  for (int i = 0; i < m; ++i) {
    inst.maps_A.ext.push_back(Pw[i] * Ec[i] * Pwh_inv[i]);
    inst.maps_A.red.push_back(Pwh[i] * Rc[i] * Pw_inv[i]);
    inst.maps_B.ext.push_back(Pv[i] * CalE[i] * Pw_inv[i]);
    inst.maps_B.red.push_back(Pw[i] * CalR[i] * Pv_inv[i]);
  }
  return inst;
}

}  // namespace serddr
