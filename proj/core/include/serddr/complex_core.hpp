#pragma once

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace serddr {

using Matrix = Eigen::MatrixXd;

constexpr double kRankTolerance = 1e-10;

struct RankResult {
  int rank = 0;                   // rank used by callers (exact when available)
  int numeric = 0;                // singular values above tau * sigma_max
  std::optional<int> exact;       // rational elimination, small rational matrices only
  bool agrees() const { return !exact || *exact == numeric; }
};

RankResult rank_details(const Matrix& M, double tau = kRankTolerance);
int numeric_rank(const Matrix& M, double tau = kRankTolerance);

/// Singular value data of one matrix: rank, orthonormal range and kernel bases.
struct Spectrum {
  int rank = 0;
  double sigma_max = 0.;
  Matrix range;   // rows x rank
  Matrix kernel;  // cols x (cols - rank)
};
Spectrum spectrum(const Matrix& M, double tau = kRankTolerance);

/// Finite cochain complex: spaces of dimension dims[i], differentials diffs[i] : V_i -> V_{i+1}.
class FiniteComplex {
public:
  FiniteComplex() = default;
  FiniteComplex(std::vector<int> dims, std::vector<Matrix> diffs);

  int n_spaces() const { return static_cast<int>(dims_.size()); }
  int dim(int i) const { return dims_[i]; }
  const std::vector<int>& dims() const { return dims_; }
  const Matrix& diff(int i) const { return diffs_[i]; }
  const std::vector<Matrix>& diffs() const { return diffs_; }

  /// Cached SVD data of diff(i).
  const Spectrum& spectrum(int i) const;
  /// Orthonormal basis of the kernel of diff(i); the whole space for the last index.
  Matrix kernel(int i) const;
  /// Largest relative residual ||D_{i+1} D_i|| / (||D_{i+1}|| ||D_i||).
  double complex_residual() const;

private:
  struct Cache;
  std::vector<int> dims_;
  std::vector<Matrix> diffs_;
  std::shared_ptr<Cache> cache_;
};

/// Extensions ext[i] : small_i -> big_i and reductions red[i] : big_i -> small_i.
struct MorphismPair {
  std::vector<Matrix> ext;
  std::vector<Matrix> red;
};

struct CheckLine {
  std::string name;
  int index = 0;
  double residual = 0.;
  bool pass = true;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckLine> lines;

  bool passed() const;
  double max_residual() const;
  void add(std::string name, int index, double residual, bool pass, std::string detail = "");
  void append(const CheckReport& other, const std::string& prefix = "");
  std::vector<CheckLine> failures() const;
};

std::ostream& operator<<(std::ostream& os, const CheckReport& report);

struct CohomologyReport {
  std::vector<int> dims, kernel_dims, image_ranks, betti;  // image_ranks[i] = rank D_{i-1}
  int euler_dims() const;
  int euler_betti() const;
};

CohomologyReport cohomology(const FiniteComplex& complex);

/// Residual tolerance for the assumption checks.
constexpr double kCheckTolerance = 1e-9;

/// Extension/reduction checks between a big complex W and a small complex Wh.
CheckReport check_assumption_A(const FiniteComplex& W, const FiniteComplex& Wh, const MorphismPair& maps,
                               double tol = kCheckTolerance);
/// Extension/reduction checks between a big complex V and a small complex W (full left inverse).
CheckReport check_assumption_B(const FiniteComplex& V, const FiniteComplex& W, const MorphismPair& maps,
                               double tol = kCheckTolerance);
CheckReport check_complex(const FiniteComplex& complex, const std::string& name, double tol = kRankTolerance);

struct ComplementDecomposition {
  std::vector<Matrix> basis;      // C_i as columns of |V_i| x |C_i|
  std::vector<Matrix> coords;     // Pi_{C_i} as a map V_i -> coordinates of C_i
  std::vector<Matrix> projector;  // Pi_{C_i} as a map V_i -> V_i
  std::vector<Matrix> restricted; // d_i on C_i in the coordinates of C_i, C_{i+1}
};

/// Complement of ext(W) in V. Optional explicit bases must span ker red.
ComplementDecomposition complement_decomposition(const FiniteComplex& V, const FiniteComplex& W,
                                                 const MorphismPair& maps,
                                                 const std::optional<std::vector<Matrix>>& explicit_bases = std::nullopt,
                                                 double tol = kCheckTolerance);

struct SerendipityBuild {
  FiniteComplex W, Wh, V;
  MorphismPair maps_A;  // W <-> Wh
  MorphismPair maps_B;  // V <-> W
  ComplementDecomposition complement;
  FiniteComplex Vh;     // Vh_i = Wh_i x C_i
  MorphismPair hat;     // Vh <-> Wh (extension (w, 0), reduction w)
  MorphismPair v_maps;  // V <-> Vh (E_V, R_V)
};

SerendipityBuild build_enhanced_serendipity(const FiniteComplex& W, const FiniteComplex& Wh,
                                            const FiniteComplex& V, const MorphismPair& maps_A,
                                            const MorphismPair& maps_B,
                                            const std::optional<std::vector<Matrix>>& complement_bases = std::nullopt,
                                            double tol = kCheckTolerance);

CheckReport verify_build(const SerendipityBuild& build, double tol = kCheckTolerance);

struct RandomInstance {
  FiniteComplex W, Wh, V;
  MorphismPair maps_A, maps_B;
};

enum class ComplexPattern { three_space, stokes };

RandomInstance random_complex_instance(unsigned long long seed, ComplexPattern pattern);

}  // namespace serddr
