#pragma once

#include <vector>

#include <Eigen/Dense>

namespace fmw {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Real antisymmetric matrix of even dimension 2N.
///
/// Construction antisymmetrizes the input, (X - X^T) / 2, after checking that
/// X is square with even dimension and already antisymmetric to within
/// `kSymmetryTolerance` (scaled by max(1, |X|_max)).
class AntisymmetricMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  AntisymmetricMatrix() = default;
  explicit AntisymmetricMatrix(const Matrix& entries);

  /// Skips the antisymmetry check; still antisymmetrizes. For inputs that are
  /// antisymmetric by construction up to accumulated rounding.
  static AntisymmetricMatrix from_rounded(const Matrix& entries);

  Eigen::Index dim() const { return entries_.rows(); }
  Eigen::Index n_modes() const { return entries_.rows() / 2; }
  const Matrix& entries() const { return entries_; }
  double operator()(Eigen::Index r, Eigen::Index c) const { return entries_(r, c); }

 private:
  struct Unchecked {};
  AntisymmetricMatrix(const Matrix& entries, Unchecked);

  Matrix entries_;
};

/// O M O^T = (+) lambda_i J2 with O orthogonal and lambdas descending, >= 0.
struct WilliamsonForm {
  Matrix O;
  std::vector<double> lambdas;

  /// (+)_i lambda_i J2 assembled from `lambdas`.
  Matrix canonical() const;
};

/// J2 = [[0, -1], [1, 0]].
Matrix j2();

/// J_{2g} = (+)_{i=1}^{g} J2.
Matrix symplectic_unit(Eigen::Index g);

/// beta_{2g} = (+)_{i=1}^{g} [[0, 1], [1, 0]].
Matrix pair_swap(Eigen::Index g);

/// (+)_i values[i] J2.
Matrix block_diagonal_j2(const std::vector<double>& values);

/// Fermionic Williamson form via the real Schur decomposition, followed by a
/// per-block swap where needed so every block reads +lambda J2, then a stable
/// descending sort of the blocks. Throws InvalidInput on odd or non-square
/// input.
WilliamsonForm williamson_form(const AntisymmetricMatrix& m);
WilliamsonForm williamson_form(const Matrix& m);

/// max |O O^T - 1| <= tol. Non-square input is never orthogonal.
bool is_orthogonal(const Matrix& o, double tol);

/// Orthogonal and commuting with J_{2g}. Throws InvalidInput on odd dimension.
bool is_orthogonal_symplectic(const Matrix& q, double tol);

/// Largest absolute entry.
inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace fmw
