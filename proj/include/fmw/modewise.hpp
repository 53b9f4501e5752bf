#pragma once

#include <vector>

#include "fmw/gaussian.hpp"

namespace fmw {

struct DecompositionTolerances {
  /// Relative (to lambda0) bucket width for grouping local Williamson eigenvalues.
  double degeneracy = 1e-8;
  /// Classes whose cross-correlation kappa is at or below this are decoupled.
  double pair = 1e-8;
  /// Largest admissible cross-correlation entry between different classes.
  double cross = 1e-7;
  /// max |M^2 + lambda0^2| accepted as isotropic.
  double isotropy = 1e-9;
  /// Self-check on the assembled block form before returning.
  double reconstruction = 1e-8;
};

/// One entangled pair of transformed modes. kappa^2 + lambda^2 = lambda0^2 and
/// tan(2 theta) = kappa / lambda.
struct EntangledPair {
  double lambda = 0.0;
  double kappa = 0.0;
  double theta = 0.0;
  int a_mode = 0;  // row pair 2*a_mode, 2*a_mode+1 of O_A
  int b_mode = 0;  // row pair 2*b_mode, 2*b_mode+1 of O_B
};

/// A transformed local mode that carries no cross-correlation.
struct ResidualMode {
  int mode = 0;  // index into the transformed local basis
  double lambda = 0.0;
};

/// Local transforms and block structure of an isotropic state across a cut.
///
/// O_A acts on the quadratures of `partition.a_modes` in the listed order (and
/// O_B likewise). Transformed local modes are numbered so that pair k uses
/// A-mode k and B-mode k; residual modes follow the pairs on each side.
struct ModewiseDecomposition {
  Bipartition partition;
  double lambda0 = 0.0;
  Matrix O_A;
  Matrix O_B;
  std::vector<EntangledPair> pairs;  // theta descending
  std::vector<ResidualMode> residual_a;
  std::vector<ResidualMode> residual_b;

  Eigen::Index n_modes() const { return partition.n_modes(); }
};

/// Pair angle in [0, pi/4] from 2 theta = atan2(kappa, lambda).
double squeezing_angle(double lambda, double kappa);

/// Splits an isotropic (or pure) covariance matrix across `partition` into
/// entangled two-mode blocks plus decoupled local modes.
///
/// Throws NotIsotropic when M^2 != -lambda0^2, NumericalConsistency when the
/// block structure cannot be established within the tolerances, InvalidInput
/// for a bad partition.
ModewiseDecomposition modewise_decompose(const CovarianceMatrix& s, const Bipartition& partition,
                                         const DecompositionTolerances& tol = {});

/// Direct sum of the pair blocks followed by residual A then residual B
/// blocks, each residual lambda J2.
CovarianceMatrix assemble_block_fcm(const ModewiseDecomposition& d);

/// 2N x 2N orthogonal map from original (global) quadratures to transformed
/// quadratures in the assembled order: pairs (A_k, B_k), residual A, residual B.
Matrix layout_transform(const ModewiseDecomposition& d);

/// layout_transform(d) * M * layout_transform(d)^T.
Matrix transformed_fcm(const CovarianceMatrix& s, const ModewiseDecomposition& d);

/// max |transformed_fcm(s, d) - assemble_block_fcm(d)|.
double reconstruction_residual(const CovarianceMatrix& s, const ModewiseDecomposition& d);

}  // namespace fmw
