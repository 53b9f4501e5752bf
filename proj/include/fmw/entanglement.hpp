#pragma once

#include <array>
#include <vector>

#include "fmw/modewise.hpp"

namespace fmw {

/// Mode entanglement of a decomposed state. Entropies are in bits.
struct EntanglementReport {
  std::vector<double> pair_entropies;
  double total_modes_entropy = 0.0;
  std::vector<bool> pair_npt_flags;
  bool separable = true;
  /// Sum over pairs of |min partial-transpose eigenvalue| for NPT pairs. A
  /// convenience figure, not an entanglement measure with operational meaning.
  double negativity_sum = 0.0;
};

/// Two diagonal blocks of a two-mode isotropic pair density matrix:
/// `even` on {|00>, |11>}, `odd` on {|01>, |10>}.
struct TwoModeBlocks {
  Eigen::Matrix2d even;
  Eigen::Matrix2d odd;

  Eigen::Matrix4d full() const;
};

/// -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0. Inputs within 1e-12 of
/// [0, 1] are clamped; anything further out throws InvalidInput.
double binary_entropy(double p);

/// Sum of binary_entropy(cos^2 theta_k). Requires lambda0 = 1 within 1e-9.
EntanglementReport pure_mode_entanglement(const ModewiseDecomposition& d);

/// kappa > (1 - lambda0^2) / 2, strictly. Requires 0 <= kappa <= lambda0 <= 1
/// (1e-12 slack).
bool ppt_pair_entangled(double lambda0, double kappa);

/// Pair density matrix blocks for an isotropic pair with kappa^2 + lambda^2 =
/// lambda0^2 (checked to 1e-9).
TwoModeBlocks two_mode_block_matrix(double lambda0, double lambda, double kappa);

/// Smallest eigenvalue after the partial transpose, which moves the
/// off-diagonal 2 kappa / 4 entries from the even block to the odd block.
double ppt_min_eigenvalue(double lambda0, double lambda, double kappa);

/// Per-pair PPT verdicts; separable iff no pair is NPT.
EntanglementReport isotropic_separability(const ModewiseDecomposition& d);

}  // namespace fmw
