#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Sparse>

#include "fmw/modewise.hpp"

namespace fmw::fock {

using cd = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using SparseOperator = Eigen::SparseMatrix<cd>;

inline constexpr int kDefaultMaxModes = 12;

/// Oracle mode cap: FERMI_MODEWISE_MAX_MODES when set to a positive integer,
/// otherwise kDefaultMaxModes.
int max_modes();

/// Throws ResourceLimit when n_modes exceeds max_modes(), InvalidInput when < 1.
void require_within_cap(Eigen::Index n_modes);

/// Normalized amplitudes over |n_1 ... n_N>; bit i of the basis index is the
/// occupation of mode i (0-based), mode 0 being the least significant bit.
struct FockState {
  int n_modes = 0;
  StateVector amplitudes;

  static FockState basis(int n_modes, std::uint64_t occupations);
  /// Normalizes; throws InvalidInput on a zero or wrongly sized vector.
  static FockState from_amplitudes(int n_modes, StateVector amplitudes);
};

/// Jordan-Wigner Majoranas g_{2i} = b_i + b_i^dag and g_{2i+1} = i (b_i -
/// b_i^dag) with b_i |n> = (-1)^{sum_{j<i} n_j} |n - e_i> when n_i = 1. Each
/// operator is a signed permutation, so it is stored sparse.
class MajoranaOperatorSet {
 public:
  explicit MajoranaOperatorSet(int n_modes);

  int n_modes() const { return n_modes_; }
  Eigen::Index dim() const { return Eigen::Index{1} << n_modes_; }
  const SparseOperator& operator[](std::size_t alpha) const { return gammas_[alpha]; }
  std::size_t size() const { return gammas_.size(); }

  /// b_i = (g_{2i} - i g_{2i+1}) / 2.
  SparseOperator annihilator(int mode) const;
  Eigen::MatrixXcd dense(std::size_t alpha) const { return Eigen::MatrixXcd(gammas_[alpha]); }

  /// max |{g_a, g_b} - 2 delta_ab| over all pairs.
  double clifford_residual() const;

 private:
  int n_modes_;
  std::vector<SparseOperator> gammas_;
};

MajoranaOperatorSet build_majoranas(int n_modes);

/// Dense Fock matrix of sum C_ij b_i^dag b_j + sum (A_ij b_i^dag b_j^dag + h.c.).
Eigen::MatrixXcd dense_hamiltonian(const QuadraticHamiltonian& h);

/// Dense Fock matrix of (i/4) sum h_ab g_a g_b + offset.
Eigen::MatrixXcd dense_majorana_hamiltonian(const MajoranaHamiltonian& h);

struct DenseGroundState {
  FockState state;
  double energy = 0.0;
  bool degenerate = false;  // spectral gap below 1e-10
};

/// Lowest eigenvector of a dense hermitian matrix. The phase is fixed by
/// making the largest-modulus amplitude (lowest index on ties) real positive.
DenseGroundState lowest_eigenstate(const Eigen::MatrixXcd& hamiltonian, int n_modes);
DenseGroundState dense_ground_state(const QuadraticHamiltonian& h);

/// M_ab = Im <psi| g_a g_b |psi>.
CovarianceMatrix fcm_from_state(const FockState& psi);

/// Fermionic reduced density matrix of `modes`. The subset is taken in chain
/// (ascending) order; its first mode is the least significant bit of the
/// reduced basis index.
Eigen::MatrixXcd reduced_density(const FockState& psi, std::vector<int> modes);

/// Von Neumann entropy in bits of a density matrix.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

/// Entropy of reduced_density(psi, partition.a_modes), in bits.
double schmidt_entropy(const FockState& psi, const Bipartition& partition);

struct Reconstruction {
  FockState state;
  double fidelity = 0.0;
};

/// Rebuilds the decomposed pure state from its pair angles: vacuum of the
/// transformed modes, then exp[-theta_k (bA^dag bB^dag + bA bB)] per pair.
/// Fidelity is |<original|rebuilt>|.
Reconstruction reconstruct_state(const ModewiseDecomposition& d, const FockState& original);

}  // namespace fmw::fock
