#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "fmw/canonical_forms.hpp"

namespace fmw {

using ComplexMatrix = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

/// Williamson eigenvalues may exceed 1 by at most this much.
inline constexpr double kPhysicalityTolerance = 1e-9;

/// Fermion covariance matrix M_ab = (1/2i) <[g_a, g_b]> of an N-mode Gaussian
/// state. Mode i (0-based) owns Majorana rows 2i and 2i+1.
class CovarianceMatrix {
 public:
  CovarianceMatrix() = default;

  /// Validates physicality: every Williamson eigenvalue <= 1 + 1e-9.
  explicit CovarianceMatrix(AntisymmetricMatrix m);
  explicit CovarianceMatrix(const Matrix& m);

  Eigen::Index n_modes() const { return m_.n_modes(); }
  const Matrix& matrix() const { return m_.entries(); }
  const AntisymmetricMatrix& antisymmetric() const { return m_; }

 private:
  AntisymmetricMatrix m_;
};

/// H = sum C_ij b_i^dag b_j + sum (A_ij b_i^dag b_j^dag + h.c.).
struct QuadraticHamiltonian {
  ComplexMatrix C;  // hermitian N x N
  ComplexMatrix A;  // antisymmetric N x N

  Eigen::Index n_modes() const { return C.rows(); }

  /// Throws InvalidInput unless C is hermitian and A antisymmetric to 1e-12.
  void validate() const;
};

/// H = (i/4) sum_ab h_ab g_a g_b + offset.
struct MajoranaHamiltonian {
  AntisymmetricMatrix h;
  double offset = 0.0;
};

/// Disjoint ordered mode lists covering 0..N-1. Indices are 0-based here;
/// the CLI and JSON formats are 1-based.
struct Bipartition {
  std::vector<int> a_modes;
  std::vector<int> b_modes;

  /// Throws InvalidInput unless A and B partition {0, ..., n_modes - 1}.
  void validate(Eigen::Index n_modes) const;
  Eigen::Index n_modes() const { return static_cast<Eigen::Index>(a_modes.size() + b_modes.size()); }
};

/// Ground-state covariance matrix plus its energy and quasi-particle spectrum.
struct GroundState {
  CovarianceMatrix fcm;
  double energy = 0.0;
  std::vector<double> quasiparticle_energies;  // descending
  bool degenerate = false;
};

/// Ground-state degeneracy threshold on the smallest quasi-particle energy.
inline constexpr double kGroundDegeneracyTolerance = 1e-8;

MajoranaHamiltonian hamiltonian_to_majorana(const QuadraticHamiltonian& h);

/// Quasi-particle vacuum of `h`: M = O^T (+)J2 O with O from the Williamson
/// form of the Majorana coupling matrix.
GroundState ground_state_fcm(const QuadraticHamiltonian& h);

bool is_pure(const CovarianceMatrix& s, double tol);

/// lambda0 with M^2 = -lambda0^2 1, or nullopt when M is not isotropic.
std::optional<double> isotropy_parameter(const CovarianceMatrix& s, double tol);

/// max |M^2 + lambda0^2 1| with lambda0^2 the mean diagonal of -M^2.
double isotropy_deviation(const CovarianceMatrix& s);

/// Principal submatrix on the quadratures of `modes`, in the given order.
CovarianceMatrix restrict(const CovarianceMatrix& s, const std::vector<int>& modes);

/// Haar-random element of O(dim): QR of a standard Gaussian matrix with the
/// signs of diag(R) moved into Q.
Matrix haar_orthogonal(Eigen::Index dim, Rng& rng);

CovarianceMatrix random_pure_fcm(Eigen::Index n_modes, std::uint64_t seed);
CovarianceMatrix isotropic_fcm(Eigen::Index n_modes, double lambda0, std::uint64_t seed);

/// (+)_i lambdas[i] J2, e.g. a thermal state with lambda_i = tanh(beta e_i / 2).
CovarianceMatrix diagonal_fcm(const std::vector<double>& lambdas);

/// (+)_i J2, the Fock vacuum.
CovarianceMatrix vacuum_fcm(Eigen::Index n_modes);

/// Random hermitian C and antisymmetric A with entries of order `scale`.
QuadraticHamiltonian random_hamiltonian(Eigen::Index n_modes, std::uint64_t seed, double scale = 1.0);

}  // namespace fmw
