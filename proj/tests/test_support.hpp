#pragma once

#include <cstdint>
#include <random>

#include "fmw/canonical_forms.hpp"
#include "fmw/fock.hpp"
#include "fmw/gaussian.hpp"

namespace fmw::testing {

inline Matrix random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  Matrix x(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) x(r, c) = normal(rng);
  }
  return x;
}

inline Matrix random_antisymmetric(Eigen::Index dim, std::uint64_t seed) {
  const Matrix x = random_gaussian_matrix(dim, dim, seed);
  return x - x.transpose();
}

inline Matrix random_orthogonal(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return haar_orthogonal(dim, rng);
}

/// Conjugates the A and B quadrature blocks of `s` by independent orthogonal
/// matrices; the partition must list A then B as contiguous leading/trailing
/// modes.
inline CovarianceMatrix locally_rotated(const CovarianceMatrix& s, Eigen::Index m, std::uint64_t seed) {
  const Eigen::Index n = s.n_modes();
  Matrix r = Matrix::Zero(2 * n, 2 * n);
  r.topLeftCorner(2 * m, 2 * m) = random_orthogonal(2 * m, seed);
  r.bottomRightCorner(2 * (n - m), 2 * (n - m)) = random_orthogonal(2 * (n - m), seed + 1);
  return CovarianceMatrix(AntisymmetricMatrix::from_rounded(r * s.matrix() * r.transpose()));
}

inline Bipartition contiguous_cut(int n, int m) {
  Bipartition p;
  for (int i = 0; i < n; ++i) (i < m ? p.a_modes : p.b_modes).push_back(i);
  return p;
}

// rho = 2^-N sum_S <gamma_S^dag> gamma_S over the even Majorana monomials of
// two modes, with Wick's theorem for the quartic term.
inline Eigen::MatrixXcd two_mode_density(const Matrix& m) {
  const fock::MajoranaOperatorSet g(2);
  const std::complex<double> i{0.0, 1.0};
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(4, 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) rho += -i * m(a, b) * (g.dense(a) * g.dense(b));
  }
  const double pf = m(0, 1) * m(2, 3) - m(0, 2) * m(1, 3) + m(0, 3) * m(1, 2);
  rho -= pf * (g.dense(0) * g.dense(1) * g.dense(2) * g.dense(3));
  return rho / 4.0;
}

}  // namespace fmw::testing
