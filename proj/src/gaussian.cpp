#include "fmw/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "fmw/errors.hpp"

namespace fmw {

namespace {

using cd = std::complex<double>;

// Majorana expansion of annihilators: b_i = sum_a W(i, a) g_a with
// b_i = (g_{2i} - i g_{2i+1}) / 2 in 0-based quadrature indices.
ComplexMatrix annihilator_weights(Eigen::Index n) {
  ComplexMatrix w = ComplexMatrix::Zero(n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    w(i, 2 * i) = 0.5;
    w(i, 2 * i + 1) = cd(0.0, -0.5);
  }
  return w;
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(const Matrix& m) : CovarianceMatrix(AntisymmetricMatrix(m)) {}

CovarianceMatrix::CovarianceMatrix(AntisymmetricMatrix m) : m_(std::move(m)) {
  const Matrix neg_sq = -(m_.entries() * m_.entries());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(neg_sq, Eigen::EigenvaluesOnly);
  const double bound = (1.0 + kPhysicalityTolerance) * (1.0 + kPhysicalityTolerance);
  std::vector<double> offending;
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); k += 2) {
    // eigenvalues ascend and come in degenerate pairs
    const double lam2 = eig.eigenvalues()(k + 1);
    if (lam2 > bound) offending.push_back(std::sqrt(lam2));
  }
  if (!offending.empty()) {
    std::ostringstream msg;
    msg << "unphysical covariance matrix: Williamson eigenvalues above 1:";
    for (double v : offending) msg << ' ' << v;
    throw InvalidInput(msg.str());
  }
}

void QuadraticHamiltonian::validate() const {
  if (C.rows() != C.cols() || A.rows() != A.cols() || C.rows() != A.rows() || C.rows() == 0) {
    throw InvalidInput("hamiltonian needs square N x N matrices C and A with N >= 1");
  }
  const double herm = (C - C.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12) {
    std::ostringstream msg;
    msg << "hopping matrix C is not hermitian: max |C - C^dag| = " << herm;
    throw InvalidInput(msg.str());
  }
  const double anti = (A + A.transpose()).cwiseAbs().maxCoeff();
  if (anti > 1e-12) {
    std::ostringstream msg;
    msg << "pairing matrix A is not antisymmetric: max |A + A^T| = " << anti;
    throw InvalidInput(msg.str());
  }
}

void Bipartition::validate(Eigen::Index n_modes) const {
  std::vector<int> seen(static_cast<std::size_t>(std::max<Eigen::Index>(n_modes, 0)), 0);
  auto mark = [&](int mode) {
    if (mode < 0 || mode >= n_modes) {
      std::ostringstream msg;
      msg << "mode index " << mode + 1 << " out of range 1.." << n_modes;
      throw InvalidInput(msg.str());
    }
    if (seen[static_cast<std::size_t>(mode)]++ != 0) {
      std::ostringstream msg;
      msg << "mode index " << mode + 1 << " appears more than once in the partition";
      throw InvalidInput(msg.str());
    }
  };
  for (int mode : a_modes) mark(mode);
  for (int mode : b_modes) mark(mode);
  if (this->n_modes() != n_modes) {
    std::ostringstream msg;
    msg << "partition covers " << this->n_modes() << " of " << n_modes << " modes";
    throw InvalidInput(msg.str());
  }
}

MajoranaHamiltonian hamiltonian_to_majorana(const QuadraticHamiltonian& h) {
  h.validate();
  const Eigen::Index n = h.n_modes();
  const ComplexMatrix w = annihilator_weights(n);
  const ComplexMatrix wbar = w.conjugate();

  // H = sum_ab T_ab g_a g_b with
  //   C_ij b_i^dag b_j        -> (W^*)^T C W
  //   A_ij b_i^dag b_j^dag    -> (W^*)^T A W^*
  //   A_ij^* b_j b_i          -> W^T A^dag W
  ComplexMatrix t = wbar.transpose() * h.C * w;
  t += wbar.transpose() * h.A * wbar;
  t += w.transpose() * h.A.adjoint() * w;

  // g_a g_b = delta_ab + antisymmetric part, so the symmetric part of T is a
  // scalar and the antisymmetric part equals (i/4) h.
  const ComplexMatrix t_anti = 0.5 * (t - t.transpose());
  const ComplexMatrix h_complex = cd(0.0, -4.0) * t_anti;
  const double imag_residual = h_complex.imag().cwiseAbs().maxCoeff();
  if (imag_residual > 1e-10 * std::max(1.0, h_complex.cwiseAbs().maxCoeff())) {
    throw NumericalConsistency("Majorana coupling matrix came out complex");
  }
  MajoranaHamiltonian out;
  out.h = AntisymmetricMatrix::from_rounded(h_complex.real());
  out.offset = t.trace().real();
  return out;
}

GroundState ground_state_fcm(const QuadraticHamiltonian& h) {
  const MajoranaHamiltonian mh = hamiltonian_to_majorana(h);
  const WilliamsonForm form = williamson_form(mh.h);
  const Eigen::Index n = h.n_modes();

  GroundState gs;
  const Matrix vac = symplectic_unit(n);
  gs.fcm = CovarianceMatrix(AntisymmetricMatrix::from_rounded(form.O.transpose() * vac * form.O));
  gs.quasiparticle_energies = form.lambdas;
  double sum = 0.0;
  for (double e : form.lambdas) sum += e;
  gs.energy = mh.offset - 0.5 * sum;
  gs.degenerate = !form.lambdas.empty() && form.lambdas.back() <= kGroundDegeneracyTolerance;
  return gs;
}

bool is_pure(const CovarianceMatrix& s, double tol) {
  const Matrix& m = s.matrix();
  return max_abs(m * m + Matrix::Identity(m.rows(), m.cols())) <= tol;
}

double isotropy_deviation(const CovarianceMatrix& s) {
  const Matrix sq = s.matrix() * s.matrix();
  const double lambda0_sq = -sq.trace() / static_cast<double>(sq.rows());
  return max_abs(sq + lambda0_sq * Matrix::Identity(sq.rows(), sq.cols()));
}

std::optional<double> isotropy_parameter(const CovarianceMatrix& s, double tol) {
  const Matrix sq = s.matrix() * s.matrix();
  const double lambda0_sq = std::max(0.0, -sq.trace() / static_cast<double>(sq.rows()));
  if (max_abs(sq + lambda0_sq * Matrix::Identity(sq.rows(), sq.cols())) > tol) return std::nullopt;
  return std::sqrt(lambda0_sq);
}

CovarianceMatrix restrict(const CovarianceMatrix& s, const std::vector<int>& modes) {
  if (modes.empty()) throw InvalidInput("restriction needs at least one mode");
  std::set<int> unique;
  for (int mode : modes) {
    if (mode < 0 || mode >= s.n_modes()) {
      std::ostringstream msg;
      msg << "mode index " << mode + 1 << " out of range 1.." << s.n_modes();
      throw InvalidInput(msg.str());
    }
    if (!unique.insert(mode).second) {
      std::ostringstream msg;
      msg << "mode index " << mode + 1 << " repeated";
      throw InvalidInput(msg.str());
    }
  }
  const auto k = static_cast<Eigen::Index>(modes.size());
  Matrix sub(2 * k, 2 * k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      sub.block<2, 2>(2 * r, 2 * c) = s.matrix().block<2, 2>(2 * modes[static_cast<std::size_t>(r)],
                                                             2 * modes[static_cast<std::size_t>(c)]);
    }
  }
  return CovarianceMatrix(AntisymmetricMatrix::from_rounded(sub));
}

Matrix haar_orthogonal(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) g(r, c) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (r(c, c) < 0.0) q.col(c) *= -1.0;
  }
  return q;
}

CovarianceMatrix random_pure_fcm(Eigen::Index n_modes, std::uint64_t seed) {
  if (n_modes < 1) throw InvalidInput("random_pure_fcm needs at least one mode");
  Rng rng(seed);
  const Matrix r = haar_orthogonal(2 * n_modes, rng);
  return CovarianceMatrix(AntisymmetricMatrix::from_rounded(r * symplectic_unit(n_modes) * r.transpose()));
}

CovarianceMatrix isotropic_fcm(Eigen::Index n_modes, double lambda0, std::uint64_t seed) {
  if (!(lambda0 >= 0.0 && lambda0 <= 1.0)) {
    std::ostringstream msg;
    msg << "lambda0 must lie in [0, 1], got " << lambda0;
    throw InvalidInput(msg.str());
  }
  const CovarianceMatrix pure = random_pure_fcm(n_modes, seed);
  return CovarianceMatrix(AntisymmetricMatrix::from_rounded(lambda0 * pure.matrix()));
}

CovarianceMatrix diagonal_fcm(const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw InvalidInput("diagonal_fcm needs at least one mode");
  return CovarianceMatrix(AntisymmetricMatrix::from_rounded(block_diagonal_j2(lambdas)));
}

CovarianceMatrix vacuum_fcm(Eigen::Index n_modes) {
  if (n_modes < 1) throw InvalidInput("vacuum_fcm needs at least one mode");
  return CovarianceMatrix(AntisymmetricMatrix::from_rounded(symplectic_unit(n_modes)));
}

QuadraticHamiltonian random_hamiltonian(Eigen::Index n_modes, std::uint64_t seed, double scale) {
  if (n_modes < 1) throw InvalidInput("random_hamiltonian needs at least one mode");
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  auto draw = [&](Eigen::Index n) {
    ComplexMatrix x(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
      for (Eigen::Index r = 0; r < n; ++r) x(r, c) = cd(normal(rng), normal(rng));
    }
    return x;
  };
  QuadraticHamiltonian h;
  const ComplexMatrix c = draw(n_modes);
  const ComplexMatrix a = draw(n_modes);
  h.C = 0.5 * (c + c.adjoint());
  h.A = 0.5 * (a - a.transpose());
  return h;
}

}  // namespace fmw
