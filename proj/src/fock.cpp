#include "fmw/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "fmw/errors.hpp"

namespace fmw::fock {

namespace {

constexpr cd kI{0.0, 1.0};

int jw_sign(std::uint64_t x, int mode) {
  const std::uint64_t below = x & ((std::uint64_t{1} << mode) - 1);
  return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

SparseOperator identity(Eigen::Index dim) {
  SparseOperator id(dim, dim);
  id.setIdentity();
  return id;
}

// Joint vacuum of the given annihilators: the product of the commuting
// projectors b_k b_k^dag = 1 - n_k applied to a fixed pseudo-random vector.
StateVector transformed_vacuum(const std::vector<SparseOperator>& annihilators, Eigen::Index dim) {
  for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
    std::mt19937_64 rng(0x5eed0000ULL + attempt);
    std::normal_distribution<double> normal;
    StateVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = cd(normal(rng), normal(rng));
    v /= v.norm();
    for (const SparseOperator& b : annihilators) {
      const StateVector created = SparseOperator(b.adjoint()) * v;
      v = b * created;
    }
    const double norm = v.norm();
    if (norm > 1e-6) return v / norm;
  }
  throw NumericalConsistency("could not project onto the transformed vacuum");
}

}  // namespace

int max_modes() {
  if (const char* env = std::getenv("FERMI_MODEWISE_MAX_MODES")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0 && value <= 30) return static_cast<int>(value);
  }
  return kDefaultMaxModes;
}

void require_within_cap(Eigen::Index n_modes) {
  if (n_modes < 1) throw InvalidInput("Fock oracle needs at least one mode");
  if (n_modes > max_modes()) {
    std::ostringstream msg;
    msg << "Fock oracle limited to " << max_modes() << " modes, requested " << n_modes
        << " (set FERMI_MODEWISE_MAX_MODES to raise the cap)";
    throw ResourceLimit(msg.str());
  }
}

FockState FockState::basis(int n_modes, std::uint64_t occupations) {
  require_within_cap(n_modes);
  const Eigen::Index dim = Eigen::Index{1} << n_modes;
  if (occupations >= static_cast<std::uint64_t>(dim)) throw InvalidInput("occupation pattern out of range");
  FockState psi{n_modes, StateVector::Zero(dim)};
  psi.amplitudes(static_cast<Eigen::Index>(occupations)) = 1.0;
  return psi;
}

FockState FockState::from_amplitudes(int n_modes, StateVector amplitudes) {
  require_within_cap(n_modes);
  if (amplitudes.size() != (Eigen::Index{1} << n_modes)) {
    throw InvalidInput("amplitude vector length must be 2^n_modes");
  }
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw InvalidInput("cannot normalize a zero state");
  return {n_modes, amplitudes / norm};
}

MajoranaOperatorSet::MajoranaOperatorSet(int n_modes) : n_modes_(n_modes) {
  require_within_cap(n_modes);
  const Eigen::Index d = dim();
  gammas_.reserve(static_cast<std::size_t>(2 * n_modes));
  for (int mode = 0; mode < n_modes; ++mode) {
    const std::uint64_t flip = std::uint64_t{1} << mode;
    std::vector<Eigen::Triplet<cd>> even, odd;
    even.reserve(static_cast<std::size_t>(d));
    odd.reserve(static_cast<std::size_t>(d));
    for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(d); ++x) {
      const auto row = static_cast<Eigen::Index>(x ^ flip);
      const auto col = static_cast<Eigen::Index>(x);
      const double s = jw_sign(x, mode);
      const bool occupied = (x & flip) != 0;
      // b + b^dag moves |x> to s |x ^ e_i>; i(b - b^dag) adds +-i.
      even.emplace_back(row, col, cd(s, 0.0));
      odd.emplace_back(row, col, kI * s * (occupied ? 1.0 : -1.0));
    }
    SparseOperator ge(d, d), go(d, d);
    ge.setFromTriplets(even.begin(), even.end());
    go.setFromTriplets(odd.begin(), odd.end());
    gammas_.push_back(std::move(ge));
    gammas_.push_back(std::move(go));
  }
}

SparseOperator MajoranaOperatorSet::annihilator(int mode) const {
  return SparseOperator(0.5 * gammas_[static_cast<std::size_t>(2 * mode)] -
                        cd(0.0, 0.5) * gammas_[static_cast<std::size_t>(2 * mode + 1)]);
}

double MajoranaOperatorSet::clifford_residual() const {
  const SparseOperator id = identity(dim());
  double worst = 0.0;
  for (std::size_t a = 0; a < gammas_.size(); ++a) {
    for (std::size_t b = a; b < gammas_.size(); ++b) {
      SparseOperator anti = gammas_[a] * gammas_[b] + gammas_[b] * gammas_[a];
      if (a == b) anti -= 2.0 * id;
      for (Eigen::Index k = 0; k < anti.outerSize(); ++k) {
        for (SparseOperator::InnerIterator it(anti, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
      }
    }
  }
  return worst;
}

MajoranaOperatorSet build_majoranas(int n_modes) { return MajoranaOperatorSet(n_modes); }

Eigen::MatrixXcd dense_hamiltonian(const QuadraticHamiltonian& h) {
  h.validate();
  const auto n = static_cast<int>(h.n_modes());
  const MajoranaOperatorSet gammas(n);
  std::vector<SparseOperator> b, bdag;
  for (int i = 0; i < n; ++i) {
    b.push_back(gammas.annihilator(i));
    bdag.push_back(SparseOperator(b.back().adjoint()));
  }
  SparseOperator out(gammas.dim(), gammas.dim());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (h.C(i, j) != 0.0) out += h.C(i, j) * (bdag[i] * b[j]);
      if (h.A(i, j) != 0.0) {
        const SparseOperator pair = bdag[i] * bdag[j];
        out += h.A(i, j) * pair;
        out += std::conj(h.A(i, j)) * SparseOperator(pair.adjoint());
      }
    }
  }
  return Eigen::MatrixXcd(out);
}

Eigen::MatrixXcd dense_majorana_hamiltonian(const MajoranaHamiltonian& h) {
  const auto n = static_cast<int>(h.h.n_modes());
  const MajoranaOperatorSet gammas(n);
  SparseOperator out = h.offset * identity(gammas.dim());
  for (Eigen::Index a = 0; a < h.h.dim(); ++a) {
    for (Eigen::Index b = 0; b < h.h.dim(); ++b) {
      if (h.h(a, b) == 0.0) continue;
      out += cd(0.0, 0.25 * h.h(a, b)) *
             (gammas[static_cast<std::size_t>(a)] * gammas[static_cast<std::size_t>(b)]);
    }
  }
  return Eigen::MatrixXcd(out);
}

DenseGroundState lowest_eigenstate(const Eigen::MatrixXcd& hamiltonian, int n_modes) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(hamiltonian);
  if (eig.info() != Eigen::Success) throw NumericalConsistency("dense eigensolver did not converge");
  StateVector v = eig.eigenvectors().col(0);
  Eigen::Index best = 0;
  double best_mod = -1.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > best_mod + 1e-12) {
      best_mod = std::abs(v(k));
      best = k;
    }
  }
  v *= std::conj(v(best)) / std::abs(v(best));
  DenseGroundState out;
  out.state = FockState{n_modes, v / v.norm()};
  out.energy = eig.eigenvalues()(0);
  out.degenerate = eig.eigenvalues().size() > 1 && eig.eigenvalues()(1) - eig.eigenvalues()(0) < 1e-10;
  return out;
}

DenseGroundState dense_ground_state(const QuadraticHamiltonian& h) {
  require_within_cap(h.n_modes());
  return lowest_eigenstate(dense_hamiltonian(h), static_cast<int>(h.n_modes()));
}

CovarianceMatrix fcm_from_state(const FockState& psi) {
  const MajoranaOperatorSet gammas(psi.n_modes);
  const auto two_n = static_cast<Eigen::Index>(gammas.size());
  Eigen::MatrixXcd images(gammas.dim(), two_n);
  for (Eigen::Index a = 0; a < two_n; ++a) images.col(a) = gammas[static_cast<std::size_t>(a)] * psi.amplitudes;
  // g_a hermitian: <psi|g_a g_b|psi> = (g_a psi)^dag (g_b psi).
  const Eigen::MatrixXcd gram = images.adjoint() * images;
  Matrix m = gram.imag();
  m.diagonal().setZero();
  return CovarianceMatrix(AntisymmetricMatrix::from_rounded(m));
}

Eigen::MatrixXcd reduced_density(const FockState& psi, std::vector<int> modes) {
  const int n = psi.n_modes;
  std::sort(modes.begin(), modes.end());
  if (modes.empty() || std::adjacent_find(modes.begin(), modes.end()) != modes.end() ||
      modes.front() < 0 || modes.back() >= n) {
    throw InvalidInput("reduced_density needs distinct mode indices within range");
  }
  std::vector<int> rest;
  for (int i = 0, k = 0; i < n; ++i) {
    if (k < static_cast<int>(modes.size()) && modes[static_cast<std::size_t>(k)] == i) {
      ++k;
    } else {
      rest.push_back(i);
    }
  }
  const int k = static_cast<int>(modes.size());
  const Eigen::Index sub_dim = Eigen::Index{1} << k;
  const Eigen::Index env_dim = Eigen::Index{1} << (n - k);

  // Reorder creation operators so the subset comes first; each occupied
  // subset mode passes every occupied complement mode of lower index.
  Eigen::MatrixXcd psi_split = Eigen::MatrixXcd::Zero(sub_dim, env_dim);
  for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(psi.amplitudes.size()); ++x) {
    std::uint64_t s = 0;
    std::uint64_t e = 0;
    int crossings = 0;
    int occupied_rest_seen = 0;
    int si = 0;
    int ei = 0;
    for (int i = 0; i < n; ++i) {
      const bool occ = (x >> i) & 1U;
      if (si < k && modes[static_cast<std::size_t>(si)] == i) {
        if (occ) {
          s |= std::uint64_t{1} << si;
          crossings += occupied_rest_seen;
        }
        ++si;
      } else {
        if (occ) {
          e |= std::uint64_t{1} << ei;
          ++occupied_rest_seen;
        }
        ++ei;
      }
    }
    const double sign = (crossings % 2 == 0) ? 1.0 : -1.0;
    psi_split(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(e)) =
        sign * psi.amplitudes(static_cast<Eigen::Index>(x));
  }
  return psi_split * psi_split.adjoint();
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double p = eig.eigenvalues()(i);
    if (p > 1e-300) s -= p * std::log2(p);
  }
  return s;
}

double schmidt_entropy(const FockState& psi, const Bipartition& partition) {
  partition.validate(psi.n_modes);
  if (partition.a_modes.empty() || partition.b_modes.empty()) return 0.0;
  return von_neumann_entropy(reduced_density(psi, partition.a_modes));
}

Reconstruction reconstruct_state(const ModewiseDecomposition& d, const FockState& original) {
  if (std::abs(d.lambda0 - 1.0) > 1e-9) {
    throw InvalidInput("state reconstruction needs a pure decomposition (lambda0 = 1)");
  }
  const auto n = static_cast<int>(d.n_modes());
  if (original.n_modes != n) throw InvalidInput("original state and decomposition differ in mode count");
  const MajoranaOperatorSet gammas(n);
  const Matrix t = layout_transform(d);

  // Transformed annihilators in the assembled layout.
  std::vector<SparseOperator> bt;
  for (int mode = 0; mode < n; ++mode) {
    SparseOperator op(gammas.dim(), gammas.dim());
    for (Eigen::Index a = 0; a < t.cols(); ++a) {
      const cd w = 0.5 * cd(t(2 * mode, a), -t(2 * mode + 1, a));
      if (w != 0.0) op += w * gammas[static_cast<std::size_t>(a)];
    }
    bt.push_back(std::move(op));
  }

  StateVector psi = transformed_vacuum(bt, gammas.dim());

  // With G = bA^dag bB^dag + bA bB and P the projector onto equal pair
  // occupations, G^2 = -P, so exp(-theta G) = 1 - P + cos(theta) P - sin(theta) G.
  for (std::size_t k = 0; k < d.pairs.size(); ++k) {
    const SparseOperator& ba = bt[2 * k];
    const SparseOperator& bb = bt[2 * k + 1];
    const SparseOperator bad = ba.adjoint();
    const SparseOperator bbd = bb.adjoint();
    const SparseOperator g = bad * bbd + ba * bb;
    const StateVector g_psi = g * psi;
    const StateVector p_psi = -(g * g_psi);
    const double theta = d.pairs[k].theta;
    psi = psi - p_psi + std::cos(theta) * p_psi - std::sin(theta) * g_psi;
  }

  Reconstruction out;
  out.state = FockState{n, psi / psi.norm()};
  out.fidelity = std::abs(original.amplitudes.dot(out.state.amplitudes));
  return out;
}

}  // namespace fmw::fock
