#include "fmw/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fmw/entanglement.hpp"
#include "fmw/errors.hpp"
#include "fmw/fock.hpp"
#include "fmw/models.hpp"
#include "fmw/modewise.hpp"

namespace fmw {

namespace {

// Tracks the worst deviation of an "at most tolerance" check.
struct Tally {
  CheckResult result;

  Tally(std::string name, double tolerance) {
    result.name = std::move(name);
    result.tolerance = tolerance;
  }

  void observe(double deviation, const std::string& where = {}) {
    ++result.cases;
    if (!(deviation <= result.tolerance)) {
      if (result.passed) result.detail = where;
      result.passed = false;
    }
    if (std::isnan(deviation) || deviation > result.worst) result.worst = deviation;
  }

  void fail(const std::string& why) {
    ++result.cases;
    if (result.passed) result.detail = why;
    result.passed = false;
  }
};

Bipartition random_partition(int n, Rng& rng) {
  std::vector<int> modes(static_cast<std::size_t>(n));
  std::iota(modes.begin(), modes.end(), 0);
  std::shuffle(modes.begin(), modes.end(), rng);
  std::uniform_int_distribution<int> cut(1, n - 1);
  const int m = cut(rng);
  Bipartition p;
  p.a_modes.assign(modes.begin(), modes.begin() + m);
  p.b_modes.assign(modes.begin() + m, modes.end());
  std::sort(p.a_modes.begin(), p.a_modes.end());
  std::sort(p.b_modes.begin(), p.b_modes.end());
  return p;
}

Matrix random_antisymmetric(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix x(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) x(r, c) = normal(rng);
  }
  return x - x.transpose();
}

std::string describe(int n, std::uint64_t seed, const Bipartition* p = nullptr) {
  std::ostringstream out;
  out << "N=" << n << " seed=" << seed;
  if (p) {
    out << " A={";
    for (std::size_t i = 0; i < p->a_modes.size(); ++i) out << (i ? "," : "") << p->a_modes[i] + 1;
    out << "}";
  }
  return out.str();
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  const int max_n = std::max(2, options.max_modes);
  fock::require_within_cap(max_n);
  Rng rng(options.seed);
  std::uniform_int_distribution<int> pick_n(2, max_n);
  std::uniform_int_distribution<std::uint64_t> pick_seed;

  Tally clifford("clifford-algebra", 1e-13);
  for (int n = 1; n <= max_n; ++n) clifford.observe(fock::build_majoranas(n).clifford_residual(), describe(n, 0));

  Tally williamson_rec("williamson-reconstruction", 1e-9);
  Tally williamson_spec("williamson-spectrum", 1e-10);
  Tally majorana_form("majorana-hamiltonian", 1e-10);
  Tally energy("ground-energy", 1e-8);
  Tally ground_fcm("ground-state-fcm", 1e-8);
  Tally fidelity("theorem-fidelity", 1e-7);
  Tally pair_bound("pair-count-bound", 0.0);
  Tally entropy("entropy-identity", 1e-8);
  Tally rebuild("block-reconstruction", 1e-8);
  Tally constraint("isotropic-constraint", 1e-9);
  Tally local_spectrum("local-spectrum", 1e-8);

  for (int trial = 0; trial < options.trials; ++trial) {
    const int n = pick_n(rng);
    const std::uint64_t seed = pick_seed(rng);

    // Canonical form of a generic antisymmetric matrix.
    {
      Rng local(seed);
      const Matrix m = random_antisymmetric(2 * n, local);
      const WilliamsonForm w = williamson_form(m);
      williamson_rec.observe(max_abs(w.O * m * w.O.transpose() - w.canonical()), describe(n, seed));
      Eigen::SelfAdjointEigenSolver<Matrix> eig(-(m * m), Eigen::EigenvaluesOnly);
      double dev = 0.0;
      for (int k = 0; k < n; ++k) {
        const double oracle = std::sqrt(std::max(0.0, eig.eigenvalues()(2 * n - 1 - 2 * k)));
        dev = std::max(dev, std::abs(oracle - w.lambdas[static_cast<std::size_t>(k)]));
      }
      williamson_spec.observe(dev, describe(n, seed));
    }

    // Hamiltonian route against dense diagonalization.
    {
      const QuadraticHamiltonian h = random_hamiltonian(n, seed);
      const MajoranaHamiltonian mh = hamiltonian_to_majorana(h);
      majorana_form.observe(
          (fock::dense_hamiltonian(h) - fock::dense_majorana_hamiltonian(mh)).cwiseAbs().maxCoeff(),
          describe(n, seed));
      const GroundState gs = ground_state_fcm(h);
      const fock::DenseGroundState dense = fock::dense_ground_state(h);
      energy.observe(std::abs(gs.energy - dense.energy), describe(n, seed));
      if (!gs.degenerate && !dense.degenerate) {
        ground_fcm.observe(max_abs(gs.fcm.matrix() - fock::fcm_from_state(dense.state).matrix()),
                           describe(n, seed));
      }
    }

    // Modewise theorem on a pure state built as a Hamiltonian ground state, so
    // the Fock amplitudes come from the oracle rather than from the FCM.
    {
      const QuadraticHamiltonian h = random_hamiltonian(n, seed ^ 0x9e3779b97f4a7c15ULL);
      const fock::DenseGroundState dense = fock::dense_ground_state(h);
      if (!dense.degenerate) {
        const CovarianceMatrix fcm = fock::fcm_from_state(dense.state);
        const Bipartition p = random_partition(n, rng);
        try {
          const ModewiseDecomposition d = modewise_decompose(fcm, p);
          rebuild.observe(reconstruction_residual(fcm, d), describe(n, seed, &p));
          const auto bound = static_cast<std::size_t>(std::min(p.a_modes.size(), p.b_modes.size()));
          pair_bound.observe(d.pairs.size() > bound ? 1.0 : 0.0, describe(n, seed, &p));
          const fock::Reconstruction r = fock::reconstruct_state(d, dense.state);
          fidelity.observe(1.0 - r.fidelity, describe(n, seed, &p));
          entropy.observe(std::abs(pure_mode_entanglement(d).total_modes_entropy -
                                   fock::schmidt_entropy(dense.state, p)),
                          describe(n, seed, &p));
        } catch (const std::exception& e) {
          rebuild.fail(describe(n, seed, &p) + ": " + e.what());
        }
      }
    }

    // Isotropic mixed states.
    {
      const double lambda0 = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
      const CovarianceMatrix s = isotropic_fcm(n, lambda0, seed);
      const Bipartition p = random_partition(n, rng);
      try {
        const ModewiseDecomposition d = modewise_decompose(s, p);
        rebuild.observe(reconstruction_residual(s, d), describe(n, seed, &p));
        double worst = 0.0;
        for (const EntangledPair& pair : d.pairs) {
          worst = std::max(worst, std::abs(pair.kappa * pair.kappa + pair.lambda * pair.lambda -
                                           d.lambda0 * d.lambda0));
        }
        constraint.observe(worst, describe(n, seed, &p));
        // Pair lambdas plus residual A lambdas reproduce the A spectrum.
        std::vector<double> expected = williamson_form(restrict(s, p.a_modes).antisymmetric()).lambdas;
        std::vector<double> got;
        for (const EntangledPair& pair : d.pairs) got.push_back(pair.lambda);
        for (const ResidualMode& r : d.residual_a) got.push_back(r.lambda);
        std::sort(got.rbegin(), got.rend());
        double dev = 0.0;
        for (std::size_t i = 0; i < expected.size(); ++i) dev = std::max(dev, std::abs(expected[i] - got[i]));
        local_spectrum.observe(dev, describe(n, seed, &p));
      } catch (const std::exception& e) {
        rebuild.fail(describe(n, seed, &p) + ": " + e.what());
      }
    }
  }

  Tally ppt("ppt-threshold-consistency", 0.0);
  for (int i = 0; i <= 49; ++i) {
    const double lambda0 = 0.02 + 0.98 * i / 49.0;
    for (int j = 0; j <= 49; ++j) {
      const double kappa = lambda0 * j / 49.0;
      const double lambda = std::sqrt(std::max(0.0, lambda0 * lambda0 - kappa * kappa));
      const bool by_threshold = ppt_pair_entangled(lambda0, kappa);
      const bool by_spectrum = ppt_min_eigenvalue(lambda0, lambda, kappa) < -1e-12;
      ppt.observe(by_threshold == by_spectrum ? 0.0 : 1.0);
    }
  }

  Tally controls("negative-controls", 0.0);
  {
    // (|0000> + |1111>)/sqrt 2 has a vanishing covariance matrix. Single-particle
    // superpositions would not do: they are Slater determinants, hence Gaussian.
    fock::StateVector amps = fock::StateVector::Zero(16);
    amps(0) = 1.0;
    amps(15) = 1.0;
    const fock::FockState cat = fock::FockState::from_amplitudes(4, amps);
    controls.observe(is_pure(fock::fcm_from_state(cat), 1e-9) ? 1.0 : 0.0, "non-Gaussian state accepted as pure");
    bool rejected = false;
    try {
      modewise_decompose(diagonal_fcm({0.9, 0.3}), Bipartition{{0}, {1}});
    } catch (const NotIsotropic&) {
      rejected = true;
    }
    controls.observe(rejected ? 0.0 : 1.0, "non-isotropic FCM accepted");
  }

  return {clifford.result,   williamson_rec.result, williamson_spec.result, majorana_form.result,
          energy.result,     ground_fcm.result,     rebuild.result,         pair_bound.result,
          fidelity.result,   entropy.result,        constraint.result,      local_spectrum.result,
          ppt.result,        controls.result};
}

}  // namespace fmw
