#include "fmw/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fmw/errors.hpp"

namespace fmw {

namespace {

constexpr double kArgumentSlack = 1e-12;
constexpr double kConstraintTolerance = 1e-9;

void check_pair_parameters(double lambda0, double lambda, double kappa) {
  const double gap = kappa * kappa + lambda * lambda - lambda0 * lambda0;
  if (std::abs(gap) > kConstraintTolerance || lambda < -kArgumentSlack || kappa < -kArgumentSlack ||
      lambda0 > 1.0 + kArgumentSlack) {
    std::ostringstream msg;
    msg << "pair parameters violate kappa^2 + lambda^2 = lambda0^2 with lambda, kappa >= 0:"
        << " lambda0=" << lambda0 << " lambda=" << lambda << " kappa=" << kappa;
    throw InvalidInput(msg.str());
  }
}

// Eigenvalues of a symmetric 2x2 matrix, ascending.
std::array<double, 2> sym2_eigenvalues(double a, double b, double d) {
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), b);
  return {mean - radius, mean + radius};
}

}  // namespace

Eigen::Matrix4d TwoModeBlocks::full() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m.block<2, 2>(0, 0) = even;
  m.block<2, 2>(2, 2) = odd;
  return m;
}

double binary_entropy(double p) {
  if (p < -kArgumentSlack || p > 1.0 + kArgumentSlack || std::isnan(p)) {
    std::ostringstream msg;
    msg << "binary entropy argument " << p << " outside [0, 1]";
    throw InvalidInput(msg.str());
  }
  p = std::clamp(p, 0.0, 1.0);
  auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  return term(p) + term(1.0 - p);
}

EntanglementReport pure_mode_entanglement(const ModewiseDecomposition& d) {
  if (std::abs(d.lambda0 - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "mode entanglement entropy needs a pure state, got lambda0 = " << d.lambda0;
    throw InvalidInput(msg.str());
  }
  EntanglementReport report;
  for (const EntangledPair& p : d.pairs) {
    const double c = std::cos(p.theta);
    const double e = binary_entropy(c * c);
    report.pair_entropies.push_back(e);
    report.total_modes_entropy += e;
    report.pair_npt_flags.push_back(p.kappa > 0.0);
  }
  report.separable = d.pairs.empty();
  return report;
}

bool ppt_pair_entangled(double lambda0, double kappa) {
  if (kappa < -kArgumentSlack || kappa > lambda0 + kArgumentSlack || lambda0 > 1.0 + kArgumentSlack) {
    std::ostringstream msg;
    msg << "PPT test needs 0 <= kappa <= lambda0 <= 1, got kappa=" << kappa << " lambda0=" << lambda0;
    throw InvalidInput(msg.str());
  }
  return kappa > 0.5 * (1.0 - lambda0 * lambda0);
}

TwoModeBlocks two_mode_block_matrix(double lambda0, double lambda, double kappa) {
  check_pair_parameters(lambda0, lambda, kappa);
  TwoModeBlocks blocks;
  blocks.even << (1.0 + lambda) * (1.0 + lambda) + kappa * kappa, 2.0 * kappa,
      2.0 * kappa, (1.0 - lambda) * (1.0 - lambda) + kappa * kappa;
  blocks.even *= 0.25;
  blocks.odd = 0.25 * (1.0 - lambda0 * lambda0) * Eigen::Matrix2d::Identity();
  return blocks;
}

double ppt_min_eigenvalue(double lambda0, double lambda, double kappa) {
  const TwoModeBlocks b = two_mode_block_matrix(lambda0, lambda, kappa);
  const auto even = sym2_eigenvalues(b.even(0, 0), 0.0, b.even(1, 1));
  const auto odd = sym2_eigenvalues(b.odd(0, 0), b.even(0, 1), b.odd(1, 1));
  return std::min(even[0], odd[0]);
}

EntanglementReport isotropic_separability(const ModewiseDecomposition& d) {
  EntanglementReport report;
  for (const EntangledPair& p : d.pairs) {
    const double kappa = std::min(p.kappa, d.lambda0);
    const bool npt = ppt_pair_entangled(d.lambda0, kappa);
    report.pair_npt_flags.push_back(npt);
    if (npt) {
      report.separable = false;
      report.negativity_sum += -ppt_min_eigenvalue(d.lambda0, p.lambda, p.kappa);
    }
  }
  if (std::abs(d.lambda0 - 1.0) <= 1e-9) {
    for (const EntangledPair& p : d.pairs) {
      const double c = std::cos(p.theta);
      const double e = binary_entropy(c * c);
      report.pair_entropies.push_back(e);
      report.total_modes_entropy += e;
    }
  }
  return report;
}

}  // namespace fmw
