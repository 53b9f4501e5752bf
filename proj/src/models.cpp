#include "fmw/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fmw/errors.hpp"

namespace fmw {

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw InvalidInput("invalid model parameter '" + field + "': " + why);
}

}  // namespace

ModelKind parse_model_kind(const std::string& name) {
  if (name == "bcs") return ModelKind::Bcs;
  if (name == "kitaev") return ModelKind::Kitaev;
  if (name == "random-pure") return ModelKind::RandomPure;
  if (name == "random-isotropic") return ModelKind::RandomIsotropic;
  if (name == "diagonal") return ModelKind::Diagonal;
  bad_field("kind", "unknown model '" + name + "'");
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Bcs: return "bcs";
    case ModelKind::Kitaev: return "kitaev";
    case ModelKind::RandomPure: return "random-pure";
    case ModelKind::RandomIsotropic: return "random-isotropic";
    case ModelKind::Diagonal: return "diagonal";
  }
  return "unknown";
}

void ModelSpec::validate() const {
  switch (kind) {
    case ModelKind::Bcs:
      if (thetas.empty()) bad_field("thetas", "need at least one pair angle");
      for (double t : thetas) {
        if (!(t >= 0.0 && t <= 0.5 * std::numbers::pi)) bad_field("thetas", "angles must lie in [0, pi/2]");
      }
      break;
    case ModelKind::Kitaev:
      if (n_modes < 1) bad_field("modes", "need N >= 1");
      if (!std::isfinite(mu) || !std::isfinite(hopping) || !std::isfinite(pairing)) {
        bad_field("mu/t/delta", "couplings must be finite");
      }
      break;
    case ModelKind::RandomPure:
      if (n_modes < 1) bad_field("modes", "need N >= 1");
      break;
    case ModelKind::RandomIsotropic:
      if (n_modes < 1) bad_field("modes", "need N >= 1");
      if (!(lambda0 >= 0.0 && lambda0 <= 1.0)) bad_field("lambda0", "must lie in [0, 1]");
      break;
    case ModelKind::Diagonal:
      if (lambdas.empty()) bad_field("lambdas", "need at least one mode");
      for (double l : lambdas) {
        if (!(l >= 0.0 && l <= 1.0)) bad_field("lambdas", "eigenvalues must lie in [0, 1]");
      }
      break;
  }
}

QuadraticHamiltonian kitaev_chain(int n_modes, double mu, double hopping, double pairing) {
  if (n_modes < 1) bad_field("modes", "need N >= 1");
  QuadraticHamiltonian h;
  h.C = ComplexMatrix::Zero(n_modes, n_modes);
  h.A = ComplexMatrix::Zero(n_modes, n_modes);
  for (int i = 0; i < n_modes; ++i) {
    h.C(i, i) = -mu;
    if (i + 1 < n_modes) {
      h.C(i, i + 1) = -hopping;
      h.C(i + 1, i) = -hopping;
      h.A(i, i + 1) = pairing;
      h.A(i + 1, i) = -pairing;
    }
  }
  return h;
}

CovarianceMatrix bcs_fcm(const std::vector<double>& thetas) {
  const auto pairs = static_cast<Eigen::Index>(thetas.size());
  Matrix m = Matrix::Zero(4 * pairs, 4 * pairs);
  for (Eigen::Index k = 0; k < pairs; ++k) {
    const double l = std::cos(2.0 * thetas[static_cast<std::size_t>(k)]);
    const double q = std::sin(2.0 * thetas[static_cast<std::size_t>(k)]);
    Matrix block(4, 4);
    block << 0, -l, 0, q,
             l, 0, q, 0,
             0, -q, 0, -l,
             -q, 0, l, 0;
    m.block<4, 4>(4 * k, 4 * k) = block;
  }
  return CovarianceMatrix(AntisymmetricMatrix::from_rounded(m));
}

GeneratedModel generate_model(const ModelSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ModelKind::Bcs:
      return {bcs_fcm(spec.thetas), std::nullopt, std::nullopt, false};
    case ModelKind::Kitaev: {
      QuadraticHamiltonian h = kitaev_chain(spec.n_modes, spec.mu, spec.hopping, spec.pairing);
      GroundState gs = ground_state_fcm(h);
      return {std::move(gs.fcm), std::move(h), gs.energy, gs.degenerate};
    }
    case ModelKind::RandomPure:
      return {random_pure_fcm(spec.n_modes, spec.seed), std::nullopt, std::nullopt, false};
    case ModelKind::RandomIsotropic:
      return {isotropic_fcm(spec.n_modes, spec.lambda0, spec.seed), std::nullopt, std::nullopt, false};
    case ModelKind::Diagonal:
      return {diagonal_fcm(spec.lambdas), std::nullopt, std::nullopt, false};
  }
  throw InvalidInput("unhandled model kind");
}

}  // namespace fmw
