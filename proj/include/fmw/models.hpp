#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fmw/gaussian.hpp"

namespace fmw {

enum class ModelKind { Bcs, Kitaev, RandomPure, RandomIsotropic, Diagonal };

ModelKind parse_model_kind(const std::string& name);
std::string to_string(ModelKind kind);

/// Parameters for the model generators; each kind reads only its own fields.
struct ModelSpec {
  ModelKind kind = ModelKind::Bcs;
  int n_modes = 0;              // kitaev, random-pure, random-isotropic
  std::vector<double> thetas;   // bcs: one angle per pair, radians in [0, pi/2]
  double mu = 0.0;              // kitaev chemical potential
  double hopping = 1.0;         // kitaev t
  double pairing = 1.0;         // kitaev Delta
  double lambda0 = 1.0;         // random-isotropic
  std::vector<double> lambdas;  // diagonal: per-mode Williamson eigenvalue
  std::uint64_t seed = 0;

  /// Throws InvalidInput naming the offending field.
  void validate() const;
};

struct GeneratedModel {
  CovarianceMatrix fcm;
  std::optional<QuadraticHamiltonian> hamiltonian;
  std::optional<double> ground_energy;
  bool degenerate = false;
};

/// Open Kitaev chain: C_ii = -mu, C_{i,i+1} = C_{i+1,i} = -t,
/// A_{i,i+1} = -A_{i+1,i} = Delta.
QuadraticHamiltonian kitaev_chain(int n_modes, double mu, double hopping, double pairing);

/// Product of pairs cos(theta_k)|00> - sin(theta_k)|11> on modes (2k, 2k+1):
/// direct sum of pure two-mode blocks with lambda = cos 2theta, kappa = sin 2theta.
CovarianceMatrix bcs_fcm(const std::vector<double>& thetas);

GeneratedModel generate_model(const ModelSpec& spec);

}  // namespace fmw
