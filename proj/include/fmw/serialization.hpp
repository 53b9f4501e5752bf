#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fmw/entanglement.hpp"
#include "fmw/modewise.hpp"

namespace fmw::io {

using json = nlohmann::json;

json matrix_to_json(const Matrix& m);
/// Rectangular array of numbers; throws InvalidInput otherwise.
Matrix matrix_from_json(const json& j);

/// {"n_modes": N, "matrix": [[...2N x 2N, row-major...]]}
json fcm_to_json(const CovarianceMatrix& s);
CovarianceMatrix fcm_from_json(const json& j);

/// Parses text as JSON, mapping parse errors to InvalidInput.
json parse_json(const std::string& text);

/// Shortest round-trip representation of every double.
std::string dump(const json& j, int indent = 2);

/// "1,2;3,4" (1-based, semicolon between sides). Without a semicolon the
/// listed modes form A and B is the complement, in ascending order.
Bipartition parse_partition(const std::string& text, Eigen::Index n_modes);
std::string format_partition(const Bipartition& p);

/// Comma-separated reals; empty items are rejected.
std::vector<double> parse_real_list(const std::string& text);

/// Pairs, angles, transforms and residual modes; mode indices are 1-based.
json decomposition_to_json(const ModewiseDecomposition& d, double reconstruction_residual);

json report_to_json(const EntanglementReport& r);

}  // namespace fmw::io
