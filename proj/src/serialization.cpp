#include "fmw/serialization.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <sstream>

#include "fmw/errors.hpp"

namespace fmw::io {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.front().is_array() ? j.front().size() : 0);
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InvalidInput("matrix rows must be arrays of equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw InvalidInput("matrix entries must be numbers");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

json fcm_to_json(const CovarianceMatrix& s) {
  return json{{"n_modes", s.n_modes()}, {"matrix", matrix_to_json(s.matrix())}};
}

CovarianceMatrix fcm_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n_modes") || !j.contains("matrix")) {
    throw InvalidInput("covariance matrix JSON needs fields \"n_modes\" and \"matrix\"");
  }
  if (!j["n_modes"].is_number_integer() || j["n_modes"].get<long long>() < 1) {
    throw InvalidInput("\"n_modes\" must be a positive integer");
  }
  const auto n = static_cast<Eigen::Index>(j["n_modes"].get<long long>());
  const Matrix m = matrix_from_json(j["matrix"]);
  if (m.rows() != 2 * n || m.cols() != 2 * n) {
    std::ostringstream msg;
    msg << "\"matrix\" must be " << 2 * n << "x" << 2 * n << " for n_modes = " << n << ", got "
        << m.rows() << "x" << m.cols();
    throw InvalidInput(msg.str());
  }
  return CovarianceMatrix(m);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& j, int indent) { return j.dump(indent); }

namespace {

std::vector<int> parse_index_list(const std::string& text, Eigen::Index n_modes) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(item.c_str(), &end, 10);
    if (*end != '\0' || errno != 0) throw InvalidInput("partition entry '" + item + "' is not an integer");
    if (v < 1 || v > n_modes) {
      std::ostringstream msg;
      msg << "partition entry " << v << " outside 1.." << n_modes;
      throw InvalidInput(msg.str());
    }
    out.push_back(static_cast<int>(v - 1));
  }
  return out;
}

}  // namespace

Bipartition parse_partition(const std::string& text, Eigen::Index n_modes) {
  Bipartition p;
  const auto semi = text.find(';');
  if (semi == std::string::npos) {
    p.a_modes = parse_index_list(text, n_modes);
    for (int i = 0; i < n_modes; ++i) {
      if (std::find(p.a_modes.begin(), p.a_modes.end(), i) == p.a_modes.end()) p.b_modes.push_back(i);
    }
  } else {
    if (text.find(';', semi + 1) != std::string::npos) {
      throw InvalidInput("partition has more than two sides: '" + text + "'");
    }
    p.a_modes = parse_index_list(text.substr(0, semi), n_modes);
    p.b_modes = parse_index_list(text.substr(semi + 1), n_modes);
  }
  p.validate(n_modes);
  return p;
}

std::string format_partition(const Bipartition& p) {
  std::ostringstream out;
  for (std::size_t i = 0; i < p.a_modes.size(); ++i) out << (i ? "," : "") << p.a_modes[i] + 1;
  out << ';';
  for (std::size_t i = 0; i < p.b_modes.size(); ++i) out << (i ? "," : "") << p.b_modes[i] + 1;
  return out.str();
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) throw InvalidInput("empty entry in list '" + text + "'");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(item.c_str(), &end);
    if (*end != '\0' || errno != 0) throw InvalidInput("'" + item + "' is not a real number");
    out.push_back(v);
  }
  return out;
}

json decomposition_to_json(const ModewiseDecomposition& d, double reconstruction_residual) {
  json pairs = json::array();
  for (const EntangledPair& p : d.pairs) {
    pairs.push_back({{"lambda", p.lambda},
                     {"kappa", p.kappa},
                     {"theta", p.theta},
                     {"a_mode", p.a_mode + 1},
                     {"b_mode", p.b_mode + 1}});
  }
  auto residuals = [](const std::vector<ResidualMode>& side) {
    json out = json::array();
    for (const ResidualMode& r : side) out.push_back({{"mode", r.mode + 1}, {"lambda", r.lambda}});
    return out;
  };
  auto one_based = [](const std::vector<int>& modes) {
    json out = json::array();
    for (int m : modes) out.push_back(m + 1);
    return out;
  };
  return json{{"n_modes", d.n_modes()},
              {"partition", {{"a", one_based(d.partition.a_modes)}, {"b", one_based(d.partition.b_modes)}}},
              {"lambda0", d.lambda0},
              {"s", d.pairs.size()},
              {"pairs", pairs},
              {"residual_a", residuals(d.residual_a)},
              {"residual_b", residuals(d.residual_b)},
              {"O_A", matrix_to_json(d.O_A)},
              {"O_B", matrix_to_json(d.O_B)},
              {"reconstruction_residual", reconstruction_residual}};
}

json report_to_json(const EntanglementReport& r) {
  return json{{"pair_entropies", r.pair_entropies},
              {"total_modes_entropy", r.total_modes_entropy},
              {"pair_npt_flags", r.pair_npt_flags},
              {"separable", r.separable},
              {"negativity_sum", r.negativity_sum}};
}

}  // namespace fmw::io
