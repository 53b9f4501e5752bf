#include "fmw/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "fmw/entanglement.hpp"
#include "fmw/errors.hpp"
#include "fmw/models.hpp"
#include "fmw/modewise.hpp"
#include "fmw/serialization.hpp"
#include "fmw/verify.hpp"

namespace fmw {

namespace {

using io::json;

struct ModelOptions {
  std::string kind;
  int modes = 0;
  std::string thetas;
  double mu = 0.0;
  double hopping = 1.0;
  double pairing = 1.0;
  double lambda0 = 1.0;
  std::string lambdas;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--kind", kind, "bcs | kitaev | random-pure | random-isotropic | diagonal")->required();
    cmd->add_option("--modes", modes, "Number of modes (kitaev, random-*)");
    cmd->add_option("--thetas", thetas, "Comma-separated pair angles in radians (bcs)");
    cmd->add_option("--mu", mu, "Chemical potential (kitaev)");
    cmd->add_option("--t", hopping, "Hopping amplitude (kitaev)");
    cmd->add_option("--delta", pairing, "Pairing amplitude (kitaev)");
    cmd->add_option("--lambda0", lambda0, "Isotropy parameter in [0, 1] (random-isotropic)");
    cmd->add_option("--lambdas", lambdas, "Comma-separated Williamson eigenvalues (diagonal)");
    cmd->add_option("--seed", seed, "Random seed");
  }

  ModelSpec spec() const {
    ModelSpec s;
    s.kind = parse_model_kind(kind);
    s.n_modes = modes;
    if (!thetas.empty()) s.thetas = io::parse_real_list(thetas);
    s.mu = mu;
    s.hopping = hopping;
    s.pairing = pairing;
    s.lambda0 = lambda0;
    if (!lambdas.empty()) s.lambdas = io::parse_real_list(lambdas);
    s.seed = seed;
    return s;
  }
};

std::string read_all(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CovarianceMatrix load_fcm(const std::string& path, std::istream& in) {
  if (path == "-") return io::fcm_from_json(io::parse_json(read_all(in)));
  std::ifstream file(path);
  if (!file) throw InvalidInput("cannot open input file '" + path + "'");
  return io::fcm_from_json(io::parse_json(read_all(file)));
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text << '\n';
    return;
  }
  std::ofstream file(path);
  if (!file) throw InvalidInput("cannot open output file '" + path + "'");
  file << text << '\n';
}

std::ostream& full_precision(std::ostream& os) {
  return os << std::setprecision(std::numeric_limits<double>::max_digits10);
}

bool is_pure_lambda0(double lambda0) { return std::abs(lambda0 - 1.0) <= 1e-9; }

int run_generate(const ModelOptions& model, const std::string& output, std::ostream& out) {
  const GeneratedModel g = generate_model(model.spec());
  emit(output, io::dump(io::fcm_to_json(g.fcm)), out);
  return kExitOk;
}

int run_williamson(const std::string& input, const std::string& transform, std::istream& in,
                   std::ostream& out) {
  const CovarianceMatrix s = load_fcm(input, in);
  const WilliamsonForm w = williamson_form(s.antisymmetric());
  full_precision(out) << "index,lambda\n";
  for (std::size_t i = 0; i < w.lambdas.size(); ++i) out << i + 1 << ',' << w.lambdas[i] << '\n';
  if (!transform.empty()) emit(transform, io::dump(json{{"O", io::matrix_to_json(w.O)}}), out);
  return kExitOk;
}

int run_decompose(const std::string& input, const std::string& partition, const std::string& output,
                  std::istream& in, std::ostream& out) {
  const CovarianceMatrix s = load_fcm(input, in);
  const Bipartition p = io::parse_partition(partition, s.n_modes());
  const ModewiseDecomposition d = modewise_decompose(s, p);
  emit(output, io::dump(io::decomposition_to_json(d, reconstruction_residual(s, d))), out);
  return kExitOk;
}

int run_entropy(const std::string& input, const std::string& partition, std::istream& in, std::ostream& out) {
  const CovarianceMatrix s = load_fcm(input, in);
  const Bipartition p = io::parse_partition(partition, s.n_modes());
  const ModewiseDecomposition d = modewise_decompose(s, p);
  json result;
  result["lambda0"] = d.lambda0;
  result["partition"] = io::format_partition(p);
  if (is_pure_lambda0(d.lambda0)) {
    const EntanglementReport r = pure_mode_entanglement(d);
    result["E_M"] = r.total_modes_entropy;
    result["pair_entropies"] = r.pair_entropies;
  } else {
    const EntanglementReport r = isotropic_separability(d);
    result["E_M"] = nullptr;
    result["separable"] = r.separable;
    result["pair_npt_flags"] = r.pair_npt_flags;
    result["negativity_sum"] = r.negativity_sum;
  }
  out << io::dump(result) << '\n';
  return kExitOk;
}

int run_ppt(double lambda0, const std::string& kappas, std::ostream& out) {
  if (!(lambda0 >= 0.0 && lambda0 <= 1.0)) throw InvalidInput("--lambda0 must lie in [0, 1]");
  const std::vector<double> ks = io::parse_real_list(kappas);
  const double threshold = 0.5 * (1.0 - lambda0 * lambda0);
  json pairs = json::array();
  bool separable = true;
  for (double k : ks) {
    const bool entangled = ppt_pair_entangled(lambda0, k);
    separable = separable && !entangled;
    const double lambda = std::sqrt(std::max(0.0, lambda0 * lambda0 - k * k));
    pairs.push_back({{"kappa", k},
                     {"entangled", entangled},
                     {"min_pt_eigenvalue", ppt_min_eigenvalue(lambda0, lambda, k)}});
  }
  out << io::dump(json{{"lambda0", lambda0}, {"threshold", threshold}, {"pairs", pairs}, {"separable", separable}})
      << '\n';
  return kExitOk;
}

int run_verify(const VerifyOptions& options, std::ostream& out) {
  const std::vector<CheckResult> results = run_verification(options);
  bool all = true;
  full_precision(out);
  for (const CheckResult& r : results) {
    all = all && r.passed;
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " worst=" << r.worst << " tol=" << r.tolerance
        << " cases=" << r.cases;
    if (!r.passed && !r.detail.empty()) out << " at " << r.detail;
    out << '\n';
  }
  out << (all ? "all checks passed" : "verification FAILED") << '\n';
  return all ? kExitOk : kExitNumerical;
}

struct SweepOptions {
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 1;
  std::string cut = "all";
  int pairs = 1;
};

int run_sweep(const ModelOptions& model, const SweepOptions& sweep, std::ostream& out) {
  if (sweep.steps < 1) throw InvalidInput("--steps must be >= 1");
  ModelSpec base = model.spec();
  if (base.kind == ModelKind::Bcs && base.thetas.empty()) {
    if (sweep.pairs < 1) throw InvalidInput("--pairs must be >= 1");
    base.thetas.assign(static_cast<std::size_t>(sweep.pairs), 0.0);
  }

  auto apply = [&](ModelSpec s, double v) {
    const std::string& p = sweep.param;
    if (p.empty()) return s;
    if (p == "mu" && s.kind == ModelKind::Kitaev) s.mu = v;
    else if (p == "t" && s.kind == ModelKind::Kitaev) s.hopping = v;
    else if (p == "delta" && s.kind == ModelKind::Kitaev) s.pairing = v;
    else if (p == "lambda0" && s.kind == ModelKind::RandomIsotropic) s.lambda0 = v;
    else if (p == "theta" && s.kind == ModelKind::Bcs) std::fill(s.thetas.begin(), s.thetas.end(), v);
    else throw InvalidInput("parameter '" + p + "' cannot be swept for model '" + to_string(s.kind) + "'");
    return s;
  };

  const Eigen::Index n = generate_model(apply(base, sweep.from)).fcm.n_modes();
  std::vector<int> cuts;
  if (sweep.cut == "all") {
    for (int c = 1; c < n; ++c) cuts.push_back(c);
  } else {
    const std::vector<double> parsed = io::parse_real_list(sweep.cut);
    for (double c : parsed) {
      if (c != std::floor(c) || c < 1 || c >= static_cast<double>(n)) {
        throw InvalidInput("--cut entries must be integers in 1.." + std::to_string(n - 1));
      }
      cuts.push_back(static_cast<int>(c));
    }
  }
  if (cuts.empty()) throw InvalidInput("sweep needs at least two modes to place a cut");
  int width = 0;
  for (int c : cuts) width = std::max(width, std::min(c, static_cast<int>(n) - c));

  full_precision(out) << "value,cut,s";
  for (int k = 1; k <= width; ++k) out << ",theta_" << k;
  out << ",E_M\n";
  for (int step = 0; step < sweep.steps; ++step) {
    const double v = sweep.steps == 1 ? sweep.from
                                      : sweep.from + (sweep.to - sweep.from) * step / (sweep.steps - 1);
    const CovarianceMatrix s = generate_model(apply(base, v)).fcm;
    for (int c : cuts) {
      Bipartition p;
      for (int i = 0; i < n; ++i) (i < c ? p.a_modes : p.b_modes).push_back(i);
      const ModewiseDecomposition d = modewise_decompose(s, p);
      out << (sweep.param.empty() ? 0.0 : v) << ',' << c << ',' << d.pairs.size();
      for (int k = 0; k < width; ++k) {
        out << ',' << (k < static_cast<int>(d.pairs.size()) ? d.pairs[static_cast<std::size_t>(k)].theta : 0.0);
      }
      if (is_pure_lambda0(d.lambda0)) {
        out << ',' << pure_mode_entanglement(d).total_modes_entropy << '\n';
      } else {
        out << ",nan\n";
      }
    }
  }
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modewise decomposition and mode entanglement of fermionic Gaussian states"};
  app.name(args.empty() ? "fermi-modewise" : args.front());
  app.require_subcommand(1);

  ModelOptions gen_model;
  std::string gen_output;
  auto* gen = app.add_subcommand("generate", "Generate a model covariance matrix (FCM JSON)");
  gen_model.attach(gen);
  gen->add_option("-o,--output", gen_output, "Output path (default stdout)");

  std::string w_input = "-", w_transform;
  auto* wil = app.add_subcommand("williamson", "Williamson spectrum (CSV) and transform (JSON)");
  wil->add_option("-i,--input", w_input, "FCM JSON path, '-' for stdin");
  wil->add_option("--transform", w_transform, "Write the orthogonal transform O as JSON to this path");

  std::string d_input = "-", d_partition, d_output;
  auto* dec = app.add_subcommand("decompose", "Modewise decomposition across a bipartition");
  dec->add_option("-i,--input", d_input, "FCM JSON path, '-' for stdin");
  dec->add_option("-p,--partition", d_partition, "Partition such as '1,2;3,4' (1-based)")->required();
  dec->add_option("-o,--output", d_output, "Output path (default stdout)");

  std::string e_input = "-", e_partition;
  auto* ent = app.add_subcommand("entropy", "Entanglement of modes across a bipartition");
  ent->add_option("-i,--input", e_input, "FCM JSON path, '-' for stdin");
  ent->add_option("-p,--partition", e_partition, "Partition such as '1,2;3,4' (1-based)")->required();

  double p_lambda0 = 1.0;
  std::string p_kappas;
  auto* ppt = app.add_subcommand("ppt", "Partial-transpose verdicts for isotropic pairs");
  ppt->add_option("--lambda0", p_lambda0, "Isotropy parameter")->required();
  ppt->add_option("--kappas", p_kappas, "Comma-separated pair correlations")->required();

  VerifyOptions v_options;
  auto* ver = app.add_subcommand("verify", "Cross-check against the Fock-space oracle");
  ver->add_option("--max-modes", v_options.max_modes, "Largest mode count");
  ver->add_option("--trials", v_options.trials, "Random trials per suite");
  ver->add_option("--seed", v_options.seed, "Random seed");

  ModelOptions s_model;
  SweepOptions s_options;
  auto* swp = app.add_subcommand("sweep", "Scan a model parameter or cut position (CSV)");
  s_model.attach(swp);
  swp->add_option("--param", s_options.param, "mu | t | delta (kitaev), lambda0, theta (bcs)");
  swp->add_option("--from", s_options.from, "First parameter value");
  swp->add_option("--to", s_options.to, "Last parameter value");
  swp->add_option("--steps", s_options.steps, "Number of parameter values");
  swp->add_option("--cut", s_options.cut, "'all' or comma-separated cut positions (A = modes 1..cut)");
  swp->add_option("--pairs", s_options.pairs, "Pair count for bcs sweeps without --thetas");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  try {
    if (*gen) return run_generate(gen_model, gen_output, out);
    if (*wil) return run_williamson(w_input, w_transform, in, out);
    if (*dec) return run_decompose(d_input, d_partition, d_output, in, out);
    if (*ent) return run_entropy(e_input, e_partition, in, out);
    if (*ppt) return run_ppt(p_lambda0, p_kappas, out);
    if (*ver) return run_verify(v_options, out);
    if (*swp) return run_sweep(s_model, s_options, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NotIsotropic& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NumericalConsistency& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace fmw
