#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fmw/cli.hpp"

using fmw::cli_main;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "fermi-modewise");
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = cli_main(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("generate then decompose a BCS state") {
  const Run gen = run({"generate", "--kind", "bcs", "--thetas", "0.3,0.7"});
  REQUIRE(gen.code == 0);
  const Run dec = run({"decompose", "-p", "1,3;2,4"}, gen.out);
  REQUIRE(dec.code == 0);
  const json j = json::parse(dec.out);
  CHECK(j.at("s") == 2);
  CHECK(j.at("pairs").at(0).at("theta").get<double>() == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(j.at("pairs").at(1).at("theta").get<double>() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(j.at("reconstruction_residual").get<double>() <= 1e-12);
}

TEST_CASE("entropy of a pure state") {
  const Run gen = run({"generate", "--kind", "bcs", "--thetas", "0.3"});
  const Run ent = run({"entropy", "-p", "1;2"}, gen.out);
  REQUIRE(ent.code == 0);
  const json j = json::parse(ent.out);
  const double c = std::cos(0.3);
  const double p = c * c;
  const double expected = -p * std::log2(p) - (1 - p) * std::log2(1 - p);
  CHECK(j.at("E_M").get<double>() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("entropy of a mixed isotropic state reports separability") {
  const Run gen = run({"generate", "--kind", "random-isotropic", "--modes", "4", "--lambda0", "0.3", "--seed", "2"});
  const Run ent = run({"entropy", "-p", "1,2"}, gen.out);
  REQUIRE(ent.code == 0);
  const json j = json::parse(ent.out);
  CHECK(j.at("E_M").is_null());
  // kappa <= 0.3 never exceeds the threshold (1 - 0.09) / 2.
  CHECK(j.at("separable") == true);
}

TEST_CASE("williamson prints a CSV spectrum") {
  const Run gen = run({"generate", "--kind", "diagonal", "--lambdas", "0.2,0.9"});
  const Run w = run({"williamson"}, gen.out);
  REQUIRE(w.code == 0);
  CHECK(w.out.rfind("index,lambda\n1,0.9", 0) == 0);
}

TEST_CASE("ppt verdicts") {
  const Run r = run({"ppt", "--lambda0", "0.5", "--kappas", "0.3,0.4"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("threshold").get<double>() == doctest::Approx(0.375));
  CHECK(j.at("pairs").at(0).at("entangled") == false);
  CHECK(j.at("pairs").at(1).at("entangled") == true);
  CHECK(j.at("separable") == false);
  CHECK(run({"ppt", "--lambda0", "0.5", "--kappas", "0.7"}).code == fmw::kExitInvalid);
}

TEST_CASE("verify passes") {
  const Run r = run({"verify", "--max-modes", "4", "--trials", "5", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"decompose", "--bogus"}).code == fmw::kExitInvalid);
  CHECK(run({}).code == fmw::kExitInvalid);
  CHECK(run({"decompose", "-p", "1;2"}, "{oops").code == fmw::kExitInvalid);
  CHECK(run({"generate", "--kind", "bcs", "--thetas", "2.0"}).code == fmw::kExitInvalid);
  const Run gen = run({"generate", "--kind", "diagonal", "--lambdas", "0.9,0.3"});
  const Run dec = run({"decompose", "-p", "1;2"}, gen.out);
  CHECK(dec.code == fmw::kExitNumerical);
  CHECK(dec.err.find("not isotropic") != std::string::npos);
  CHECK(run({"decompose", "-p", "1;3"}, gen.out).code == fmw::kExitInvalid);
}

TEST_CASE("sweep is deterministic and well-formed") {
  const std::vector<std::string> args{"sweep", "--kind", "kitaev", "--modes", "4", "--param", "mu",
                                      "--from", "0", "--to", "2", "--steps", "3", "--cut", "all"};
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::istringstream lines(a.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "value,cut,s,theta_1,theta_2,E_M");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 9);
}
