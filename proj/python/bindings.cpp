#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fmw/entanglement.hpp"
#include "fmw/errors.hpp"
#include "fmw/fock.hpp"
#include "fmw/models.hpp"
#include "fmw/modewise.hpp"
#include "fmw/serialization.hpp"
#include "fmw/verify.hpp"

namespace py = pybind11;
using namespace fmw;

namespace {

QuadraticHamiltonian make_hamiltonian(const ComplexMatrix& c, const ComplexMatrix& a) {
  QuadraticHamiltonian h{c, a};
  h.validate();
  return h;
}

Bipartition make_partition(std::vector<int> a, std::vector<int> b) { return Bipartition{std::move(a), std::move(b)}; }

fock::FockState make_state(const fock::StateVector& amplitudes) {
  int n = 0;
  while ((Eigen::Index{1} << n) < amplitudes.size()) ++n;
  return fock::FockState::from_amplitudes(n, amplitudes);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fermionic Gaussian states: Williamson form, modewise decomposition and mode entanglement";

  auto numerical = py::register_exception<NumericalConsistency>(m, "NumericalConsistency", PyExc_RuntimeError);
  py::register_exception<NotIsotropic>(m, "NotIsotropic", numerical.ptr());
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);

  // canonical forms
  m.def(
      "williamson_form",
      [](const Matrix& x) {
        const WilliamsonForm w = williamson_form(x);
        return py::make_tuple(w.O, w.lambdas);
      },
      py::arg("m"), "Returns (O, lambdas) with O m O^T = (+) lambda_i J2, lambdas descending.");
  m.def("is_orthogonal_symplectic", &is_orthogonal_symplectic, py::arg("q"), py::arg("tol") = 1e-10);

  // gaussian core
  m.def(
      "hamiltonian_to_majorana",
      [](const ComplexMatrix& c, const ComplexMatrix& a) {
        const MajoranaHamiltonian h = hamiltonian_to_majorana(make_hamiltonian(c, a));
        return py::make_tuple(Matrix(h.h.entries()), h.offset);
      },
      py::arg("C"), py::arg("A"));
  m.def(
      "ground_state_fcm",
      [](const ComplexMatrix& c, const ComplexMatrix& a) {
        const GroundState g = ground_state_fcm(make_hamiltonian(c, a));
        py::dict out;
        out["fcm"] = g.fcm.matrix();
        out["energy"] = g.energy;
        out["quasiparticle_energies"] = g.quasiparticle_energies;
        out["degenerate"] = g.degenerate;
        return out;
      },
      py::arg("C"), py::arg("A"));
  m.def(
      "is_pure", [](const Matrix& x, double tol) { return is_pure(CovarianceMatrix(x), tol); }, py::arg("m"),
      py::arg("tol") = 1e-8);
  m.def(
      "isotropy_parameter",
      [](const Matrix& x, double tol) { return isotropy_parameter(CovarianceMatrix(x), tol); }, py::arg("m"),
      py::arg("tol") = 1e-9);
  m.def(
      "random_pure_fcm", [](int n, std::uint64_t seed) { return random_pure_fcm(n, seed).matrix(); },
      py::arg("n_modes"), py::arg("seed"));
  m.def(
      "isotropic_fcm",
      [](int n, double lambda0, std::uint64_t seed) { return isotropic_fcm(n, lambda0, seed).matrix(); },
      py::arg("n_modes"), py::arg("lambda0"), py::arg("seed"));

  // models
  m.def(
      "bcs_fcm", [](const std::vector<double>& thetas) { return bcs_fcm(thetas).matrix(); }, py::arg("thetas"));
  m.def(
      "kitaev_chain",
      [](int n, double mu, double t, double delta) {
        const QuadraticHamiltonian h = kitaev_chain(n, mu, t, delta);
        return py::make_tuple(h.C, h.A);
      },
      py::arg("n_modes"), py::arg("mu"), py::arg("t") = 1.0, py::arg("delta") = 1.0,
      "Returns (C, A) of the open Kitaev chain.");

  // modewise decomposition
  py::class_<EntangledPair>(m, "EntangledPair")
      .def_readonly("lambda_", &EntangledPair::lambda)
      .def_readonly("kappa", &EntangledPair::kappa)
      .def_readonly("theta", &EntangledPair::theta)
      .def_readonly("a_mode", &EntangledPair::a_mode)
      .def_readonly("b_mode", &EntangledPair::b_mode)
      .def("__repr__", [](const EntangledPair& p) {
        return "EntangledPair(theta=" + std::to_string(p.theta) + ", kappa=" + std::to_string(p.kappa) + ")";
      });
  py::class_<ResidualMode>(m, "ResidualMode")
      .def_readonly("mode", &ResidualMode::mode)
      .def_readonly("lambda_", &ResidualMode::lambda);
  py::class_<ModewiseDecomposition>(m, "ModewiseDecomposition")
      .def_property_readonly("a_modes", [](const ModewiseDecomposition& d) { return d.partition.a_modes; })
      .def_property_readonly("b_modes", [](const ModewiseDecomposition& d) { return d.partition.b_modes; })
      .def_readonly("lambda0", &ModewiseDecomposition::lambda0)
      .def_readonly("O_A", &ModewiseDecomposition::O_A)
      .def_readonly("O_B", &ModewiseDecomposition::O_B)
      .def_readonly("pairs", &ModewiseDecomposition::pairs)
      .def_readonly("residual_a", &ModewiseDecomposition::residual_a)
      .def_readonly("residual_b", &ModewiseDecomposition::residual_b)
      .def_property_readonly("thetas",
                             [](const ModewiseDecomposition& d) {
                               std::vector<double> t;
                               for (const auto& p : d.pairs) t.push_back(p.theta);
                               return t;
                             })
      .def("block_fcm", [](const ModewiseDecomposition& d) { return assemble_block_fcm(d).matrix(); })
      .def("layout_transform", &layout_transform)
      .def("to_json", [](const ModewiseDecomposition& d, double residual) {
        return io::dump(io::decomposition_to_json(d, residual));
      }, py::arg("reconstruction_residual") = 0.0);
  m.def(
      "modewise_decompose",
      [](const Matrix& x, std::vector<int> a, std::vector<int> b) {
        return modewise_decompose(CovarianceMatrix(x), make_partition(std::move(a), std::move(b)));
      },
      py::arg("m"), py::arg("a_modes"), py::arg("b_modes"), "Mode indices are 0-based.");
  m.def(
      "reconstruction_residual",
      [](const Matrix& x, const ModewiseDecomposition& d) { return reconstruction_residual(CovarianceMatrix(x), d); },
      py::arg("m"), py::arg("decomposition"));

  // entanglement
  py::class_<EntanglementReport>(m, "EntanglementReport")
      .def_readonly("pair_entropies", &EntanglementReport::pair_entropies)
      .def_readonly("total_modes_entropy", &EntanglementReport::total_modes_entropy)
      .def_readonly("pair_npt_flags", &EntanglementReport::pair_npt_flags)
      .def_readonly("separable", &EntanglementReport::separable)
      .def_readonly("negativity_sum", &EntanglementReport::negativity_sum);
  m.def("binary_entropy", &binary_entropy, py::arg("p"));
  m.def("pure_mode_entanglement", &pure_mode_entanglement, py::arg("decomposition"));
  m.def("isotropic_separability", &isotropic_separability, py::arg("decomposition"));
  m.def("ppt_pair_entangled", &ppt_pair_entangled, py::arg("lambda0"), py::arg("kappa"));
  m.def("ppt_min_eigenvalue", &ppt_min_eigenvalue, py::arg("lambda0"), py::arg("lambda_"), py::arg("kappa"));

  // Fock-space oracle
  m.def(
      "dense_ground_state",
      [](const ComplexMatrix& c, const ComplexMatrix& a) {
        const fock::DenseGroundState g = fock::dense_ground_state(make_hamiltonian(c, a));
        return py::make_tuple(g.state.amplitudes, g.energy, g.degenerate);
      },
      py::arg("C"), py::arg("A"), "Returns (amplitudes, energy, degenerate); bit i of the index is mode i.");
  m.def(
      "fcm_from_state", [](const fock::StateVector& psi) { return fock::fcm_from_state(make_state(psi)).matrix(); },
      py::arg("amplitudes"));
  m.def(
      "schmidt_entropy",
      [](const fock::StateVector& psi, std::vector<int> a, std::vector<int> b) {
        return fock::schmidt_entropy(make_state(psi), make_partition(std::move(a), std::move(b)));
      },
      py::arg("amplitudes"), py::arg("a_modes"), py::arg("b_modes"));
  m.def(
      "reconstruct_state",
      [](const ModewiseDecomposition& d, const fock::StateVector& psi) {
        const fock::Reconstruction r = fock::reconstruct_state(d, make_state(psi));
        return py::make_tuple(r.state.amplitudes, r.fidelity);
      },
      py::arg("decomposition"), py::arg("amplitudes"), "Returns (amplitudes, fidelity).");

  m.def(
      "verify",
      [](int max_modes, int trials, std::uint64_t seed) {
        py::list out;
        for (const CheckResult& r : run_verification(VerifyOptions{max_modes, trials, seed})) {
          py::dict d;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["worst"] = r.worst;
          d["tolerance"] = r.tolerance;
          d["cases"] = r.cases;
          out.append(d);
        }
        return out;
      },
      py::arg("max_modes") = 6, py::arg("trials") = 20, py::arg("seed") = 7);
}
