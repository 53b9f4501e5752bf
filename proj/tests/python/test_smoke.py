import math

import numpy as np
import pytest

import fermi_modewise as fm


def test_williamson_form_reconstructs():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(6, 6))
    m = x - x.T
    o, lambdas = fm.williamson_form(m)
    canonical = np.zeros_like(m)
    for i, lam in enumerate(lambdas):
        canonical[2 * i, 2 * i + 1] = -lam
        canonical[2 * i + 1, 2 * i] = lam
    assert np.max(np.abs(o @ m @ o.T - canonical)) < 1e-10
    assert list(lambdas) == sorted(lambdas, reverse=True)


def test_single_mode_hamiltonian():
    h, offset = fm.hamiltonian_to_majorana(np.array([[1.5]]), np.zeros((1, 1)))
    assert np.allclose(h, [[0.0, -1.5], [1.5, 0.0]])
    assert offset == pytest.approx(0.75)


def test_bcs_round_trip():
    m = fm.bcs_fcm([0.3, 0.7])
    d = fm.modewise_decompose(m, [0, 2], [1, 3])
    assert d.thetas == pytest.approx([0.7, 0.3], abs=1e-12)
    assert fm.reconstruction_residual(m, d) < 1e-12
    report = fm.pure_mode_entanglement(d)
    expected = sum(fm.binary_entropy(math.cos(t) ** 2) for t in (0.3, 0.7))
    assert report.total_modes_entropy == pytest.approx(expected, abs=1e-12)


def test_kitaev_against_fock_oracle():
    c, a = fm.kitaev_chain(5, 0.8, 1.0, 0.6)
    gs = fm.ground_state_fcm(c, a)
    psi, energy, _ = fm.dense_ground_state(c, a)
    assert gs["energy"] == pytest.approx(energy, abs=1e-10)
    assert np.max(np.abs(fm.fcm_from_state(psi) - gs["fcm"])) < 1e-10

    d = fm.modewise_decompose(gs["fcm"], [0, 1], [2, 3, 4])
    _, fidelity = fm.reconstruct_state(d, psi)
    assert fidelity > 1 - 1e-10
    schmidt = fm.schmidt_entropy(psi, [0, 1], [2, 3, 4])
    assert fm.pure_mode_entanglement(d).total_modes_entropy == pytest.approx(schmidt, abs=1e-10)


def test_isotropic_ppt():
    m = fm.isotropic_fcm(4, 0.9, 5)
    assert fm.isotropy_parameter(m) == pytest.approx(0.9)
    d = fm.modewise_decompose(m, [0, 1], [2, 3])
    report = fm.isotropic_separability(d)
    for pair, npt in zip(d.pairs, report.pair_npt_flags):
        assert npt == (pair.kappa > 0.5 * (1 - 0.81))
    assert not fm.ppt_pair_entangled(0.5, 0.375)
    assert fm.ppt_min_eigenvalue(0.8, 0.6, math.sqrt(0.64 - 0.36)) < 0


def test_errors_map_to_python_exceptions():
    mixed = np.zeros((4, 4))
    mixed[0, 1], mixed[1, 0] = -0.9, 0.9
    mixed[2, 3], mixed[3, 2] = -0.3, 0.3
    with pytest.raises(fm.NotIsotropic):
        fm.modewise_decompose(mixed, [0], [1])
    with pytest.raises(fm.NumericalConsistency):
        fm.modewise_decompose(mixed, [0], [1])
    with pytest.raises(ValueError):
        fm.modewise_decompose(fm.bcs_fcm([0.2]), [0], [0])
    with pytest.raises(fm.ResourceLimit):
        fm.dense_ground_state(np.eye(13), np.zeros((13, 13)))


def test_verify_suite_passes():
    results = fm.verify(max_modes=4, trials=3, seed=11)
    assert results and all(r["passed"] for r in results)
