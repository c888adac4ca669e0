import math

import numpy as np
import pytest

import su3ym


def test_irrep_arithmetic():
    assert su3ym.dimension((1, 1)) == 8
    assert su3ym.dimension((2, 1)) == 15
    assert su3ym.casimir((1, 0)) == (4, 3)
    assert su3ym.conjugate_irrep((2, 0)) == (0, 2)
    decomp = su3ym.tensor_decompose((1, 1), (1, 1))
    assert decomp[(1, 1)] == 2
    assert decomp[(0, 0)] == 1


def test_states_and_vertex_factors():
    states = su3ym.enumerate_states((1, 1))
    assert len(states) == 8
    cg = su3ym.cg_tensor((1, 0), (0, 1), (0, 0), 0)
    assert cg.shape == (3, 3, 1)
    assert abs((cg ** 2).sum() - 1.0) < 1e-12
    v = su3ym.nine_r([(0, 0), (1, 0), (1, 0), (0, 1), (0, 0), (0, 1), (0, 1), (1, 0), (0, 0)])
    assert abs(v - 1.0) < 1e-10


def test_bases_and_hamiltonians():
    assert len(su3ym.enumerate_physical("two-plaquette-pbc", ["1", "3", "3bar"])) == 27
    assert su3ym.global_singlet_count("two-plaquette-pbc", ["1", "3", "3bar"]) == 9
    dims = su3ym.sector_dimensions("two-plaquette-pbc", ["1", "3", "3bar"])
    assert dims[(1, 1)] == 4 and dims[(1, -1)] == 1

    op = su3ym.one_plaquette_hamiltonian(1)
    assert np.allclose(op["electric"], [0, 16 / 3, 16 / 3, 12])
    expected = np.array([[0, 1, 1, 0], [1, 0, 1, 1], [1, 1, 0, 1], [0, 1, 1, 0]], dtype=float)
    assert np.allclose(op["magnetic"], expected)
    h = su3ym.hamiltonian_dense(op, 1.0)
    assert np.allclose(h, h.T)


def test_evolution_and_local_equivalence():
    op = su3ym.one_plaquette_hamiltonian(2)
    traj = su3ym.evolve_exact(op, 1.0, [0.0, 0.5, 1.0])
    assert traj["persistence"][0] == pytest.approx(1.0)
    assert traj["electric"][0] == pytest.approx(0.0)

    local = su3ym.evolve_local("two-plaquette-pbc", ["1", "3", "3bar"], 1.0, 0.1, 10)
    assert max(local["leakage"]) < 1e-12

    gap4 = su3ym.mass_gap(4, 1.0)
    gap8 = su3ym.mass_gap(8, 1.0)
    assert abs(gap4 - gap8) / gap8 < 1e-9


def test_counting_and_circuits():
    assert su3ym.count_3pt_singlets(1) == 19
    assert su3ym.count_4pt_singlets(1) == 82
    states, mes = su3ym.count_plaquette_physical(["1", "3", "3bar"])
    assert (states, mes) == (81, 81)
    assert su3ym.qubit_estimate(10, 3, 1) == 2000
    assert su3ym.control_sector_count(["1", "3", "3bar"]) == 27
    assert su3ym.lowering_pauli_term_count(3) == 14

    reports = su3ym.verify_circuit_identities(20)
    assert all(dev < 1e-10 for dev in reports.values())


def test_su2_tail():
    slope = su3ym.su2_tail_slope(40, 1.0)
    predict = -1.0 / (2 * math.sqrt(2.0))
    assert abs(slope - predict) / abs(predict) < 0.15
