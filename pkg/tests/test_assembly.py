import csv

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from supgdirac.assembly import assemble, assemble_galerkin, assemble_supg, integral_families
from supgdirac.femcore import TriDiag
from supgdirac.mesh import MeshConfig, generate_exponential, generate_uniform
from supgdirac.physics import PhysicalParams, PotentialModel

MESH = generate_exponential(MeshConfig(0.0, 20.0, 40))
PARAMS = PhysicalParams(118, -2)


def test_dimension_and_sparsity():
    p = assemble_galerkin(MESH, PARAMS)
    assert p.left.shape == p.right.shape == (80, 80)
    assert p.dim == 2 * p.n
    # each block is tridiagonal
    for i in (0, 1):
        for j in (0, 1):
            blk = p.block("left", i, j)
            assert np.all(np.triu(blk, 2) == 0) and np.all(np.tril(blk, -2) == 0)


@settings(max_examples=20, deadline=None)
@given(kappa=st.sampled_from([-5, -3, -2, -1, 1, 2, 4]), z=st.integers(1, 118))
def test_galerkin_symmetry(kappa, z):
    params = PhysicalParams(z, kappa)
    p = assemble_galerkin(MESH, params)
    A, B = p.dense()
    assert np.abs(A - A.T).max() <= 1e-12 * np.abs(A).max()
    np.testing.assert_array_equal(B, B.T)
    assert np.all(np.linalg.eigvalsh(B) > 0)
    a = integral_families(MESH, params, PotentialModel.point())
    A12, A21 = p.block("left", 0, 1), p.block("left", 1, 0)
    np.testing.assert_allclose(A21, A12.T, atol=1e-12 * np.abs(A12).max())
    expected = -A12 + 2 * params.c * kappa * a["001"].toarray()
    np.testing.assert_allclose(A21, expected, atol=1e-12 * np.abs(A12).max())


def test_potential_free_reduction():
    a = integral_families(MESH, PARAMS, PotentialModel.point())
    zero = a["000"] * 0.0
    a["000V"] = zero
    a["100V"] = zero
    g = assemble_galerkin(MESH, PARAMS, families=a)
    mc2 = PARAMS.rest_energy
    np.testing.assert_array_equal(g.block("left", 0, 0), mc2 * a["000"].toarray())
    np.testing.assert_array_equal(g.block("left", 1, 1), -mc2 * a["000"].toarray())


def test_supg_reduces_to_galerkin_on_uniform_mesh():
    mesh = generate_uniform(0.0, 10.0, 50)
    np.testing.assert_array_equal(mesh.taus, 0.0)
    g, s = assemble_galerkin(mesh, PARAMS), assemble_supg(mesh, PARAMS)
    for Mg, Ms in zip(g.dense(), s.dense()):
        assert np.abs(Mg - Ms).max() <= 1e-14 * np.abs(Mg).max()


def test_supg_zero_tau_is_galerkin():
    g, s = assemble_galerkin(MESH, PARAMS), assemble_supg(MESH, PARAMS, tau_scale=0.0)
    for Mg, Ms in zip(g.dense(), s.dense()):
        np.testing.assert_array_equal(Mg, Ms)


def test_supg_linear_in_tau():
    A0, B0 = assemble_supg(MESH, PARAMS, tau_scale=0.0).dense()
    A1, B1 = assemble_supg(MESH, PARAMS, tau_scale=1.0).dense()
    A2, B2 = assemble_supg(MESH, PARAMS, tau_scale=2.0).dense()
    scale = np.abs(A1).max()
    assert np.abs(A2 - 2 * A1 + A0).max() <= 1e-12 * scale
    assert np.abs(B2 - 2 * B1 + B0).max() <= 1e-14


def test_supg_stabilization_is_row_scaled():
    t = np.zeros(MESH.n)
    t[7] = 0.25
    A0, B0 = assemble_supg(MESH, PARAMS, taus=np.zeros(MESH.n)).dense()
    A1, B1 = assemble_supg(MESH, PARAMS, taus=t).dense()
    changed = np.unique(np.nonzero((A1 != A0) | (B1 != B0))[0])
    assert set(changed) <= {7, 7 + MESH.n}


def test_supg_right_matrix_structure():
    p = assemble_supg(MESH, PARAMS)
    a = integral_families(MESH, PARAMS, PotentialModel.point())
    B11, B12 = p.block("right", 0, 0), p.block("right", 0, 1)
    np.testing.assert_array_equal(B12, p.block("right", 1, 0))
    np.testing.assert_array_equal(B11, B11.T)
    np.testing.assert_array_equal(B11, p.block("right", 1, 1))
    np.testing.assert_allclose(B12, a["100"].scale_rows(MESH.taus).toarray(), rtol=0, atol=0)
    A, _ = p.dense()
    assert np.abs(A - A.T).max() > 1e-6  # the stabilized operator is not symmetric


def test_supg_block_formulas():
    p = assemble_supg(MESH, PARAMS)
    a = {k: v.toarray() for k, v in integral_families(MESH, PARAMS, PotentialModel.point()).items()}
    T = np.diag(MESH.taus)
    mc2, c, k = PARAMS.rest_energy, PARAMS.c, PARAMS.kappa
    expected = {
        (0, 0): mc2 * a["000"] + a["000V"] + T @ (c * a["110"] + c * k * a["101"]),
        (0, 1): -c * a["010"] + c * k * a["001"] + T @ (-mc2 * a["100"] + a["100V"]),
        (1, 0): c * a["010"] + c * k * a["001"] + T @ (mc2 * a["100"] + a["100V"]),
        (1, 1): -mc2 * a["000"] + a["000V"] + T @ (-c * a["110"] + c * k * a["101"]),
    }
    for (i, j), E in expected.items():
        np.testing.assert_allclose(p.block("left", i, j), E, rtol=1e-13, atol=1e-13 * np.abs(E).max())


def test_wrong_tau_shape():
    with pytest.raises(ValueError):
        assemble_supg(MESH, PARAMS, taus=np.ones(3))
    with pytest.raises(ValueError):
        assemble("fem", MESH, PARAMS)


def test_dump_csv(tmp_path):
    p = assemble_supg(generate_exponential(MeshConfig(0.0, 5.0, 4)), PARAMS)
    path = tmp_path / "pencil.csv"
    p.dump_csv(path)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["matrix", "row", "col", "value"]
    A = np.zeros((8, 8))
    B = np.zeros((8, 8))
    for name, i, j, v in rows[1:]:
        (A if name == "left" else B)[int(i), int(j)] = float(v)
    np.testing.assert_array_equal(A, p.left.toarray())
    np.testing.assert_array_equal(B, p.right.toarray())


def test_tridiag_sparse_roundtrip():
    a = integral_families(MESH, PARAMS, PotentialModel.point())["110"]
    assert isinstance(a, TriDiag)
    np.testing.assert_array_equal(a.tosparse().toarray(), a.toarray())
