import json
import math

import numpy as np
import pytest

from hermquant.exact import exact_max_abs, exact_sub
from hermquant.ladder import ladder_apply, left
from hermquant.matrices import (TruncatedOperator, build_A_z, build_A_zbar,
                                build_AH, build_Aq2, build_Hhat,
                                build_P, build_Q, eps_sign, ground_projector,
                                operator_csv_rows, operator_json_obj,
                                verify_almost_canonical,
                                verify_square_identities,
                                verify_weyl_commutator)


def test_annihilator_superdiagonal_s0():
    op = build_A_z(0, 5, "L")
    assert np.allclose(np.diag(op.entries, 1), np.sqrt([1, 2, 3, 4]))
    assert op.band_violation() == 0.0


def test_annihilator_superdiagonal_s2():
    op = build_A_z(2, 6, "L")
    assert np.allclose(np.diag(op.entries, 1), np.sqrt([3, 4, 5, 6, 7]))


def test_right_sector_is_transpose_pattern():
    l = build_A_z(1, 6, "L")
    r = build_A_z(1, 6, "R")
    assert np.allclose(r.entries, l.entries.T)


def test_adjoint_pairs_are_exact_conjugate_transposes():
    for build in (build_A_z, build_P, build_Q):
        op = build(2, 7, "L")
        adj = op.adjoint()
        assert np.array_equal(adj.entries, op.entries.conj().T)
    zbar = build_A_zbar(2, 7, "L")
    assert np.array_equal(zbar.entries, build_A_z(2, 7, "L").entries.conj().T)


def test_position_top_corner_and_hermiticity():
    for s in range(4):
        q = build_Q(s, 6)
        assert q.entries[0, 0] == 0
        assert q.entries[0, 1] == pytest.approx(math.sqrt((s + 1) / 2))
        assert np.array_equal(q.entries, q.entries.conj().T)
        p = build_P(s, 6, "L")
        assert np.array_equal(p.entries, p.entries.conj().T)
        assert np.allclose(p.entries.real, 0.0)


def test_projected_ladder_matches_matrix_builders():
    # restriction of the abstract lowering operator to one sector equals the
    # built matrix on the common block
    for s in (0, 2):
        N = 7
        m = np.zeros((N, N), complex)
        for n in range(N):
            for idx, c in ladder_apply("AL", left(n, s)).items():
                if idx.kind in ("L", "G") and idx.s == s and idx.n < N:
                    m[idx.n, n] = float(c)
        assert np.allclose(m, build_A_z(s, N, "L").entries)


@pytest.mark.parametrize("epsilon", ["L", "R"])
@pytest.mark.parametrize("s", range(7))
def test_weyl_commutator_exact(epsilon, s):
    check = verify_weyl_commutator(s, 10, epsilon)
    assert check.passed and check.max_residual == 0.0


@pytest.mark.parametrize("epsilon", ["L", "R"])
@pytest.mark.parametrize("s", range(7))
def test_almost_canonical_commutator_exact(epsilon, s):
    check = verify_almost_canonical(s, 10, epsilon)
    assert check.passed and check.max_residual == 0.0


def test_commutator_float_matches_shifted_identity():
    s, N = 3, 8
    q = build_Q(s, N + 2).entries
    p = build_P(s, N + 2, "L").entries
    comm = (q @ p - p @ q)[:N, :N]
    want = 1j * np.eye(N)
    want[0, 0] += 1j * s
    assert np.allclose(comm, want, atol=1e-13)


@pytest.mark.parametrize("s", range(7))
def test_square_identities_exact(s):
    for check in verify_square_identities(s, 12):
        assert check.passed and check.max_residual == 0.0, check


def test_AH_spectrum_is_shifted_integers():
    op = build_AH(3, 6)
    assert np.array_equal(np.diag(op.entries).real, np.arange(6) + 7)
    assert exact_max_abs(exact_sub(op.exact, op.exact)) == 0.0


def test_Hhat_levels_and_gaps():
    for s in range(5):
        hh = np.diag(build_Hhat(s, 6).entries).real
        assert hh[0] == (s + 1) / 2
        assert hh[1] - hh[0] == s / 2 + 1
        assert np.allclose(np.diff(hh[1:]), 1.0)


def test_shift_between_direct_and_substituted():
    for s in range(5):
        d = np.diag(build_AH(s, 8).entries).real - np.diag(build_Hhat(s, 8).entries).real
        assert d[0] == pytest.approx(s + 0.5 + s / 2)
        assert np.allclose(d[1:], s + 0.5)


def test_mirror_symmetry_of_built_matrices():
    for s in range(4):
        assert np.array_equal(build_Q(s, 6, "R").entries, build_Q(s, 6, "L").entries)
        assert np.array_equal(build_P(s, 6, "R").entries,
                              np.conj(build_P(s, 6, "L").entries))
        assert np.array_equal(build_A_z(s, 6, "R").entries,
                              np.conj(build_A_zbar(s, 6, "L").entries))


def test_commutator_sign_reverses_under_mirror():
    s, N = 2, 6
    def comm(eps):
        q = build_Q(s, N + 2, eps).entries
        p = build_P(s, N + 2, eps).entries
        return (q @ p - p @ q)[:N, :N]
    assert np.allclose(comm("R"), -comm("L"))


def test_eps_sign_convention():
    assert eps_sign("L") == -1 and eps_sign("R") == 1
    with pytest.raises(ValueError):
        eps_sign("X")


def test_band_metadata_and_violation():
    op = build_Aq2(1, 8)
    assert (op.band_low, op.band_high) == (-2, 2)
    assert op.band_violation() == 0.0
    proj = ground_projector(4)
    assert proj.entries[0, 0] == 1 and np.abs(proj.entries).sum() == 1


def test_csv_and_json_export_round_trip():
    op = build_P(1, 3, "L")
    rows = operator_csv_rows(op)
    assert len(rows) == 3 and len(rows[0]) == 6
    rebuilt = np.array([[complex(float(r[2 * j]), float(r[2 * j + 1]))
                         for j in range(3)] for r in rows])
    assert np.array_equal(rebuilt, op.entries)
    obj = operator_json_obj(op)
    assert obj["dim"] == 3 and obj["band_low"] == -1
    assert obj["entries"][0][1]["im"] == op.entries[0, 1].imag
    json.dumps(obj)  # serializable


def test_truncated_operator_validation():
    with pytest.raises(ValueError):
        TruncatedOperator(np.zeros((2, 3)), 0, 0)
    op = build_Q(0, 4)
    with pytest.raises(ValueError):
        op.entries[0, 0] = 5.0  # frozen storage
