import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermquant.exact import SqrtSum
from hermquant.ladder import (SectorIndex, apply_word, basis_window,
                              dual_hamiltonian_verify, ground, ladder_apply,
                              left, mirror_index, nlpb_verify, norm_squared,
                              right, sum_residual, sum_sub,
                              verify_commutators_full)


def test_absolute_ground_state_annihilated():
    assert ladder_apply("AL", ground(0)) == {}
    assert ladder_apply("AR", ground(0)) == {}


def test_relative_ground_states_shift_sectors():
    assert ladder_apply("AL", ground(3)) == {right(1, 2): SqrtSum.sqrt(3)}
    assert ladder_apply("AR", ground(3)) == {left(1, 2): SqrtSum.sqrt(3)}


def test_cross_annihilation_of_opposite_sector():
    assert ladder_apply("AR", left(2, 0)) == {}
    assert ladder_apply("AL", right(5, 0)) == {}


def test_in_sector_ladder_weights():
    assert ladder_apply("AL", left(4, 2)) == {left(3, 2): SqrtSum.sqrt(6)}
    assert ladder_apply("ALdag", left(4, 2)) == {left(5, 2): SqrtSum.sqrt(7)}


@pytest.mark.parametrize("s", range(1, 9))
def test_quadratic_ground_ladders(s):
    assert apply_word(("AL", "AR"), ground(s)) == {ground(s - 1): SqrtSum(s)}
    assert apply_word(("ARdag", "ALdag"), ground(s)) == \
        {ground(s + 1): SqrtSum(s + 1)}


def test_invalid_indices_rejected():
    with pytest.raises(ValueError):
        SectorIndex("L", 0, 1)
    with pytest.raises(ValueError):
        SectorIndex("G", 1, 1)
    with pytest.raises(ValueError):
        SectorIndex("L", 1, -1)


def test_left_right_constructors_canonicalize_ground():
    assert left(0, 4) == ground(4) == right(0, 4)


def test_full_commutator_sweep_is_exact():
    for check in verify_commutators_full(8, 8):
        assert check.passed and check.max_residual == 0.0, check


def test_number_operator_eigenvalues():
    assert ladder_apply("NL", left(3, 2)) == {left(3, 2): SqrtSum(5)}
    assert ladder_apply("NL", right(3, 2)) == {right(3, 2): SqrtSum(2)}
    assert ladder_apply("NR", ground(4)) == {ground(4): SqrtSum(4)}


def test_mirror_involution():
    for idx in (ground(2), left(3, 1), right(1, 0)):
        assert mirror_index(mirror_index(idx)) == idx
        assert apply_word(("J", "J"), idx) == {idx: SqrtSum(1)}


def test_adjointness_pairing_on_window():
    # <ALdag x, y> == <x, AL y> entry by entry over a finite window
    window = basis_window(6, 6)
    for x in window:
        up = ladder_apply("ALdag", x)
        for y in window:
            down = ladder_apply("AL", y)
            lhs = up.get(y, SqrtSum(0))
            rhs = down.get(x, SqrtSum(0))
            assert lhs == rhs, (x, y)


def test_no_negative_indices_ever():
    for idx in basis_window(5, 5):
        for op in ("AL", "ALdag", "AR", "ARdag"):
            for out in ladder_apply(op, idx):
                assert out.n >= 0 and out.s >= 0
                assert out.kind in ("L", "G", "R")


@settings(max_examples=80)
@given(st.integers(0, 12), st.integers(0, 12))
def test_norm_consistency_raise_then_lower(n, s):
    idx = left(n, s) if n else ground(s)
    once = apply_word(("AL", "ALdag"), idx)
    assert once == {idx: SqrtSum(s + n + 1)}


def test_nlpb_suite_exact():
    for check in nlpb_verify(30, 8):
        assert check.passed and check.max_residual == 0.0, check


def test_nlpb_chain_normalizations():
    # b^n on the absolute ground gives n! phi_{0;n}; adjoint chain (n!)^2
    vec = {ground(0): SqrtSum(1)}
    for n in range(1, 12):
        vec = apply_word(("ARdag", "ALdag"), vec)
        assert vec == {ground(n): SqrtSum(math.factorial(n))}


def test_nlpb_norm_ratio_growth():
    ratios = []
    for n in range(0, 12):
        psi = norm_squared({ground(n): SqrtSum.sqrt(math.factorial(n))})
        phi = norm_squared({ground(n): SqrtSum.sqrt(Fraction(1, math.factorial(n)))})
        ratios.append(psi / phi)
        assert ratios[-1] == Fraction(math.factorial(n)) ** 2
    # strictly increasing from n = 1 on (0! = 1!)
    assert all(b > a for a, b in zip(ratios[1:], ratios[2:]))


@pytest.mark.parametrize("s", [0, 1, 2, 3])
def test_dual_hamiltonian_suite_exact(s):
    for check in dual_hamiltonian_verify(30, s):
        assert check.passed and check.max_residual == 0.0, check


def test_dual_hamiltonian_transformed_vector():
    vec = apply_word(("AL", "J"), right(4, 2))
    assert vec == {left(3, 2): SqrtSum.sqrt(6)}


def test_sum_sub_and_residual():
    a = {ground(1): SqrtSum(2)}
    b = {ground(1): SqrtSum(2), left(1, 0): SqrtSum.sqrt(2)}
    diff = sum_sub(a, b)
    assert sum_residual(diff) == pytest.approx(math.sqrt(2))
    assert sum_residual(sum_sub(a, a)) == 0.0
