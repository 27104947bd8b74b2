import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermquant.basis import (BasisLabel, cs_coefficients,
                             displacement_element, gamma_like_pdf, kernel,
                             kernel_s1_closed, normalization,
                             normalization_deficit_log, normalization_scaled,
                             normalization_series, phi, poisson_like_pmf,
                             reproduce)
from hermquant.errors import NonConvergence, TailError
from hermquant.quadrature import gauss_laguerre_rule
from hermquant.specfun import laguerre
from hermquant.verify import phi_gram_residual


def _phi_vec(label):
    def f(zgrid):
        return np.vectorize(lambda u: phi(label, u))(zgrid)
    return f


def test_phi_ground_state_coincides_across_sectors():
    z = 0.7 + 0.3j
    for s in range(5):
        left = phi(BasisLabel("L", 0, s), z)
        right = phi(BasisLabel("R", 0, s), z)
        want = (-1) ** s * math.exp(-abs(z) ** 2 / 2) * laguerre(s, 0, abs(z) ** 2)
        assert left == right
        assert left == pytest.approx(want, rel=1e-14)


def test_phi_s_zero_is_weighted_conjugate_power(rng):
    for n in range(8):
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        want = (math.exp(-abs(z) ** 2 / 2) * np.conj(z) ** n
                / math.sqrt(math.factorial(n)))
        assert phi(BasisLabel("L", n, 0), z) == pytest.approx(want, rel=1e-13)


def test_phi_large_argument_stays_finite():
    val = phi(BasisLabel("L", 3, 2), 30.0 + 1.0j)  # |z|^2 ~ 901
    assert val == 0.0 or (math.isfinite(val.real) and abs(val) < 1e-150)
    assert phi(BasisLabel("L", 900, 0), 30.0) != 0.0


def test_phi_gram_identity_to_1e9():
    worst = max(phi_gram_residual(s, 10) for s in range(5))
    assert worst < 1e-9


def test_phi_cross_sector_orthogonality():
    # <phi^L_{n;s}, phi^R_{n';s'}> = 0 unless both hit the shared ground state
    rule = gauss_laguerre_rule(40)
    thetas = 2 * np.pi * np.arange(25) / 25
    zg = np.sqrt(rule.radial_nodes)[:, None] * np.exp(1j * thetas)[None, :]
    cases = [((2, 1), (1, 1)), ((1, 0), (2, 3)), ((0, 1), (0, 2)), ((0, 1), (0, 1))]
    for (n1, s1), (n2, s2) in cases:
        f1 = np.vectorize(lambda u: phi(BasisLabel("L", n1, s1), u))(zg)
        f2 = np.vectorize(lambda u: phi(BasisLabel("R", n2, s2), u))(zg)
        gaussians = np.exp(np.abs(zg) ** 2)  # fold the rule weight back out
        val = np.dot(rule.radial_weights,
                     (np.conj(f1) * f2 * gaussians).mean(axis=1))
        want = 1.0 if (n1 == n2 == 0 and s1 == s2) else 0.0
        assert abs(val - want) < 1e-9, ((n1, s1), (n2, s2), val)


def test_normalization_low_orders_are_structurally_exact():
    for t in (0.1, 1.0, 17.5, 50.0):
        assert normalization(0, t) == math.exp(t)
        assert normalization(1, t) == math.exp(t) - t


def test_normalization_closed_form_matches_series():
    for s in range(7):
        for t in np.linspace(0.25, 50.0, 21):
            closed = normalization(s, float(t))
            series, _ = normalization_series(s, float(t))
            assert abs(closed - series) <= 1e-10 * abs(series), (s, t)


def test_normalization_strict_upper_bound():
    for s in range(1, 7):
        for t in np.linspace(0.25, 50.0, 21):
            v = normalization(s, float(t))
            assert 0.0 < v <= math.exp(t)
            assert normalization_deficit_log(s, float(t)) > -math.inf


def test_normalization_deficit_vanishes_only_at_zero_or_s_zero():
    assert normalization_deficit_log(0, 3.0) == -math.inf
    assert normalization_deficit_log(3, 0.0) == -math.inf


def test_normalization_scaled_matches_deficit():
    for s in range(5):
        for t in (0.5, 3.0, 20.0):
            scaled = normalization_scaled(s, t)
            assert scaled == pytest.approx(normalization(s, t) * math.exp(-t),
                                           rel=1e-12)
            assert 0.0 < scaled <= 1.0


def test_kernel_s0_is_exponential(rng):
    for _ in range(20):
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        kv = kernel(0, a, b)
        want = cmath.exp(np.conj(a) * b)
        assert abs(kv.value - want) <= 1e-10 * max(1.0, abs(want))


def test_kernel_s1_matches_closed_form(rng):
    for _ in range(20):
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        kv = kernel(1, a, b)
        closed = kernel_s1_closed(a, b)
        assert abs(kv.value - closed) <= 1e-8 * max(1.0, abs(closed))


def test_kernel_hermitian_symmetry(rng):
    for s in range(4):
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        assert abs(kernel(s, a, b).value
                   - np.conj(kernel(s, b, a).value)) < 1e-10


def test_kernel_tail_estimate_honored():
    a, b = 1.3 + 0.4j, -0.8 + 1.1j
    for s in (0, 2):
        coarse = kernel(s, a, b, tol=1e-6)
        fine = kernel(s, a, b, tol=1e-15, max_terms=2000)
        assert abs(fine.value - coarse.value) <= coarse.est_tail
        assert fine.truncation_n >= coarse.truncation_n


def test_kernel_nonconvergence_budget():
    with pytest.raises(NonConvergence):
        kernel(0, 40.0, 40.0, max_terms=30)


@pytest.mark.parametrize("s", [0, 1, 2])
def test_reproducing_property_ground_state(s):
    target = BasisLabel("L", 0, s)
    got = reproduce(s, 0.7 + 0.3j, _phi_vec(target), n_max=4)
    assert abs(got - phi(target, 0.7 + 0.3j)) < 1e-7


def test_reproducing_property_excited_state(rng):
    target = BasisLabel("L", 3, 1)
    f = _phi_vec(target)
    for _ in range(5):
        pt = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        assert abs(reproduce(1, pt, f, n_max=5) - phi(target, pt)) < 1e-7


def test_reproducing_kills_other_sectors():
    alien = BasisLabel("L", 2, 3)
    got = reproduce(1, 0.5 + 0.2j, _phi_vec(alien), n_max=4, f_degree=1 + 3)
    assert abs(got) < 1e-7


def test_displacement_vacuum_element():
    for z in (0.3 + 0.1j, 1.5 - 2.0j):
        assert displacement_element(0, 0, z) == pytest.approx(
            math.exp(-abs(z) ** 2 / 2))


def test_displacement_branch_restriction():
    with pytest.raises(IndexError):
        displacement_element(1, 2, 0.5 + 0.5j)


def test_displacement_partial_unitarity_monotone():
    for s in range(4):
        for z in (0.6 + 0.2j, 1.5 - 1.0j):
            terms = [abs(displacement_element(m, s, z)) ** 2
                     for m in range(s, s + 70)]
            partials = np.cumsum(terms)
            assert np.all(np.diff(partials) >= 0)
            assert partials[-1] <= 1.0 + 1e-12
            if s >= 1:
                assert partials[-1] < 1.0


def test_phi_square_sum_equals_scaled_normalization():
    # sum_n |phi_{n;s}(z)|^2 = e^{-t} N_s(t), < 1 for s >= 1
    for s in range(4):
        for z in (0.8 + 0.1j, 1.8 - 0.7j):
            t = abs(z) ** 2
            total = sum(abs(phi(BasisLabel("L", n, s), z)) ** 2
                        for n in range(80))
            assert total == pytest.approx(normalization_scaled(s, t), abs=1e-12)
            if s >= 1:
                assert total < 1.0


def test_radial_density_normalization():
    rule = gauss_laguerre_rule(60)
    for s in range(5):
        for n in range(0, 9, 2):
            vals = [math.exp(u) * gamma_like_pdf(n, s, u)
                    for u in rule.radial_nodes]
            assert abs(float(np.dot(rule.radial_weights, vals)) - 1.0) < 1e-10


def test_occupancy_distribution_normalization():
    for t in (0.5, 2.0, 10.0):
        for s in range(5):
            assert abs(sum(poisson_like_pmf(n, s, t)
                           for n in range(250)) - 1.0) < 1e-10


def test_distributions_reduce_to_gamma_and_poisson_at_s_zero():
    for t in (0.3, 2.0, 9.0):
        for n in range(6):
            assert gamma_like_pdf(n, 0, t) == pytest.approx(
                math.exp(-t) * t**n / math.factorial(n), rel=1e-13)
            assert poisson_like_pmf(n, 0, t) == pytest.approx(
                math.exp(-t) * t**n / math.factorial(n), rel=1e-13)


@settings(max_examples=40)
@given(st.integers(0, 4), st.integers(0, 30),
       st.floats(min_value=0.0, max_value=60.0, allow_nan=False))
def test_distribution_values_in_range(s, n, t):
    p = poisson_like_pmf(n, s, t)
    assert 0.0 <= p <= 1.0 + 1e-12


def test_cs_coefficients_unit_norm(rng):
    for s in range(4):
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        c = cs_coefficients(s, z, 70)
        assert abs(np.sum(np.abs(c) ** 2) - 1.0) < 1e-13


def test_cs_coefficients_tail_error():
    with pytest.raises(TailError):
        cs_coefficients(0, 3.0 + 0.0j, 5)


def test_cs_coefficients_sector_phases():
    z = 0.9 + 0.4j
    cl = cs_coefficients(1, z, 40, "L")
    cr = cs_coefficients(1, z, 40, "R")
    assert np.allclose(cr, np.conj(cl))
