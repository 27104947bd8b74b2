"""Orthonormal two-index Hermite functions on the complex plane, their
reproducing kernels, normalization factors, displacement matrix elements,
and the associated probability distributions.

The working functions are

    phi^L_{n;s}(z) = (-1)^s sqrt(s!/(s+n)!) e^{-|z|^2/2} zbar^n L_s^(n)(|z|^2)

with phi^R the complex conjugate; for n = 0 both collapse to the same
real-valued relative ground state.  Magnitudes are assembled in log space so
large |z| neither overflows nor underflows.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence, TailError
from .quadrature import QuadratureRule, gauss_laguerre_rule, grid_points, \
    phase_space_integral
from .specfun import laguerre, laguerre_many, log_factorial


@dataclass(frozen=True)
class BasisLabel:
    """Label (epsilon, n, s) of one orthonormal basis function."""

    epsilon: str
    n: int
    s: int

    def __post_init__(self):
        if self.epsilon not in ("L", "R"):
            raise ValueError("epsilon must be 'L' or 'R'")
        if self.n < 0 or self.s < 0:
            raise ValueError("n and s must be nonnegative")


def _phi_left(n: int, s: int, z: complex) -> complex:
    z = complex(z)
    t = abs(z) ** 2
    if z == 0:
        return 0.0 if n > 0 else (-1) ** s * math.exp(0.0) * laguerre(s, 0, 0.0)
    lag = laguerre(s, n, t)
    if lag == 0.0:
        return 0j
    logmag = (0.5 * (log_factorial(s) - log_factorial(s + n))
              - 0.5 * t + n * math.log(abs(z)) + math.log(abs(lag)))
    phase = cmath.exp(-1j * n * cmath.phase(z))
    sign = (-1) ** s * (1.0 if lag > 0 else -1.0)
    if logmag < -745.0:
        return 0j
    return sign * math.exp(logmag) * phase


def phi(label: BasisLabel, z: complex) -> complex:
    """Value of the orthonormal basis function phi^eps_{n;s} at z."""
    val = _phi_left(label.n, label.s, z)
    return val.conjugate() if label.epsilon == "R" else val


def normalization(s: int, t: float) -> float:
    """Coherent-state normalization N_s(t) in closed form:

        N_s(t) = e^t - sum_{m<s} (m!/s!) t^{s-m} (L_m^(s-m)(t))^2
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    out = math.exp(t)
    for m in range(s):
        out -= (math.factorial(m) / math.factorial(s)
                * t ** (s - m) * laguerre(m, s - m, t) ** 2)
    return out


def normalization_series(s: int, t: float, tol: float = 1e-14,
                         max_terms: int = 100_000):
    """N_s(t) summed from its defining series sum_n (s!/(s+n)!) t^n L_s^(n)(t)^2.

    Truncates once three consecutive terms drop below tol relative to the
    partial sum; returns (value, terms_used).
    """
    total = 0.0
    small = 0
    fac = 1.0  # s!/(s+n)!
    for n in range(max_terms):
        if n > 0:
            fac /= s + n
        term = fac * t**n * laguerre(s, n, t) ** 2
        total += term
        if abs(term) <= tol * max(abs(total), 1.0):
            small += 1
            if small >= 3:
                return total, n + 1
        else:
            small = 0
    raise NonConvergence("normalization series did not settle")


def normalization_deficit_log(s: int, t: float) -> float:
    """log(e^t - N_s(t)), the log of the subtracted degree-(2s-1) polynomial.

    Finite iff the deficit is strictly positive, which is how the strict
    bound N_s(t) < e^t (s >= 1, t > 0) stays checkable after e^t - N_s drops
    below float resolution of e^t.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    terms = []
    for m in range(s):
        if t == 0.0:
            continue
        lag = laguerre(m, s - m, t)
        if lag == 0.0:
            continue
        terms.append(log_factorial(m) - log_factorial(s)
                     + (s - m) * math.log(t) + 2.0 * math.log(abs(lag)))
    if not terms:
        return -math.inf
    top = max(terms)
    return top + math.log(sum(math.exp(v - top) for v in terms))


def normalization_scaled(s: int, t: float) -> float:
    """e^{-t} N_s(t), assembled stably for any t >= 0 (bounded in (0, 1])."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0.0:
        return 1.0
    acc = 1.0
    for m in range(s):
        lag = laguerre(m, s - m, t)
        if lag == 0.0:
            continue
        logterm = (log_factorial(m) - log_factorial(s)
                   - t + (s - m) * math.log(t) + 2.0 * math.log(abs(lag)))
        if logterm > -745.0:
            acc -= math.exp(logterm)
    return acc


@dataclass(frozen=True)
class KernelValue:
    """Adaptively truncated kernel evaluation with a tail estimate."""

    value: complex
    truncation_n: int
    est_tail: float


def kernel(s: int, z: complex, zprime: complex, tol: float = 1e-12,
           max_terms: int = 500) -> KernelValue:
    """Sector-s reproducing kernel

        K_s(z, zbar') = sum_n [s!/(s+n)!] (zbar z')^n L_s^(n)(|z|^2) L_s^(n)(|z'|^2)

    truncated when three consecutive terms fall below tol times the partial
    sum.  The terms eventually decay factorially, so the discarded tail is
    below est_tail.
    """
    z = complex(z)
    zprime = complex(zprime)
    t = abs(z) ** 2
    tp = abs(zprime) ** 2
    w = z.conjugate() * zprime
    total = 0j
    wn = 1.0 + 0j
    fac = 1.0
    small: list = []
    for n in range(max_terms):
        if n > 0:
            fac /= s + n
            wn *= w
        term = fac * wn * laguerre(s, n, t) * laguerre(s, n, tp)
        total += term
        if abs(term) <= tol * max(abs(total), 1.0):
            small.append(abs(term))
            if len(small) >= 3:
                return KernelValue(total, n + 1, 2.0 * sum(small))
        else:
            small = []
    raise NonConvergence(
        f"kernel series for s={s} did not meet the tail bound in {max_terms} terms"
    )


def kernel_s1_closed(z: complex, zprime: complex) -> complex:
    """Closed form of the s = 1 kernel:

        e^{zbar z'} (1 - |z - z'|^2) - z zbar'
    """
    z = complex(z)
    zprime = complex(zprime)
    return (cmath.exp(z.conjugate() * zprime) * (1.0 - abs(z - zprime) ** 2)
            - z * zprime.conjugate())


def reproduce(s: int, z: complex, f, n_max: int, f_degree: float | None = None):
    """Quadrature check of the reproducing property

        integral d^2z'/pi e^{-(|z|^2+|z'|^2)/2} K_s(z, zbar') f(z') = f(z)

    for f a finite combination of the phi_{m;s'}, m <= n_max.  The angular
    integral kills every kernel term beyond n_max for such f, so the series
    truncation at n_max is exact, and the polar rule is sized to be exact for
    the remaining polynomial integrand.  f_degree bounds the radial degree of
    e^{|z'|^2/2} f (default: n_max/2 + s).
    """
    z = complex(z)
    if f_degree is None:
        f_degree = n_max / 2 + s
    n_r = int(math.ceil(n_max / 2 + s + f_degree)) + 8
    m_ang = 2 * n_max + 3
    base = gauss_laguerre_rule(n_r)
    rule = QuadratureRule(base.radial_nodes, base.radial_weights, m_ang)
    zg = grid_points(rule)
    t = abs(z) ** 2
    tp = rule.radial_nodes

    w = np.conj(z) * zg
    kern = np.zeros_like(zg, dtype=complex)
    wn = np.ones_like(zg, dtype=complex)
    fac = 1.0
    for n in range(n_max + 1):
        if n > 0:
            fac /= s + n
            wn = wn * w
        kern += fac * wn * laguerre(s, n, t) * laguerre(s, n, tp)[:, None]

    try:
        fvals = f(zg)
        fvals = np.asarray(fvals, dtype=complex)
        if fvals.shape != zg.shape:
            raise TypeError
    except TypeError:
        fvals = np.array([[complex(f(pt)) for pt in row] for row in zg])

    integrand = np.exp(tp / 2.0)[:, None] * kern * fvals
    return math.exp(-t / 2.0) * phase_space_integral(rule, integrand)


def displacement_element(m: int, s: int, z: complex) -> complex:
    """Matrix element <m|D(z)|s> of the Weyl-Heisenberg displacement operator,
    for the implemented branch m >= s:  D_{ms}(z) = (-1)^s phi^R_{m-s;s}(z)."""
    if m < s:
        raise IndexError("displacement_element implements the branch m >= s")
    return (-1) ** s * phi(BasisLabel("R", m - s, s), z)


def gamma_like_pdf(n: int, s: int, t: float) -> float:
    """Radial density [s!/(s+n)!] e^{-t} t^n (L_s^(n)(t))^2 on t >= 0;
    reduces to the gamma density e^{-t} t^n / n! at s = 0."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0.0:
        return 1.0 if n == 0 else 0.0
    lag = laguerre(s, n, t)
    if lag == 0.0:
        return 0.0
    logv = (log_factorial(s) - log_factorial(s + n)
            - t + n * math.log(t) + 2.0 * math.log(abs(lag)))
    return math.exp(logv) if logv > -745.0 else 0.0


def poisson_like_pmf(n: int, s: int, t: float) -> float:
    """Occupancy distribution [s!/(s+n)!] t^n (L_s^(n)(t))^2 / N_s(t);
    reduces to the Poisson distribution at s = 0."""
    return gamma_like_pdf(n, s, t) / normalization_scaled(s, t)


def cs_coefficients(s: int, z: complex, dim: int, epsilon: str = "L",
                    tol: float = 1e-14) -> np.ndarray:
    """Coefficients of the unit coherent state |z; s, eps> in its number basis:

        c_n = (-1)^s sqrt(s!/(s+n)!) z^n L_s^(n)(|z|^2) / sqrt(N_s(|z|^2))

    (conjugate phases for eps = 'R').  Raises TailError if dim terms capture
    less than 1 - tol of the unit norm.
    """
    if epsilon not in ("L", "R"):
        raise ValueError("epsilon must be 'L' or 'R'")
    z = complex(z)
    t = abs(z) ** 2
    out = np.zeros(dim, dtype=complex)
    if z == 0:
        out[0] = (-1) ** s
        return out
    ns = np.arange(dim, dtype=float)
    lag = laguerre_many(s, ns, t)
    log_n = (0.5 * (log_factorial(s) - np.array([log_factorial(s + k) for k in range(dim)]))
             + ns * math.log(abs(z)))
    log_norm = t + math.log(normalization_scaled(s, t))
    with np.errstate(divide="ignore"):
        logmag = log_n + np.where(lag == 0.0, -np.inf, np.log(np.abs(lag))) - 0.5 * log_norm
    theta = cmath.phase(z) * (1.0 if epsilon == "L" else -1.0)
    phases = np.exp(1j * ns * theta)
    mags = np.where(logmag > -745.0, np.exp(np.minimum(logmag, 700.0)), 0.0)
    out = (-1) ** s * np.sign(lag) * mags * phases
    captured = float(np.sum(np.abs(out) ** 2))
    if captured < 1.0 - tol:
        raise TailError(
            f"coherent-state tail: dim={dim} captures {captured:.17g} of the norm"
        )
    return out
