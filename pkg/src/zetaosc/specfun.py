"""Special functions for the explicit formulas.

Hand-rolled where the evaluation strategy matters for the error budget
(Euler-Maclaurin zeta log-derivatives, Hurwitz-Lerch series); scipy's
Cephes routines behind thin domain-checked wrappers for the Bessel
factors J0 and I0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import i0 as _scipy_i0
from scipy.special import j0 as _scipy_j0

LOG_2PI = math.log(2.0 * math.pi)

J0_DOMAIN = 1e6
I0_DOMAIN = 700.0

ZETA_S_MIN = -1.5
ZETA_S_MAX = 4.0

_EM_N = 32        # Euler-Maclaurin: direct terms below N
_EM_BERNOULLI = 12  # number of B_{2k} correction terms


class SpecFunError(ValueError):
    pass


def bessel_j0(x: float) -> float:
    """Bessel function of the first kind, order zero."""
    if abs(x) > J0_DOMAIN:
        raise SpecFunError(f"|x|={abs(x)} beyond J0 domain {J0_DOMAIN}")
    return float(_scipy_j0(x))


def bessel_j0_array(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if (np.abs(x) > J0_DOMAIN).any():
        raise SpecFunError("J0 domain overflow")
    return _scipy_j0(x)


def bessel_i0(x: float) -> float:
    """Modified Bessel function I0; even, >= 1, overflow-guarded."""
    if abs(x) > I0_DOMAIN:
        raise SpecFunError(f"|x|={abs(x)} beyond I0 overflow guard {I0_DOMAIN}")
    return float(_scipy_i0(x))


def j0_series(x: float, nterms: int = 40) -> float:
    """Power-series J0; independent oracle for small arguments."""
    term, acc = 1.0, 1.0
    q = 0.25 * x * x
    for k in range(1, nterms + 1):
        term *= -q / (k * k)
        acc += term
    return acc


def i0_series(x: float, nterms: int = 40) -> float:
    """Power-series I0; independent oracle for small arguments."""
    term, acc = 1.0, 1.0
    q = 0.25 * x * x
    for k in range(1, nterms + 1):
        term *= q / (k * k)
        acc += term
    return acc


def lerch_phi(z: float, s: float, a: float, tol: float = 1e-16) -> float:
    """Hurwitz-Lerch transcendent sum_{n>=0} z^n (n+a)^{-s} for |z| < 1, a > 0.

    Terms are accumulated until the running term falls below tol times the
    partial sum and the geometric tail majorant is negligible too.
    """
    if abs(z) >= 1.0:
        raise SpecFunError(f"lerch_phi needs |z| < 1, got z={z}")
    if a <= 0.0:
        raise SpecFunError(f"lerch_phi needs a > 0, got a={a}")
    if z == 0.0:
        return a ** (-s)
    total = 0.0
    comp = 0.0  # Neumaier compensation
    zn = 1.0
    n = 0
    az = abs(z)
    while True:
        term = zn * (n + a) ** (-s)
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        n += 1
        zn *= z
        if n < 8:
            continue
        # geometric tail once the power-law factor ratio is tame
        ratio = az * (1.0 + 1.0 / (n + a)) ** max(-s, 0.0)
        if ratio < 1.0:
            tail = abs(term) * ratio / (1.0 - ratio)
            if tail <= tol * max(abs(total), 1e-300):
                break
        if n > 50_000_000:
            raise SpecFunError("lerch_phi did not converge (z too close to 1)")
    return total + comp


@lru_cache(maxsize=None)
def _bernoulli_even(m: int) -> tuple:
    """B_2, B_4, ..., B_{2m} as exact fractions via the defining recurrence."""
    bs = [Fraction(1)]  # B_0
    for k in range(1, 2 * m + 1):
        acc = Fraction(0)
        for j in range(k):
            acc += math.comb(k + 1, j) * bs[j]
        bs.append(-acc / (k + 1))
    return tuple(float(bs[2 * k]) for k in range(1, m + 1))


def _zeta_em(s: float) -> tuple[float, float, float]:
    """(zeta, zeta', zeta'') by Euler-Maclaurin, real s in (-1.5, 4) \\ {1}."""
    n = _EM_N
    ks = np.arange(1, n)
    lk = np.log(ks)
    pw = ks ** (-s)
    z0 = float(np.sum(pw))
    z1 = float(np.sum(-lk * pw))
    z2 = float(np.sum(lk * lk * pw))
    ln = math.log(n)
    nn = n ** (-s)
    # N^{1-s}/(s-1) and s-derivatives
    t = n * nn / (s - 1.0)
    z0 += t
    z1 += t * (-ln - 1.0 / (s - 1.0))
    z2 += t * (ln * ln + 2.0 * ln / (s - 1.0) + 2.0 / (s - 1.0) ** 2)
    # N^{-s}/2
    z0 += 0.5 * nn
    z1 += -0.5 * ln * nn
    z2 += 0.5 * ln * ln * nn
    # Bernoulli corrections with Pochhammer (s)_{2k-1} and derivatives
    b2k = _bernoulli_even(_EM_BERNOULLI)
    p, dp, ddp = 1.0, 0.0, 0.0
    fact = 1.0
    j = 0
    npow = nn * n  # N^{-s+1-2k} running power, starts at N^{1-s}
    for k in range(1, _EM_BERNOULLI + 1):
        while j < 2 * k - 1:
            f = s + j
            p, dp, ddp = p * f, dp * f + p, ddp * f + 2.0 * dp
            j += 1
        fact *= (2 * k) * (2 * k - 1)
        npow /= n * n
        c = b2k[k - 1] / fact * npow
        z0 += c * p
        z1 += c * (dp - ln * p)
        z2 += c * (ddp - 2.0 * ln * dp + ln * ln * p)
    return z0, z1, z2


def zeta_em(s: float) -> float:
    """zeta(s) on the supported real range."""
    _check_zeta_domain(s)
    return _zeta_em(s)[0]


def zeta_prime_em(s: float) -> float:
    _check_zeta_domain(s)
    return _zeta_em(s)[1]


def _check_zeta_domain(s: float) -> None:
    if not (ZETA_S_MIN < s < ZETA_S_MAX):
        raise SpecFunError(f"s={s} outside supported range ({ZETA_S_MIN}, {ZETA_S_MAX})")
    if s == 1.0:
        raise SpecFunError("s=1 is the pole of zeta")


def zeta_logderiv(s: float, order: int = 0) -> float:
    """zeta'/zeta(s) (order 0) or its derivative (order 1) on (-1.5, 4) \\ {1}."""
    _check_zeta_domain(s)
    z0, z1, z2 = _zeta_em(s)
    if abs(z0) < 1e-12:
        raise SpecFunError(f"zeta({s}) ~ 0; log-derivative undefined")
    if order == 0:
        return z1 / z0
    if order == 1:
        return (z2 * z0 - z1 * z1) / (z0 * z0)
    raise SpecFunError(f"order must be 0 or 1, got {order}")


def artanh_series_sum(x: float) -> float:
    """sum_{n>=1} x^{2n} / (2n (2n-1)) = x artanh(x) + log(1 - x^2)/2."""
    if abs(x) >= 1.0:
        raise SpecFunError(f"needs |x| < 1, got {x}")
    if x == 0.0:
        return 0.0
    return x * math.atanh(x) + 0.5 * math.log1p(-x * x)


@dataclass(frozen=True)
class Constants:
    """Constants consumed by the explicit formulas."""

    euler_gamma: float
    zeta_prime_minus1: float
    log_2pi: float
    zeta_logderiv_half: float
    zeta_logderiv_deriv_half: float

    def __post_init__(self):
        if not 0.5772156 <= self.euler_gamma <= 0.5772157:
            raise SpecFunError("euler_gamma out of window")
        if not -0.165422 <= self.zeta_prime_minus1 <= -0.165421:
            raise SpecFunError("zeta'(-1) out of window")
        probe = 0.5 - math.log(4 * math.pi) - 12.0 * self.zeta_prime_minus1
        if not -0.045971 <= probe <= -0.045970:
            raise SpecFunError("constants internally inconsistent")


@lru_cache(maxsize=1)
def constants() -> Constants:
    return Constants(
        euler_gamma=float(np.euler_gamma),
        zeta_prime_minus1=zeta_prime_em(-1.0),
        log_2pi=LOG_2PI,
        zeta_logderiv_half=zeta_logderiv(0.5, 0),
        zeta_logderiv_deriv_half=zeta_logderiv(0.5, 1),
    )
