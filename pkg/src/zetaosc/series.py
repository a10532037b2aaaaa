"""Spectral pairs (frequency sets with coefficients) and truncated
evaluation of the attached oscillatory sums.

A pair is stored one-sided for the zeta case: the frequencies are the
positive ordinates gamma and the coefficient already carries the factor 2
that folds in the conjugate zero, so Re f(t) equals the oscillatory sum
at X = e^t with no further doubling.  Synthetic pairs store whatever
entries they are given, both halves explicitly when conjugation symmetry
is wanted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .sums import csum
from .zeros import ZeroTable

#: sup over the zeta-pair tails of gamma^2 |a(gamma)|, all supported kinds.
TAIL_K = 2.0
#: safety factor making the density-integrated tail a usable bound.
TAIL_SAFETY = 1.2

_FIRST_GAMMA = 14.134725


class PairError(ValueError):
    pass


@dataclass(frozen=True)
class TruncatedValue:
    """A truncated series value with an explicit tail budget."""

    value: float
    tail_bound: float
    n_used: int
    gamma_max: float


@dataclass(frozen=True)
class SpectralPair:
    """Pair of frequencies and nonzero coefficients, axiom flags recomputed.

    Flags: m1_sum_abs (sum |a|), c = sup |Im omega| (the M2 constant),
    satisfies_m3 (conjugation-closed frequency set), satisfies_s1
    (a(conj omega) = conj a(omega)), satisfies_s2 (real frequencies,
    positive coefficients).  Immutable; evaluations are pure.
    """

    omegas: np.ndarray
    coeffs: np.ndarray
    label: str = ""
    truncation: dict = field(default_factory=dict)

    def __post_init__(self):
        om = np.asarray(self.omegas, dtype=complex)
        cf = np.asarray(self.coeffs, dtype=complex)
        object.__setattr__(self, "omegas", om)
        object.__setattr__(self, "coeffs", cf)
        if om.size == 0:
            raise PairError("empty pair")
        if om.shape != cf.shape:
            raise PairError("omegas and coeffs length mismatch")
        if (cf == 0).any():
            raise PairError("zero coefficient not allowed")
        if (om == 0).any():
            raise PairError("zero frequency not allowed")

    # flags are always derived from the entries, never asserted
    @property
    def m1_sum_abs(self) -> float:
        return csum(np.abs(self.coeffs))

    @property
    def c(self) -> float:
        return float(np.max(np.abs(self.omegas.imag)))

    @property
    def satisfies_m2(self) -> bool:
        return bool(np.isfinite(self.c))

    @property
    def satisfies_m3(self) -> bool:
        return self._conj_index() is not None

    @property
    def satisfies_s1(self) -> bool:
        idx = self._conj_index()
        if idx is None:
            return False
        return bool(np.allclose(self.coeffs[idx], np.conj(self.coeffs), rtol=1e-12,
                                atol=1e-300))

    @property
    def satisfies_s2(self) -> bool:
        return bool((np.abs(self.omegas.imag) == 0).all()
                    and (np.abs(self.coeffs.imag) == 0).all()
                    and (self.coeffs.real > 0).all())

    def _conj_index(self):
        """Index array j with omegas[j] = conj(omegas), or None if not closed."""
        om = self.omegas
        idx = np.empty(om.size, dtype=int)
        for i, w in enumerate(om):
            d = np.abs(om - np.conj(w))
            j = int(np.argmin(d))
            if d[j] > 1e-12 * max(1.0, abs(w)):
                return None
            idx[i] = j
        return idx

    @property
    def abs_coeffs(self) -> np.ndarray:
        """c_omega = |a(omega)| per entry."""
        return np.abs(self.coeffs)

    @property
    def args(self) -> np.ndarray:
        """beta_omega = arg a(omega) per entry."""
        return np.angle(self.coeffs)

    def __len__(self) -> int:
        return int(self.omegas.size)


def coeff_h(gamma, mult=1.0):
    """Coefficient of the quadratic-denominator sum: 2m / ((1/2-ig)(3/2-ig))."""
    g = np.asarray(gamma, dtype=float)
    return 2.0 * np.asarray(mult) / ((0.5 - 1j * g) * (1.5 - 1j * g))


def coeff_hl(gamma, ell: float, mult=1.0):
    """Coefficient of the shifted sum: 2m / ((1/2-l)^2 + g^2); positive."""
    g = np.asarray(gamma, dtype=float)
    return 2.0 * np.asarray(mult) / ((0.5 - ell) ** 2 + g * g)


def make_zeta_pair(table: ZeroTable, kind: str, n: int, ell: float = 1.0) -> SpectralPair:
    """One-sided pair on the first n ordinates of the table.

    kind 'H' gives the complex quadratic-denominator coefficients (neither
    S1 nor S2 holds); kind 'Hl' gives the positive coefficients of the
    shifted sum with parameter ell (S2 holds for real ell).  Frequencies
    are taken real (the zeros' real parts sit on the critical line at
    every truncation scale checked here).
    """
    if not 1 <= n <= len(table):
        raise PairError(f"requested {n} zeros, table has {len(table)}")
    g = table.gammas[:n]
    m = table.multiplicities[:n].astype(float)
    if kind == "H":
        a = coeff_h(g, m)
        label = "zeta-H"
    elif kind == "Hl":
        a = coeff_hl(g, ell, m).astype(complex)
        label = f"zeta-Hl(ell={ell})"
    else:
        raise PairError(f"unknown kind {kind!r}")
    return SpectralPair(
        omegas=g.astype(complex), coeffs=a, label=label,
        truncation={"source": table.source, "n_zeros": n,
                    "gamma_max": float(g[-1]), "kind": kind,
                    **({"ell": ell} if kind == "Hl" else {})})


def zeta_tail_bound(gamma_max: float) -> float:
    """Majorant for sum |a| over zeros with ordinate > gamma_max.

    Density-integrated |a| <= K/gamma^2 bound with a safety factor for
    T >= 20; below 20 the (single) dropped ordinate's majorant is added.
    """
    t = max(gamma_max, 20.0)
    bound = TAIL_SAFETY * (TAIL_K / math.pi) * (math.log(t / (2 * math.pi)) + 1.0) / t
    if gamma_max < _FIRST_GAMMA:
        bound += TAIL_K / _FIRST_GAMMA ** 2
    return bound


def h_series(table: ZeroTable, kind: str, x: float, n: int,
             ell: float = 1.0) -> TruncatedValue:
    """Truncated zero-sum route for the oscillatory sums at X >= 1.

    Folds conjugate zeros: value = sum_j Re[a_j X^{-i gamma_j}], which is
    Re f(log X) of the one-sided pair.  The tail bound is the analytic
    majorant at the last used ordinate.
    """
    if x < 1.0:
        raise PairError(f"X={x} < 1")
    if n == 0:
        return TruncatedValue(0.0, zeta_tail_bound(0.0), 0, 0.0)
    pair = make_zeta_pair(table, kind, n, ell)
    g = pair.omegas.real
    phase = -g * math.log(x)
    terms = (pair.coeffs * np.exp(1j * phase)).real
    return TruncatedValue(
        value=csum(terms),
        tail_bound=zeta_tail_bound(float(g[-1])),
        n_used=n,
        gamma_max=float(g[-1]))


def h_series_grid(table: ZeroTable, kind: str, xs, n: int,
                  ell: float = 1.0) -> tuple[np.ndarray, float]:
    """Vectorized h_series over an array of X; returns (values, tail_bound)."""
    xs = np.asarray(xs, dtype=float)
    if (xs < 1.0).any():
        raise PairError("X < 1 in grid")
    pair = make_zeta_pair(table, kind, n, ell)
    g = pair.omegas.real
    vals = np.empty(xs.shape)
    logx = np.log(xs)
    for i, lx in enumerate(logx.ravel()):
        terms = (pair.coeffs * np.exp(-1j * g * lx)).real
        vals.ravel()[i] = csum(terms)
    return vals, zeta_tail_bound(float(g[-1]))


def f_of_t(pair: SpectralPair, t: float) -> complex:
    """f(t) = sum a(omega) e^{-it omega}, compensated in fixed entry order."""
    terms = pair.coeffs * np.exp(-1j * t * pair.omegas)
    return complex(csum(terms.real), csum(terms.imag))


def g_of_t(pair: SpectralPair, t: float) -> complex:
    """g(t) = f(t) - f(0), summed termwise so g(0) = 0 exactly."""
    terms = pair.coeffs * (np.exp(-1j * t * pair.omegas) - 1.0)
    return complex(csum(terms.real), csum(terms.imag))


def re_f_grid(pair: SpectralPair, ts) -> np.ndarray:
    """Re f on an array of times (real-frequency pairs), vectorized."""
    ts = np.asarray(ts, dtype=float)
    if pair.c != 0.0:
        raise PairError("re_f_grid needs a real frequency set")
    g = pair.omegas.real
    cr = pair.coeffs.real
    ci = pair.coeffs.imag
    out = np.zeros(ts.shape)
    for j in range(len(pair)):
        ph = g[j] * ts
        out += cr[j] * np.cos(ph) + ci[j] * np.sin(ph)
    return out


def q_function(pair: SpectralPair, z: complex) -> complex:
    """Rational symmetrization (1/2)[sum a (-z w)/(z-w) + sum conj(a) (z conj(w))/(z+conj(w))].

    Meromorphic in z with poles only at the frequencies and their
    reflected conjugates; the Fourier identity against Re g holds for
    Im z > c.
    """
    om = pair.omegas
    a = pair.coeffs
    d1 = z - om
    d2 = z + np.conj(om)
    if (np.abs(d1) < 1e-12).any() or (np.abs(d2) < 1e-12).any():
        raise PairError(f"z={z} collides with a pole")
    terms = 0.5 * (a * (-z * om) / d1 + np.conj(a) * (z * np.conj(om)) / d2)
    return complex(csum(terms.real), csum(terms.imag))


def boundedness_probe(pair: SpectralPair, t_max: float, samples: int) -> dict:
    """Grid sup of |Re g| on [0, T] and a growth-exponent fit.

    The exponent comes from a least-squares line through log(running max)
    over the upper three quarters of the window; ~0 for bounded signals,
    ~max Im(omega) when the frequency set leaks into the upper half-plane.
    """
    if samples < 100:
        raise PairError("need at least 100 samples")
    ts = np.linspace(0.0, t_max, samples)
    om = pair.omegas
    a = pair.coeffs
    vals = np.zeros(samples)
    chunk = max(1, 2_000_000 // max(len(pair), 1))
    for i in range(0, samples, chunk):
        tt = ts[i:i + chunk]
        ph = np.exp(-1j * np.outer(tt, om))
        vals[i:i + chunk] = ((ph - 1.0) @ a).real
    absg = np.abs(vals)
    runmax = np.maximum.accumulate(absg)
    lo = samples // 4
    mask = runmax[lo:] > 0
    tt = ts[lo:][mask]
    yy = np.log(runmax[lo:][mask])
    if tt.size < 2:
        slope = 0.0
    else:
        slope = float(np.polyfit(tt, yy, 1)[0])
    return {"sup_abs_re_g": float(absg.max()),
            "growth_exponent_estimate": slope,
            "t_max": t_max, "samples": samples}
