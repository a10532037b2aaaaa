"""Zero-free closed-form evaluation of the oscillatory sums.

Each evaluator implements one of the unconditional explicit formulas: the
weighted prime-power sums plus elementary and Hurwitz-Lerch terms.  The
X = 1 values are taken by dedicated right-limit branches (the raw forms
have cancelling logarithmic singularities there); the series branch is
used from X >= 1 + 1e-6 on, where it is numerically stable.

`ExplicitGrid` provides the same formulas vectorized over large X arrays
via prefix tables, for grid searches and the summatory-function module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import digamma, polygamma

from .arith import ArithTables, ArithError, is_prime_power, primed_sum
from .specfun import Constants, SpecFunError, lerch_phi, zeta_logderiv
from .sums import csum, prefix_sum

#: below this X the right-limit branch is used
X_SWITCH = 1.0 + 1e-6


class ExplicitError(ValueError):
    pass


@dataclass(frozen=True)
class ExplicitEval:
    """One zero-free evaluation with its term-by-term breakdown."""

    x: float
    value: float
    route: str
    components: dict

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ExplicitError(f"non-finite value at X={self.x} ({self.route})")


def _check_x(tables: ArithTables, x: float) -> None:
    if x < 1.0:
        raise ExplicitError(f"X={x} < 1")
    if x > tables.n_max:
        raise ExplicitError(f"X={x} beyond table n_max={tables.n_max}")


def explicit_H(tables: ArithTables, consts: Constants, x: float) -> ExplicitEval:
    """Quadratic-denominator sum H at X via its explicit formula."""
    _check_x(tables, x)
    if x < X_SWITCH:
        value = 0.5 - math.log(4.0 * math.pi) - 12.0 * consts.zeta_prime_minus1
        return ExplicitEval(x, value, "prop61_H",
                            {"branch": "right_limit", "value": value})
    rx = math.sqrt(x)
    lam_sum = primed_sum(tables, lambda n: 1.0 - n / x, x)
    log_bracket = math.log1p(-x ** -2) + math.log((1 + 1 / x) / (1 - 1 / x)) / x
    comp = {
        "sqrt_term": 0.5 * rx,
        "lambda_sum": -lam_sum / rx,
        "log2pi": -consts.log_2pi / rx,
        "zeta_prime": -12.0 * consts.zeta_prime_minus1 / (x * rx),
        "log_bracket": -0.5 * log_bracket / rx,
    }
    return ExplicitEval(x, math.fsum(comp.values()), "prop61_H", comp)


def explicit_H1(tables: ArithTables, consts: Constants, x: float) -> ExplicitEval:
    """Shifted sum with parameter 1 (the screw-function generator)."""
    _check_x(tables, x)
    if x < X_SWITCH:
        value = consts.euler_gamma + 2.0 - math.log(4.0 * math.pi)
        return ExplicitEval(x, value, "prop61_H1",
                            {"branch": "right_limit", "value": value})
    rx = math.sqrt(x)
    lam_sum = primed_sum(
        tables, lambda n: (math.sqrt(x / n) - math.sqrt(n / x)) / math.sqrt(n), x)
    bracket = (0.5 * math.log1p(-x ** -2)
               + 0.5 * x * math.log((x + 1) / (x - 1)) - 1.0)
    comp = {
        "lambda_sum": lam_sum,
        "main": -rx * (math.log(x) - consts.euler_gamma - 1.0),
        "log2pi": -consts.log_2pi / rx,
        "bracket": -bracket / rx,
    }
    return ExplicitEval(x, math.fsum(comp.values()), "prop61_H1", comp)


_ELL_EXCLUDED_MSG = ("ell must avoid 0, 1/2, 1, the negative even integers "
                    "and the odd integers >= 3")


def _check_ell(ell: float) -> None:
    if ell in (0.0, 0.5, 1.0):
        raise ExplicitError(_ELL_EXCLUDED_MSG)
    if ell < 0 and ell == 2 * round(ell / 2):
        raise ExplicitError(_ELL_EXCLUDED_MSG)
    if ell >= 3 and ell == 2 * round((ell - 1) / 2) + 1:
        raise ExplicitError(_ELL_EXCLUDED_MSG)
    # both ell and 1 - ell must sit in the supported zeta'/zeta range
    if not (-1.5 < ell < 2.5):
        raise ExplicitError(f"ell={ell} outside the supported range (-1.5, 2.5)")


def explicit_Hl(tables: ArithTables, consts: Constants, x: float,
                ell: float) -> ExplicitEval:
    """Shifted sum with real parameter ell (not 0, 1/2, 1, -2k, 2k+1)."""
    _check_ell(ell)
    _check_x(tables, x)
    zl = zeta_logderiv(ell, 0)
    zl1 = zeta_logderiv(1.0 - ell, 0)
    if x < X_SWITCH:
        # right limit: the Lerch bracket collapses to a digamma difference
        tail = 0.5 * (digamma((3.0 - ell) / 2.0) - digamma(1.0 + ell / 2.0)) / (1.0 - 2.0 * ell)
        value = 1.0 / (ell * (ell - 1.0)) - (zl - zl1) / (1.0 - 2.0 * ell) + tail
        return ExplicitEval(x, value, f"prop62_Hl({ell})",
                            {"branch": "right_limit", "value": value})
    rx = math.sqrt(x)
    q = ell - 0.5
    lam_sum = primed_sum(
        tables,
        lambda n: ((x / n) ** q - (x / n) ** (-q)) / math.sqrt(n) / (1.0 - 2.0 * ell),
        x)
    lerch = (lerch_phi(x ** -2, 1.0, 1.0 + ell / 2.0)
             - lerch_phi(x ** -2, 1.0, 1.0 + (1.0 - ell) / 2.0))
    comp = {
        "pole_term": rx / (ell * (ell - 1.0)),
        "lambda_sum": -lam_sum,
        "zeta_ratio": -(zl * x ** q - zl1 * x ** (-q)) / (1.0 - 2.0 * ell),
        "lerch": 0.5 / rx * x ** -2 / (1.0 - 2.0 * ell) * lerch,
    }
    return ExplicitEval(x, math.fsum(comp.values()), f"prop62_Hl({ell})", comp)


def explicit_Hhalf(tables: ArithTables, consts: Constants, x: float) -> ExplicitEval:
    """Shifted sum at the self-dual parameter 1/2 (l'Hopital route)."""
    _check_x(tables, x)
    if x < X_SWITCH:
        phi1 = float(polygamma(1, 0.25))  # sum (n + 1/4)^{-2}, directly convergent
        value = -8.0 + consts.zeta_logderiv_deriv_half + 0.25 * phi1
        return ExplicitEval(x, value, "prop63_Hhalf",
                            {"branch": "right_limit", "value": value})
    rx = math.sqrt(x)
    lam_sum = primed_sum(
        tables, lambda n: math.log(x / n) / math.sqrt(n), x)
    comp = {
        "sqrt_term": -4.0 * rx,
        "lambda_sum": lam_sum,
        "zeta_log": consts.zeta_logderiv_half * math.log(x),
        "zeta_deriv": consts.zeta_logderiv_deriv_half,
        "inv_sqrt": -4.0 / rx,
        "lerch": 0.25 / rx * lerch_phi(x ** -2, 2.0, 0.25),
    }
    return ExplicitEval(x, math.fsum(comp.values()), "prop63_Hhalf", comp)


def explicit_Hkind(tables: ArithTables, consts: Constants, x: float,
                   kind: str, ell: float = 1.0) -> ExplicitEval:
    """Dispatch by series kind: 'H', 'H1', 'Hl' (with ell), 'Hhalf'."""
    if kind == "H":
        return explicit_H(tables, consts, x)
    if kind == "H1":
        return explicit_H1(tables, consts, x)
    if kind == "Hhalf":
        return explicit_Hhalf(tables, consts, x)
    if kind == "Hl":
        if ell == 1.0:
            return explicit_H1(tables, consts, x)
        if ell == 0.5:
            return explicit_Hhalf(tables, consts, x)
        return explicit_Hl(tables, consts, x, ell)
    raise ExplicitError(f"unknown kind {kind!r}")


def partial_sum_over_zeros(tables: ArithTables, consts: Constants, x: float,
                           s: float) -> float:
    """Zero-free value of the partial-fraction block sum_rho X^{rho-s}/(rho-s).

    Composite of the classical prime-power formula with the Hurwitz-Lerch
    trivial-zero tail; valid for X > 1 and s != 1 inside the supported
    zeta'/zeta range.
    """
    if x <= 1.0:
        raise ExplicitError(f"needs X > 1, got {x}")
    if x > tables.n_max:
        raise ExplicitError(f"X={x} beyond table n_max={tables.n_max}")
    zl = zeta_logderiv(s, 0)  # raises off the supported range and at s=1
    lam = primed_sum(tables, lambda n: n ** (-s), x)
    return math.fsum([
        -lam,
        x ** (1.0 - s) / (1.0 - s),
        -zl,
        0.5 * x ** (-s - 2.0) * lerch_phi(x ** -2, 1.0, 1.0 + s / 2.0),
    ])


def davenport_sum(tables: ArithTables, x: float) -> float:
    """Classical form of sum_rho X^rho / rho for X > 1."""
    if x <= 1.0:
        raise ExplicitError("needs X > 1")
    lam = primed_sum(tables, lambda n: 1.0, x)
    return x - lam - math.log(2 * math.pi) - 0.5 * math.log1p(-x ** -2.0)


def guinand_sum(tables: ArithTables, consts: Constants, x: float) -> float:
    """Classical form of sum_rho X^{rho+1} / (rho+1) for X > 1."""
    if x <= 1.0:
        raise ExplicitError("needs X > 1")
    lam = primed_sum(tables, lambda n: float(n), x)
    return (0.5 * x * x - lam + 12.0 * consts.zeta_prime_minus1
            + 0.5 * math.log((x + 1.0) / (x - 1.0)))


def ingham_sum(tables: ArithTables, consts: Constants, x: float) -> float:
    """Classical form of sum_rho X^{rho-1} / (rho-1) for X > 1."""
    if x <= 1.0:
        raise ExplicitError("needs X > 1")
    lam = primed_sum(tables, lambda n: 1.0 / n, x)
    return (math.log(x) - lam - consts.euler_gamma - 1.0 / x
            + 0.5 * math.log((x + 1.0) / (x - 1.0)))


class ExplicitGrid:
    """Vectorized explicit-formula evaluation backed by prefix tables.

    Prefix sums over the sieve (carried in extended precision) turn each
    grid point into O(1) work, so million-point scans and the summatory
    integrals stay cheap.  All weights used by the sum kinds vanish at
    n = X, so the primed-sum halving never contributes here; the
    `partial` route does halve at integer prime-power X.
    """

    def __init__(self, tables: ArithTables, consts: Constants):
        self.tables = tables
        self.consts = consts
        n = np.arange(tables.n_max + 1, dtype=float)
        n[0] = 1.0
        self._n = n
        self.p_psi = tables.psi_prefix
        self.p_nlam = prefix_sum(tables.lam * n)
        self._p_cache: dict[float, np.ndarray] = {}

    def _p_power(self, s: float) -> np.ndarray:
        """Prefix sums of Lambda(n) n^{-s}."""
        key = float(s)
        if key not in self._p_cache:
            self._p_cache[key] = prefix_sum(self.tables.lam * self._n ** (-s))
        return self._p_cache[key]

    def _floor_idx(self, xs: np.ndarray) -> np.ndarray:
        if (xs < 1.0).any() or (xs > self.tables.n_max).any():
            raise ExplicitError("grid X outside [1, n_max]")
        return np.floor(xs + 1e-12).astype(np.int64)

    def h(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        k = self._floor_idx(xs)
        rx = np.sqrt(xs)
        lam_sum = self.p_psi[k] - self.p_nlam[k] / xs
        bracket = np.log1p(-xs ** -2.0) + np.log((1 + 1 / xs) / (1 - 1 / xs)) / xs
        out = (0.5 * rx - lam_sum / rx - self.consts.log_2pi / rx
               - 12.0 * self.consts.zeta_prime_minus1 / (xs * rx) - 0.5 * bracket / rx)
        return self._patch_limit(xs, out, "H")

    def h1(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        k = self._floor_idx(xs)
        rx = np.sqrt(xs)
        lam_sum = rx * self._p_power(1.0)[k] - self.p_psi[k] / rx
        bracket = (0.5 * np.log1p(-xs ** -2.0)
                   + 0.5 * xs * np.log((xs + 1) / (xs - 1)) - 1.0)
        out = (lam_sum - rx * (np.log(xs) - self.consts.euler_gamma - 1.0)
               - self.consts.log_2pi / rx - bracket / rx)
        return self._patch_limit(xs, out, "H1")

    def hl(self, xs, ell: float) -> np.ndarray:
        _check_ell(ell)
        xs = np.asarray(xs, dtype=float)
        k = self._floor_idx(xs)
        rx = np.sqrt(xs)
        q = ell - 0.5
        zl = zeta_logderiv(ell, 0)
        zl1 = zeta_logderiv(1.0 - ell, 0)
        lam_sum = (xs ** q * self._p_power(ell)[k]
                   - xs ** (-q) * self._p_power(1.0 - ell)[k]) / (1.0 - 2.0 * ell)
        lerch = (self._lerch_grid(xs ** -2.0, 1.0, 1.0 + ell / 2.0)
                 - self._lerch_grid(xs ** -2.0, 1.0, 1.0 + (1.0 - ell) / 2.0))
        out = (rx / (ell * (ell - 1.0)) - lam_sum
               - (zl * xs ** q - zl1 * xs ** (-q)) / (1.0 - 2.0 * ell)
               + 0.5 / rx * xs ** -2.0 / (1.0 - 2.0 * ell) * lerch)
        return self._patch_limit(xs, out, "Hl", ell)

    def hhalf(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        k = self._floor_idx(xs)
        rx = np.sqrt(xs)
        lam_sum = np.log(xs) * self._p_power(0.5)[k] - self._logn_half_prefix()[k]
        out = (-4.0 * rx + lam_sum + self.consts.zeta_logderiv_half * np.log(xs)
               + self.consts.zeta_logderiv_deriv_half - 4.0 / rx
               + 0.25 / rx * self._lerch_grid(xs ** -2.0, 2.0, 0.25))
        return self._patch_limit(xs, out, "Hhalf")

    def kind(self, xs, kind: str, ell: float = 1.0) -> np.ndarray:
        if kind == "H":
            return self.h(xs)
        if kind == "H1":
            return self.h1(xs)
        if kind == "Hhalf":
            return self.hhalf(xs)
        if kind == "Hl":
            if ell == 1.0:
                return self.h1(xs)
            if ell == 0.5:
                return self.hhalf(xs)
            return self.hl(xs, ell)
        raise ExplicitError(f"unknown kind {kind!r}")

    def _logn_half_prefix(self) -> np.ndarray:
        key = "logn_half"
        if key not in self._p_cache:
            logn = np.log(self._n)
            self._p_cache[key] = prefix_sum(self.tables.lam * logn / np.sqrt(self._n))
        return self._p_cache[key]

    def _patch_limit(self, xs, out, kind, ell: float = 1.0):
        """Replace values below the branch switch with the right limit."""
        near1 = xs < X_SWITCH
        if near1.any():
            val = explicit_Hkind(self.tables, self.consts, 1.0, kind, ell).value
            out = np.where(near1, val, out)
        return out

    @staticmethod
    def _lerch_grid(zs: np.ndarray, s: float, a: float) -> np.ndarray:
        """Vectorized Lerch series over an array of |z| < 1 arguments."""
        zs = np.asarray(zs, dtype=float)
        out = np.empty(zs.shape)
        zmax = float(np.abs(zs).max())
        if zmax >= 1.0:
            raise SpecFunError("lerch grid needs |z| < 1")
        # fast path: enough terms for the largest argument, vectorized
        if zmax < 0.5:
            nterms = max(8, int(math.ceil(-52 * math.log(2) / math.log(zmax + 1e-300))) + 4)
            acc = np.zeros(zs.shape)
            zp = np.ones(zs.shape)
            for n in range(nterms):
                acc += zp * (n + a) ** (-s)
                zp *= zs
            return acc
        for i, z in np.ndenumerate(zs):
            out[i] = lerch_phi(float(z), s, a)
        return out

    def partial(self, xs, s: float) -> np.ndarray:
        """Grid version of partial_sum_over_zeros (weight does not vanish
        at n = X, so integer prime-power points get the primed halving)."""
        xs = np.asarray(xs, dtype=float)
        if (xs <= 1.0).any():
            raise ExplicitError("needs X > 1")
        zl = zeta_logderiv(s, 0)
        k = self._floor_idx(xs)
        lam = self._p_power(s)[k]
        # primed halving at integer prime powers
        for i, x in np.ndenumerate(xs):
            ki = int(k[i])
            if float(ki) == float(x) and self.tables.lam[ki] != 0.0 and is_prime_power(ki):
                lam[i] -= 0.5 * self.tables.lam[ki] * ki ** (-s)
        return (-lam + xs ** (1.0 - s) / (1.0 - s) - zl
                + 0.5 * xs ** (-s - 2.0) * self._lerch_grid(xs ** -2.0, 1.0, 1.0 + s / 2.0))
