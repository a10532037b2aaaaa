"""Sieve-backed arithmetic: von Mangoldt weights, Chebyshev psi, primed
sums, and the additive convolution r2(n) = sum_{m+k=n} Lambda(m) Lambda(k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.fft import next_fast_len, irfft, rfft

from .sums import csum, prefix_sum

R2_NMAX_CAP = 2_000_000


class ArithError(ValueError):
    pass


@dataclass(frozen=True)
class ArithTables:
    """Immutable arithmetic tables on 1..n_max (index 0 unused)."""

    n_max: int
    lam: np.ndarray          # lam[n] = Lambda(n), natural log
    psi_prefix: np.ndarray   # psi_prefix[n] = sum_{m<=n} Lambda(m)
    r2: np.ndarray | None    # r2[n] = (Lambda*Lambda)(n), or None

    def psi_at(self, x: float) -> float:
        if not 0 <= x <= self.n_max:
            raise ArithError(f"X={x} outside [0, {self.n_max}]")
        return float(self.psi_prefix[int(math.floor(x))])


def sieve_lambda(n_max: int) -> np.ndarray:
    """Lambda(n) for n = 0..n_max via an Eratosthenes pass over prime powers."""
    lam = np.zeros(n_max + 1)
    is_comp = np.zeros(n_max + 1, dtype=bool)
    for p in range(2, n_max + 1):
        if is_comp[p]:
            continue
        is_comp[p * p::p] = True
        logp = math.log(p)
        q = p
        while q <= n_max:
            lam[q] = logp
            q *= p
    return lam


def build_tables(n_max: int, with_r2: bool = False) -> ArithTables:
    if n_max < 2:
        raise ArithError("n_max must be >= 2")
    if with_r2 and n_max > R2_NMAX_CAP:
        raise ArithError(f"r2 convolution capped at n_max <= {R2_NMAX_CAP}")
    lam = sieve_lambda(n_max)
    psi = prefix_sum(lam)
    r2 = _r2_fft(lam) if with_r2 else None
    return ArithTables(n_max=n_max, lam=lam, psi_prefix=psi, r2=r2)


def _r2_fft(lam: np.ndarray) -> np.ndarray:
    """Self-convolution of the Lambda array by real FFT, clamped at 0.

    Padding to a fast length >= 2*len keeps the linear convolution alias-free.
    """
    n = lam.size
    size = next_fast_len(2 * n)
    spec = rfft(lam, size)
    conv = irfft(spec * spec, size)[:n]
    return np.maximum(conv, 0.0)


def r2_direct(n: int, lam: np.ndarray) -> float:
    """O(n) enumeration of r2(n); test oracle for the FFT route."""
    m = np.arange(2, n - 1)
    if m.size == 0:
        return 0.0
    return float(csum(lam[m] * lam[n - m]))


def psi(tables: ArithTables, x: float) -> float:
    """Chebyshev psi(X) = sum_{n<=X} Lambda(n)."""
    if x > tables.n_max:
        raise ArithError(f"X={x} beyond table n_max={tables.n_max}")
    if x < 2:
        return 0.0
    return tables.psi_at(x)


def is_prime_power(n: int) -> bool:
    """Exact integer test (independent of any sieve truncation)."""
    if n < 2:
        return False
    for k in range(int(math.log2(n)), 0, -1):
        r = round(n ** (1.0 / k))
        for cand in (r - 1, r, r + 1):
            if cand >= 2 and cand ** k == n:
                if _is_prime(cand):
                    return True
                break
    return False


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primed_sum(tables: ArithTables, weight, x: float) -> float:
    """sum_{n<=X} weight(n) Lambda(n), minus half the last term when X is an
    integer prime power (the primed-sum convention of the explicit formulas).
    """
    if x > tables.n_max:
        raise ArithError(f"X={x} beyond table n_max={tables.n_max}")
    if x < 2:
        return 0.0
    top = int(math.floor(x))
    n = np.arange(2, top + 1)
    supported = n[tables.lam[n] != 0.0]
    w = np.array([weight(int(k)) for k in supported], dtype=float)
    total = csum(w * tables.lam[supported])
    if float(top) == x and is_prime_power(top):
        total -= 0.5 * weight(top) * tables.lam[top]
    return total


def goldbach_prefix(tables: ArithTables, x: int) -> float:
    """sum_{n<=X} r2(n), computed as sum_{m<=X-2} Lambda(m) psi(X-m).

    Needs only the psi prefix, not the r2 array.
    """
    if x > tables.n_max:
        raise ArithError(f"X={x} beyond table n_max={tables.n_max}")
    if x < 4:
        return 0.0
    m = np.arange(2, x - 1)
    return csum(tables.lam[m] * tables.psi_prefix[x - m])


def r2_prefix(tables: ArithTables, x: int) -> float:
    """sum_{n<=X} r2(n) from the FFT array."""
    if tables.r2 is None:
        raise ArithError("tables built without r2")
    if x > tables.n_max:
        raise ArithError(f"X={x} beyond table n_max={tables.n_max}")
    return csum(tables.r2[: x + 1])
