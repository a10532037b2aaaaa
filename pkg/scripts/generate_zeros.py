#!/usr/bin/env python3
"""Generate a table of nontrivial zeta-zero ordinates.

Writes one ordinate per line (ascending) to the output path.  The first
N_MP zeros come from mpmath.zetazero at elevated precision; the rest are
located by a vectorized Riemann-Siegel Z(t) scan (main sum plus the
C0..C4 correction terms) with sign-change bracketing and Illinois
refinement.  Zero counts are validated window-by-window against the
theta(t)/pi + 1 counting prediction, and a random sample of indices is
cross-checked against mpmath before the file is written.

Usage: python scripts/generate_zeros.py --count 100000 --out src/zetaosc/data/zeros100k.txt
"""

from __future__ import annotations

import argparse
import sys
import time

import mpmath as mp
import numpy as np

TWOPI = 2.0 * np.pi
PI = np.pi

N_MP = 2000          # zeros computed via mpmath (R-S error too big below t ~ 2000)
GRID_PER_GAP = 16    # initial scan resolution: mean zero gap / GRID_PER_GAP
REFINE_TOL = 1e-10   # bracket width target for Illinois refinement


def theta(t):
    """Riemann-Siegel theta, asymptotic expansion (t >= 20)."""
    t = np.asarray(t, dtype=float)
    return (t / 2 * np.log(t / TWOPI) - t / 2 - PI / 8
            + 1 / (48 * t) + 7 / (5760 * t ** 3)
            + 31 / (80640 * t ** 5) + 127 / (430080 * t ** 7))


def _psi_taylor_coeffs(nterms=96):
    """Taylor coefficients about p=1/2 of Psi(p)=cos(2pi(p^2-p-1/16))/cos(2pi p).

    Computed by a Cauchy integral on the circle |z-1/2|=1 (the removable
    singularities of the quotient stay >= 0.25 away from the contour).
    """
    m = 4096
    z = 0.5 + np.exp(2j * PI * np.arange(m) / m)
    f = np.cos(TWOPI * (z ** 2 - z - 1.0 / 16.0)) / np.cos(TWOPI * z)
    return (np.fft.fft(f) / m)[:nterms].real


_PSI_COEF = _psi_taylor_coeffs()


def _psi_derivs(p, maxder=12):
    """Psi and derivatives up to maxder, from the differentiated Taylor series."""
    x = np.asarray(p, dtype=float) - 0.5
    out = []
    c = _PSI_COEF.copy()
    for _ in range(maxder + 1):
        acc = np.zeros_like(x)
        for ck in c[::-1]:
            acc = acc * x + ck
        out.append(acc)
        c = c[1:] * np.arange(1, len(c))
    return out


def siegel_z(t):
    """Vectorized Riemann-Siegel Z(t), remainder terms through C4.

    Absolute error ~ 5e-10 at t=2000, < 1e-11 for t > 7000 (checked
    against mpmath.siegelz).
    """
    t = np.asarray(t, dtype=float)
    tau = t / TWOPI
    rt = np.sqrt(tau)
    N = np.floor(rt).astype(np.int64)
    p = rt - N
    th = theta(t)
    Nmax = int(N.max())
    n = np.arange(1, Nmax + 1)
    logn = np.log(n)
    rs = 1.0 / np.sqrt(n)
    phases = th[:, None] - t[:, None] * logn[None, :]
    terms = np.cos(phases) * rs[None, :]
    if (N == Nmax).all():
        ms = 2.0 * terms.sum(axis=1)
    else:
        ms = 2.0 * np.where(n[None, :] <= N[:, None], terms, 0.0).sum(axis=1)
    d = _psi_derivs(p)
    c0 = d[0]
    c1 = -d[3] / (96 * PI ** 2)
    c2 = d[2] / (64 * PI ** 2) + d[6] / (18432 * PI ** 4)
    c3 = -d[1] / (64 * PI ** 2) - d[5] / (3840 * PI ** 4) - d[9] / (5308416 * PI ** 6)
    c4 = (d[0] / (128 * PI ** 2) + d[4] / (3072 * PI ** 4)
          + d[8] / (5898240 * PI ** 6) + d[12] / (2038431744 * PI ** 8))
    corr = (-1.0) ** (N - 1) * tau ** -0.25 * (
        c0 + c1 * tau ** -0.5 + c2 / tau + c3 * tau ** -1.5 + c4 / tau ** 2)
    return ms + corr


def _refine(lo, hi, flo, fhi, maxiter=60):
    """Batched Illinois (modified regula falsi) on siegel_z over brackets."""
    lo = lo.copy(); hi = hi.copy(); flo = flo.copy(); fhi = fhi.copy()
    for _ in range(maxiter):
        w = hi - lo
        if (w < REFINE_TOL).all():
            break
        mid = hi - fhi * (hi - lo) / (fhi - flo)
        # keep the secant point safely interior, else bisect
        bad = ~np.isfinite(mid) | (mid <= lo) | (mid >= hi)
        mid[bad] = 0.5 * (lo[bad] + hi[bad])
        fm = siegel_z(mid)
        left = (flo * fm) < 0
        # Illinois: halve the retained endpoint's value to avoid stalling
        hi = np.where(left, mid, hi)
        fhi = np.where(left, fm, fhi)
        flo = np.where(left, flo * 0.5, flo)
        lo = np.where(left, lo, mid)
        flo = np.where(left, flo, fm)
        fhi = np.where(left, fhi * 0.5, fhi)
        # exact zeros (rare): collapse bracket
        hit = fm == 0.0
        lo[hit] = mid[hit]; hi[hit] = mid[hit]
    return 0.5 * (lo + hi)


def _scan_window(t0, t1, step):
    """Return refined zeros of Z in (t0, t1]."""
    npts = max(int(np.ceil((t1 - t0) / step)) + 1, 8)
    # chunk the grid to bound memory; keep one point of overlap
    zs = []
    edges = np.linspace(t0, t1, npts)
    chunk = 8192
    for i in range(0, npts - 1, chunk - 1):
        tt = edges[i:i + chunk]
        zz = siegel_z(tt)
        sc = np.nonzero(np.sign(zz[:-1]) * np.sign(zz[1:]) < 0)[0]
        if sc.size:
            zs.append(_refine(tt[sc], tt[sc + 1], zz[sc], zz[sc + 1]))
    if not zs:
        return np.array([])
    return np.sort(np.concatenate(zs))


def rs_zeros(t_start, t_end, log=print):
    """All zeros of Z in (t_start, t_end], with count certification.

    Missing zeros hide in pairs between grid points (an odd miss would
    flip the sign pattern), so after the windowed scan every gap between
    consecutive zeros whose theta-increment exceeds GAP_FLAG * pi is
    rescanned at 50x resolution.  Finally the cumulative count is checked
    against the theta counting function at every window boundary.
    """
    out = []
    nwin0 = int(np.floor(np.sqrt(t_start / TWOPI)))
    nwin1 = int(np.floor(np.sqrt(t_end / TWOPI)))
    boundaries = []
    for N in range(nwin0, nwin1 + 1):
        w0 = max(TWOPI * N ** 2, t_start)
        w1 = min(TWOPI * (N + 1) ** 2, t_end)
        if w1 <= w0:
            continue
        gap = TWOPI / np.log(w1 / TWOPI)
        step = gap / GRID_PER_GAP
        predicted = (theta(w1) - theta(w0)) / PI
        best = np.array([])
        for attempt in range(4):
            zs = _scan_window(w0, w1, step)
            if len(zs) > len(best):
                best = zs
            # deficits beyond the S(t) boundary wiggle mean a missed pair
            if len(best) - predicted > -0.75:
                break
            step /= 6.0
            log(f"  window N={N}: found {len(best)} vs predicted {predicted:.2f}, "
                f"rescanning at step {step:.3g}")
        out.append(best)
        boundaries.append((w1, predicted))
        log(f"  window N={N}: t in [{w0:.1f}, {w1:.1f}], {len(best)} zeros "
            f"(predicted {predicted:.2f})")
    zs = np.sort(np.concatenate(out)) if out else np.array([])

    # gap-repair pass: rescan suspiciously wide theta-gaps at high resolution
    GAP_FLAG = 2.4
    for _ in range(3):
        th = theta(zs)
        wide = np.nonzero(np.diff(th) > GAP_FLAG * PI)[0]
        if wide.size == 0:
            break
        found = []
        for i in wide:
            a, b = zs[i] + 1e-9, zs[i + 1] - 1e-9
            extra = _scan_window(a, b, (b - a) / 800.0)
            if extra.size:
                found.append(extra)
                log(f"  gap repair: {extra.size} zeros recovered in "
                    f"({zs[i]:.3f}, {zs[i+1]:.3f})")
        if not found:
            break
        zs = np.sort(np.concatenate([zs] + found))

    # cumulative certification against the counting function
    cum_pred = 0.0
    k = 0
    for w1, predicted in boundaries:
        cum_pred += predicted
        k = int(np.searchsorted(zs, w1, side="right"))
        drift = k - cum_pred
        if abs(drift) > 2.2:
            raise RuntimeError(
                f"cumulative count drift {drift:+.2f} at t={w1:.1f}; "
                "scan cannot be certified")
    return zs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=100000)
    ap.add_argument("--out", required=True)
    ap.add_argument("--spot-checks", type=int, default=25)
    ap.add_argument("--mp-cache", default="/tmp/zeros_mp_cache.txt")
    args = ap.parse_args()

    t_begin = time.time()
    mp.mp.dps = 22

    log = lambda *a: (print(*a), sys.stdout.flush())

    n_mp = min(N_MP, args.count)
    log(f"[1/4] computing zeros 1..{n_mp} via mpmath")
    gam = []
    try:
        with open(args.mp_cache) as fh:
            gam = [float(line) for line in fh][:n_mp]
        log(f"  loaded {len(gam)} from cache {args.mp_cache}")
    except FileNotFoundError:
        pass
    for k in range(len(gam) + 1, n_mp + 1):
        gam.append(float(mp.zetazero(k).imag))
        if k % 250 == 0:
            log(f"  {k} done ({time.time()-t_begin:.0f}s)")
    with open(args.mp_cache, "w") as fh:
        fh.writelines(f"{g!r}\n" for g in gam)
    gam = np.array(gam)

    if args.count > n_mp:
        # locate the end height: theta(T)/pi + 1 ~ count, then margin
        log("[2/4] Riemann-Siegel scan")
        from scipy.optimize import brentq
        t_end = brentq(lambda t: theta(t) / PI + 1 - (args.count + 6), 100.0, 1e7)
        t_start = 0.5 * (gam[-1] + float(mp.zetazero(n_mp + 1).imag))
        zs = rs_zeros(t_start, t_end, log=log)
        gam = np.concatenate([gam, zs])

    if len(gam) < args.count:
        raise RuntimeError(f"only {len(gam)} zeros found, wanted {args.count}")
    gam = gam[:args.count]
    assert (np.diff(gam) > 0).all(), "ordinates not strictly increasing"

    log("[3/4] validating")
    # Riemann-von Mangoldt count check at a few heights
    heights = [T for T in (50.0, 100.0, 500.0, 5000.0) if T <= gam[-1]]
    for T in heights + [float(gam[-1])]:
        cnt = int(np.searchsorted(gam, T, side="right"))
        rvm = T / TWOPI * np.log(T / (TWOPI * np.e)) + 7.0 / 8.0
        log(f"  N({T:.3f}) = {cnt}, RvM = {rvm:.3f}, diff = {cnt - rvm:+.3f}")
        assert abs(cnt - rvm) <= 2.0, "count vs Riemann-von Mangoldt failed"
    # spot-check random indices against mpmath
    rng = np.random.default_rng(20240814)
    idx = rng.integers(n_mp + 1, args.count, size=args.spot_checks)
    worst = 0.0
    for i in sorted(int(j) for j in idx):
        ref = float(mp.zetazero(i).imag)
        err = abs(ref - gam[i - 1])
        worst = max(worst, err)
        log(f"  zetazero({i}): mine {gam[i-1]:.12f}  mpmath {ref:.12f}  "
            f"err {err:.2e}")
        assert err < 5e-9, f"spot check failed at index {i}"
    log(f"  worst spot-check error {worst:.2e}")

    log("[4/4] writing")
    with open(args.out, "w") as fh:
        fh.write("# Imaginary parts of the nontrivial zeros of the Riemann "
                 "zeta function on the critical line, ascending.\n")
        fh.write(f"# count = {len(gam)}; generated by scripts/generate_zeros.py "
                 "(mpmath for the first 2000, Riemann-Siegel scan beyond;\n")
        fh.write("# every window count validated against the theta(t)/pi + 1 "
                 "prediction, random indices cross-checked with mpmath).\n")
        for g in gam:
            fh.write(f"{g:.12f}\n")
    log(f"wrote {len(gam)} ordinates to {args.out} "
        f"in {time.time()-t_begin:.0f}s total")


if __name__ == "__main__":
    main()
