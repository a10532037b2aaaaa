"""Ingestion and validation of tables of zeta-zero ordinates.

The expected file format is one positive ordinate per line in ascending
order, with optional '#' comment lines and an optional second
whitespace-separated column giving the multiplicity (default 1).  This is
the layout of the standard published tables (Odlyzko and friends), which
is the only supported source: computing zeros is out of scope here.
"""

from __future__ import annotations

import importlib.resources
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

TWO_PI = 2.0 * np.pi

#: Location of the first ordinate; used as an ingestion sanity check.
FIRST_ORDINATE_WINDOW = (14.13, 14.14)

#: Allowed |N(T) - RvM(T)|.  The estimate omits the bounded S(T) term.
RVM_TOLERANCE = 2.0


class ZeroTableError(ValueError):
    """Malformed or implausible zero table."""


@dataclass(frozen=True)
class ZeroTable:
    """Validated ascending table of positive zero ordinates.

    Immutable after construction; safe for unrestricted concurrent reads.
    """

    gammas: np.ndarray
    multiplicities: np.ndarray
    source: str = ""
    max_gamma: float = field(init=False, default=0.0)

    def __post_init__(self):
        g = np.asarray(self.gammas, dtype=float)
        m = np.asarray(self.multiplicities, dtype=np.int64)
        object.__setattr__(self, "gammas", g)
        object.__setattr__(self, "multiplicities", m)
        if g.size == 0:
            raise ZeroTableError("empty zero table")
        if g.shape != m.shape:
            raise ZeroTableError("gammas and multiplicities length mismatch")
        if not (g > 0).all():
            raise ZeroTableError("nonpositive ordinate")
        if not (np.diff(g) > 0).all():
            bad = int(np.nonzero(~(np.diff(g) > 0))[0][0]) + 2
            raise ZeroTableError(f"ordinates not strictly increasing at entry {bad}")
        if not (m >= 1).all():
            raise ZeroTableError("multiplicity < 1")
        lo, hi = FIRST_ORDINATE_WINDOW
        if not (lo <= g[0] <= hi):
            raise ZeroTableError(
                f"first ordinate {g[0]!r} outside [{lo}, {hi}]; not a zeta zero table?")
        object.__setattr__(self, "max_gamma", float(g[-1]))
        self._check_rvm()

    def _check_rvm(self):
        heights = [t for t in (50.0, 100.0, 500.0) if t <= self.max_gamma]
        heights.append(self.max_gamma)
        for t in heights:
            expected = riemann_von_mangoldt(t)
            got = count_below(self, t)
            if abs(got - expected) > RVM_TOLERANCE:
                raise ZeroTableError(
                    f"zero count {got} below T={t} disagrees with the "
                    f"Riemann-von Mangoldt estimate {expected:.2f}")

    def __len__(self) -> int:
        return int(self.gammas.size)

    def head(self, n: int) -> "ZeroTable":
        """Table of the first n ordinates."""
        if not 1 <= n <= len(self):
            raise ZeroTableError(f"cannot take {n} of {len(self)} zeros")
        return ZeroTable(self.gammas[:n], self.multiplicities[:n],
                         source=f"{self.source}[:{n}]")


def riemann_von_mangoldt(t: float) -> float:
    """Zero-counting estimate (T/2pi) log(T/2pi e) + 7/8."""
    return t / TWO_PI * np.log(t / (TWO_PI * np.e)) + 7.0 / 8.0


def load_zeros(path, limit: int | None = None, source: str | None = None) -> ZeroTable:
    """Parse a zero table file; raises ZeroTableError with the offending line."""
    path = Path(path)
    gammas: list[float] = []
    mults: list[int] = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            try:
                g = float(parts[0])
                m = int(parts[1]) if len(parts) > 1 else 1
            except ValueError as exc:
                raise ZeroTableError(f"{path}:{lineno}: unparseable line {line!r}") from exc
            if g <= 0:
                raise ZeroTableError(f"{path}:{lineno}: nonpositive ordinate {g}")
            if gammas and g <= gammas[-1]:
                raise ZeroTableError(
                    f"{path}:{lineno}: ordinate {g} not above previous {gammas[-1]}")
            gammas.append(g)
            mults.append(m)
            if limit is not None and len(gammas) >= limit:
                break
    return ZeroTable(np.array(gammas), np.array(mults),
                     source=source if source is not None else str(path))


def save_zeros(table: ZeroTable, path) -> None:
    """Write a table back out; reloading reproduces the ordinates digit-for-digit."""
    with open(path, "w") as fh:
        if table.source:
            fh.write(f"# source: {table.source}\n")
        for g, m in zip(table.gammas, table.multiplicities):
            if m == 1:
                fh.write(f"{g!r}\n")
            else:
                fh.write(f"{g!r} {m}\n")


def count_below(table: ZeroTable, t: float) -> int:
    """Number of zeros with ordinate <= t, counted with multiplicity."""
    if t > table.max_gamma:
        raise ZeroTableError(f"T={t} beyond table coverage {table.max_gamma}")
    k = int(np.searchsorted(table.gammas, t, side="right"))
    return int(table.multiplicities[:k].sum())


def bundled_table_path(name: str = "zeros100k.txt") -> Path:
    """Path of a zero table shipped with the package."""
    res = importlib.resources.files("zetaosc").joinpath("data", name)
    return Path(str(res))


def resolve_zeros_path(flag_value: str | None) -> Path:
    """CLI resolution order: --zeros flag, then ZETA_ZEROS_PATH, else error."""
    if flag_value:
        return Path(flag_value)
    env = os.environ.get("ZETA_ZEROS_PATH")
    if env:
        return Path(env)
    raise ZeroTableError(
        "no zero table: pass --zeros <path> or set ZETA_ZEROS_PATH")
