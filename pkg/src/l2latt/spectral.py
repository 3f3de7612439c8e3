"""Numeric spectral density estimation for chain complexes over free-abelian
deck groups.

The deck action is diagonalized by Fourier characters: at each point of
the n-torus the differentials become finite complex matrices, and the
density function is the torus average of the eigenvalue counting
function of the combinatorial Laplacian.  Sampling is Monte Carlo with a
seed-splitting contract: results depend only on (seed, samples, grid),
never on the worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

CHUNK = 4096  # fixed sampling block; part of the determinism contract
KERNEL_EPS = 1e-10  # eigenvalues below this count into the Betti estimate


class ChainComplexError(ValueError):
    pass


class WindowTooSmall(ValueError):
    """Not enough usable tail points for an exponent fit."""


@dataclass(frozen=True)
class AbelianCWComplex:
    """Finite free chain complex over Z^n given by monomial-supported
    integer matrices: differentials[p] maps degree p to degree p-1."""

    deck_rank: int
    cells: tuple[int, ...]
    differentials: dict[int, tuple[tuple[tuple[int, ...], np.ndarray], ...]] = field(hash=False)

    def __post_init__(self):
        for p, terms in self.differentials.items():
            if not 1 <= p < len(self.cells):
                raise ChainComplexError(f"differential degree {p} out of range")
            for exp, mat in terms:
                if len(exp) != self.deck_rank:
                    raise ChainComplexError(f"exponent {exp} has wrong deck rank")
                if mat.shape != (self.cells[p - 1], self.cells[p]):
                    raise ChainComplexError(
                        f"c_{p} term has shape {mat.shape}, expected "
                        f"({self.cells[p - 1]}, {self.cells[p]})"
                    )
        self.check_square_zero()

    def check_square_zero(self) -> None:
        """d o d = 0 as an exact integer convolution of supports."""
        for p in range(2, len(self.cells)):
            a = self.differentials.get(p - 1, ())
            b = self.differentials.get(p, ())
            acc: dict[tuple[int, ...], np.ndarray] = {}
            for ea, ma in a:
                for eb, mb in b:
                    key = tuple(x + y for x, y in zip(ea, eb))
                    prod = ma @ mb
                    acc[key] = acc.get(key, 0) + prod
            for key, mat in acc.items():
                if np.any(mat != 0):
                    raise ChainComplexError(
                        f"c_{p - 1} o c_{p} has nonzero symbol coefficient at {key}"
                    )

    def symbol(self, p: int, theta: np.ndarray) -> np.ndarray:
        """Fourier symbol of c_p at torus points theta (shape (..., n));
        returns complex matrices of shape (..., n_{p-1}, n_p)."""
        theta = np.asarray(theta, dtype=float)
        batch = theta.shape[:-1]
        out = np.zeros(batch + (self.cells[p - 1], self.cells[p]), dtype=complex)
        for exp, mat in self.differentials.get(p, ()):
            phase = np.exp(1j * (theta @ np.asarray(exp, dtype=float)))
            out += phase[..., None, None] * mat
        return out

    def laplace_symbol(self, p: int, theta: np.ndarray) -> np.ndarray:
        """Hermitian PSD Laplacian symbol at degree p."""
        theta = np.asarray(theta, dtype=float)
        batch = theta.shape[:-1]
        n_p = self.cells[p]
        acc = np.zeros(batch + (n_p, n_p), dtype=complex)
        if p + 1 < len(self.cells):
            c_up = self.symbol(p + 1, theta)
            acc += c_up @ np.conjugate(np.swapaxes(c_up, -1, -2))
        if p >= 1:
            c_dn = self.symbol(p, theta)
            acc += np.conjugate(np.swapaxes(c_dn, -1, -2)) @ c_dn
        return acc

    @classmethod
    def from_json(cls, data: dict) -> "AbelianCWComplex":
        diffs = {}
        for key, terms in data.get("differentials", {}).items():
            diffs[int(key)] = tuple(
                (tuple(t["exp"]), np.asarray(t["mat"], dtype=np.int64)) for t in terms
            )
        return cls(
            deck_rank=data["deck_rank"],
            cells=tuple(data["cells"]),
            differentials=diffs,
        )

    @classmethod
    def from_file(cls, path: str) -> "AbelianCWComplex":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        return {
            "deck_rank": self.deck_rank,
            "cells": list(self.cells),
            "differentials": {
                str(p): [{"exp": list(e), "mat": m.tolist()} for e, m in terms]
                for p, terms in self.differentials.items()
            },
        }


def circle_complex() -> AbelianCWComplex:
    """One 0-cell and one 1-cell over Z; c_1 = 1 - z."""
    return AbelianCWComplex(
        deck_rank=1,
        cells=(1, 1),
        differentials={1: (((0,), np.array([[1]])), ((1,), np.array([[-1]])))},
    )


def torus2_complex() -> AbelianCWComplex:
    """Standard square tiling of the plane over Z^2."""
    one = np.array
    return AbelianCWComplex(
        deck_rank=2,
        cells=(1, 2, 1),
        differentials={
            1: (
                ((0, 0), one([[1, 1]])),
                ((1, 0), one([[-1, 0]])),
                ((0, 1), one([[0, -1]])),
            ),
            2: (
                ((0, 0), one([[1], [-1]])),
                ((0, 1), one([[-1], [0]])),
                ((1, 0), one([[0], [1]])),
            ),
        },
    )


@dataclass
class DensityEstimate:
    degree: int
    grid: np.ndarray
    F: np.ndarray
    b_hat: float
    samples: int
    seed: int
    alpha_fit: Optional[dict] = None

    def to_json(self) -> dict:
        out = {
            "degree": self.degree,
            "grid": [float(x) for x in self.grid],
            "F": [float(x) for x in self.F],
            "b_hat": self.b_hat,
            "samples": self.samples,
            "seed": self.seed,
        }
        if self.alpha_fit is not None:
            out["alpha_fit"] = self.alpha_fit
        return out

    def to_table(self) -> str:
        lines = ["# lambda\tF"]
        for lam, f in zip(self.grid, self.F):
            lines.append(f"{lam:.12g}\t{f:.12g}")
        return "\n".join(lines) + "\n"


def _chunk_counts(c: AbelianCWComplex, p: int, grid: np.ndarray, seed: int,
                  chunk_index: int, size: int) -> tuple[np.ndarray, int]:
    rng = np.random.default_rng([seed, chunk_index])
    theta = rng.uniform(0.0, 2.0 * np.pi, size=(size, c.deck_rank))
    lap = c.laplace_symbol(p, theta)
    eig = np.linalg.eigvalsh(lap)
    counts = (eig[:, :, None] <= grid[None, None, :]).sum(axis=(0, 1))
    kernel = int((eig <= KERNEL_EPS).sum())
    return counts.astype(np.int64), kernel


def estimate_density(
    c: AbelianCWComplex,
    p: int,
    grid,
    samples: int,
    seed: int,
    workers: int = 1,
) -> DensityEstimate:
    """Monte-Carlo estimate of the spectral density function on the grid.

    Deterministic for fixed (seed, samples, grid): sampling happens in
    fixed-size chunks whose RNG streams are derived from (seed, chunk),
    and per-grid-point counts are exact integers, so worker scheduling
    cannot change the result.
    """
    grid = np.asarray(sorted(float(x) for x in grid))
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n_p = c.cells[p]
    if n_p == 0:
        return DensityEstimate(p, grid, np.zeros_like(grid), 0.0, samples, seed)
    sizes = [CHUNK] * (samples // CHUNK)
    if samples % CHUNK:
        sizes.append(samples % CHUNK)
    tasks = list(enumerate(sizes))
    total = np.zeros(len(grid), dtype=np.int64)
    kernel_total = 0
    if workers <= 1:
        results = [_chunk_counts(c, p, grid, seed, i, s) for i, s in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(lambda t: _chunk_counts(c, p, grid, seed, t[0], t[1]), tasks)
            )
    for counts, kernel in results:
        total += counts
        kernel_total += kernel
    denom = samples * n_p
    F = total / denom * n_p  # normalized torus average, values in [0, n_p]
    F = np.maximum.accumulate(F)  # isotonic pass; definitional monotonicity
    b_hat = kernel_total / denom * n_p
    return DensityEstimate(p, grid, F, float(b_hat), samples, seed)


def estimate_ns(e: DensityEstimate, min_points: int = 5, split_tol: float = 0.15) -> dict:
    """Least-squares exponent of F - b on the lowest usable log-decade.

    Returns a dict with the fitted slope, a confidence band, the window,
    and flags: "gap_candidate" when the tail carries no mass over the
    lowest decade, "limit_flag" when half-window slopes disagree by more
    than split_tol.
    """
    lam = np.asarray(e.grid)
    tail = np.asarray(e.F) - e.b_hat
    usable = (tail > 0) & (lam > 0)
    if not usable.any():
        return {"gap_candidate": True, "reason": "no spectral mass above the Betti estimate"}
    lam_lo = lam[usable].min()
    # lowest grid decade: flat F over it signals a gap
    lowest_decade = (lam > 0) & (lam <= lam.min() * 10)
    if not (usable & lowest_decade).any():
        return {"gap_candidate": True, "reason": "tail vanishes across the lowest decade"}
    window = usable & (lam >= lam_lo) & (lam < lam_lo * 10)
    decade_hi = lam_lo * 10
    while window.sum() < min_points and decade_hi <= lam.max():
        decade_hi *= 10
        window = usable & (lam >= lam_lo) & (lam < decade_hi)
    if window.sum() < min_points:
        raise WindowTooSmall(
            f"only {int(window.sum())} usable tail points below {decade_hi:.3g}; "
            f"need {min_points} (grid min {lam.min():.3g}, b_hat {e.b_hat:.3g})"
        )
    x = np.log(lam[window])
    y = np.log(tail[window])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    dof = max(len(x) - 2, 1)
    sxx = ((x - x.mean()) ** 2).sum()
    stderr = float(np.sqrt((resid ** 2).sum() / dof / sxx)) if sxx > 0 else float("inf")
    half = len(x) // 2
    limit_flag = False
    if half >= 2 and len(x) - half >= 2:
        s1 = np.polyfit(x[:half], y[:half], 1)[0]
        s2 = np.polyfit(x[half:], y[half:], 1)[0]
        limit_flag = abs(s1 - s2) > split_tol
    return {
        "gap_candidate": False,
        "exponent": float(slope),
        "stderr": stderr,
        "ci95": [float(slope - 1.96 * stderr), float(slope + 1.96 * stderr)],
        "window": [float(lam[window].min()), float(lam[window].max())],
        "points": int(window.sum()),
        "limit_flag": bool(limit_flag),
    }
