"""Monte Carlo oracle on ``S^{2n+1}``.

Uniform points come from normalized standard complex Gaussians.  The weighted
contact volume form is ``alpha_w ^ (d alpha_w)^n = h^-(n+1) alpha_1 ^ (d alpha_1)^n``
with ``h(z) = sum w_j |z_j|^2`` (from ``alpha_w = alpha_1 / h``), so
``vol(S^{2n+1}, alpha_w) = vol_round * E[h^-(n+1)]``.

Determinism: samples are drawn in fixed-size chunks; chunk ``c`` uses the
stream ``SeedSequence(seed, spawn_key=(c,))`` and partial sums are reduced in
chunk order, so results do not depend on the number of workers.
"""
from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from .sphere import WeightedSphere

CHUNK = 1 << 16


@dataclass(frozen=True)
class McConfig:
    seed: int = 20161017
    samples: int = 1_000_000
    workers: int = 1
    histogram_bins: int = 50

    def __post_init__(self):
        if self.samples <= 0 or self.workers <= 0 or self.histogram_bins <= 0:
            raise ValueError("samples, workers and histogram_bins must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def default_workers() -> int:
    return max(1, int(os.environ.get("CONTACTLOC_THREADS", "1")))


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def sample_sphere(n: int, rng: np.random.Generator, size: int = None) -> np.ndarray:
    """Uniform point(s) on the unit sphere in ``C^{n+1}``."""
    shape = (n + 1,) if size is None else (size, n + 1)
    z = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    norm = np.sqrt(np.sum(np.abs(z) ** 2, axis=-1, keepdims=True))
    return z / norm


def _chunks(samples: int):
    return [(c, min(CHUNK, samples - c * CHUNK)) for c in range((samples + CHUNK - 1) // CHUNK)]


def _map_chunks(fn: Callable, cfg: McConfig) -> List:
    jobs = _chunks(cfg.samples)
    if cfg.workers == 1:
        return [fn(c, m) for c, m in jobs]
    with ThreadPoolExecutor(max_workers=cfg.workers) as ex:
        return list(ex.map(lambda cm: fn(*cm), jobs))


def round_sphere_volume(n: int) -> float:
    """``2 pi^(n+1) / n!``, which is also ``(1/(2^n n!)) int alpha_1 ^ (d alpha_1)^n``."""
    return 2 * math.pi ** (n + 1) / math.factorial(n)


def _weights(sphere: WeightedSphere, z: np.ndarray) -> np.ndarray:
    w = np.array([float(x) for x in sphere.w])
    h = (np.abs(z) ** 2) @ w
    return h ** (-(sphere.n + 1))


@dataclass(frozen=True)
class McEstimate:
    value: float
    stderr: float
    mean_weight: float
    mean_weight_stderr: float
    samples: int


def mc_contact_volume(sphere: WeightedSphere, cfg: McConfig = McConfig()) -> McEstimate:
    """Estimate ``2 pi^(n+1) / (n! prod w_j)`` as ``vol_round * E[h^-(n+1)]``."""
    n = sphere.n

    def work(c, m):
        x = _weights(sphere, sample_sphere(n, chunk_rng(cfg.seed, c), m))
        return float(x.sum()), float((x * x).sum())

    s1 = s2 = 0.0
    for a, b in _map_chunks(work, cfg):
        s1 += a
        s2 += b
    N = cfg.samples
    mean = s1 / N
    var = max(s2 / N - mean * mean, 0.0) * N / max(N - 1, 1)
    se = math.sqrt(var / N)
    vol = round_sphere_volume(n)
    return McEstimate(vol * mean, vol * se, mean, se, N)


@dataclass(frozen=True)
class Histogram:
    """Weighted histogram of ``y = -mu(z)``; ``density`` approximates the
    pushforward density of ``alpha ^ (d alpha)^n / n!``."""

    edges: np.ndarray
    density: np.ndarray
    stderr: np.ndarray
    total_mass: float
    outside_mass: float = 0.0

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["bin_left", "bin_right", "density", "stderr"])
            for lo, hi, d, e in zip(self.edges[:-1], self.edges[1:], self.density, self.stderr):
                wr.writerow([f"{lo:.15g}", f"{hi:.15g}", f"{d:.15g}", f"{e:.15g}"])


def histogram_edges(sphere: WeightedSphere, bins: int) -> np.ndarray:
    lam = [float(x) for x in sphere.lambdas]
    lo, hi = -max(lam), -min(lam)
    if hi - lo <= 0:
        lo, hi = lo - 0.5, hi + 0.5
    return np.linspace(lo, hi, bins + 1)


def mc_dh_histogram(sphere: WeightedSphere, cfg: McConfig = McConfig()) -> Histogram:
    """Histogram of ``-mu`` with per-sample weight ``h^-(n+1) * 2^n vol_round / N``."""
    n = sphere.n
    edges = histogram_edges(sphere, cfg.histogram_bins)
    beta = np.array([float(b) for b in sphere.beta])
    w = np.array([float(x) for x in sphere.w])

    def work(c, m):
        z = sample_sphere(n, chunk_rng(cfg.seed, c), m)
        r2 = np.abs(z) ** 2
        h = r2 @ w
        y = -(r2 @ beta) / h
        x = h ** (-(n + 1))
        tol = 1e-12 * max(1.0, float(np.max(np.abs(edges))))
        out = float(x[(y < edges[0] - tol) | (y > edges[-1] + tol)].sum())
        idx = np.clip(np.searchsorted(edges, y, side="right") - 1, 0, len(edges) - 2)
        return (np.bincount(idx, weights=x, minlength=len(edges) - 1),
                np.bincount(idx, weights=x * x, minlength=len(edges) - 1), out)

    s1 = np.zeros(len(edges) - 1)
    s2 = np.zeros(len(edges) - 1)
    outside = 0.0
    for a, b, o in _map_chunks(work, cfg):
        s1 += a
        s2 += b
        outside += o
    N = cfg.samples
    total = 2 ** n * round_sphere_volume(n)
    width = np.diff(edges)
    mean = s1 / N
    var = np.maximum(s2 / N - mean ** 2, 0.0)
    density = total * mean / width
    stderr = total * np.sqrt(var / N) / width
    return Histogram(edges, density, stderr, float(total * s1.sum() / N),
                     total * outside / N)
