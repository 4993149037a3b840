"""Multistart see-saw ascent for the maximal Svetlichny value of a fixed state.

The mean value is multilinear in the six measurement directions, so with five
of them held fixed the objective is linear in the sixth and the optimal update
is the normalized coefficient vector. A sweep updates all six in the fixed
order (a, a', b, b', c, c'); the objective never decreases.

Randomness comes from numpy's PCG64 generator with an explicit seed. Stream
layout: for each start, six directions are drawn in the order a, a', b, b',
c, c', each as three standard normals that get normalized. Identical
(state, config) pairs therefore produce bit-identical results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correlation import correlation_tensor, fold, singular_spectrum, unfold
from .qcore import validate_density
from .svetlichny import MeasurementSettings

_MIN_COEFF_NORM = 1e-14
_BOUND_SLACK = 1e-7
_EXTRAPOLATION_PERIOD = 10
_EXTRAPOLATION_BETAS = (4.0, 16.0, 64.0, 256.0)


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs for the multistart see-saw: start count, sweep cap, stop tolerance, seed."""

    starts: int = 50
    max_iterations: int = 500
    convergence_tol: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be at least 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.convergence_tol <= 0.0:
            raise ValueError("convergence_tol must be positive")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class OptimizationResult:
    """Outcome of maximize: best absolute mean value and the settings achieving it.

    iterations_used and converged describe the winning start; per_start_values
    holds every start's best value in draw order.
    """

    best_value: float
    best_settings: MeasurementSettings
    iterations_used: int
    converged: bool
    per_start_values: tuple[float, ...]


def random_settings(rng: np.random.Generator) -> MeasurementSettings:
    """Six directions drawn independently and uniformly on the unit sphere."""
    return MeasurementSettings.from_matrix(_draw_directions(rng))


def _draw_directions(rng: np.random.Generator) -> np.ndarray:
    rows = np.empty((6, 3))
    for idx in range(6):
        vec = rng.standard_normal(3)
        norm = float(np.linalg.norm(vec))
        while norm < 1e-12:  # pragma: no cover
            vec = rng.standard_normal(3)
            norm = float(np.linalg.norm(vec))
        rows[idx] = vec / norm
    return rows


def _renorm(coeff: np.ndarray, current: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(coeff))
    if norm < _MIN_COEFF_NORM:
        return current
    return coeff / norm


def _objective(t: np.ndarray, s: np.ndarray) -> float:
    a, ap, b, bp, c, cp = s
    bsum = b + bp
    bdif = b - bp
    return float(
        np.einsum("ijk,i,j,k->", t, a, bsum, c)
        + np.einsum("ijk,i,j,k->", t, a, bdif, cp)
        + np.einsum("ijk,i,j,k->", t, ap, bdif, c)
        - np.einsum("ijk,i,j,k->", t, ap, bsum, cp)
    )


def _sweep(t: np.ndarray, s: np.ndarray) -> tuple[np.ndarray, float]:
    # Gauss-Seidel pass in fixed order; each update is exact for its block.
    a, ap, b, bp, c, cp = s
    bsum = b + bp
    bdif = b - bp
    a = _renorm(
        np.einsum("ijk,j,k->i", t, bsum, c) + np.einsum("ijk,j,k->i", t, bdif, cp), a
    )
    ap = _renorm(
        np.einsum("ijk,j,k->i", t, bdif, c) - np.einsum("ijk,j,k->i", t, bsum, cp), ap
    )
    b = _renorm(
        np.einsum("ijk,i,k->j", t, a, c + cp) + np.einsum("ijk,i,k->j", t, ap, c - cp), b
    )
    bp = _renorm(
        np.einsum("ijk,i,k->j", t, a, c - cp) - np.einsum("ijk,i,k->j", t, ap, c + cp), bp
    )
    bsum = b + bp
    bdif = b - bp
    c = _renorm(
        np.einsum("ijk,i,j->k", t, a, bsum) + np.einsum("ijk,i,j->k", t, ap, bdif), c
    )
    cp = _renorm(
        np.einsum("ijk,i,j->k", t, a, bdif) - np.einsum("ijk,i,j->k", t, ap, bsum), cp
    )
    out = np.stack([a, ap, b, bp, c, cp])
    return out, _objective(t, out)


def seesaw_step(matrix, settings: MeasurementSettings) -> tuple[MeasurementSettings, float]:
    """One ascent sweep over (a, a', b, b', c, c') against a 3x9 unfolding.

    Coefficient vectors with norm below 1e-14 leave their direction unchanged
    for the sweep. Returns the updated settings and the new objective value.
    """
    t = np.asarray(fold(matrix))
    updated, value = _sweep(t, settings.as_matrix())
    return MeasurementSettings.from_matrix(updated), value


def _renorm_rows(coeff: np.ndarray, current: np.ndarray, active: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(coeff, axis=1)
    take = active & (norms >= _MIN_COEFF_NORM)
    scaled = coeff / np.maximum(norms, _MIN_COEFF_NORM)[:, None]
    return np.where(take[:, None], scaled, current)


def _batch_objective(t: np.ndarray, s: np.ndarray) -> np.ndarray:
    a, ap, b, bp, c, cp = (s[:, idx, :] for idx in range(6))
    bsum = b + bp
    bdif = b - bp
    return (
        np.einsum("sijk,si,sj,sk->s", t, a, bsum, c)
        + np.einsum("sijk,si,sj,sk->s", t, a, bdif, cp)
        + np.einsum("sijk,si,sj,sk->s", t, ap, bdif, c)
        - np.einsum("sijk,si,sj,sk->s", t, ap, bsum, cp)
    )


def _batch_sweep(t: np.ndarray, s: np.ndarray, active: np.ndarray) -> np.ndarray:
    # Same Gauss-Seidel pass as _sweep, run for every active start at once.
    a, ap, b, bp, c, cp = (s[:, idx, :] for idx in range(6))
    bsum = b + bp
    bdif = b - bp
    a = _renorm_rows(
        np.einsum("sijk,sj,sk->si", t, bsum, c) + np.einsum("sijk,sj,sk->si", t, bdif, cp),
        a,
        active,
    )
    ap = _renorm_rows(
        np.einsum("sijk,sj,sk->si", t, bdif, c) - np.einsum("sijk,sj,sk->si", t, bsum, cp),
        ap,
        active,
    )
    b = _renorm_rows(
        np.einsum("sijk,si,sk->sj", t, a, c + cp) + np.einsum("sijk,si,sk->sj", t, ap, c - cp),
        b,
        active,
    )
    bp = _renorm_rows(
        np.einsum("sijk,si,sk->sj", t, a, c - cp) - np.einsum("sijk,si,sk->sj", t, ap, c + cp),
        bp,
        active,
    )
    bsum = b + bp
    bdif = b - bp
    c = _renorm_rows(
        np.einsum("sijk,si,sj->sk", t, a, bsum) + np.einsum("sijk,si,sj->sk", t, ap, bdif),
        c,
        active,
    )
    cp = _renorm_rows(
        np.einsum("sijk,si,sj->sk", t, a, bdif) - np.einsum("sijk,si,sj->sk", t, ap, bsum),
        cp,
        active,
    )
    return np.stack([a, ap, b, bp, c, cp], axis=1)


def maximize(rho, config: OptimizerConfig | None = None) -> OptimizationResult:
    """Best absolute Svetlichny mean value found by seeded multistart see-saw.

    Each start ascends both the + and - sign branches of the mean value from
    the same drawn settings (the - branch ascends the negated tensor, which is
    equivalent to flipping b and b'). All ascents run batched with a per-start
    active mask; a start stops, and its settings freeze, once an iteration
    improves it by less than convergence_tol. Plain coordinate sweeps crawl
    along the flat valley created by a degenerate top singular value, so every
    few sweeps (and whenever a start stalls) a secant extrapolation through an
    earlier snapshot is tried at several step lengths and kept only when it
    improves the objective; the ascent therefore stays monotone and fully
    deterministic. The returned settings are normalized so the signed mean
    value equals +best_value. Ties between starts resolve to the lowest start
    index. The result is checked against the singular-value bound:
    best_value <= 4 lambda1 + 1e-7.
    """
    rho = validate_density(rho)
    cfg = config if config is not None else OptimizerConfig()
    tensor = np.asarray(correlation_tensor(rho))
    rng = np.random.Generator(np.random.PCG64(int(cfg.seed)))

    n = cfg.starts
    starts = np.stack([_draw_directions(rng) for _ in range(n)])
    settings = np.concatenate([starts, starts])  # first half +T, second half -T
    t_batch = np.concatenate([np.broadcast_to(tensor, (n, 3, 3, 3)),
                              np.broadcast_to(-tensor, (n, 3, 3, 3))])

    values = _batch_objective(t_batch, settings)
    active = np.ones(2 * n, dtype=bool)
    converged = np.zeros(2 * n, dtype=bool)
    iterations = np.full(2 * n, cfg.max_iterations, dtype=int)
    snapshot = settings.copy()
    for sweep in range(1, cfg.max_iterations + 1):
        settings = _batch_sweep(t_batch, settings, active)
        new_values = _batch_objective(t_batch, settings)
        assert np.all(new_values[active] >= values[active] - 1e-12), (
            "see-saw objective decreased"
        )
        attempt = active & (new_values - values < cfg.convergence_tol)
        if sweep % _EXTRAPOLATION_PERIOD == 0:
            attempt = attempt | active
        if attempt.any():
            for beta in _EXTRAPOLATION_BETAS:
                candidate = settings + beta * (settings - snapshot)
                norms = np.linalg.norm(candidate, axis=2, keepdims=True)
                usable = np.all(norms[:, :, 0] > 1e-8, axis=1)
                candidate = candidate / np.maximum(norms, _MIN_COEFF_NORM)
                cand_values = _batch_objective(t_batch, candidate)
                take = attempt & usable & (cand_values > new_values)
                if take.any():
                    settings = np.where(take[:, None, None], candidate, settings)
                    new_values = np.where(take, cand_values, new_values)
            snapshot = np.where(attempt[:, None, None], settings, snapshot)
        improved = new_values - values
        values = np.where(active, new_values, values)
        # A start stops only after an extrapolation attempt failed to rescue it.
        stopped = attempt & (improved < cfg.convergence_tol)
        iterations[stopped] = sweep
        converged[stopped] = True
        active &= ~stopped
        if not active.any():
            break

    # Negative-branch winners get b, b' flipped so the signed value is +value.
    settings = settings.copy()
    settings[n:, 2, :] *= -1.0
    settings[n:, 3, :] *= -1.0

    plus_wins = values[:n] >= values[n:]
    per_start = np.where(plus_wins, values[:n], values[n:])
    winner = np.where(plus_wins, np.arange(n), np.arange(n, 2 * n))
    best_start = int(np.argmax(per_start))
    best_index = int(winner[best_start])
    best_value = float(per_start[best_start])

    spectrum = singular_spectrum(unfold(tensor))
    assert best_value <= 4.0 * spectrum.lambda1 + _BOUND_SLACK, (
        "see-saw value exceeds the singular-value bound"
    )
    return OptimizationResult(
        best_value=best_value,
        best_settings=MeasurementSettings.from_matrix(settings[best_index]),
        iterations_used=int(iterations[best_index]),
        converged=bool(converged[best_index]),
        per_start_values=tuple(float(v) for v in per_start),
    )
