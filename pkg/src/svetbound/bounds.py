"""Upper bound 4*lambda1 on the maximal Svetlichny value, violation classification,
and tightness certificates.

A mean value above 4 witnesses genuine tripartite nonlocality, but 4*lambda1 is
only an upper bound: exceeding 4 does not by itself certify a violation, so the
classification is three-valued and the see-saw optimizer supplies the witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .correlation import SingularSpectrum, correlation_tensor, singular_spectrum, unfold
from .qcore import validate_density
from .seesaw import OptimizerConfig, maximize
from .svetlichny import CLASSICAL_BOUND, MeasurementSettings, principal_angle, svetlichny_value

CERTIFIED_VIOLATION = "CertifiedViolation"
CERTIFIED_NO_VIOLATION = "CertifiedNoViolation"
INCONCLUSIVE = "Inconclusive"

VIOLATION_MARGIN = 1e-9
DEFAULT_CERTIFICATE_TOL = 1e-6

_SUBSPACE_RESIDUAL_TOL = 1e-8
_DECOMPOSE_STARTS = 50
_TINY_NORM = 1e-12


@dataclass(frozen=True)
class Certificate:
    """Settings attaining the bound, the signed value achieved, and the gap left."""

    settings: MeasurementSettings
    achieved: float
    residual: float


@dataclass(frozen=True)
class BoundReport:
    """Singular spectrum, the bound 4*lambda1, and the violation classification."""

    spectrum: SingularSpectrum
    q_bound: float
    classification: str
    optimizer_value: float | None = None
    certificate: Certificate | None = None


def quantum_bound(
    rho,
    config: OptimizerConfig | None = None,
    certify: bool = False,
    certificate_tol: float = DEFAULT_CERTIFICATE_TOL,
) -> BoundReport:
    """Bound 4*lambda1 on |<S>| over all measurement settings, with classification.

    CertifiedNoViolation when the bound itself stays at or below 4. Otherwise
    the see-saw optimizer runs: CertifiedViolation when it exhibits a value
    above 4 + 1e-9, else Inconclusive (the bound exceeds 4 but no violating
    settings were found). Pass certify=True to also attach a tightness
    certificate when one exists.
    """
    rho = validate_density(rho)
    cfg = config if config is not None else OptimizerConfig()
    spectrum = singular_spectrum(unfold(correlation_tensor(rho)))
    q_bound = 4.0 * spectrum.lambda1
    optimizer_value: float | None = None
    if q_bound <= CLASSICAL_BOUND:
        classification = CERTIFIED_NO_VIOLATION
    else:
        result = maximize(rho, cfg)
        optimizer_value = result.best_value
        if result.best_value > CLASSICAL_BOUND + VIOLATION_MARGIN:
            classification = CERTIFIED_VIOLATION
        else:
            classification = INCONCLUSIVE
    certificate = None
    if certify:
        certificate = tightness_certificate(rho, tol=certificate_tol, config=cfg)
    return BoundReport(spectrum, q_bound, classification, optimizer_value, certificate)


def tightness_certificate(
    rho,
    tol: float = DEFAULT_CERTIFICATE_TOL,
    config: OptimizerConfig | None = None,
) -> Certificate | None:
    """Measurement settings whose |<S>| reaches 4*lambda1 - tol, if any are found.

    Strategy: when the top singular value is (numerically) degenerate, search
    the top singular subspace for two orthogonal 9-vectors decomposable as
    a(x)c - a'(x)c' and a(x)c' + a'(x)c with unit 3-vectors; b and b' are then
    placed so the principal angle satisfies theta_ac + theta_b = pi, which
    saturates the trigonometric factor. Falls back to the see-saw optimizer.
    Returns None when neither route attains the target; absence is a valid
    answer since the bound need not be tight.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    rho = validate_density(rho)
    cfg = config if config is not None else OptimizerConfig()
    matrix = unfold(correlation_tensor(rho))
    spectrum = singular_spectrum(matrix)
    q_bound = 4.0 * spectrum.lambda1
    target = q_bound - tol

    if spectrum.degenerate_top and spectrum.right9_2 is not None:
        settings = _subspace_certificate(matrix, spectrum, seed=cfg.seed)
        if settings is not None:
            achieved = svetlichny_value(rho, settings)
            if abs(achieved) >= target:
                return Certificate(settings, achieved, q_bound - abs(achieved))

    result = maximize(rho, cfg)
    achieved = svetlichny_value(rho, result.best_settings)
    if abs(achieved) >= target:
        return Certificate(result.best_settings, achieved, q_bound - abs(achieved))
    return None


def _split_unit(x: np.ndarray) -> tuple[np.ndarray, ...]:
    blocks = []
    for idx in range(4):
        block = x[3 * idx : 3 * idx + 3]
        norm = float(np.linalg.norm(block))
        blocks.append(block / max(norm, _TINY_NORM))
    return tuple(blocks)


def _decompose_top_subspace(basis: np.ndarray, rng: np.random.Generator) -> tuple[np.ndarray, ...] | None:
    # Multistart minimization of the squared component of u and v outside span(basis).
    def residual(x: np.ndarray) -> float:
        a, ap, c, cp = _split_unit(x)
        u = np.kron(a, c) - np.kron(ap, cp)
        v = np.kron(a, cp) + np.kron(ap, c)
        pu = u - basis.T @ (basis @ u)
        pv = v - basis.T @ (basis @ v)
        return float(pu @ pu + pv @ pv)

    for _ in range(_DECOMPOSE_STARTS):
        x0 = rng.standard_normal(12)
        result = minimize(residual, x0, method="L-BFGS-B")
        if result.fun < _SUBSPACE_RESIDUAL_TOL:
            blocks = _split_unit(result.x)
            if all(float(np.linalg.norm(b)) > 0.5 for b in blocks):
                return blocks
    return None


def _completion(against: np.ndarray | None) -> np.ndarray:
    for idx in range(3):
        seed = np.zeros(3)
        seed[idx] = 1.0
        if against is not None:
            seed = seed - (seed @ against) * against
        norm = float(np.linalg.norm(seed))
        if norm > 0.3:
            return seed / norm
    raise RuntimeError("direction completion failed")  # pragma: no cover


def _orthonormal_pair(nu: np.ndarray, nv: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal (e+, e-) aligned with (M u, M v); a vanished coefficient gets
    an arbitrary orthogonal completion since its weight in b, b' is zero."""
    nu_norm = float(np.linalg.norm(nu))
    nv_norm = float(np.linalg.norm(nv))
    if nu_norm > _TINY_NORM and nv_norm > _TINY_NORM:
        e_plus = nu / nu_norm
        e_minus = nv / nv_norm
        e_minus = e_minus - (e_minus @ e_plus) * e_plus
        e_minus = e_minus / float(np.linalg.norm(e_minus))
        return e_plus, e_minus
    if nu_norm > _TINY_NORM:
        e_plus = nu / nu_norm
        return e_plus, _completion(e_plus)
    if nv_norm > _TINY_NORM:
        e_minus = nv / nv_norm
        return _completion(e_minus), e_minus
    return _completion(None), _completion(_completion(None))


def _angle(x: np.ndarray, y: np.ndarray) -> float:
    return float(math.acos(max(-1.0, min(1.0, float(x @ y)))))


def _subspace_certificate(
    matrix: np.ndarray, spectrum: SingularSpectrum, seed: int
) -> MeasurementSettings | None:
    basis = np.stack([spectrum.right9_1, spectrum.right9_2])
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    blocks = _decompose_top_subspace(basis, rng)
    if blocks is None:
        return None
    a, ap, c, cp = blocks
    u = np.kron(a, c) - np.kron(ap, cp)
    v = np.kron(a, cp) + np.kron(ap, c)
    theta_ac = principal_angle(_angle(a, ap), _angle(c, cp))
    theta_b = math.pi - theta_ac
    e_plus, e_minus = _orthonormal_pair(matrix @ u, matrix @ v)
    half = theta_b / 2.0
    b = math.cos(half) * e_plus + math.sin(half) * e_minus
    bp = math.cos(half) * e_plus - math.sin(half) * e_minus
    b = b / float(np.linalg.norm(b))
    bp = bp / float(np.linalg.norm(bp))
    return MeasurementSettings(a, ap, b, bp, c, cp)
