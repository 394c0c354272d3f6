"""Dense polynomial root finding by simultaneous iteration.

Small degrees only (the package needs quartics); robustness is preferred
over speed.  Roots are refined with a final Newton pass and returned with
normalized residuals so callers can judge convergence.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError


def polyval(coeffs: np.ndarray, z: complex) -> complex:
    """Evaluate a polynomial given by descending coefficients (Horner)."""
    acc = 0.0 + 0.0j
    for c in coeffs:
        acc = acc * z + c
    return acc


def _residual_scale(coeffs: np.ndarray, z: complex) -> float:
    # |p(z)| measured against the naive term-magnitude sum at z
    n = len(coeffs) - 1
    return sum(abs(c) * abs(z) ** (n - k) for k, c in enumerate(coeffs)) + abs(coeffs[-1])


def normalized_residuals(coeffs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    return np.array(
        [abs(polyval(coeffs, z)) / _residual_scale(coeffs, z) for z in roots], dtype=float
    )


def all_roots(
    coeffs,
    max_iter: int = 200,
    tol: float = 1e-14,
) -> np.ndarray:
    """All complex roots of ``sum(coeffs[k] * z**(n-k))`` (Durand-Kerner).

    ``coeffs`` is a full descending coefficient sequence with a nonzero
    leading entry.  Starts from slightly perturbed scaled roots of unity;
    raises :class:`ConvergenceError` if the iteration budget is exhausted
    while residuals are still large.
    """
    p = np.asarray(coeffs, dtype=complex)
    if p.ndim != 1 or p.size < 2:
        raise ValueError("need a polynomial of degree >= 1")
    if p[0] == 0:
        raise ValueError("leading coefficient must be nonzero")
    p = p / p[0]
    n = p.size - 1
    if n == 1:
        return np.array([-p[1]])

    radius = 1.0 + max(abs(c) for c in p[1:])
    # deterministic perturbation so clustered starts never coincide
    roots = np.array(
        [radius * np.exp(2j * np.pi * (k / n + 0.137)) * (1 + 1e-3 * (k + 1)) for k in range(n)]
    )
    for _ in range(max_iter):
        moved = 0.0
        for k in range(n):
            denom = np.prod(roots[k] - np.delete(roots, k))
            if denom == 0:
                roots[k] *= 1 + 1e-8
                continue
            step = polyval(p, roots[k]) / denom
            roots[k] -= step
            moved = max(moved, abs(step))
        if moved < tol * max(1.0, np.max(np.abs(roots))):
            break

    # one Newton polishing pass
    dp = p[:-1] * np.arange(n, 0, -1)
    for k in range(n):
        d = polyval(dp, roots[k])
        if abs(d) > 1e-14:
            roots[k] -= polyval(p, roots[k]) / d

    res = normalized_residuals(p, roots)
    if np.max(res) > 1e-8:
        raise ConvergenceError(
            f"root iteration left residuals up to {np.max(res):.2e} after {max_iter} iterations"
        )
    return roots
