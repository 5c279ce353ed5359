"""
Numerical flows of vector fields.

The Lie series of lie_conjugate() is the Taylor expansion of the pull-back of X by
the time-1 flow Φ of U: Φ*X(z) = DΦ(z)^{-1} X(Φ(z)). Integrating the flow and its
variational equation gives an independent evaluation of that pull-back.
"""

import logging
from typing import Tuple

import numpy as np
from scipy.integrate import solve_ivp

from birkhoff.core.algebra.lie import lie_conjugate
from birkhoff.core.algebra.vector_field import VectorField, evaluate, jacobian
from birkhoff.core.errors import AlgebraError


logger = logging.getLogger(__name__)

DEFAULT_RTOL = 1e-11
DEFAULT_ATOL = 1e-13


def time_one_flow(
    U: VectorField,
    z: np.ndarray,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
) -> Tuple[np.ndarray, np.ndarray]:
    """Φ(z) and DΦ(z), Φ being the time-1 flow of U"""
    size = 2 * U.n
    z = np.asarray(z, dtype=complex)
    if z.shape != (size,):
        raise AlgebraError(f"expected a point with {size} coordinates")

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        point = y[:size]
        derivative = y[size:].reshape(size, size)
        return np.concatenate(
            [evaluate(U, point), (jacobian(U, point) @ derivative).ravel()]
        )

    y0 = np.concatenate([z, np.eye(size, dtype=complex).ravel()])
    solution = solve_ivp(rhs, (0.0, 1.0), y0, method="DOP853", rtol=rtol, atol=atol)
    if not solution.success:
        raise AlgebraError(f"flow integration failed: {solution.message}")
    y = solution.y[:, -1]
    return y[:size], y[size:].reshape(size, size)


def pullback(X: VectorField, U: VectorField, z: np.ndarray) -> np.ndarray:
    """Φ*X(z) = DΦ(z)^{-1} X(Φ(z))"""
    point, derivative = time_one_flow(U, z)
    return np.linalg.solve(derivative, evaluate(X, point))


def random_points(n: int, r: float, samples: int, seed: int = 0) -> np.ndarray:
    """Complex points with Euclidean norm r"""
    rng = np.random.default_rng(seed)
    points = rng.standard_normal((samples, 2 * n)) + 1j * rng.standard_normal(
        (samples, 2 * n)
    )
    return points * (r / np.linalg.norm(points, axis=1))[:, None]


def lie_conjugate_flow_error(
    X: VectorField,
    U: VectorField,
    degree: int,
    r: float,
    samples: int = 8,
    seed: int = 0,
) -> float:
    """
    Largest distance between lie_conjugate(X, U, degree) and the integrated
    pull-back, over `samples` points of norm r. It is O(r^{degree+1}) for small r.
    """
    series = lie_conjugate(X, U, degree)
    error = max(
        float(np.linalg.norm(evaluate(series, z) - pullback(X, U, z)))
        for z in random_points(X.n, r, samples, seed)
    )
    logger.debug("flow error degree=%d r=%r error=%r", degree, r, error)
    return error
