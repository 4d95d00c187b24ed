"""Damped least-squares (Levenberg-Marquardt) minimizer.

Small and self-contained on purpose: the callers supply analytic Jacobians,
which keeps convergence behavior reproducible and lets tests check the
Jacobians against central finite differences.  Damping follows the standard
gain-ratio update (Madsen/Nielsen/Tingleff) with Marquardt diagonal scaling,
plus the geodesic-acceleration correction (Transtrum-style): strongly
correlated width parameters put the minimum at the end of a curved, narrow
valley where plain damped steps creep.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IllConditionedError

__all__ = ["LeastSquaresResult", "least_squares"]

_LAMBDA_INIT = 1e-3
_LAMBDA_MAX = 1e15
_ACCEL_H = 0.1          # fractional step for the directional 2nd derivative
_ACCEL_LIMIT = 0.75     # reject steps whose curvature correction dominates


@dataclass(frozen=True)
class LeastSquaresResult:
    params: np.ndarray
    rss: float
    covariance: np.ndarray
    n_iterations: int
    converged: bool


def least_squares(residual, jacobian, p0, max_iterations=500,
                  rss_rtol=1e-10, step_tol=1e-12):
    """Minimize sum(residual(p)**2) starting from p0.

    Parameters
    ----------
    residual : callable p -> (m,) array.  May return non-finite values for
        an infeasible p; such trial steps are rejected.
    jacobian : callable p -> (m, n) array of d(residual)/d(params); only
        evaluated at accepted points.
    p0 : initial parameter vector.

    Convergence: relative RSS change below `rss_rtol`, or proposed step norm
    below `step_tol`, or no descent direction left at maximal damping.  One
    iteration is one trial step, accepted or not.  The covariance is
    (J^T J)^-1 scaled by rss/(m - n) at the solution.
    """
    p = np.asarray(p0, dtype=float).copy()
    r = np.asarray(residual(p), dtype=float)
    rss = float(r @ r)
    if not np.isfinite(rss):
        raise IllConditionedError("residual is not finite at the start point")

    def linearize(point, res):
        jac = np.asarray(jacobian(point), dtype=float)
        if not np.all(np.isfinite(jac)):
            raise IllConditionedError("Jacobian contains non-finite entries")
        grad = jac.T @ res
        hess = jac.T @ jac
        diag = np.diag(hess).copy()
        # unit damping for zero-curvature directions keeps the solve regular
        return jac, grad, hess, np.where(diag > 0, diag, 1.0)

    jac, grad, hess, scale = linearize(p, r)
    lam = _LAMBDA_INIT
    growth = 2.0
    converged = False
    iteration = 0
    for iteration in range(1, max_iterations + 1):
        damped = hess + lam * np.diag(scale)
        try:
            velocity = np.linalg.solve(damped, -grad)
        except np.linalg.LinAlgError:
            velocity = None
        if velocity is None or not np.all(np.isfinite(velocity)):
            lam *= growth
            growth *= 2.0
            if lam > _LAMBDA_MAX:
                raise IllConditionedError(
                    "normal equations stay singular at maximal damping")
            continue
        if float(np.linalg.norm(velocity)) < step_tol:
            converged = True
            break

        # geodesic acceleration: second directional derivative of the
        # residual along the proposed step, by one extra evaluation
        step = velocity
        r_probe = np.asarray(residual(p + _ACCEL_H * velocity), dtype=float)
        if np.all(np.isfinite(r_probe)):
            rpp = 2.0 * (r_probe - r - _ACCEL_H * (jac @ velocity)) / _ACCEL_H ** 2
            try:
                accel = np.linalg.solve(damped, -0.5 * (jac.T @ rpp))
            except np.linalg.LinAlgError:
                accel = None
            if accel is not None and np.all(np.isfinite(accel)):
                v_norm = float(np.linalg.norm(velocity))
                if float(np.linalg.norm(accel)) <= _ACCEL_LIMIT * v_norm:
                    step = velocity + accel

        p_try = p + step
        r_try = np.asarray(residual(p_try), dtype=float)
        rss_try = float(r_try @ r_try)
        if np.isfinite(rss_try) and rss_try <= rss:
            drop = rss - rss_try
            predicted = float(velocity @ (lam * scale * velocity - grad))
            gain = drop / predicted if predicted > 0 else 1.0
            lam *= max(1.0 / 3.0, 1.0 - (2.0 * gain - 1.0) ** 3)
            lam = max(lam, 1e-15)
            growth = 2.0
            p, r, rss = p_try, r_try, rss_try
            jac, grad, hess, scale = linearize(p, r)
            if drop <= rss_rtol * max(rss, 1e-300):
                converged = True
                break
        else:
            lam *= growth
            growth *= 2.0
            if lam > _LAMBDA_MAX:
                # no descent direction even under maximal damping:
                # stationary to floating-point precision
                converged = True
                break

    dof = r.size - p.size
    s2 = rss / dof if dof > 0 else 0.0
    covariance = s2 * np.linalg.pinv(hess)
    return LeastSquaresResult(params=p, rss=rss, covariance=covariance,
                              n_iterations=iteration, converged=converged)
