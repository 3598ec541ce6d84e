"""Principal branch W0 of the Lambert function on its real domain [-1/e, inf).

W0 inverts w -> w*exp(w). Evaluation uses Halley's iteration seeded by a
regime-dependent initial guess:

* branch-point series in p = sqrt(2*(e*x + 1)) for x in [-1/e, -0.25],
* w ~ x for |x| < 0.25,
* log(1 + x) for 0.25 <= x <= e,
* the asymptotic log(x) - log(log(x)) for x > e.

Halley converges cubically; the iteration stops when the step drops below
1e-15 * (1 + |w|) and is capped at 50 rounds. Inputs within 1e-12 below
-1/e are clamped to the branch point (callers hit it through rounding),
anything lower raises ``DomainError``.
"""

import numpy as np

from .errors import DomainError

BRANCH_POINT = -1.0 / np.e
DOMAIN_SLACK = 1e-12

_MAX_ITER = 50
_STEP_TOL = 1e-15


def _initial_guess(x: np.ndarray) -> np.ndarray:
    w = np.empty_like(x)

    near_branch = x <= -0.25
    if near_branch.any():
        # series around w = -1: w = -1 + p - p^2/3 + 11 p^3/72
        p = np.sqrt(np.maximum(2.0 * (np.e * x[near_branch] + 1.0), 0.0))
        w[near_branch] = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)))

    small = (x > -0.25) & (x < 0.25)
    w[small] = x[small]

    mid = (x >= 0.25) & (x <= np.e)
    w[mid] = np.log1p(x[mid])

    large = x > np.e
    if large.any():
        lx = np.log(x[large])
        w[large] = lx - np.log(lx)

    return w


def w0(x):
    """Evaluate W0 at ``x`` (scalar or array_like).

    Returns w with |w*exp(w) - x| <= 1e-12 * max(1, |x|). Raises
    ``DomainError`` for x < -1/e - 1e-12; values inside the slack are
    treated as the branch point itself and map to -1.
    """
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)

    if np.any(~np.isfinite(arr)):
        raise DomainError("w0 requires finite arguments")
    if np.any(arr < BRANCH_POINT - DOMAIN_SLACK):
        bad = float(arr[arr < BRANCH_POINT - DOMAIN_SLACK][0])
        raise DomainError(
            f"w0 argument {bad!r} is below the branch point -1/e ~ {BRANCH_POINT!r}"
        )

    xc = np.maximum(arr, BRANCH_POINT)
    w = _initial_guess(xc)

    for _ in range(_MAX_ITER):
        ew = np.exp(w)
        f = w * ew - xc
        wp1 = w + 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
            step = f / denom
        # at the branch point itself (wp1 == 0) the guess is already exact
        step = np.where(np.isfinite(step), step, 0.0)
        w = w - step
        if np.all(np.abs(step) <= _STEP_TOL * (1.0 + np.abs(w))):
            break

    return float(w[0]) if scalar else w


def w0_log_enclosure(z: float) -> tuple[float, float]:
    """Logarithmic enclosure of W0: ln z - ln ln z < W0(z) < ln z for z > e.

    Raises ``DomainError`` for z <= e, where the enclosure is not proven.
    """
    if not z > np.e:
        raise DomainError(f"enclosure requires z > e, got {z!r}")
    lz = np.log(z)
    return float(lz - np.log(lz)), float(lz)
