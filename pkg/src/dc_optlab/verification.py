"""Self-check suites behind ``dc-optlab verify``.

Each suite returns a plain dict (JSON-ready) with per-check outcomes and
worst-case margins. Suites are deterministic: fixed grids, fixed seeds.
"""

import math

import numpy as np

from .convergence import dc_rate, verify_theorem
from .dc_loss import DCParams
from .data import Dataset
from .lambert_w import BRANCH_POINT, w0, w0_log_enclosure
from .neuron import empirical_loss, loss_gradient

SUITE_NAMES = ("lambert", "theorem", "corollary", "gradient")

# bracket-certificate grid: 9 b values x 200 log-spaced z in (e, 50]
THEOREM_B_GRID = (-20.0, -10.0, -5.0, -2.0, -1.0, -0.5, -0.1, -0.01, -0.001)
THEOREM_Z_COUNT = 200


def _check(name: str, passed: bool, **details) -> dict:
    return {"name": name, "passed": bool(passed), **details}


def identity_grid(n: int = 10_000, offset_lo: float = 1e-9, hi: float = 1e6) -> np.ndarray:
    """n points log-spaced in distance from the branch point, reaching hi."""
    return BRANCH_POINT + np.geomspace(offset_lo, hi - BRANCH_POINT, n)


def max_identity_residual(x: np.ndarray) -> float:
    w = w0(x)
    with np.errstate(over="ignore"):
        resid = np.abs(w * np.exp(w) - x) / np.maximum(1.0, np.abs(x))
    return float(np.max(resid))


def lambert_suite() -> dict:
    checks = []

    grid = identity_grid()
    worst = max_identity_residual(grid)
    checks.append(
        _check("identity_residual", worst <= 1e-12, n=int(grid.size), worst=worst)
    )

    err_e = abs(w0(math.e) - 1.0)
    checks.append(_check("anchor_w0_of_e", err_e <= 1e-6, error=err_e))
    err_bp = abs(w0(BRANCH_POINT) + 1.0)
    checks.append(_check("anchor_branch_point", err_bp <= 1e-6, error=err_bp))

    w = w0(grid)
    checks.append(
        _check("strictly_increasing", bool(np.all(np.diff(w) > 0)), n=int(grid.size))
    )

    neg = BRANCH_POINT + np.geomspace(1e-12, -BRANCH_POINT - 1e-9, 2000)
    wn = w0(neg)
    ordered = bool(np.all((neg > wn) & (wn >= -1.0)))
    checks.append(_check("negative_argument_ordering", ordered, n=int(neg.size)))

    z = np.geomspace(math.e * (1.0 + 1e-9), 1e6, 2000)
    lows, highs = np.log(z) - np.log(np.log(z)), np.log(z)
    wz = w0(z)
    contained = bool(np.all((lows < wz) & (wz < highs)))
    # scalar interface hit once so the enclosure op itself is exercised
    lo1, hi1 = w0_log_enclosure(float(z[0]))
    contained &= lo1 < w0(float(z[0])) < hi1
    checks.append(_check("log_enclosure_contains_w0", contained, n=int(z.size)))

    return {"suite": "lambert", "passed": all(c["passed"] for c in checks), "checks": checks}


def theorem_suite() -> dict:
    z_grid = np.geomspace(np.nextafter(math.e, np.inf), 50.0, THEOREM_Z_COUNT)
    report = verify_theorem(THEOREM_B_GRID, z_grid)
    checks = [
        _check(
            ineq.name,
            ineq.failed == 0,
            checked=ineq.checked,
            worst_margin=ineq.worst_margin,
            worst_pair=list(ineq.worst_pair) if ineq.worst_pair else None,
        )
        for ineq in report.inequalities
    ]
    checks.append(
        _check("grid_coverage", report.checked >= 1000, checked=report.checked,
               filtered_out=report.filtered_out)
    )
    return {"suite": "theorem", "passed": all(c["passed"] for c in checks), "checks": checks}


def corollary_suite() -> dict:
    base = DCParams(r=1.0, c=0.0, d=0.0, p_d=math.exp(-1.0))
    z = 5.0
    checks = []

    r_values = (0.5, 1.0, 2.0, 4.0, 8.0)
    g_r = [dc_rate(DCParams(r=r, c=0.0, d=0.0, p_d=base.p_d), z) for r in r_values]
    decreasing = all(y < x for x, y in zip(g_r, g_r[1:]))
    checks.append(
        _check("rate_strictly_decreasing_in_r", decreasing,
               r_values=list(r_values), g_values=g_r)
    )

    g0 = dc_rate(base, z)
    shifts_exact = True
    shift_values = []
    for d in (1.0, 2.0, 5.0):
        gd = dc_rate(DCParams(r=1.0, c=0.0, d=d, p_d=base.p_d), z)
        shift_values.append(gd)
        # both sides round the identical sum d + (W0+z)/r, so == is exact
        shifts_exact &= gd == g0 + d
    checks.append(
        _check("difficulty_shift_exact", shifts_exact, g_at_d0=g0, g_shifted=shift_values)
    )

    return {"suite": "corollary", "passed": all(c["passed"] for c in checks), "checks": checks}


def gradient_suite(trials: int = 100, seed: int = 20240801) -> dict:
    """Analytic gradient vs central differences on random (params, theta, data).

    Step per coordinate is 1e-6 * (1 + |theta_j|); mismatch is measured
    relative to max(1, |finite difference|).
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    failures = 0
    for _ in range(trials):
        params = DCParams(
            r=float(rng.uniform(0.5, 3.0)),
            c=float(rng.uniform(0.0, 2.0)),
            d=float(rng.uniform(0.0, 3.0)),
            p_d=float(rng.uniform(0.2, 0.8)),
        )
        theta = rng.normal(0.0, 1.0, size=2)
        data = Dataset(
            features=rng.normal(0.0, 1.0, size=(10, 2)),
            labels=rng.choice((-1, 1), size=10),
        )
        grad = loss_gradient(params, theta, data)
        for j in range(2):
            h = 1e-6 * (1.0 + abs(theta[j]))
            up, down = theta.copy(), theta.copy()
            up[j] += h
            down[j] -= h
            fd = (empirical_loss(params, up, data) - empirical_loss(params, down, data)) / (2 * h)
            rel = abs(grad[j] - fd) / max(1.0, abs(fd))
            worst = max(worst, rel)
            if rel > 1e-6:
                failures += 1
    check = _check(
        "gradient_matches_central_difference",
        failures == 0,
        trials=trials,
        coordinates=trials * 2,
        failures=failures,
        worst_relative_error=worst,
    )
    return {"suite": "gradient", "passed": check["passed"], "checks": [check]}


def run_suites(names, gradient_seed: int = 20240801) -> dict:
    runners = {
        "lambert": lambert_suite,
        "theorem": theorem_suite,
        "corollary": corollary_suite,
        "gradient": lambda: gradient_suite(seed=gradient_seed),
    }
    selected = list(SUITE_NAMES) if "all" in names else list(names)
    suites = [runners[name]() for name in selected]
    return {"passed": all(s["passed"] for s in suites), "suites": suites}
