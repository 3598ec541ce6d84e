"""Shared test oracles and helpers."""

import math

import numpy as np
import pytest

from dc_optlab import DCParams


def w0_bisect(x: float, lo: float = -1.0, hi: float = 800.0) -> float:
    """Independent Lambert-W oracle: plain bisection on w*e^w = x.

    Deliberately shares nothing with the package implementation (no series,
    no Halley); converges to the last representable double.
    """
    def f(w):
        return w * math.exp(w) - x

    if f(lo) > 0:
        raise ValueError("x below the branch point")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if f(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return lo


def random_params(rng: np.random.Generator) -> DCParams:
    """Random valid parameter bundle over the sweep-protocol ranges."""
    return DCParams(
        r=float(rng.uniform(0.1, 12.0)),
        c=float(rng.uniform(0.0, 12.0)),
        d=float(rng.uniform(0.0, 5.0)),
        p_d=float(rng.uniform(0.1, 0.9)),
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)
