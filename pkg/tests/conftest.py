"""Shared independent oracles for the test suite.

Everything here deliberately avoids the library's own code paths:
brute-force grids use plain float division and numpy floor, Fourier
coefficients come from trapezoid quadrature, and fits are raw
least-squares. They exist to check the package, so they must not share
its arithmetic."""

from __future__ import annotations

import math

import numpy as np


def brute_force_held_max_error(
    multiplier: float, grid_points: int = 2_000_000
) -> float:
    """Sup of |hold(t) - sin(t)| at 1 Hz by dense sampling, float division
    and all. Independent of the package's rational-arithmetic path."""
    dt = 1.0 / multiplier
    t = np.linspace(0.0, 1.0, grid_points, endpoint=False)
    held = np.sin(2.0 * np.pi * np.floor(t / dt) * dt)
    return float(np.max(np.abs(held - np.sin(2.0 * np.pi * t))))


def brute_force_quantized_max_error(
    bits: int, mode: str = "floor", grid_points: int = 2_000_000
) -> float:
    scale = 2.0 ** (bits - 1)
    s = np.sin(2.0 * np.pi * np.linspace(0.0, 1.0, grid_points, endpoint=False))
    if mode == "floor":
        q = np.floor(s * scale) / scale
    elif mode == "round":
        q = np.floor(s * scale + 0.5) / scale
    else:
        q = np.ceil(s * scale) / scale
    return float(np.max(np.abs(q - s)))


def held_thd_closed_form(multiplier: int) -> tuple[float, float]:
    """Distortion ratio of the ideal sample-hold staircase with an integer
    number of steps per period: sqrt(1/sinc(1/M)**2 - 1)."""
    x = math.pi / multiplier
    sinc = math.sin(x) / x
    ratio = math.sqrt(1.0 / sinc**2 - 1.0)
    return ratio, 20.0 * math.log10(ratio)


def fourier_peak_amplitude_by_quadrature(
    step_values: np.ndarray, harmonic: int, points_per_step: int = 4096
) -> float:
    """Peak amplitude of one harmonic of a staircase by trapezoid quadrature
    of the Fourier integrals over one period."""
    p = len(step_values)
    n = p * points_per_step
    x = (np.arange(n) + 0.5) / n  # midpoint rule over the period
    f = np.asarray(step_values)[(np.arange(n) * p) // n]
    c = np.mean(f * np.cos(2.0 * np.pi * harmonic * x))
    s = np.mean(f * np.sin(2.0 * np.pi * harmonic * x))
    return 2.0 * math.hypot(c, s)


def linear_fit(x, y) -> tuple[float, float, float]:
    """Least-squares slope, intercept, and R**2."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    predicted = slope * x + intercept
    ss_res = float(np.sum((y - predicted) ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r2


def best_rational_by_exhaustion(value, q_max: int) -> tuple[int, int]:
    """Closest p/q with q <= q_max by trying every denominator; ties to
    smaller q, then smaller p. Exact comparison via fractions."""
    from fractions import Fraction

    r = Fraction(value)
    best = None
    for q in range(1, q_max + 1):
        base = (r.numerator * q) // r.denominator
        for p in {max(1, base), max(1, base + 1)}:
            key = (abs(Fraction(p, q) - r), q, p)
            if best is None or key < best:
                best = key
    return best[2], best[1]
