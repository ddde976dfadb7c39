"""Adaptive panel quadrature used throughout the package.

A fixed 15-point Gauss-Legendre rule is applied per panel; a panel is
accepted when bisecting it changes the estimate by less than its share of
the absolute tolerance budget (shares proportional to panel length).
Integrands must be vectorized: ``f`` maps a 1-d ndarray of abscissae to an
ndarray of real or complex values.

Infinite endpoints are folded to a bounded domain with t = tan(theta),
which suits integrands with 1/(1+t^2)-type decay.  Integrable endpoint
singularities of power type are removed with the substitution
t = a + u**(1/(1+p)).
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import QuadratureError

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(15)

#: Relative panel width below which refinement is abandoned.
_WIDTH_FLOOR = 4.0 * np.finfo(float).eps


def _gauss_batch(f: Callable, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """15-point Gauss value of f on each panel [lo_i, hi_i]."""
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    x = c[:, None] + h[:, None] * _NODES[None, :]
    y = np.asarray(f(x.ravel())).reshape(x.shape)
    return h * (y @ _WEIGHTS)


def integrate_interval(
    f: Callable,
    a: float,
    b: float,
    tol: float = 1e-10,
    seeds: Sequence[float] = (),
    max_panels: int = 10**6,
) -> complex:
    """Integrate f over (a, b); endpoints may be +-inf.

    ``seeds`` are interior points forced to be panel boundaries, which
    helps when the integrand has known kinks or sharp windows.
    """
    if a == b:
        return 0.0
    if a > b:
        return -integrate_interval(f, b, a, tol=tol, seeds=seeds, max_panels=max_panels)
    if math.isinf(a) or math.isinf(b):
        ta = -0.5 * math.pi if math.isinf(a) else math.atan(a)
        tb = 0.5 * math.pi if math.isinf(b) else math.atan(b)
        mapped_seeds = [math.atan(s) for s in seeds if np.isfinite(s)]

        def g(theta: np.ndarray) -> np.ndarray:
            t = np.tan(theta)
            return np.asarray(f(t)) * (1.0 + t * t)

        return integrate_interval(g, ta, tb, tol=tol, seeds=mapped_seeds, max_panels=max_panels)

    edges = [a] + sorted({float(s) for s in seeds if a < s < b}) + [b]
    lo = np.asarray(edges[:-1], dtype=float)
    hi = np.asarray(edges[1:], dtype=float)
    vals = _gauss_batch(f, lo, hi)
    budget = tol * (hi - lo) / (b - a)

    total = 0.0 + 0.0j
    abs_accum = 0.0
    n_panels = len(lo)
    while len(lo):
        if n_panels > max_panels:
            raise QuadratureError(
                f"panel budget {max_panels} exhausted on ({a}, {b}); "
                f"{len(lo)} panels still above tolerance"
            )
        mid = 0.5 * (lo + hi)
        child_lo = np.concatenate([lo, mid])
        child_hi = np.concatenate([mid, hi])
        child_vals = _gauss_batch(f, child_lo, child_hi)
        refined = child_vals[: len(lo)] + child_vals[len(lo):]
        err = np.abs(vals - refined)
        width = hi - lo
        scale = np.maximum(np.maximum(np.abs(lo), np.abs(hi)), 1.0)
        # Differences at the rounding level of the integral's absolute mass
        # cannot be refined away; the effective tolerance is floored there.
        l1 = abs_accum + float(np.sum(np.abs(vals)))
        noise = (64.0 * np.finfo(float).eps * (np.abs(vals) + np.abs(refined))
                 + 128.0 * np.finfo(float).eps * l1)
        done = (err <= np.maximum(budget, noise)) | (width < _WIDTH_FLOOR * scale)
        total += refined[done].sum()
        abs_accum += float(np.sum(np.abs(refined[done])))
        keep = ~done
        lo = np.concatenate([lo[keep], mid[keep]])
        hi = np.concatenate([mid[keep], hi[keep]])
        vals = np.concatenate([child_vals[: len(keep)][keep], child_vals[len(keep):][keep]])
        budget = np.concatenate([budget[keep], budget[keep]]) * 0.5
        n_panels += 2 * int(keep.sum())

    if abs(total.imag) < 1e-300:
        return total.real
    return total


def integrate_real_line(f: Callable, tol: float = 1e-10,
                        seeds: Sequence[float] = (), max_panels: int = 10**6) -> complex:
    """Integrate f over the whole real line (tan-folded)."""
    return integrate_interval(f, -math.inf, math.inf, tol=tol, seeds=seeds,
                              max_panels=max_panels)


def integrate_line_relative(
    f: Callable,
    rel_tol: float = 1e-9,
    seeds: Sequence[float] = (),
    max_rounds: int = 4,
) -> float:
    """Line integral of a nonnegative integrand to a relative tolerance.

    The absolute tolerance an adaptive pass needs depends on the unknown
    magnitude of the result, so passes are repeated with the tolerance
    re-anchored to the previous estimate until it is consistent.
    """
    # Coarse magnitude probe so the first pass is not hopeless for
    # integrands spanning many orders of magnitude.
    probe = np.tan(np.linspace(-0.5 * math.pi + 1e-3, 0.5 * math.pi - 1e-3, 257))
    if len(seeds):
        near = np.asarray([s + d for s in seeds for d in (-1e-3, 0.0, 1e-3)], dtype=float)
        probe = np.concatenate([probe, near])
    fmax = float(np.max(np.abs(f(probe))))
    estimate = max(fmax, 1e-300)
    for _ in range(max_rounds):
        abs_tol = max(rel_tol * estimate, 1e-300)
        value = integrate_interval(f, -math.inf, math.inf, tol=abs_tol, seeds=seeds)
        value = float(np.real(value))
        if abs_tol <= rel_tol * max(abs(value), 1e-300) * 1.5:
            return value
        estimate = max(abs(value), 1e-300)
    return value


def integrate_power_endpoint(
    f: Callable,
    a: float,
    b: float,
    p_left: float = 0.0,
    p_right: float = 0.0,
    tol: float = 1e-10,
    max_panels: int = 10**6,
) -> complex:
    """Integrate f over finite (a, b) where f ~ (t-a)^p_left near a and
    ~ (b-t)^p_right near b, with p > -1 (integrable).

    Negative exponents are removed by substituting t = a + u**m with
    m = 1/(1+p), after which the transformed integrand is bounded.
    """
    if not (p_left > -1.0 and p_right > -1.0):
        raise QuadratureError("endpoint exponents must be > -1 for integrability")
    mid = 0.5 * (a + b)
    total = 0.0 + 0.0j

    def one_side(left_end: float, other: float, p: float, sign: float) -> complex:
        if p >= 0.0:
            lo, hi = (left_end, other) if sign > 0 else (other, left_end)
            return integrate_interval(f, lo, hi, tol=0.5 * tol, max_panels=max_panels)
        m = 1.0 / (1.0 + p)

        def g(u: np.ndarray) -> np.ndarray:
            t = left_end + sign * u**m
            return np.asarray(f(t)) * (m * u ** (m - 1.0))

        umax = abs(other - left_end) ** (1.0 / m)
        return integrate_interval(g, 0.0, umax, tol=0.5 * tol, max_panels=max_panels)

    total += one_side(a, mid, p_left, +1.0)
    total += one_side(b, mid, p_right, -1.0)
    if abs(total.imag) < 1e-300:
        return total.real
    return total


def pv_cauchy(f: Callable, a: float, b: float, x: float, tol: float = 1e-10) -> float:
    """Principal value of integral f(t)/(t-x) dt over finite (a, b), a < x < b.

    Splitting off f(x) leaves the bounded difference quotient
    (f(t)-f(x))/(t-x) plus the elementary principal value
    f(x)*log((b-x)/(x-a)), so no panel ever straddles a blowup.
    """
    fx = float(np.asarray(f(np.asarray([x])))[0])

    def quotient(t: np.ndarray) -> np.ndarray:
        d = t - x
        out = (np.asarray(f(t)) - fx) / np.where(d == 0.0, 1.0, d)
        return np.where(d == 0.0, 0.0, out)

    val = integrate_interval(quotient, a, b, tol=tol, seeds=[x])
    val += fx * math.log((b - x) / (x - a))
    return float(np.real(val))


def fixed_panel_sums(f: Callable, lo: Iterable[float], hi: Iterable[float]) -> np.ndarray:
    """Non-adaptive 15-point Gauss values on many panels at once."""
    lo = np.asarray(list(lo), dtype=float)
    hi = np.asarray(list(hi), dtype=float)
    if len(lo) == 0:
        return np.zeros(0)
    return _gauss_batch(f, lo, hi)
