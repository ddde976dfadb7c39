"""Cauchy transforms G(z) = integral d(mu)(t) / (t - z).

Two sources are supported: an explicit measure, or the resolvent family
G_tau(z) = 1/(tau - phi(z)) attached to a half-plane self-map, which is
itself the Cauchy transform of a probability measure when beta = 1.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from . import _quad
from .errors import DomainError, PreconditionError
from .herglotz import PhiFunction, require_contraction
from .measures import RealMeasure

_SC_EVAL_LEVEL = 12


class CauchyTransform:
    """Callable transform, together with enough structure for level sets."""

    def __init__(self, *, measure: RealMeasure | None = None,
                 phi: PhiFunction | None = None, tau: float | None = None):
        if (measure is None) == (phi is None):
            raise PreconditionError("provide exactly one of measure or (phi, tau)")
        self.measure = measure
        self.phi = phi
        self.tau = tau
        if measure is not None:
            self.kind = "measure"
            self._pos, self._w = measure.point_masses(_SC_EVAL_LEVEL)
            self.total_mass = measure.total_mass()
        else:
            self.kind = "phi_tau"
            require_contraction(phi)
            self.total_mass = 1.0

    # -- evaluation -----------------------------------------------------------

    def eval(self, z):
        """Value at z with Im z > 0."""
        arr = np.atleast_1d(np.asarray(z, dtype=complex))
        scalar = np.asarray(z).ndim == 0
        if np.any(arr.imag <= 0):
            raise DomainError("eval requires Im z > 0")
        if self.kind == "phi_tau":
            out = 1.0 / (self.tau - self.phi._eval_complex(arr))
        else:
            out = self._measure_eval(arr)
        return complex(out[0]) if scalar else out

    def __call__(self, z):
        return self.eval(z)

    def _measure_eval(self, z: np.ndarray) -> np.ndarray:
        out = np.zeros(z.shape, dtype=complex)
        if len(self._pos):
            t, w = self._pos, self._w
            chunk = max(1, 4_000_000 // max(1, len(t)))
            flat = z.ravel()
            res = np.empty(flat.shape, dtype=complex)
            for i in range(0, len(flat), chunk):
                zz = flat[i:i + chunk][:, None]
                with np.errstate(divide="ignore", invalid="ignore"):
                    res[i:i + chunk] = (w[None, :] / (t[None, :] - zz)).sum(axis=1)
            out = out + res.reshape(z.shape)
        for piece in self.measure.ac_pieces:
            flat = z.ravel()
            vals = np.empty(flat.shape, dtype=complex)
            for j, zz in enumerate(flat):
                vals[j] = piece.integrate(lambda t: 1.0 / (t - zz), tol=1e-11)
            out = out + vals.reshape(z.shape)
        return out

    def real_value(self, x, tol: float = 1e-10) -> np.ndarray:
        """G at real x lying off the support (where the integral is proper)."""
        if self.kind == "phi_tau":
            arr = np.atleast_1d(np.asarray(x, dtype=float))
            w = self.phi.boundary(arr)
            out = np.real(1.0 / (self.tau - w))
            return out if np.asarray(x).ndim else float(out[0])
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        scalar = np.asarray(x).ndim == 0
        out = np.zeros(arr.shape, dtype=float)
        if len(self._pos):
            t, w = self._pos, self._w
            with np.errstate(divide="ignore", invalid="ignore"):
                out += (w[None, :] / (t[None, :] - arr[:, None])).sum(axis=1)
        for piece in self.measure.ac_pieces:
            for j, xx in enumerate(arr):
                if piece.left <= xx <= piece.right:
                    raise DomainError(
                        f"real evaluation at {xx} inside the support ({piece.left}, {piece.right}); "
                        "use boundary_re for principal values")
                out[j] += float(np.real(piece.integrate(lambda t: 1.0 / (t - xx), tol=tol)))
        return float(out[0]) if scalar else out

    def boundary_re(self, x: float) -> float:
        """Re G(x + i0); principal value inside absolutely continuous support."""
        if self.kind == "phi_tau":
            return float(np.real(1.0 / (self.tau - self.phi.boundary(float(x)))))
        x = float(x)
        total = 0.0
        if len(self._pos):
            d = self._pos - x
            if np.any(d == 0.0):
                raise DomainError(f"Re G undefined exactly at a point mass ({x})")
            total += float(np.sum(self._w / d))
        for piece in self.measure.ac_pieces:
            if piece.left < x < piece.right:
                total += _quad.pv_cauchy(piece.density, piece.left, piece.right, x, tol=1e-10)
            else:
                total += float(np.real(piece.integrate(lambda t: 1.0 / (t - x), tol=1e-10)))
        return total

    # -- structure used by level-set code --------------------------------------

    def point_masses(self) -> tuple[np.ndarray, np.ndarray]:
        if self.kind != "measure":
            raise PreconditionError("point masses only available for measure sources")
        return self._pos, self._w

    def ac_intervals(self) -> list[tuple[float, float]]:
        if self.kind != "measure":
            raise PreconditionError("ac intervals only available for measure sources")
        return [(p.left, p.right) for p in self.measure.ac_pieces]


def cauchy_transform(mu: RealMeasure) -> CauchyTransform:
    """Cauchy transform of a finite positive measure."""
    return CauchyTransform(measure=mu)


def g_tau(phi: PhiFunction, tau: float) -> CauchyTransform:
    """The transform 1/(tau - phi); a probability Cauchy transform for beta = 1."""
    return CauchyTransform(phi=phi, tau=float(tau))
