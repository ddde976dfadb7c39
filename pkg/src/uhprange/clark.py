"""Spectral probability measures mu_tau attached to a half-plane self-map.

For beta = 1 the resolvent 1/(tau - phi) is the Cauchy transform of a
probability measure.  Its atoms sit at the real-branch solutions of
phi(x) = tau with mass 1/phi'(x); its density is the boundary imaginary
part of the resolvent over pi; the singular-continuous remainder is
estimated from the tail-set limit and cross-checked against the atoms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _quad
from .cauchy import CauchyTransform, g_tau
from .errors import PreconditionError
from .herglotz import PhiFunction, require_contraction
from .levelset import tail_set_measure
from .measures import AcPiece, RealMeasure

#: Roots with boundary derivative above this carry mass below 1e-12 and are
#: absorbed into the singular-continuous estimate instead.
ATOM_DERIVATIVE_MAX = 1e12

#: Atom total within this relative gap of the tail limit means the tail is
#: fully accounted for by atoms and no extra sc mass is reported.
_SC_ACCOUNTING_RTOL = 0.05

_DEFAULT_Y_GRID = tuple(np.geomspace(1e2, 1e6, 9))


@dataclass(frozen=True)
class TsereteliEstimate:
    """Extrapolated limit of y * |{Re G| beyond +-y}| with diagnostics."""

    estimate: float
    y_grid: tuple[float, ...]
    upper: tuple[float, ...]
    lower: tuple[float, ...]
    tail_gap: float
    converged: bool


def singular_mass_tsereteli(G: CauchyTransform,
                            y_grid=None) -> TsereteliEstimate:
    """Estimate the singular mass from both tail families of Re G.

    The grid must span at least three decades.  Each tail sequence
    y * measure is extrapolated in 1/y from its last two entries; the two
    tails are averaged and flagged non-converged when they disagree by
    more than 10 percent at the largest y.
    """
    ys = np.asarray(_DEFAULT_Y_GRID if y_grid is None else y_grid, dtype=float)
    if len(ys) < 3 or not np.all(np.diff(ys) > 0):
        raise PreconditionError("y grid must be increasing with >= 3 points")
    if math.log10(ys[-1] / ys[0]) < 3.0 - 1e-9:
        raise PreconditionError("y grid must span at least three decades")
    upper = np.asarray([y * tail_set_measure(G, y, "upper") for y in ys])
    lower = np.asarray([y * tail_set_measure(G, y, "lower") for y in ys])

    def extrapolate(seq: np.ndarray) -> float:
        ratio = ys[-1] / ys[-2]
        return float((ratio * seq[-1] - seq[-2]) / (ratio - 1.0))

    est_u, est_l = extrapolate(upper), extrapolate(lower)
    estimate = max(0.5 * (est_u + est_l), 0.0)
    gap = abs(upper[-1] - lower[-1])
    converged = gap <= 0.1 * max(upper[-1], lower[-1], 1e-12)
    return TsereteliEstimate(
        estimate=estimate, y_grid=tuple(float(y) for y in ys),
        upper=tuple(map(float, upper)), lower=tuple(map(float, lower)),
        tail_gap=float(gap), converged=bool(converged))


@dataclass(frozen=True)
class ClarkMeasure:
    """Spectral measure at level tau, decomposed."""

    tau: float
    atoms: tuple[tuple[float, float], ...]
    ac_segments: tuple[tuple[float, float], ...]
    density_tables: tuple[tuple[np.ndarray, np.ndarray], ...] = field(repr=False)
    ac_mass: float
    sc_mass_estimate: float
    diagnostics: dict
    measure: RealMeasure = field(repr=False)

    @property
    def atom_mass(self) -> float:
        return sum(m for (_, m) in self.atoms)

    @property
    def total_mass(self) -> float:
        return self.atom_mass + self.ac_mass + self.sc_mass_estimate


def clark_atoms(phi: PhiFunction, tau: float) -> list[tuple[float, float]]:
    """Real-branch roots of phi(x) = tau with their masses 1/phi'(x)."""
    require_contraction(phi)
    atoms = []
    for tbl in phi.branch_tables():
        root = float(tbl.solve(np.asarray([float(tau)]))[0])
        if math.isnan(root):
            continue
        fp = float(phi.derivative(root))
        if 0.0 < fp < ATOM_DERIVATIVE_MAX:
            atoms.append((root, 1.0 / fp))
    atoms.sort()
    return atoms


def clark_density(phi: PhiFunction, tau: float, x) -> np.ndarray:
    """Density of the a.c. part: Im phi / (pi |tau - phi|^2) at x + i0.

    Points where the boundary value equals tau exactly (branch closures,
    a null set) are reported as 0 rather than nan; quadrature never lands
    on them.
    """
    w = phi.boundary(np.atleast_1d(np.asarray(x, dtype=float)))
    denom = np.abs(float(tau) - w) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(denom > 0.0, w.imag / (math.pi * denom), 0.0)
    return out if np.asarray(x).ndim else float(out[0])


def clark_singular_mass(phi: PhiFunction, tau: float, y_grid=None
                        ) -> tuple[float, float, TsereteliEstimate]:
    """(atom mass, sc estimate, tail diagnostics) without density work."""
    atoms = clark_atoms(phi, tau)
    atom_total = sum(m for (_, m) in atoms)
    tser = singular_mass_tsereteli(g_tau(phi, tau), y_grid=y_grid)
    residual = max(tser.estimate - atom_total, 0.0)
    accounted = tser.estimate <= atom_total * (1.0 + _SC_ACCOUNTING_RTOL) + 1e-6
    sc = 0.0 if accounted else residual
    return atom_total, sc, tser


def _density_grid(phi: PhiFunction, segment: tuple[float, float]) -> np.ndarray:
    l, r = segment
    if math.isinf(l) or math.isinf(r):
        tl = -0.5 * math.pi * (1 - 1e-9) if math.isinf(l) else math.atan(l)
        tr = 0.5 * math.pi * (1 - 1e-9) if math.isinf(r) else math.atan(r)
        theta = np.linspace(tl + 1e-6, tr - 1e-6, 513)
        return np.tan(theta)
    w = r - l
    fr = 2.0 ** -np.arange(1, 40, dtype=float)
    xs = np.unique(np.concatenate([
        l + 0.5 * w * fr, r - 0.5 * w * fr,
        np.linspace(l + w / 256, r - w / 256, 257)]))
    return xs[(xs > l) & (xs < r)]


def _tabulate_density(phi: PhiFunction, tau: float, segment: tuple[float, float],
                      mass_tol: float = 1e-6, max_rounds: int = 4
                      ) -> tuple[np.ndarray, np.ndarray]:
    """Density table on a grid refined until its trapezoid mass stabilizes."""
    xs = _density_grid(phi, segment)
    ds = clark_density(phi, tau, xs)
    mass = float(np.trapezoid(ds, xs))
    for _ in range(max_rounds):
        mids = 0.5 * (xs[:-1] + xs[1:])
        xs = np.unique(np.concatenate([xs, mids]))
        ds = clark_density(phi, tau, xs)
        new_mass = float(np.trapezoid(ds, xs))
        if abs(new_mass - mass) < mass_tol:
            break
        mass = new_mass
    return xs, ds


def clark_measure(phi: PhiFunction, tau: float, *, y_grid=None,
                  mass_tol: float = 1e-6) -> ClarkMeasure:
    """Full decomposition of the spectral measure at tau."""
    require_contraction(phi)
    phi._require_branches()
    tau = float(tau)
    atoms = clark_atoms(phi, tau)
    atom_total = sum(m for (_, m) in atoms)

    segments = tuple(phi.nonreal_segments)
    tables = []
    ac_mass = 0.0
    for seg in segments:
        xs, ds = _tabulate_density(phi, tau, seg)
        tables.append((xs, ds))
        if np.isfinite(seg[0]) and np.isfinite(seg[1]):
            # The density may blow up like an inverse square root where the
            # boundary imaginary part vanishes; the substitution removes it.
            ac_mass += float(np.real(_quad.integrate_power_endpoint(
                lambda t: clark_density(phi, tau, t), seg[0], seg[1],
                p_left=-0.5, p_right=-0.5, tol=1e-9)))
        else:
            ac_mass += float(np.real(_quad.integrate_interval(
                lambda t: clark_density(phi, tau, t), seg[0], seg[1], tol=1e-9)))

    _, sc, tser = clark_singular_mass(phi, tau, y_grid=y_grid)

    pieces = []
    for (seg, (xs, ds)) in zip(segments, tables):
        if ds.max(initial=0.0) <= 0.0:
            continue
        finite = np.isfinite(seg[0]) and np.isfinite(seg[1])
        exponent = -0.5 if finite else 0.0
        pieces.append(AcPiece(
            seg[0], seg[1],
            lambda t, phi=phi, tau=tau: clark_density(phi, tau, np.asarray(t, float)),
            left_exponent=exponent, right_exponent=exponent,
            label=f"clark-density(tau={tau})"))
    measure = RealMeasure(atoms=tuple(atoms), ac_pieces=tuple(pieces))

    total = atom_total + ac_mass + sc
    diagnostics = {
        "tsereteli": tser,
        "atom_mass": atom_total,
        "ac_mass": ac_mass,
        "sc_mass": sc,
        "total_mass": total,
        "mass_defect": abs(total - 1.0),
        "normalized": abs(total - 1.0) <= mass_tol,
    }
    return ClarkMeasure(tau=tau, atoms=tuple(atoms), ac_segments=segments,
                        density_tables=tuple(tables), ac_mass=ac_mass,
                        sc_mass_estimate=sc, diagnostics=diagnostics,
                        measure=measure)
