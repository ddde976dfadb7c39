import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uhprange import IntervalSet, PreconditionError, RealMeasure


def half_half():
    return RealMeasure.from_atoms([(0.0, 0.5), (1.0, 0.5)])


def test_total_mass_atoms():
    assert half_half().total_mass() == 1.0


def test_total_mass_uniform():
    assert abs(RealMeasure.uniform(0.0, 1.0).total_mass() - 1.0) < 1e-12


def test_total_mass_cantor():
    assert abs(RealMeasure.cantor(depth=12).total_mass() - 1.0) < 1e-15


def test_singular_mass_decomposition():
    mu = RealMeasure.from_atoms([(0.0, 0.5)]).combined(
        RealMeasure.uniform(0.0, 1.0, mass=0.5))
    assert mu.singular_mass() == 0.5
    assert RealMeasure.uniform(0.0, 1.0).singular_mass() == 0.0
    both = RealMeasure.cantor().combined(RealMeasure.uniform(2.0, 3.0))
    assert both.singular_mass() == 1.0


def test_cdf_atoms():
    assert half_half().cdf(0.5) == 0.5
    assert half_half().cdf(1.0) == 1.0  # right-continuous at the atom
    assert half_half().cdf(-0.1) == 0.0


def test_cdf_uniform():
    assert abs(RealMeasure.uniform(0.0, 1.0).cdf(0.25) - 0.25) < 1e-11


def test_cdf_cantor_golden():
    # value at the first gap edge, from the ternary recursion
    mu = RealMeasure.cantor(depth=12)
    assert abs(mu.cdf(1.0 / 3.0) - 0.5) < 1e-12
    assert abs(mu.cdf(0.5) - 0.5) < 1e-15


def test_integrate_atom_resolvent():
    mu = RealMeasure.point_mass(0.0)
    assert abs(mu.integrate(lambda t: 1.0 / (t - 1j)) - 1j) < 1e-14


def test_integrate_uniform_mean():
    assert abs(RealMeasure.uniform(0.0, 1.0).integrate(lambda t: t) - 0.5) < 1e-11


def test_integrate_two_atoms_resolvent():
    # 1/2 * 1/(0-2i) + 1/2 * 1/(1-2i), by hand
    val = half_half().integrate(lambda t: 1.0 / (t - 2j))
    assert abs(val - (0.1 + 0.45j)) < 1e-14


def test_cdf_reaches_total_mass():
    mu = RealMeasure.from_atoms([(-1.0, 0.25)]).combined(
        RealMeasure.uniform(0.0, 2.0, mass=0.5)).combined(
        RealMeasure.cantor(3.0, 4.0, mass=0.25, depth=10))
    hull = mu.support_hull()
    assert abs(mu.cdf(hull[1] + 1.0) - mu.total_mass()) < 1e-10
    xs = np.linspace(hull[0] - 1, hull[1] + 1, 101)
    vals = [mu.cdf(x) for x in xs]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


def test_integrate_one_is_total_mass():
    mu = RealMeasure.from_atoms([(0.5, 0.3)]).combined(
        RealMeasure.uniform(-1.0, 0.0, mass=0.4)).combined(
        RealMeasure.cantor(1.0, 2.0, mass=0.3, depth=12))
    val = mu.integrate(lambda t: np.ones_like(t))
    assert abs(val - mu.total_mass()) < 1e-10


@settings(max_examples=25, deadline=None)
@given(a=st.floats(-3, 3), b=st.floats(-3, 3))
def test_integrate_linearity(a, b):
    mu = RealMeasure.from_atoms([(0.0, 0.5), (2.0, 0.1)]).combined(
        RealMeasure.uniform(0.0, 1.0, mass=0.4))
    f = lambda t: np.sin(t)
    g = lambda t: 1.0 / (1.0 + t * t)
    lhs = mu.integrate(lambda t: a * f(t) + b * g(t))
    rhs = a * mu.integrate(f) + b * mu.integrate(g)
    assert abs(lhs - rhs) < 1e-9


def test_validation_errors():
    with pytest.raises(PreconditionError):
        RealMeasure.from_atoms([(0.0, 1.0), (0.0, 0.5)])  # duplicate position
    with pytest.raises(PreconditionError):
        RealMeasure.from_atoms([(0.0, -1.0)])  # negative mass
    with pytest.raises(PreconditionError):
        RealMeasure.cantor(middle=1.5)


def test_sc_piece_structure():
    piece = RealMeasure.cantor(depth=8).sc_pieces[0]
    gaps = piece.gaps(3)
    assert len(gaps) == 7  # 2^3 - 1 removed intervals
    pos, w = piece.atomize(8)
    assert len(pos) == 256 and abs(w.sum() - 1.0) < 1e-15
    # CDF is flat across the central gap
    assert piece.cdf(0.4) == piece.cdf(0.6)


def test_interval_set_build():
    s = IntervalSet.build([(0.0, 1.0), (0.5, 2.0), (3.0, 3.0), (4.0, 5.0)])
    assert s.intervals == ((0.0, 2.0), (4.0, 5.0))
    assert abs(s.total_length - 3.0) < 1e-15
