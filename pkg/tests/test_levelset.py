import math

import numpy as np
import pytest

from uhprange import (DiskQuery, NevanlinnaData, PreconditionError, RealMeasure,
                      WindowError, cauchy_transform, g_tau, mc_oracle_measure,
                      phi_from_catalog, phi_from_nevanlinna, phi_identity,
                      phi_translation, preimage_disk_measure,
                      preimage_interval_measure, tail_set_measure)

GOLDEN = (1 + math.sqrt(5)) / 2


def delta_map():
    return phi_from_nevanlinna(NevanlinnaData(0.0, 1.0, RealMeasure.point_mass(0.0)))


def test_identity_interval():
    s, total = preimage_interval_measure(phi_identity(), (0.0, 1.0))
    assert abs(total - 1.0) < 1e-12
    assert len(s) == 1


def test_point_mass_map_interval_exact():
    # x - 1/x = y has roots (y +- sqrt(y^2+4))/2; preimage of (0,1) has length 1
    s, total = preimage_interval_measure(delta_map(), (0.0, 1.0))
    assert abs(total - 1.0) < 1e-10
    (l1, r1), (l2, r2) = s.intervals
    assert abs(r2 - GOLDEN) < 1e-10 and abs(l2 - 1.0) < 1e-10
    assert abs(l1 + 1.0) < 1e-10 and abs(r1 + (GOLDEN - 1.0)) < 1e-10


def test_sqrt_interval_small():
    eps = 0.01
    _, total = preimage_interval_measure(phi_from_catalog("sqrt"), (-eps, eps))
    assert abs(total - 2.0 * (math.sqrt(1 + eps * eps) - 1.0)) < 1e-10


def test_identity_disk_equals_interval():
    assert abs(preimage_disk_measure(phi_identity(), DiskQuery(0.0, 1.0)) - 1.0) < 1e-10


def test_sqrt_disk_closed_form():
    eps = 0.01
    m = preimage_disk_measure(phi_from_catalog("sqrt"), DiskQuery(-eps, eps))
    expect = 2.0 * (math.sqrt(1 + eps * eps) - 1.0) + 2.0 * (1.0 - math.sqrt(1 - eps * eps))
    assert abs(m - expect) < 1e-8


def test_zloglin_disk_positive_floor():
    phi = phi_from_catalog("zloglin", alpha=0.0)
    for a in (-2.0, 0.25, 1.75):
        m = preimage_disk_measure(phi, DiskQuery(a, a + 0.5))
        assert m >= 0.5 * 0.25  # ratio stays clear of zero


def test_additivity():
    for phi in (phi_from_catalog("zloglin", alpha=0.0), delta_map()):
        _, m1 = preimage_interval_measure(phi, (0.0, 0.7))
        _, m2 = preimage_interval_measure(phi, (0.7, 1.3))
        _, m3 = preimage_interval_measure(phi, (0.0, 1.3))
        assert abs(m1 + m2 - m3) < 1e-9


def test_monotone_and_interval_below_disk():
    phi = phi_from_catalog("sqrt")
    _, small = preimage_interval_measure(phi, (0.2, 0.6))
    _, big = preimage_interval_measure(phi, (0.1, 0.9))
    assert small <= big
    for (a, b) in [(-0.01, 0.01), (0.2, 0.6), (-3.0, 2.0)]:
        _, mi = preimage_interval_measure(phi, (a, b))
        md = preimage_disk_measure(phi, DiskQuery(a, b))
        assert mi <= md + 1e-12


def test_tail_point_mass():
    G = cauchy_transform(RealMeasure.point_mass(0.0))
    assert abs(tail_set_measure(G, 2.0, "upper") - 0.5) < 1e-10
    assert abs(tail_set_measure(G, 2.0, "lower") - 0.5) < 1e-10


def test_tail_two_atoms_unit():
    # crossings at +-1/sqrt(2) from the quadratic; total is exactly 1/y
    G = cauchy_transform(RealMeasure.from_atoms([(0.0, 0.5), (1.0, 0.5)]))
    assert abs(tail_set_measure(G, 1.0, "upper") - 1.0) < 1e-8
    assert abs(tail_set_measure(G, 1.0, "lower") - 1.0) < 1e-8


def test_tail_uniform_closed_form():
    G = cauchy_transform(RealMeasure.uniform(0.0, 1.0))
    y = 10.0
    got = tail_set_measure(G, y, "upper")
    expect = 1.0 / (math.exp(y) - 1.0) + 1.0 / (math.exp(y) + 1.0)
    assert abs(got - expect) < 1e-10
    assert y * got < 1e-3


def test_boole_random_atoms_and_cantor():
    rng = np.random.default_rng(2)
    for _ in range(5):
        n = int(rng.integers(1, 6))
        pos = np.sort(rng.uniform(-4, 4, n))
        w = rng.uniform(0.05, 1.0, n)
        w /= w.sum()
        G = cauchy_transform(RealMeasure.from_atoms(list(zip(pos, w))))
        for y in (0.5, 1.0, 2.0, 10.0):
            assert abs(y * tail_set_measure(G, y, "upper") - 1.0) < 1e-6
            assert abs(y * tail_set_measure(G, y, "lower") - 1.0) < 1e-6
    Gc = cauchy_transform(RealMeasure.cantor(depth=10))
    for y in (0.5, 2.0):
        assert abs(y * tail_set_measure(Gc, y, "upper") - 1.0) < 1e-3


def test_measure_preservation_random_atoms():
    rng = np.random.default_rng(4)
    rho = RealMeasure.from_atoms([(-1.0, 0.8), (0.5, 0.3), (2.0, 0.5)])
    phi = phi_from_nevanlinna(NevanlinnaData(0.7, 1.0, rho))
    for _ in range(50):
        a = rng.uniform(-6, 6)
        b = a + rng.uniform(0.05, 2.0)
        _, m = preimage_interval_measure(phi, (a, b))
        assert abs(m - (b - a)) < 1e-8


def test_disk_identity_for_resolvent():
    phi = phi_from_catalog("zloglin", alpha=0.0)
    for tau, y in [(0.0, 1.0), (0.4, 25.0)]:
        lhs = tail_set_measure(g_tau(phi, tau), y, "lower")
        rhs = preimage_disk_measure(phi, DiskQuery(tau, tau + 1.0 / y))
        assert abs(lhs - rhs) < 1e-8


def test_disk_identity_cross_path():
    # translation map: the spectral measure is a point mass, so the tail of
    # its transform and the disk preimage are comparable through independent code
    alpha, tau, y = 1.5, 3.0, 8.0
    G = cauchy_transform(RealMeasure.point_mass(tau - alpha))
    lhs = tail_set_measure(G, y, "lower")
    rhs = preimage_disk_measure(phi_translation(alpha), DiskQuery(tau, tau + 1.0 / y))
    assert abs(lhs - rhs) < 1e-8
    assert abs(lhs - 1.0 / y) < 1e-9


def test_tail_side_validation():
    G = cauchy_transform(RealMeasure.point_mass(0.0))
    with pytest.raises(PreconditionError):
        tail_set_measure(G, -1.0, "upper")
    with pytest.raises(PreconditionError):
        tail_set_measure(G, 1.0, "sideways")


def test_mc_identity():
    est, err = mc_oracle_measure(phi_identity(), (0.0, 1.0), n=10**6, seed=0,
                                 window=(-2.0, 3.0))
    assert err < 0.003
    assert abs(est - 1.0) <= 3 * err


def test_mc_point_mass_map():
    est, err = mc_oracle_measure(delta_map(), (0.0, 1.0), n=10**6, seed=3)
    assert abs(est - 1.0) <= 3 * err


def test_mc_disk_agrees_with_deterministic():
    phi = phi_from_catalog("sqrt")
    q = DiskQuery(-0.01, 0.01)
    det = preimage_disk_measure(phi, q)
    est, err = mc_oracle_measure(phi, q, n=10**6, seed=5)
    assert abs(est - det) <= 3 * err


def test_mc_tail_atoms():
    G = cauchy_transform(RealMeasure.from_atoms([(0.0, 0.5), (1.0, 0.5)]))
    est, err = mc_oracle_measure(G, ("tail", 2.0, "upper"), n=10**6, seed=9)
    det = tail_set_measure(G, 2.0, "upper")
    assert abs(est - det) <= 3 * err


def test_mc_window_too_small():
    with pytest.raises(WindowError):
        mc_oracle_measure(phi_identity(), (0.0, 1.0), n=10**5, seed=0,
                          window=(0.5, 2.0))


from hypothesis import given, settings  # noqa: E402
from hypothesis import strategies as st  # noqa: E402

_DELTA_MAP = delta_map()


@settings(max_examples=30, deadline=None)
@given(a=st.floats(-5, 5), width=st.floats(0.05, 3), split=st.floats(0.1, 0.9))
def test_preimage_additivity_property(a, width, split):
    b = a + width
    m = a + split * width
    _, m1 = preimage_interval_measure(_DELTA_MAP, (a, m))
    _, m2 = preimage_interval_measure(_DELTA_MAP, (m, b))
    _, m3 = preimage_interval_measure(_DELTA_MAP, (a, b))
    assert abs(m1 + m2 - m3) < 1e-9


@settings(max_examples=30, deadline=None)
@given(a=st.floats(-4, 4), width=st.floats(0.05, 2), pad=st.floats(0.01, 2))
def test_preimage_monotonicity_property(a, width, pad):
    phi = _DELTA_MAP
    _, inner = preimage_interval_measure(phi, (a, a + width))
    _, outer = preimage_interval_measure(phi, (a - pad, a + width + pad))
    assert inner <= outer + 1e-12
