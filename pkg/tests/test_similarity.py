import math

import numpy as np
import pytest

from uhprange import (PreconditionError, QueryGrid, backward_orbit,
                      contraction_check, phi_from_catalog, phi_identity,
                      phi_translation, similarity_certificate,
                      similarity_lower_bound)


def test_zloglin5_certified():
    phi = phi_from_catalog("zloglin", alpha=5.0)
    cert = similarity_certificate(phi)
    assert cert.status == "certified"
    assert cert.direction == "up"
    assert cert.c1 < -1.0 < 1.0 < cert.d1
    assert cert.eta > 0
    assert math.isfinite(cert.product_bound) and cert.product_bound >= 1.0
    assert cert.orbit_gap_ok


def test_zloglin5_orbit_gaps_and_product():
    phi = phi_from_catalog("zloglin", alpha=5.0)
    cert = similarity_certificate(phi)
    orbit = backward_orbit(phi, 10.0, 8, cert)
    seq = [10.0] + orbit
    gaps = [a - b for a, b in zip(seq, seq[1:])]
    # at most one step (the branch jump) may fall below eta
    assert sum(1 for g in gaps if g < cert.eta - 1e-9) <= 1
    assert all(x < cert.c1 or x > cert.d1 for x in orbit)
    product = float(np.prod([phi.derivative(t) for t in orbit]))
    assert product <= cert.product_bound


def test_sqrt_hypothesis_failed():
    cert = similarity_certificate(phi_from_catalog("sqrt"))
    assert cert.status == "hypothesis_failed"


def test_sqrtpole_cases():
    cert = similarity_certificate(phi_from_catalog("sqrtpole", alpha=-1.0))
    assert cert.status == "certified"
    assert cert.direction == "down"
    # one-sided limits flanking the support: alpha + 1/2 from the left,
    # pole blow-down from the right
    assert abs(cert.details["limit_left_of_support"] + 0.5) < 1e-4
    assert cert.details["limit_right_of_support"] == -math.inf
    # small positive alpha: hypothesis holds (pole limit is -inf) but no
    # escape step exists, matching the repelling-fixed-point obstruction
    cert2 = similarity_certificate(phi_from_catalog("sqrtpole", alpha=0.5))
    assert cert2.status == "alpha_too_small"


def test_zloglin0_alpha_too_small():
    assert similarity_certificate(
        phi_from_catalog("zloglin", alpha=0.0)).status == "alpha_too_small"


def test_zlog_unbounded_support_rejected():
    with pytest.raises(PreconditionError):
        similarity_certificate(phi_from_catalog("zlog"))


def test_translation_edge_case():
    phi = phi_translation(2.0)
    cert = similarity_certificate(phi)
    assert cert.status == "certified"
    assert abs(cert.eta - 2.0) < 1e-12
    assert cert.product_bound == 1.0
    orbit = backward_orbit(phi, 0.0, 3, cert)
    assert np.allclose(orbit, [-2.0, -4.0, -6.0], atol=1e-9)


def test_identity_not_constructible():
    cert = similarity_certificate(phi_identity())
    assert cert.status == "alpha_too_small"


def test_lower_bound_identity():
    lb = similarity_lower_bound(phi_identity(), N=6,
                                grid=QueryGrid((0.0, 1.0), (1.0, 0.125)))
    assert lb.max_depth == 6
    assert all(abs(v - 1.0) < 1e-9 for v in lb.values)


def test_lower_bound_zloglin5():
    lb = similarity_lower_bound(phi_from_catalog("zloglin", alpha=5.0), N=4)
    assert lb.max_depth == 4
    assert lb.minimum >= 1e-3


def test_lower_bound_sqrt_decays():
    grid = QueryGrid((0.0,), (1.0, 2.0**-4, 2.0**-10))
    lb = similarity_lower_bound(phi_from_catalog("sqrt"), N=2, grid=grid)
    assert lb.values[0] < 1e-3
    assert lb.values[1] <= lb.values[0] + 1e-9


def test_contraction_identity_translation():
    assert abs(contraction_check(phi_identity(), m=5, seed=0) - 1.0) < 1e-8
    assert abs(contraction_check(phi_translation(4.0), m=5, seed=0) - 1.0) < 1e-7


def test_contraction_zloglin():
    assert contraction_check(phi_from_catalog("zloglin", alpha=0.0),
                             m=20, seed=0) <= 1.0 + 1e-6
