"""Acceptance suite: one criterion per test, each printing a PASS line with
its runtime (run with `pytest -s` to see the lines).  Tolerances are fixed
here and match the package's documented guarantees."""

import math
import time

import numpy as np
import pytest

from uhprange import (DiskQuery, NevanlinnaData, RealMeasure, cauchy_transform,
                      clark_atoms, clark_density, closed_range_report,
                      contraction_check, mc_oracle_measure, phi_from_catalog,
                      phi_from_nevanlinna, phi_identity, phi_translation,
                      preimage_disk_measure, preimage_interval_measure,
                      similarity_certificate, similarity_lower_bound,
                      tail_set_measure)


def _report(name: str, elapsed: float, detail: str = ""):
    tail = f" ({detail})" if detail else ""
    print(f"\ncriterion {name}: PASS in {elapsed:.1f}s{tail}")


@pytest.fixture(scope="module")
def range_reports():
    maps = {
        "identity": phi_identity(),
        "translation_pm": phi_from_nevanlinna(
            NevanlinnaData(1.0, 1.0, RealMeasure.point_mass(0.0))),
        "zloglin0": phi_from_catalog("zloglin", alpha=0.0),
        "sqrt": phi_from_catalog("sqrt"),
        "zlog": phi_from_catalog("zlog"),
    }
    t0 = time.time()
    reports = {name: closed_range_report(phi, with_rayleigh=False)
               for name, phi in maps.items()}
    return reports, time.time() - t0


def test_criterion_1_tail_identity_singular():
    t0 = time.time()
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(25):
        n = int(rng.integers(1, 7))
        pos = np.sort(rng.uniform(-5.0, 5.0, n))
        while len(np.unique(pos)) < n:
            pos = np.sort(rng.uniform(-5.0, 5.0, n))
        w = rng.uniform(0.05, 1.0, n)
        w /= w.sum()
        G = cauchy_transform(RealMeasure.from_atoms(list(zip(pos, w))))
        for y in (0.5, 1.0, 2.0, 10.0):
            for side in ("upper", "lower"):
                worst = max(worst, abs(y * tail_set_measure(G, y, side) - 1.0))
    assert worst < 1e-6, worst
    Gc = cauchy_transform(RealMeasure.cantor(depth=10))
    worst_c = 0.0
    for y in (0.5, 1.0, 2.0, 10.0):
        for side in ("upper", "lower"):
            worst_c = max(worst_c, abs(y * tail_set_measure(Gc, y, side) - 1.0))
    assert worst_c < 1e-3, worst_c
    elapsed = time.time() - t0
    assert elapsed < 10.0
    _report("1 (tail identity, singular measures)", elapsed,
            f"atom err {worst:.2e}, cantor err {worst_c:.2e}")


def test_criterion_2_measure_preservation():
    t0 = time.time()
    rng = np.random.default_rng(202)
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(1, 6))
        pos = np.sort(rng.uniform(-4.0, 4.0, n))
        w = rng.uniform(0.1, 1.5, n)
        rho = RealMeasure.from_atoms(list(zip(pos, w)))
        phi = phi_from_nevanlinna(NevanlinnaData(float(rng.uniform(-3, 3)), 1.0, rho))
        for _ in range(20):
            a = float(rng.uniform(-8.0, 8.0))
            b = a + float(rng.uniform(0.05, 3.0))
            _, m = preimage_interval_measure(phi, (a, b))
            worst = max(worst, abs(m - (b - a)))
    assert worst < 1e-8, worst
    elapsed = time.time() - t0
    assert elapsed < 30.0
    _report("2 (interval-measure preservation)", elapsed, f"max err {worst:.2e}")


def test_criterion_3_mixed_tail_limit():
    t0 = time.time()
    mu = RealMeasure.from_atoms([(0.0, 0.5)]).combined(
        RealMeasure.uniform(0.0, 1.0, mass=0.5))
    G = cauchy_transform(mu)
    checks = {}
    for side in ("upper", "lower"):
        vals = [10.0**k * tail_set_measure(G, 10.0**k, side) for k in range(1, 7)]
        checks[side] = vals
        assert 0.49 <= vals[3] <= 0.51, (side, vals[3])  # y = 1e4
        gaps = [abs(v - 0.5) for v in vals]
        assert all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:])), (side, gaps)
    elapsed = time.time() - t0
    assert elapsed < 10.0
    _report("3 (mixed-measure tail limit)", elapsed,
            f"y=1e4: upper {checks['upper'][3]:.5f}, lower {checks['lower'][3]:.5f}")


def test_criterion_4_spectral_golden_values():
    t0 = time.time()
    phi_s = phi_from_catalog("sqrt")
    for x in (0.0, 0.5, -0.5, 0.9, -0.9):
        got = clark_density(phi_s, 0.0, x)
        expect = 1.0 / (math.pi * math.sqrt(1.0 - x * x))
        assert abs(got - expect) < 1e-6, (x, got, expect)
    phi_z = phi_from_catalog("zlog")
    for t in (0.1, 1.0, 10.0):
        atoms = clark_atoms(phi_z, t + math.log(t))
        assert len(atoms) == 1
        assert abs(atoms[0][1] - t / (1.0 + t)) < 1e-9, (t, atoms)
    elapsed = time.time() - t0
    assert elapsed < 5.0
    _report("4 (spectral-measure golden values)", elapsed)


def test_criterion_5_cross_validation(range_reports):
    reports, elapsed = range_reports
    for name in ("identity", "zloglin0", "translation_pm"):
        rep = reports[name]
        assert rep.cross_gap < 0.05, (name, rep.cross_gap, rep.estimates())
    for name in ("sqrt", "zlog"):
        rep = reports[name]
        assert max(rep.estimates().values()) < 1e-3, (name, rep.estimates())
        trend = rep.B_per_length
        assert trend[-1] <= trend[0] * 1.05 + 1e-12, (name, trend)
    assert elapsed < 300.0
    _report("5 (four-route cross-validation)", elapsed,
            "gaps: " + ", ".join(
                f"{n}={reports[n].cross_gap:.4f}"
                for n in ("identity", "zloglin0", "translation_pm")))


def test_criterion_6_example_verdicts(range_reports):
    reports, elapsed = range_reports
    assert reports["sqrt"].verdict == "not_closed_range"
    assert reports["zlog"].verdict == "not_closed_range"
    assert reports["zloglin0"].verdict == "closed_range"
    _report("6 (example verdicts)", 0.0,
            "sqrt/zlog not_closed_range, zloglin(0) closed_range")


def test_criterion_7_similarity():
    t0 = time.time()
    phi5 = phi_from_catalog("zloglin", alpha=5.0)
    cert = similarity_certificate(phi5)
    assert cert.status == "certified"
    assert cert.eta > 0
    assert math.isfinite(cert.product_bound)
    lb = similarity_lower_bound(phi5, N=4)
    assert lb.minimum >= 1e-3, lb.values
    cert_s = similarity_certificate(phi_from_catalog("sqrt"))
    assert cert_s.status == "hypothesis_failed"
    elapsed = time.time() - t0
    assert elapsed < 300.0
    _report("7 (similarity certificate and powers)", elapsed,
            f"eta {cert.eta:.3f}, product bound {cert.product_bound:.2f}, "
            f"inf_n B {lb.minimum:.4f}")


def test_criterion_8_contraction_sanity():
    t0 = time.time()
    worst = {}
    for name, params in [("sqrt", {}), ("zlog", {}),
                         ("zloglin", {"alpha": 0.0}), ("zloglin", {"alpha": 5.0}),
                         ("sqrtpole", {"alpha": -1.0}), ("sqrtpole", {"alpha": 0.5})]:
        phi = phi_from_catalog(name, **params)
        q = contraction_check(phi, m=20, seed=88)
        worst[phi.name] = q
        assert q <= 1.0 + 1e-6, (phi.name, q)
    elapsed = time.time() - t0
    _report("8 (contraction sanity)", elapsed,
            f"max quotient {max(worst.values()):.8f}")


def test_criterion_9_oracle_concordance():
    t0 = time.time()
    rng = np.random.default_rng(303)
    queries = 0

    def check_interval(phi, a, b, seed):
        det = preimage_interval_measure(phi, (a, b))[1]
        est, err = mc_oracle_measure(phi, (a, b), n=10**6, seed=seed)
        assert abs(est - det) <= 3.0 * max(err, 1e-12), (phi.name, a, b, det, est, err)

    def check_disk(phi, q, seed):
        det = preimage_disk_measure(phi, q)
        est, err = mc_oracle_measure(phi, q, n=10**6, seed=seed)
        assert abs(est - det) <= 3.0 * max(err, 1e-12), (phi.name, q, det, est, err)

    maps = [phi_translation(float(rng.uniform(-2, 2))),
            phi_from_nevanlinna(NevanlinnaData(
                float(rng.uniform(-1, 1)), 1.0, RealMeasure.point_mass(0.0))),
            phi_from_catalog("zloglin", alpha=0.0),
            phi_from_catalog("zloglin", alpha=5.0)]
    for i in range(8):
        phi = maps[i % len(maps)]
        a = float(rng.uniform(-4, 4))
        b = a + float(rng.uniform(0.3, 2.0))
        check_interval(phi, a, b, seed=1000 + i)
        queries += 1
    disk_maps = [phi_from_catalog("sqrt"), phi_from_catalog("sqrtpole", alpha=-1.0),
                 phi_from_catalog("zloglin", alpha=0.0)]
    for i in range(6):
        phi = disk_maps[i % len(disk_maps)]
        a = float(rng.uniform(-2, 2))
        b = a + float(rng.uniform(0.1, 1.0))
        check_disk(phi, DiskQuery(a, b), seed=2000 + i)
        queries += 1
    for i in range(6):
        n = int(rng.integers(2, 5))
        pos = np.sort(rng.uniform(-3, 3, n))
        w = rng.uniform(0.1, 1.0, n)
        w /= w.sum()
        G = cauchy_transform(RealMeasure.from_atoms(list(zip(pos, w))))
        y = float(rng.choice([0.5, 2.0, 10.0]))
        side = "upper" if i % 2 == 0 else "lower"
        det = tail_set_measure(G, y, side)
        est, err = mc_oracle_measure(G, ("tail", y, side), n=10**6, seed=3000 + i)
        assert abs(est - det) <= 3.0 * max(err, 1e-12), (y, side, det, est, err)
        queries += 1
    assert queries == 20
    elapsed = time.time() - t0
    _report("9 (Monte Carlo concordance)", elapsed, "20 queries within 3 sigma")
