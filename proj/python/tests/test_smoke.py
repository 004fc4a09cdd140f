import cmath
import math

import numpy as np
import pytest

import korteweg as kw


def test_derived_constants():
    dc = kw.derive_constants(kw.MaterialParams(1, 1, 2))
    assert dc.eta_w == pytest.approx(-0.25)
    assert dc.sigma_w == pytest.approx(math.pi / 4)
    assert dc.s1 == pytest.approx(0.5 + 0.5j)


def test_validate_names_failures():
    assert set(kw.validate(kw.MaterialParams(1, 1, 1))) == {"EtaVanishes", "KappaEqualsMuNu"}
    with pytest.raises(kw.KortewegError, match="EtaVanishes"):
        kw.derive_constants(kw.MaterialParams(1, 1, 1))


def test_symbols():
    p = kw.MaterialParams(1, 1, 2)
    assert kw.symbol_P(1.0, 1.0, p) == pytest.approx(5.0)
    assert kw.omega_lambda(0.0, 1j, 1.0) == pytest.approx(cmath.exp(1j * math.pi / 4))
    t1, t2 = kw.roots_t(0.0, 1.0, p)
    assert t1 == pytest.approx(0.77688698 + 0.32179713j, abs=1e-8)
    direct, factored = kw.lopatinskii_det(0.7, 2.0 + 1.0j, p)
    assert abs(direct - factored) <= 1e-12 * abs(direct)
    assert kw.kernel_M(0, 1.0, 1.5, 1.0, 2.0, p).real == pytest.approx(-0.23254416)


def test_scan_positive():
    r = kw.scan("P", math.pi / 3, 0.0, kw.MaterialParams(1, 1, 2), 12, 5, 12)
    assert r["C"] > 0


def test_solve_whole_single_mode():
    p = kw.MaterialParams(1, 1, 2)
    n = 16
    x = np.arange(n) * 2 * np.pi / n
    X, Y = np.meshgrid(x, x, indexing="ij")
    d = np.exp(1j * (X + 2 * Y))
    zero = np.zeros_like(d)
    lam = 3 - 2j
    rho, u, res = kw.solve_whole(d, [zero, zero], lam, p)
    factor = (lam + 2 * 5) / kw.symbol_P(5.0, lam, p)
    assert np.max(np.abs(rho - factor * d)) < 1e-12
    assert res["relative"] < 1e-10


def test_solve_reduced_residual():
    p = kw.MaterialParams(1, 1, 2)
    n = 32
    x = np.arange(n) * 2 * np.pi / n
    g = [np.cos(x) + 0j, np.sin(2 * x) + 0.5j]
    h = np.exp(1j * x)
    comps, res = kw.solve_reduced(g, h, 4 + 1j, p, [0.0, 0.5, 1.0, 2.0])
    assert len(comps) == 3
    assert comps[0].shape == (n, 4)
    assert res["relative"] < 1e-10


def test_full_pipeline():
    out = kw.solve_manufactured(cmath.rect(50.0, 0.4), kw.MaterialParams(1, 1, 2), M=16, H=10.0, MN=256, seed=7)
    assert out["recovery_error"] < 1e-8
    assert out["residual"]["relative"] < 1e-8


def test_probe_decays():
    ratios = kw.contraction_probe(kw.MaterialParams(1, 1, 2, 0.1), math.pi / 4 + 0.1, [1, 100, 10000], M=8, H=4.0, MN=32)
    assert ratios[0] > ratios[1] > ratios[2]


def test_rbound_finite():
    assert math.isfinite(kw.rbound("T", 0, kw.MaterialParams(1, 1, 2), trials=3, m_max=3))
