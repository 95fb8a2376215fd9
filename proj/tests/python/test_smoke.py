import cmath
import json
import math

import pytest

hf = pytest.importorskip("hyperfh")


def z_u(u):
    return [1j * math.sin(u), 0j, complex(math.cos(u))]


def z_v(v):
    return [0j, 1j * math.sinh(v), complex(math.cosh(v))]


def test_classify():
    assert hf.classify(z_u(0.7)) == "TPlus"
    assert hf.classify(z_u(-0.7)) == "TMinus"
    assert hf.classify(z_v(0.5)) == "TRight"
    assert hf.classify(z_v(-0.5)) == "TLeft"
    assert hf.classify([0, 0, 1]) == "RealX"


def test_chart_roundtrip():
    z = z_u(0.4)
    lam, mu = hf.chart_lm(z)
    back = hf.chart_lm_inv(lam, mu)
    assert max(abs(a - b) for a, b in zip(z, back)) < 1e-12


def test_special_functions():
    assert abs(hf.legendre_q(0, 3.0) - 0.5 * math.log(2.0)) < 1e-14
    assert abs(hf.conical_p(0.0, 1.0) - 1.0) < 1e-14
    q = hf.legendre_q_all(3, 2.0)
    assert len(q) == 4
    assert abs(q[1] - (2.0 * 0.5 * math.log(3.0) - 1.0)) < 1e-13


def test_kernel_forms_agree():
    zm = [-1j, 0j, 0j]
    for v in (0.0, 1.0):
        zp = [1j * math.cosh(v), 1j * math.sinh(v), 0j]
        exact = -0.25 / math.cosh(0.5 * v) ** 2
        assert abs(hf.cauchy_kernel(zm, zp) - exact) < 1e-12
        assert abs(hf.cauchy_kernel_spectral(zm, zp, 1) - exact) < 1e-8
        assert abs(hf.cauchy_kernel_cf(zm, zp, 1) - exact) < 1e-8


def test_decomposition_sums_back():
    f = hf.FunctionOnX.pole_product(0.4 + 0.9j, 1, 0.2 - 0.7j, 1)
    parts = hf.decompose(f)
    assert set(parts) == {"TPlus", "TMinus", "TRight", "TLeft"}
    x = [complex(math.sinh(0.3)), 0j, complex(math.cosh(0.3))]
    total = sum(p(x) for p in parts.values())
    assert abs(total - f(x)) < 1e-6 * max(1.0, abs(f(x)))


def test_function_json_roundtrip():
    f = hf.FunctionOnX.cauchy_kernel(z_v(-0.8))
    g = hf.FunctionOnX.from_json(f.to_json())
    x = [complex(math.sinh(0.3)), 0j, complex(math.cosh(0.3))]
    assert abs(f(x) - g(x)) < 1e-14


def test_laplace_relation():
    r = hf.VolterraKernel.exp_cosh(1.5)
    for nu in (0.3, 1.1):
        assert abs(hf.laplace_h(r, nu) - hf.h_from_g(r, nu)) < 1e-7


def test_verify_geometry():
    rep = hf.verify("geometry")
    assert rep["schema"] == "hyperfh/1"
    assert rep["passed"] is True
    assert all(c["status"] == "pass" for c in rep["checks"])


def test_transform_zero_csv():
    cfg = {"function": {"kind": "builtin", "name": "zero"}, "alpha_grid": [0.0], "nu_grid": [0.0, 0.5]}
    lines = hf.transform(cfg).strip().splitlines()
    assert lines[0] == "xi0,xi1,xi2,nu,side,re,im"
    assert len(lines) == 5


def test_errors_translate():
    with pytest.raises(hf.HyperFHError):
        hf.cauchy_kernel_spectral(z_u(-0.5), z_u(0.5), 2)
    with pytest.raises(hf.HyperFHError):
        hf.transform({"function": {"kind": "builtin", "name": "zero"}, "alpha_grid": [], "nu_grid": [0.0]})
