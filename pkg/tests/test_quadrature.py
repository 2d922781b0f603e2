import math

import numpy as np
import pytest

from qlearnrate import ConfigurationError
from qlearnrate.quadrature import (
    cumulative_oscillatory_transform,
    gl_nodes,
    integrate,
    oscillatory_transform,
    triangle_integral,
)


def test_gl_nodes_polynomial_exactness():
    x, w = gl_nodes(-1.0, 2.0, 6)
    # order-6 rule is exact through degree 11
    assert np.sum(w * x**9) == pytest.approx((2.0**10 - 1.0) / 10.0, abs=1e-12)


def test_integrate_smooth():
    val = integrate(np.sin, 0.0, math.pi, order=32)
    assert val == pytest.approx(2.0, abs=1e-13)


def test_order_guard():
    with pytest.raises(ConfigurationError):
        gl_nodes(0.0, 1.0, 1)


def _ramp_transform_ref(omega, t):
    # integral_0^t s e^{i omega s} ds
    if omega == 0.0:
        return t * t / 2.0
    iw = 1j * omega
    return t * np.exp(iw * t) / iw - (np.exp(iw * t) - 1.0) / iw**2


@pytest.mark.parametrize("omega", [0.0, 1.0, 18.65, 199.5])
def test_oscillatory_transform_fast_kernels(omega):
    # the stiffest production case is |omega| ~ 200 over t = 20
    t = 20.0
    val = oscillatory_transform(lambda s: s, [omega], t)[0]
    assert abs(val - _ramp_transform_ref(omega, t)) < 1e-9


def test_cumulative_matches_one_shot():
    ts = np.linspace(0.3, 7.0, 23)
    omegas = np.array([0.0, 2.0, 55.0])
    prof = cumulative_oscillatory_transform(lambda s: np.sin(s) ** 2, omegas, ts)
    for k in (0, 11, 22):
        one = oscillatory_transform(lambda s: np.sin(s) ** 2, omegas, ts[k])
        assert np.max(np.abs(prof[k] - one)) < 1e-10


def test_cumulative_requires_sorted_grid():
    with pytest.raises(ConfigurationError):
        cumulative_oscillatory_transform(lambda s: s, [1.0], np.array([2.0, 1.0]))


def test_triangle_integral_separable():
    # integral_0^1 dt2 integral_0^t2 dt1 t1 t2 = 1/8
    val = triangle_integral(lambda t1, t2: t1 * t2, 1.0, order=24)
    assert val == pytest.approx(1.0 / 8.0, abs=1e-13)


def test_triangle_integral_zero_width():
    assert triangle_integral(lambda t1, t2: t1 * t2, 0.0) == 0.0
