import math
import numpy as np
import pytest

from tsbvp.ops import PExponent, phi, phi_inverse

P_VALUES = [1.1, 1.5, 2.0, 3.0, 4.5, 10.0]


def test_phi_examples():
    for x in (-3.0, 0.0, 7.0):
        assert phi(2, x) == x
    assert phi(3, -2) == pytest.approx(-4.0, rel=1e-15)
    assert phi(1.5, 4) == pytest.approx(2.0, rel=1e-15)


def test_phi_inverse_examples():
    assert phi_inverse(2, -5.5) == -5.5
    assert phi_inverse(3, -4) == pytest.approx(-2.0, rel=1e-15)


@pytest.mark.parametrize('p', [1.1, 1.5, 3.0])
def test_phi_is_zero_at_zero(p):
    assert phi(p, 0.0) == 0.0
    assert phi_inverse(p, 0.0) == 0.0
    assert phi(p, np.zeros(3)).tolist() == [0.0, 0.0, 0.0]


@pytest.mark.parametrize('p', [1.0, 0.5, -2.0, float('inf'), float('nan')])
def test_phi_rejects_bad_exponent(p):
    with pytest.raises(ValueError):
        phi(p, 1.0)
    with pytest.raises(ValueError):
        PExponent(p)


def test_pexponent_conjugate():
    for p in P_VALUES:
        exponent = PExponent(p)
        assert 1 / exponent.p + 1 / exponent.q == pytest.approx(1.0, abs=1e-12)
    assert PExponent(2).q == 2.0
    assert PExponent(3).phi(-2) == phi(3, -2)
    assert PExponent(3).phi_inverse(-4) == phi_inverse(3, -4)


def test_phi_odd_exactly():
    rng = np.random.default_rng(11)
    s = rng.uniform(-1e3, 1e3, size=1000)
    for p in P_VALUES:
        assert np.array_equal(phi(p, -s), -phi(p, s)), f'p={p}'


def test_phi_strictly_increasing():
    rng = np.random.default_rng(12)
    s = np.sort(rng.uniform(-1e6, 1e6, size=10000))
    for p in P_VALUES:
        values = phi(p, s)
        assert np.all(np.diff(values) > 0), f'p={p}'


def test_phi_round_trip():
    rng = np.random.default_rng(13)
    p = rng.uniform(1.1, 10.0, size=10000)
    s = rng.uniform(-1e6, 1e6, size=10000)
    back = np.array([phi_inverse(pi, phi(pi, si)) for pi, si in zip(p, s)])
    error = np.abs(back - s) / np.maximum(1.0, np.abs(s))
    i = int(np.argmax(error))
    assert error[i] <= 1e-9, f'p={p[i]!r}, s={s[i]!r}'


def test_phi_homogeneity():
    rng = np.random.default_rng(14)
    for p in P_VALUES:
        lam = rng.uniform(0.1, 10.0, size=200)
        s = rng.uniform(-1e3, 1e3, size=200)
        np.testing.assert_allclose(phi(p, lam * s), phi(p, lam) * phi(p, s), rtol=1e-12, err_msg=f'p={p}')


def test_phi_scalar_and_array_agree():
    values = np.array([-2.5, 0.0, 0.3, 8.0])
    out = phi(2.7, values)
    assert isinstance(phi(2.7, 0.3), float)
    assert out.shape == values.shape
    assert out[2] == phi(2.7, 0.3)
    assert math.isinf(phi(10, 1e300))
