import cmath

import mpmath
import numpy as np
import pytest

import jacobi_mfun as jm


def test_classify():
    info = jm.classify(1.0, 0.0)
    assert info["regime"] == "II"
    assert info["deficiency_index"] == 1
    assert jm.classify(0.0, 0.0)["endpoint_minus"] == "LimitCircle"


def test_spectrum():
    assert jm.friedrichs_spectrum(0.0, 0.0, 4) == [0, 2, 6, 12, 20]
    found = jm.friedrichs_spectrum_numeric(-0.4, -0.3, -5.0, 20.0, 4)
    assert found == pytest.approx([0.7, 3.4, 8.1, 14.8], rel=1e-10)


def test_weyl_digamma_case_against_mpmath():
    z = 1j
    s = mpmath.sqrt(4 + 4 * mpmath.mpc(0, 1))
    want = -mpmath.mpf(1) / 4 * (2 * mpmath.euler + mpmath.digamma((2 + s) / 2) + mpmath.digamma((2 - s) / 2))
    got = jm.m_weyl(1.0, 0.0, z)
    assert abs(got - complex(want)) < 1e-13


def test_weyl_herglotz_and_array():
    z = np.array([0.5 + 1j, -4 + 0.1j, 3 - 2j])
    m = jm.m_weyl_array(1.5, -0.5, z)
    assert m.shape == z.shape
    assert np.all(z.imag * m.imag > 0)
    assert m[0] == pytest.approx(jm.m_weyl(1.5, -0.5, z[0]), rel=1e-15)


def test_donoghue_normalization_and_symmetry():
    m = jm.m_donoghue(0.3, 0.4, 1j, extension="coupled", phi=0.3, R=np.array([[1.2, 0.7], [-0.4, 0.6]]))
    assert np.allclose(m, 1j * np.eye(2), atol=1e-12)
    z = 2.0 + 0.5j
    a = jm.m_donoghue(0.3, 0.4, z, extension="separated", gamma=0.4, delta=1.1)
    b = jm.m_donoghue(0.3, 0.4, z.conjugate(), extension="separated", gamma=0.4, delta=1.1)
    assert np.allclose(b, a.conj().T, atol=1e-10)
    one = jm.m_donoghue(1.5, -0.5, z, extension="one-lc")
    assert one.shape == (1, 1)


def test_krein():
    r = jm.krein_R(-0.5, -0.5)
    assert r[0, 1] == pytest.approx(cmath.pi, rel=1e-14)
    assert np.linalg.det(r) == pytest.approx(1.0, rel=1e-14)
    with pytest.raises(jm.NotStrictlyPositive):
        jm.krein_R(0.3, 0.4)


def test_errors_map_to_python():
    with pytest.raises(jm.SpectrumPole):
        jm.m_weyl(1.0, -0.5, 1.0)
    with pytest.raises(jm.PoleError):
        jm.m_weyl(1.0, -0.5, 1.0)
    with pytest.raises(jm.ParamError):
        jm.m_weyl(0.3, 0.4, 1j)
    with pytest.raises(jm.JacobiError):
        jm.m_donoghue(0.3, 0.4, 1.0)


def test_solution_and_polynomial():
    y, yq = jm.solution(0.0, 0.0, -1, 1, 6.0, 0.3)
    # F(-2, 3; 1; (1+x)/2) = P_2(-x)
    assert y == pytest.approx(0.5 * (3 * 0.09 - 1), abs=1e-13)
    assert jm.jacobi_polynomial(2, 0.0, 0.0, 0.5) == pytest.approx(-0.125, rel=1e-14)


def test_module_location():
    import os

    tree = os.environ.get("JACOBI_MFUN_PYTHON_DIR")
    if tree:
        assert jm._core.__file__.startswith(tree)
