import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hartogs import octonion as oc
from hartogs.octonion import ComplexOctonion as O

seeds = st.integers(0, 2 ** 32 - 1)


def e(i):
    return O.basis(i)


def rand(seed, n=2):
    rng = np.random.default_rng(seed)
    return [O.random(rng, 0.35) for _ in range(n)]


def test_table_examples():
    a = O([1, 2j, 3, 0, -1, 0.5, 0, 2])
    assert (e(0) * a).allclose(a) and (a * e(0)).allclose(a)
    assert (e(1) * e(1)).allclose(-e(0))
    assert (e(1) * e(2)).allclose(e(4))


@pytest.mark.parametrize("i", range(8))
@pytest.mark.parametrize("j", range(8))
def test_composition_on_basis_pairs(i, j):
    for a, b in ((e(i), e(j)), (e(i) + e(j), e(j) * 2 - e(0))):
        assert oc.cnorm(a * b) == pytest.approx(oc.cnorm(a) * oc.cnorm(b), abs=1e-12)


def test_conjugation_fixes_unit():
    assert oc.cayley_conj(e(0)) == e(0)
    assert oc.cayley_conj(e(3)) == -e(3)


def test_scalar_examples():
    assert oc.cnorm(e(0)) == 1
    assert oc.bilinear(e(0), e(0)) == 2
    iso = e(0) + e(1) * 1j
    assert oc.cnorm(iso) == pytest.approx(0, abs=1e-15)
    assert oc.hermitian(iso / 2, iso / 2) == pytest.approx(1)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_alternative(seed):
    a, b = rand(seed)
    assert (a * (a * b)).allclose((a * a) * b, atol=1e-12)
    assert ((b * a) * a).allclose(b * (a * a), atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_composition_law(seed):
    a, b = rand(seed)
    assert oc.cnorm(a * b) == pytest.approx(oc.cnorm(a) * oc.cnorm(b), rel=1e-12, abs=1e-14)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_forms(seed):
    a, b = rand(seed)
    assert oc.bilinear(a, b) == pytest.approx(oc.bilinear(b, a), abs=1e-13)
    h = oc.hermitian(a, a)
    assert abs(h.imag) < 1e-13
    assert h.real == pytest.approx(2 * np.sum(np.abs(a.coords) ** 2), rel=1e-12)
    assert oc.bilinear(a, a) == pytest.approx(2 * oc.cnorm(a), abs=1e-13)
    oc.trace(a)  # raises unless a + a~ is scalar
