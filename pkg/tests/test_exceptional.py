import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hartogs import exceptional as ex
from hartogs import octonion as oc
from hartogs.exceptional import H3Element, M21Element
from hartogs.verify import (det_bergman_error, fundamental_formula_error,
                            jordan_identity_error, log_norm_derivative_error)

seeds = st.integers(0, 2 ** 32 - 1)
E1, E2, E3 = H3Element.e(1), H3Element.e(2), H3Element.e(3)
I3 = H3Element.identity()
ZERO = H3Element()


def unit(cls, rng):
    x = cls.random(rng)
    return x * (1 / np.sqrt(x.norm2()))


def rand_oct(rng):
    return oc.ComplexOctonion.random(rng, 0.4)


def test_sharp_examples():
    assert ex.sharp(E1).allclose(ZERO)
    assert ex.sharp(E1 + E2).allclose(E3)
    assert ex.sharp(I3).allclose(I3)


def test_freudenthal_examples():
    rng = np.random.default_rng(3)
    a, b = rand_oct(rng), rand_oct(rng)
    assert ex.freudenthal(E1, E2).allclose(E3)
    assert ex.freudenthal(E1, H3Element.F(1, b)).allclose(-H3Element.F(1, b))
    expected = H3Element.F(3, oc.cayley_conj(a * b))
    assert ex.freudenthal(H3Element.F(1, a), H3Element.F(2, b)).allclose(expected)


def test_det_examples():
    assert ex.det3(I3) == pytest.approx(1)
    assert ex.det3(E1) == 0
    assert ex.det3(H3Element.from_parts(alphas=(2, 3j, -0.5))) == pytest.approx(-3j)


def test_det_with_off_diagonal():
    rng = np.random.default_rng(5)
    al = rng.standard_normal(3)
    a = [rand_oct(rng) for _ in range(3)]
    x = H3Element.from_parts(alphas=al, octs=a)
    expected = (al[0] * al[1] * al[2] - sum(al[i] * oc.cnorm(a[i]) for i in range(3))
                + oc.trace(a[0] * (a[1] * a[2])))
    assert ex.det3(x) == pytest.approx(expected, abs=1e-13)


def test_triple_and_peirce_examples():
    assert ex.triple_product(E1, E1, E1).allclose(2 * E1)
    assert ex.quad(E1, E1).allclose(E1)
    D = ex.d_operator(E1, E1)
    assert D(E2).allclose(ZERO) and D(E3).allclose(ZERO)
    rng = np.random.default_rng(0)
    b = rand_oct(rng)
    assert D(H3Element.F(1, b)).allclose(ZERO)
    assert D(H3Element.F(2, b)).allclose(H3Element.F(2, b))
    assert D(H3Element.F(3, b)).allclose(H3Element.F(3, b))
    assert D(E1).allclose(2 * E1)


def test_bergman_operator_at_origin():
    for cls in (H3Element, M21Element):
        B = ex.bergman_operator(cls(), cls())
        assert np.allclose(B.matrix, np.eye(cls.dim))


def test_quasi_inverse_examples():
    rng = np.random.default_rng(1)
    for cls in (H3Element, M21Element):
        x = ex.random_interior(cls, rng)
        assert ex.quasi_inverse(cls(), x).allclose(cls())
        assert ex.quasi_inverse(x, cls()).allclose(x)


def test_quasi_inverse_singular():
    # B(e1, e1) kills the Peirce-2 space
    with pytest.raises(np.linalg.LinAlgError):
        ex.quasi_inverse(E1, E1)


def test_generic_norm_examples():
    rng = np.random.default_rng(2)
    assert ex.generic_norm(ZERO, ZERO) == 1
    for cls in (H3Element, M21Element):
        assert ex.generic_norm(cls.random(rng), cls()) == pytest.approx(1)
    iso = (oc.ComplexOctonion.basis(0) + oc.ComplexOctonion.basis(1) * 1j) / 2
    for t in (0.3, 0.8):
        x = M21Element.from_parts(a2=iso * t)
        assert ex.inner(x, x) == pytest.approx(t * t)
        assert ex.sharp(x).norm2() == pytest.approx(0, abs=1e-15)
        assert ex.generic_norm_V(x, x) == pytest.approx(1 - t * t)


def test_tripotent_classification():
    assert ex.classify_tripotent(ZERO) == 0
    assert ex.classify_tripotent(E1) == 1
    assert ex.classify_tripotent(E1 + E2) == 2
    assert ex.classify_tripotent(I3) == 3
    assert ex.classify_tripotent(0.5 * E1) == "not a tripotent"
    iso = (oc.ComplexOctonion.basis(0) + oc.ComplexOctonion.basis(1) * 1j) / 2
    assert ex.classify_tripotent(M21Element.from_parts(a2=iso)) == 1


def test_membership_examples():
    assert ex.contains_V(M21Element()) and ex.contains_VI(ZERO)
    assert not ex.contains_VI(I3)
    assert ex.contains_VI(0.5 * E1)
    assert not ex.contains_VI(E1)


def test_json_round_trip():
    rng = np.random.default_rng(4)
    for cls in (H3Element, M21Element):
        x = cls.random(rng)
        raw = json.loads(x.to_json())
        assert len(raw) == cls.dim and all(len(p) == 2 for p in raw)
        assert cls.from_json(x.to_json()).allclose(x, atol=0)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_adjoint_identities(seed):
    x = unit(H3Element, np.random.default_rng(seed))
    assert ex.sharp(ex.sharp(x)).allclose(x * ex.det3(x), atol=1e-10)
    assert ex.det3(ex.sharp(x)) == pytest.approx(ex.det3(x) ** 2, abs=1e-10)
    assert ex.det3(x) == pytest.approx(ex.bilinear(ex.sharp(x), x) / 3, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_trace_form_associative(seed):
    rng = np.random.default_rng(seed)
    x, y, z = (unit(H3Element, rng) for _ in range(3))
    lhs = ex.bilinear(ex.freudenthal(x, y), z)
    assert lhs == pytest.approx(ex.bilinear(x, ex.freudenthal(y, z)), abs=1e-10)


@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from([(H3Element, 18), (M21Element, 12)]))
def test_trace_of_D(seed, case):
    cls, genus = case
    rng = np.random.default_rng(seed)
    x, y = unit(cls, rng), unit(cls, rng)
    assert ex.d_operator(x, y).trace() == pytest.approx(genus * ex.inner(x, y), abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from([H3Element, M21Element]))
def test_jordan_identity(seed, cls):
    rng = np.random.default_rng(seed)
    assert jordan_identity_error(*(unit(cls, rng) for _ in range(5))) < 1e-9


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from([H3Element, M21Element]))
def test_fundamental_formula(seed, cls):
    rng = np.random.default_rng(seed)
    assert fundamental_formula_error(*(unit(cls, rng) for _ in range(3))) < 1e-9


@settings(max_examples=15, deadline=None)
@given(seeds, st.sampled_from([H3Element, M21Element]))
def test_det_bergman_is_norm_power(seed, cls):
    rng = np.random.default_rng(seed)
    x, y = ex.random_interior(cls, rng), ex.random_interior(cls, rng)
    assert det_bergman_error(x, y) < 1e-9


@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from([H3Element, M21Element]))
def test_log_norm_derivative(seed, cls):
    rng = np.random.default_rng(seed)
    x, y = ex.random_interior(cls, rng), ex.random_interior(cls, rng)
    assert log_norm_derivative_error(x, y, unit(cls, rng)) < 1e-6


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_m21_native_matches_embedding(seed):
    rng = np.random.default_rng(seed)
    x, y, z = (unit(M21Element, rng) for _ in range(3))
    native, via = ex.M21, ex.M21_VIA_H3
    assert np.allclose(native.quad(x.coords, y.coords), via.quad(x.coords, y.coords), atol=1e-12)
    assert np.allclose(native.triple(x.coords, y.coords, z.coords),
                       via.triple(x.coords, y.coords, z.coords), atol=1e-12)
    assert native.norm(x.coords, y.coords) == pytest.approx(via.norm(x.coords, y.coords), abs=1e-12)
    assert ex.sharp(x).to_h3().allclose(ex.sharp(x.to_h3()), atol=1e-13)
