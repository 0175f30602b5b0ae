import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hartogs import domains, exceptional as ex, octonion as oc
from hartogs.domains import DomainError, make_descriptor, parse_descriptor
from hartogs.exact import RationalPoly, pochhammer
from hartogs.numerics import complex_hessian

ALL = [("I", 1, 1), ("I", 1, 3), ("I", 2, 3), ("I", 3, 3), ("II", 2), ("II", 4), ("II", 5),
       ("III", 1), ("III", 3), ("IV", 3), ("IV", 6), ("V",), ("VI",)]
s = RationalPoly.monomial(1)


def test_descriptor_examples():
    v = make_descriptor("V")
    assert (v.r, v.a, v.b, v.gamma, v.d, v.mu0) == (2, 6, 4, 12, 16, Fraction(12, 17))
    iv = make_descriptor("IV", 3)
    assert (iv.r, iv.a, iv.b, iv.gamma, iv.d, iv.mu0) == (2, 1, 0, 3, 3, Fraction(3, 4))
    ball = make_descriptor("I", 1, 1)
    assert (ball.r, ball.gamma, ball.d, ball.mu0) == (1, 2, 1, 1)
    assert make_descriptor("VI").mu0 == Fraction(9, 14)


def test_mu0_table_formulas():
    for m, n in [(1, 1), (2, 3), (3, 3), (2, 5)]:
        assert make_descriptor("I", m, n).mu0 == Fraction(m + n, m * n + 1)
    for n in range(3, 9):
        assert make_descriptor("IV", n).mu0 == Fraction(n, n + 1)
    for n in range(1, 6):
        assert make_descriptor("III", n).mu0 == Fraction(n + 1, n * (n + 1) // 2 + 1)


@pytest.mark.parametrize("bad", [("I", 3, 2), ("II", 1), ("III", 0), ("IV", 2), ("V", 1), ("VII",)])
def test_descriptor_rejects(bad):
    with pytest.raises(DomainError):
        make_descriptor(*bad)


def test_parse_descriptor():
    assert parse_descriptor("IV(3)") == make_descriptor("IV", 3)
    assert parse_descriptor("i(2, 3)") == make_descriptor("I", 2, 3)
    assert parse_descriptor("VI") == make_descriptor("VI")
    assert parse_descriptor("V").to_json().count("12/17") == 1


def test_hua_examples():
    assert domains.hua_poly(make_descriptor("V")) == pochhammer(s + 1, 8) * pochhammer(s + 4, 8)
    assert domains.hua_poly(make_descriptor("VI")) == (
        pochhammer(s + 1, 9) * pochhammer(s + 5, 9) * pochhammer(s + 9, 9))
    assert domains.hua_poly(make_descriptor("V")) == pochhammer(s + 1, 11) * pochhammer(s + 4, 5)
    assert domains.hua_poly(make_descriptor("III", 1)) == s + 1


@pytest.mark.parametrize("lab", ALL)
def test_hua_degree_and_chi0(lab):
    desc = make_descriptor(*lab)
    chi = domains.hua_poly(desc)
    assert chi.degree() == desc.d
    chi0 = Fraction(1)
    for j in range(1, desc.r + 1):
        chi0 *= pochhammer(1 + Fraction((j - 1) * desc.a, 2), 1 + desc.b + (desc.r - j) * desc.a)
    assert chi(Fraction(0)) == chi0 > 0


@pytest.mark.parametrize("lab", ALL)
def test_mu0_below_one_except_rank_one(lab):
    desc = make_descriptor(*lab)
    assert desc.mu0 == 1 if desc.r == 1 else desc.mu0 < 1


def test_norm_examples():
    for lab in ALL:
        desc = make_descriptor(*lab)
        z0 = domains.to_point(desc, np.zeros(desc.d))
        assert domains.generic_norm_self(desc, z0) == pytest.approx(1)
        assert domains.contains(desc, z0)
    disc = make_descriptor("I", 1, 1)
    assert domains.generic_norm_self(disc, [[0.3 + 0.4j]]) == pytest.approx(0.75)
    assert not domains.contains(disc, [[1.0]])
    iv = make_descriptor("IV", 3)
    for t in (0.1, 0.5, 0.9):
        assert domains.generic_norm_self(iv, [t, 0, 0]) == pytest.approx(1 - 2 * t * t + t ** 4)


def test_hartogs_examples():
    desc = make_descriptor("IV", 3)
    assert domains.hartogs_contains(desc, 1, Fraction(3, 4), np.zeros(3), [0])
    assert not domains.hartogs_contains(desc, 1, Fraction(3, 4), np.zeros(3), [1])
    v = make_descriptor("V")
    iso = (oc.ComplexOctonion.basis(0) + oc.ComplexOctonion.basis(1) * 1j) / 2
    z = ex.M21Element.from_parts(a2=iso) * 0.5
    N = domains.generic_norm_self(v, z)
    assert N == pytest.approx(0.75)
    Z = [math.sqrt(0.9 * N ** (12 / 17))]
    assert domains.hartogs_contains(v, 1, Fraction(12, 17), z, Z)


def test_shape_errors():
    with pytest.raises(DomainError):
        domains.generic_norm_self(make_descriptor("IV", 3), np.zeros(4))
    with pytest.raises(DomainError):
        domains.hartogs_contains(make_descriptor("IV", 3), 2, 1, np.zeros(3), [0])
    with pytest.raises(DomainError):
        domains.generic_norm(make_descriptor("II", 4), np.zeros((4, 4)), np.zeros((4, 4)))


@pytest.mark.parametrize("lab", ALL)
def test_coordinates_are_m1_orthonormal(lab):
    """-log N(z,z) has identity complex Hessian at 0 in the to_point coordinates."""
    desc = make_descriptor(*lab)
    f = lambda w: -math.log(domains.generic_norm_self(desc, domains.to_point(desc, w)))  # noqa: E731
    H = complex_hessian(f, np.zeros(desc.d), step=1e-3, richardson=False).matrix
    assert np.allclose(H, np.eye(desc.d), atol=1e-6)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ALL), st.integers(0, 2 ** 32 - 1))
def test_norm_in_unit_interval(lab, seed):
    desc = make_descriptor(*lab)
    rng = np.random.default_rng(seed)
    z = domains.random_point(desc, rng, 0.95)
    assert domains.contains(desc, z)
    N = domains.generic_norm_self(desc, z)
    assert 0 < N <= 1
    if np.linalg.norm(domains.from_point(desc, z)) > 1e-3:
        assert N < 1
    w = domains.from_point(desc, z)
    assert np.allclose(domains.from_point(desc, domains.to_point(desc, w)), w)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([lab for lab in ALL if lab[0] != "II"]), st.integers(0, 2 ** 32 - 1))
def test_spectral_norm_matches_polynomial_norm(lab, seed):
    desc = make_descriptor(*lab)
    z = domains.random_point(desc, np.random.default_rng(seed), 0.95)
    two_point = domains.generic_norm(desc, z, z)
    assert abs(two_point.imag) < 1e-12
    assert domains.generic_norm_self(desc, z) == pytest.approx(two_point.real, rel=1e-10, abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2 ** 32 - 1))
def test_type_II_norm_squared(p, seed):
    desc = make_descriptor("II", 2 * p)
    z = domains.random_point(desc, np.random.default_rng(seed))
    assert np.allclose(z, -z.T)
    N = domains.generic_norm_self(desc, z)
    assert N * N == pytest.approx(np.linalg.det(np.eye(2 * p) + z @ np.conj(z)).real, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(ALL), st.floats(1.01, 3.0), st.integers(0, 2 ** 32 - 1))
def test_outside_after_scaling_past_boundary(lab, factor, seed):
    desc = make_descriptor(*lab)
    rng = np.random.default_rng(seed)
    w = rng.standard_normal(desc.d) + 1j * rng.standard_normal(desc.d)
    w /= np.linalg.norm(w)
    # the domain is convex and circled: find the exit time on the ray by bisection
    lo, hi = 0.0, 10.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if domains.contains(desc, domains.to_point(desc, mid * w)) else (lo, mid)
    assert not domains.contains(desc, domains.to_point(desc, factor * hi * w))
    assert domains.generic_norm_self(desc, domains.to_point(desc, 0.5 * lo * w)) > 0
