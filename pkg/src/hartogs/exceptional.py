"""The exceptional Hermitian Jordan triple systems H3(O_C) and M21(O_C).

Flat coordinate layouts (complex):

* H3 (27):  alpha1, alpha2, alpha3, then F1, F2, F3 octonion blocks (e0..e7)
* M21 (16): a2 block, a3 block; embedded in H3 as F2(a2) + F3(a3)
* H2 (10):  lambda2, lambda3, u1 block; ``x^#`` of an M21 element lives here

The array functions work on arrays with arbitrary leading batch axes so
that operator matrices are built with one vectorised call on the identity.
Antilinear arguments (the ``y`` in ``{x y z}`` and ``Q(x) y``) are conjugated
explicitly; :class:`LinearOperator` only ever holds complex-linear maps.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .octonion import ComplexOctonion, bilinear_arr, cnorm_arr, ctilde, omul

# even permutations (i, j, k) of (0, 1, 2)
_EVEN = ((0, 1, 2), (1, 2, 0), (2, 0, 1))

TRIPOTENT_TOL = 1e-9


# ----------------------------------------------------------------------------
# H3(O_C) array kernels

def _h3_parts(x):
    x = np.asarray(x)
    return x[..., :3], x[..., 3:].reshape(x.shape[:-1] + (3, 8))


def _h3_join(alpha, octs):
    return np.concatenate([alpha, octs.reshape(octs.shape[:-2] + (24,))], axis=-1)


def h3_bilinear(x, y):
    """(x:y) = sum alpha_i beta_i + sum (a_i : b_i)."""
    xa, xo = _h3_parts(x)
    ya, yo = _h3_parts(y)
    return np.sum(xa * ya, axis=-1) + np.sum(bilinear_arr(xo, yo), axis=-1)


def h3_inner(x, y):
    """Hermitian scalar product (x|y) = (x : conj y)."""
    return h3_bilinear(x, np.conj(y))


def h3_sharp(x):
    alpha, a = _h3_parts(x)
    out_a = np.empty_like(alpha)
    out_o = np.empty_like(a)
    for i, j, k in _EVEN:
        out_a[..., i] = alpha[..., j] * alpha[..., k] - cnorm_arr(a[..., i, :])
        c = omul(a[..., j, :], a[..., k, :]) - alpha[..., i, None] * ctilde(a[..., i, :])
        out_o[..., i, :] = ctilde(c)
    return _h3_join(out_a, out_o)


def h3_cross(x, y):
    """Freudenthal product, the polarisation of ``x -> x^#``."""
    xa, xo = _h3_parts(x)
    ya, yo = _h3_parts(y)
    xa, ya = np.broadcast_arrays(xa, ya)
    xo, yo = np.broadcast_arrays(xo, yo)
    out_a = np.empty(xa.shape, dtype=complex)
    out_o = np.empty(xo.shape, dtype=complex)
    for i, j, k in _EVEN:
        out_a[..., i] = (xa[..., j] * ya[..., k] + xa[..., k] * ya[..., j]
                         - bilinear_arr(xo[..., i, :], yo[..., i, :]))
        c = (omul(xo[..., j, :], yo[..., k, :]) + omul(yo[..., j, :], xo[..., k, :])
             - xa[..., i, None] * ctilde(yo[..., i, :]) - ya[..., i, None] * ctilde(xo[..., i, :]))
        out_o[..., i, :] = ctilde(c)
    return _h3_join(out_a, out_o)


def h3_det(x):
    alpha, a = _h3_parts(x)
    val = alpha[..., 0] * alpha[..., 1] * alpha[..., 2]
    for i in range(3):
        val = val - alpha[..., i] * cnorm_arr(a[..., i, :])
    # a1(a2 a3) + (a3~ a2~) a1~ is the trace of a1(a2 a3)
    t = omul(a[..., 0, :], omul(a[..., 1, :], a[..., 2, :]))
    return val + 2.0 * t[..., 0]


def h3_triple(x, y, z):
    """{x y z} = (x|y) z + (z|y) x - (x cross z) cross conj(y)."""
    x, y, z = np.asarray(x), np.asarray(y), np.asarray(z)
    xy = h3_inner(x, y)[..., None]
    zy = h3_inner(z, y)[..., None]
    return xy * z + zy * x - h3_cross(h3_cross(x, z), np.conj(y))


def h3_quad(x, y):
    """Q(x) y = (x|y) x - x^# cross conj(y)."""
    x, y = np.asarray(x), np.asarray(y)
    return h3_inner(x, y)[..., None] * x - h3_cross(h3_sharp(x), np.conj(y))


def h3_norm(x, y):
    """Generic norm N(x,y) = 1 - (x|y) + (x^#|y^#) - det x det conj(y)."""
    return (1.0 - h3_inner(x, y) + h3_inner(h3_sharp(x), h3_sharp(y))
            - h3_det(x) * h3_det(np.conj(y)))


# ----------------------------------------------------------------------------
# M21(O_C) array kernels

def _m21_parts(x):
    x = np.asarray(x)
    return x[..., :8], x[..., 8:]


def m21_inner(x, y):
    """(x|y) = (x2|y2) + (x3|y3)."""
    return 2.0 * np.sum(np.asarray(x) * np.conj(y), axis=-1)


def m21_sharp(x):
    """x^# in H2, stored as (lambda2, lambda3, u1) with u1 = x2 x3."""
    x2, x3 = _m21_parts(x)
    lam2 = -cnorm_arr(x2)
    lam3 = -cnorm_arr(x3)
    u1 = omul(x2, x3)
    return np.concatenate([lam2[..., None], lam3[..., None], u1], axis=-1)


def h2_inner(u, v):
    """(u|v) = lambda2 conj(mu2) + lambda3 conj(mu3) + (u1|v1)."""
    u, v = np.asarray(u), np.asarray(v)
    vc = np.conj(v)
    return u[..., 0] * vc[..., 0] + u[..., 1] * vc[..., 1] + 2.0 * np.sum(u[..., 2:] * vc[..., 2:], axis=-1)


def m21_quad(x, y):
    """Native quadratic operator of M21:

    Q(x)y = (x2 ~yb2 x2 + (x2 yb3) ~x3,  ~x2 (yb2 x3) + x3 ~yb3 x3),  yb = conj(y).
    """
    x2, x3 = _m21_parts(x)
    yb2, yb3 = _m21_parts(np.conj(y))
    first = omul(omul(x2, ctilde(yb2)), x2) + omul(omul(x2, yb3), ctilde(x3))
    second = omul(ctilde(x2), omul(yb2, x3)) + omul(omul(x3, ctilde(yb3)), x3)
    return np.concatenate([first, second], axis=-1)


def m21_triple(x, y, z):
    """{x y z} by polarisation: Q(x+z)y - Q(x)y - Q(z)y."""
    x, z = np.broadcast_arrays(np.asarray(x, dtype=complex), np.asarray(z, dtype=complex))
    return m21_quad(x + z, y) - m21_quad(x, y) - m21_quad(z, y)


def m21_norm(x, y):
    """Generic norm N(x,y) = 1 - (x|y) + (x^#|y^#)."""
    return 1.0 - m21_inner(x, y) + h2_inner(m21_sharp(x), m21_sharp(y))


def m21_to_h3(x):
    """Embed (x2, x3) as F2(x2) + F3(x3), the Peirce space V1(e1)."""
    x2, x3 = _m21_parts(x)
    zeros = np.zeros(x2.shape[:-1] + (11,), dtype=complex)
    return np.concatenate([zeros, x2, x3], axis=-1)


def h3_to_m21(x):
    return np.asarray(x)[..., 11:27]


def h2_to_h3(u):
    """Embed (lambda2, lambda3, u1) as lambda2 e2 + lambda3 e3 + F1(~u1)."""
    u = np.asarray(u)
    zero = np.zeros(u.shape[:-1] + (1,), dtype=complex)
    rest = np.zeros(u.shape[:-1] + (16,), dtype=complex)
    return np.concatenate([zero, u[..., 0:1], u[..., 1:2], ctilde(u[..., 2:]), rest], axis=-1)


# ----------------------------------------------------------------------------
# systems: one object per carrier, so the generic operator code is shared

class _System:
    name = ""
    dim = 0
    rank = 0
    genus = 0

    def triple(self, x, y, z):
        raise NotImplementedError

    def quad(self, x, y):
        raise NotImplementedError

    def inner(self, x, y):
        raise NotImplementedError

    def norm(self, x, y):
        raise NotImplementedError

    def d_matrix(self, x, y) -> np.ndarray:
        eye = np.eye(self.dim, dtype=complex)
        return self.triple(x[None, :], y[None, :], eye).T

    def q_matrix(self, x) -> np.ndarray:
        """M with Q(x) y = M @ conj(y)."""
        eye = np.eye(self.dim, dtype=complex)
        return self.quad(np.broadcast_to(x, eye.shape), eye).T

    def bergman_matrix(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        y = np.asarray(y, dtype=complex)
        qx = self.q_matrix(x)
        qy = self.q_matrix(y)
        return np.eye(self.dim) - self.d_matrix(x, y) + qx @ np.conj(qy)


class _H3System(_System):
    name = "H3"
    dim = 27
    rank = 3
    genus = 18

    def triple(self, x, y, z):
        return h3_triple(x, y, z)

    def quad(self, x, y):
        return h3_quad(x, y)

    def inner(self, x, y):
        return h3_inner(x, y)

    def norm(self, x, y):
        return h3_norm(x, y)

    def sharp(self, x):
        return h3_sharp(x)


class _M21System(_System):
    name = "M21"
    dim = 16
    rank = 2
    genus = 12

    def triple(self, x, y, z):
        return m21_triple(x, y, z)

    def quad(self, x, y):
        return m21_quad(x, y)

    def inner(self, x, y):
        return m21_inner(x, y)

    def norm(self, x, y):
        return m21_norm(x, y)

    def sharp(self, x):
        return m21_sharp(x)


class _M21ViaH3(_M21System):
    """M21 operations computed inside H3 through the Peirce embedding (test oracle)."""
    name = "M21(H3)"

    def triple(self, x, y, z):
        return h3_to_m21(h3_triple(m21_to_h3(x), m21_to_h3(y), m21_to_h3(z)))

    def quad(self, x, y):
        return h3_to_m21(h3_quad(m21_to_h3(x), m21_to_h3(y)))

    def inner(self, x, y):
        return h3_inner(m21_to_h3(x), m21_to_h3(y))

    def norm(self, x, y):
        return h3_norm(m21_to_h3(x), m21_to_h3(y))


H3 = _H3System()
M21 = _M21System()
M21_VIA_H3 = _M21ViaH3()


# ----------------------------------------------------------------------------
# element types

class _Element:
    dim = 0
    system: _System = None

    __slots__ = ("coords",)

    def __init__(self, coords=None):
        if coords is None:
            coords = np.zeros(self.dim, dtype=complex)
        self.coords = np.array(coords, dtype=complex).reshape(self.dim)

    @classmethod
    def random(cls, rng, scale=1.0):
        return cls(scale * (rng.standard_normal(cls.dim) + 1j * rng.standard_normal(cls.dim)))

    def _new(self, coords):
        return type(self)(coords)

    def __add__(self, other):
        return self._new(self.coords + other.coords)

    def __sub__(self, other):
        return self._new(self.coords - other.coords)

    def __neg__(self):
        return self._new(-self.coords)

    def __mul__(self, s):
        return self._new(self.coords * s)

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self._new(self.coords / s)

    def conj(self):
        return self._new(np.conj(self.coords))

    def allclose(self, other, atol=1e-12) -> bool:
        return bool(np.allclose(self.coords, other.coords, atol=atol, rtol=0))

    def norm2(self) -> float:
        """Hermitian square (x|x)."""
        return float(np.real(inner(self, self)))

    def to_json(self) -> str:
        return json.dumps([[float(c.real), float(c.imag)] for c in self.coords])

    @classmethod
    def from_json(cls, text):
        data = json.loads(text) if isinstance(text, str) else text
        if len(data) != cls.dim:
            raise ValueError(f"{cls.__name__} needs {cls.dim} coordinates, got {len(data)}")
        return cls([complex(re, im) for re, im in data])

    def __repr__(self):
        return f"{type(self).__name__}({np.round(self.coords, 6).tolist()})"


class H3Element(_Element):
    dim = 27
    system = H3
    __slots__ = ()

    @classmethod
    def from_parts(cls, alphas=(0, 0, 0), octs=(None, None, None)):
        c = np.zeros(27, dtype=complex)
        c[:3] = alphas
        for i, o in enumerate(octs):
            if o is not None:
                c[3 + 8 * i:11 + 8 * i] = o.coords if isinstance(o, ComplexOctonion) else o
        return cls(c)

    @classmethod
    def e(cls, i: int) -> "H3Element":
        """Diagonal idempotent e_i, i in {1, 2, 3}."""
        c = np.zeros(27, dtype=complex)
        c[i - 1] = 1.0
        return cls(c)

    @classmethod
    def F(cls, i: int, a: ComplexOctonion) -> "H3Element":
        octs = [None, None, None]
        octs[i - 1] = a
        return cls.from_parts(octs=octs)

    @classmethod
    def identity(cls):
        return cls.e(1) + cls.e(2) + cls.e(3)

    @property
    def alphas(self):
        return self.coords[:3]

    def octonion(self, i: int) -> ComplexOctonion:
        return ComplexOctonion(self.coords[3 + 8 * (i - 1):11 + 8 * (i - 1)])


class M21Element(_Element):
    dim = 16
    system = M21
    __slots__ = ()

    @classmethod
    def from_parts(cls, a2=None, a3=None):
        c = np.zeros(16, dtype=complex)
        if a2 is not None:
            c[:8] = a2.coords
        if a3 is not None:
            c[8:] = a3.coords
        return cls(c)

    @property
    def a2(self) -> ComplexOctonion:
        return ComplexOctonion(self.coords[:8])

    @property
    def a3(self) -> ComplexOctonion:
        return ComplexOctonion(self.coords[8:])

    def to_h3(self) -> H3Element:
        return H3Element(m21_to_h3(self.coords))


class H2Element(_Element):
    dim = 10
    system = None
    __slots__ = ()

    @property
    def lambdas(self):
        return self.coords[:2]

    @property
    def u1(self) -> ComplexOctonion:
        return ComplexOctonion(self.coords[2:])

    def to_h3(self) -> H3Element:
        return H3Element(h2_to_h3(self.coords))


@dataclass(frozen=True)
class LinearOperator:
    """Dense matrix of a complex-linear map on the flattened carrier."""
    matrix: np.ndarray
    element_type: type

    def __call__(self, v):
        if isinstance(v, _Element):
            return self.element_type(self.matrix @ v.coords)
        return self.matrix @ np.asarray(v)

    def det(self) -> complex:
        return complex(np.linalg.det(self.matrix))

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))


# ----------------------------------------------------------------------------
# public operations

def _system_of(x) -> _System:
    if isinstance(x, H3Element):
        return H3
    if isinstance(x, M21Element):
        return M21
    raise TypeError(f"no Jordan triple structure for {type(x).__name__}")


def inner(x, y) -> complex:
    if isinstance(x, H2Element):
        return complex(h2_inner(x.coords, y.coords))
    return complex(_system_of(x).inner(x.coords, y.coords))


def bilinear(x: H3Element, y: H3Element) -> complex:
    return complex(h3_bilinear(x.coords, y.coords))


def sharp(x):
    """Adjoint x^#: H3 -> H3, M21 -> H2."""
    if isinstance(x, H3Element):
        return H3Element(h3_sharp(x.coords))
    if isinstance(x, M21Element):
        return H2Element(m21_sharp(x.coords))
    raise TypeError(type(x).__name__)


def freudenthal(x: H3Element, y: H3Element) -> H3Element:
    return H3Element(h3_cross(x.coords, y.coords))


def det3(x: H3Element) -> complex:
    return complex(h3_det(x.coords))


def triple_product(x, y, z):
    s = _system_of(x)
    return type(x)(s.triple(x.coords, y.coords, z.coords))


def quad(x, y):
    s = _system_of(x)
    return type(x)(s.quad(x.coords, y.coords))


def d_operator(x, y) -> LinearOperator:
    s = _system_of(x)
    return LinearOperator(s.d_matrix(x.coords, y.coords), type(x))


def bergman_operator(x, y) -> LinearOperator:
    """B(x,y) = I - D(x,y) + Q(x)Q(y)."""
    s = _system_of(x)
    return LinearOperator(s.bergman_matrix(x.coords, y.coords), type(x))


def quasi_inverse(x, y, max_cond: float = 1e12):
    """x^y = B(x,y)^{-1} (x - Q(x) y)."""
    s = _system_of(x)
    b = s.bergman_matrix(x.coords, y.coords)
    if not np.isfinite(b).all() or np.linalg.cond(b) > max_cond:
        raise np.linalg.LinAlgError("B(x,y) is singular")
    rhs = x.coords - s.quad(x.coords, y.coords)
    return type(x)(np.linalg.solve(b, rhs))


def generic_norm_VI(x: H3Element, y: H3Element) -> complex:
    return complex(h3_norm(x.coords, y.coords))


def generic_norm_V(x: M21Element, y: M21Element) -> complex:
    return complex(m21_norm(x.coords, y.coords))


def generic_norm(x, y) -> complex:
    return complex(_system_of(x).norm(x.coords, y.coords))


def is_tripotent(x, tol: float = TRIPOTENT_TOL) -> bool:
    t = triple_product(x, x, x)
    size = np.sqrt(max(x.norm2(), 0.0))
    err = np.sqrt(max(float(np.real(inner(t - 2 * x, t - 2 * x))), 0.0))
    return err <= tol * (1.0 + size ** 3)


def classify_tripotent(x, tol: float = TRIPOTENT_TOL):
    """Rank 0..3 of a tripotent, or the string ``"not a tripotent"``."""
    if not is_tripotent(x, tol):
        return "not a tripotent"
    atol = 1e-7
    xx = x.norm2()
    xs = sharp(x)
    ss = xs.norm2()
    if xx <= atol:
        return 0
    if isinstance(x, H3Element):
        dd = abs(det3(x)) ** 2
        if abs(xx - 1) <= atol and ss <= atol:
            return 1
        if abs(xx - 2) <= atol and abs(ss - 1) <= atol and dd <= atol:
            return 2
        if abs(xx - 3) <= atol and abs(ss - 3) <= atol and abs(dd - 1) <= atol:
            return 3
    else:
        if abs(xx - 1) <= atol and ss <= atol:
            return 1
        if abs(xx - 2) <= atol and abs(ss - 1) <= atol:
            return 2
    return "not a tripotent"


def contains_V(x: M21Element) -> bool:
    xx = x.norm2()
    ss = sharp(x).norm2()
    return (1.0 - xx + ss > 0.0) and (2.0 - xx > 0.0)


def contains_VI(x: H3Element) -> bool:
    xx = x.norm2()
    ss = sharp(x).norm2()
    dd = abs(det3(x)) ** 2
    return (1.0 - xx + ss - dd > 0.0) and (3.0 - 2.0 * xx + ss > 0.0) and (3.0 - xx > 0.0)


def random_interior(cls, rng, radius: float = 0.9):
    """Random point with (x|x) < radius**2 < 1; inside the domain since the
    spectral norm is bounded by sqrt((x|x))."""
    x = cls.random(rng)
    r = radius * rng.uniform(0.05, 1.0)
    return x * (r / np.sqrt(x.norm2()))
