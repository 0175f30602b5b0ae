"""Complex octonions O_C = C (x) O.

An octonion is stored as 8 complex coordinates against the basis
e0 (unit), e1, ..., e7.  The array-level functions (``omul``, ``ctilde`` ...)
broadcast over leading axes, which is what the 27-dimensional Jordan code
uses; :class:`ComplexOctonion` is the user-facing value type.

Multiplication table: e_i e_j = e_k for the seven cyclic triples
(i, i+1, i+3) mod 7, i.e. (1,2,4), (2,3,5), (3,4,6), (4,5,7), (5,6,1),
(6,7,2), (7,1,3); e_i^2 = -e0.
"""
from __future__ import annotations

import numpy as np

FANO_TRIPLES = ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3))

SCALAR_TOL = 1e-12


def _structure_constants() -> np.ndarray:
    m = np.zeros((8, 8, 8))
    for i in range(8):
        m[0, i, i] = 1.0
        m[i, 0, i] = 1.0
    for i in range(1, 8):
        m[i, i, 0] = -1.0
    for i, j, k in FANO_TRIPLES:
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            m[a, b, c] = 1.0
            m[b, a, c] = -1.0
    return m


STRUCTURE = _structure_constants()
_CONJ_SIGN = np.array([1.0] + [-1.0] * 7)


def omul(a, b) -> np.ndarray:
    """Octonion product on coordinate arrays of shape (..., 8)."""
    return np.einsum("...i,...j,ijk->...k", a, b, STRUCTURE, optimize=True)


def ctilde(a) -> np.ndarray:
    """Cayley conjugation a -> a~ (negates e1..e7)."""
    return np.asarray(a) * _CONJ_SIGN


def cnorm_arr(a) -> np.ndarray:
    """n(a) = a a~ as a complex scalar; equals the (bilinear) sum of squares."""
    a = np.asarray(a)
    return np.sum(a * a, axis=-1)


def bilinear_arr(a, b) -> np.ndarray:
    """(a:b) = a b~ + a~ b = 2 * sum_i a_i b_i."""
    return 2.0 * np.sum(np.asarray(a) * np.asarray(b), axis=-1)


def hermitian_arr(a, b) -> np.ndarray:
    """(a|b) = (a : conj b)."""
    return 2.0 * np.sum(np.asarray(a) * np.conj(b), axis=-1)


class ComplexOctonion:
    __slots__ = ("coords",)

    def __init__(self, coords=None):
        if coords is None:
            coords = np.zeros(8, dtype=complex)
        c = np.array(coords, dtype=complex).reshape(8)
        self.coords = c

    @classmethod
    def basis(cls, i: int) -> "ComplexOctonion":
        c = np.zeros(8, dtype=complex)
        c[i] = 1.0
        return cls(c)

    @classmethod
    def random(cls, rng: np.random.Generator, scale: float = 1.0) -> "ComplexOctonion":
        return cls(scale * (rng.standard_normal(8) + 1j * rng.standard_normal(8)))

    def __add__(self, other):
        return ComplexOctonion(self.coords + other.coords)

    def __sub__(self, other):
        return ComplexOctonion(self.coords - other.coords)

    def __neg__(self):
        return ComplexOctonion(-self.coords)

    def __mul__(self, other):
        if isinstance(other, ComplexOctonion):
            return mul(self, other)
        return ComplexOctonion(self.coords * other)

    def __rmul__(self, other):
        return ComplexOctonion(self.coords * other)

    def __truediv__(self, s):
        return ComplexOctonion(self.coords / s)

    def __eq__(self, other):
        return isinstance(other, ComplexOctonion) and np.array_equal(self.coords, other.coords)

    def allclose(self, other, atol=1e-12) -> bool:
        return bool(np.allclose(self.coords, other.coords, atol=atol, rtol=0))

    def conj(self) -> "ComplexOctonion":
        """Complex conjugation of the coordinates (not Cayley conjugation)."""
        return ComplexOctonion(np.conj(self.coords))

    def __repr__(self):
        return f"ComplexOctonion({self.coords.tolist()})"


def mul(a: ComplexOctonion, b: ComplexOctonion) -> ComplexOctonion:
    return ComplexOctonion(omul(a.coords, b.coords))


def cayley_conj(a: ComplexOctonion) -> ComplexOctonion:
    return ComplexOctonion(ctilde(a.coords))


def _scalar_part(x: np.ndarray, what: str) -> complex:
    scale = 1.0 + float(np.max(np.abs(x)))
    if np.max(np.abs(x[1:])) > SCALAR_TOL * scale:
        raise ArithmeticError(f"{what} is not a multiple of e0: {x}")
    return complex(x[0])


def cnorm(a: ComplexOctonion) -> complex:
    """Cayley norm n(a) = a a~, read off as the e0 coefficient."""
    return _scalar_part(omul(a.coords, ctilde(a.coords)), "a a~")


def trace(a: ComplexOctonion) -> complex:
    """t(a) = a + a~."""
    return _scalar_part(a.coords + ctilde(a.coords), "a + a~")


def bilinear(a: ComplexOctonion, b: ComplexOctonion) -> complex:
    """(a:b) = a b~ + b a~ = t(a b~), the polarization of 2 n(a)."""
    prod = omul(a.coords, ctilde(b.coords)) + omul(b.coords, ctilde(a.coords))
    return _scalar_part(prod, "(a:b)")


def hermitian(a: ComplexOctonion, b: ComplexOctonion) -> complex:
    """(a|b) = (a : conj b)."""
    return bilinear(a, b.conj())
