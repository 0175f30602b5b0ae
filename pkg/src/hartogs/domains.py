"""The six families of irreducible bounded symmetric domains.

Points are given in the natural realisation of each family:

* I(m,n): complex m x n matrix
* II(n): complex alternating n x n matrix
* III(n): complex symmetric n x n matrix
* IV(n): complex n-vector (Lie ball)
* V: :class:`~hartogs.exceptional.M21Element` or a length-16 array
* VI: :class:`~hartogs.exceptional.H3Element` or a length-27 array

``to_point``/``from_point`` convert between a point and its coordinates in a
basis that is orthonormal for the generic trace m1, i.e. the coordinates in
which -dd^c log N(z,z) is the identity at the origin.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import exceptional as ex
from .exact import RationalPoly, format_rational, pochhammer

FAMILIES = ("I", "II", "III", "IV", "V", "VI")

_SQRT2 = np.sqrt(2.0)


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class DomainDescriptor:
    family: str
    params: tuple
    r: int
    a: int
    b: int
    d: int
    gamma: int
    mu0: Fraction = field(compare=False)

    @property
    def label(self) -> str:
        if self.params:
            return f"{self.family}({','.join(map(str, self.params))})"
        return self.family

    @property
    def is_tube(self) -> bool:
        return self.b == 0

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "params": list(self.params),
            "r": self.r,
            "a": self.a,
            "b": self.b,
            "d": self.d,
            "gamma": self.gamma,
            "mu0": format_rational(self.mu0),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    def __str__(self):
        return self.label


def make_descriptor(family: str, *params) -> DomainDescriptor:
    """Build the descriptor of a family with its numerical invariants.

    >>> make_descriptor("IV", 3).mu0
    Fraction(3, 4)
    """
    family = str(family).upper()
    if len(params) == 1 and isinstance(params[0], (tuple, list)):
        params = tuple(params[0])
    params = tuple(int(p) for p in params)

    def need(k):
        if len(params) != k:
            raise DomainError(f"type {family} takes {k} parameter(s), got {params}")

    if family == "I":
        need(2)
        m, n = params
        if not 1 <= m <= n:
            raise DomainError("type I(m,n) needs 1 <= m <= n")
        r, a, b, d = m, 2, n - m, m * n
    elif family == "II":
        need(1)
        (n,) = params
        if n < 2:
            raise DomainError("type II(n) needs n >= 2")
        r, a, b, d = n // 2, 4, (0 if n % 2 == 0 else 2), n * (n - 1) // 2
    elif family == "III":
        need(1)
        (n,) = params
        if n < 1:
            raise DomainError("type III(n) needs n >= 1")
        r, a, b, d = n, 1, 0, n * (n + 1) // 2
    elif family == "IV":
        need(1)
        (n,) = params
        if n < 3:
            raise DomainError("type IV(n) needs n >= 3")
        r, a, b, d = 2, n - 2, 0, n
    elif family == "V":
        need(0)
        r, a, b, d = 2, 6, 4, 16
    elif family == "VI":
        need(0)
        r, a, b, d = 3, 8, 0, 27
    else:
        raise DomainError(f"unknown family {family!r}")
    gamma = 2 + a * (r - 1) + b
    return DomainDescriptor(family, params, r, a, b, d, gamma, Fraction(gamma, d + 1))


def parse_descriptor(text: str) -> DomainDescriptor:
    """Parse labels such as ``"IV(3)"``, ``"I(2,3)"``, ``"IV3"`` or ``"V"``."""
    s = text.strip().upper().replace(" ", "")
    fam = s.rstrip("0123456789(),_")
    rest = s[len(fam):].strip("()_")
    params = [p for p in rest.replace("_", ",").split(",") if p]
    return make_descriptor(fam, *params)


# ----------------------------------------------------------------------------
# Hua polynomial

def hua_poly(desc: DomainDescriptor) -> RationalPoly:
    """chi(s) = prod_{j=1}^r (s + 1 + (j-1) a/2)_{1 + b + (r-j) a}."""
    s = RationalPoly.linear(0, 1)
    chi = RationalPoly([1])
    for j in range(1, desc.r + 1):
        shift = 1 + Fraction((j - 1) * desc.a, 2)
        chi = chi * pochhammer(s + shift, 1 + desc.b + (desc.r - j) * desc.a)
    closed = hua_poly_closed_form(desc)
    if chi != closed:
        raise AssertionError(f"Hua polynomial of {desc} disagrees with its closed form")
    return chi


def hua_poly_closed_form(desc: DomainDescriptor) -> RationalPoly:
    """Per-family product formulas for chi."""
    s = RationalPoly.linear(0, 1)
    fam, p = desc.family, desc.params

    def prod(factors):
        out = RationalPoly([1])
        for shift, n in factors:
            out = out * pochhammer(s + shift, n)
        return out

    if fam == "I":
        m, n = p
        return prod((j, n) for j in range(1, m + 1))
    if fam == "II":
        (n,) = p
        q = n // 2
        length = 2 * q - 1 if n % 2 == 0 else 2 * q + 1
        return prod((2 * j - 1, length) for j in range(1, q + 1))
    if fam == "III":
        (n,) = p
        return prod((Fraction(j + 1, 2), 1 + n - j) for j in range(1, n + 1))
    if fam == "IV":
        (n,) = p
        return prod([(1, n - 1), (Fraction(n, 2), 1)])
    if fam == "V":
        return prod([(1, 8), (4, 8)])
    if fam == "VI":
        return prod([(1, 9), (5, 9), (9, 9)])
    raise DomainError(fam)


# ----------------------------------------------------------------------------
# points and coordinates

def _check_shape(desc: DomainDescriptor, z) -> np.ndarray:
    fam = desc.family
    if fam == "V" and isinstance(z, ex.M21Element):
        return z.coords
    if fam == "VI" and isinstance(z, ex.H3Element):
        return z.coords
    z = np.asarray(z, dtype=complex)
    if fam == "I":
        shape = tuple(desc.params)
    elif fam in ("II", "III"):
        shape = (desc.params[0], desc.params[0])
    elif fam == "IV":
        shape = (desc.params[0],)
    elif fam == "V":
        shape = (16,)
    else:
        shape = (27,)
    if z.shape != shape:
        raise DomainError(f"{desc.label} expects a point of shape {shape}, got {z.shape}")
    return z


def to_point(desc: DomainDescriptor, w) -> np.ndarray:
    """Map m1-orthonormal coordinates (length d) to a point of the domain's space."""
    w = np.asarray(w, dtype=complex)
    if w.shape != (desc.d,):
        raise DomainError(f"{desc.label} has {desc.d} coordinates, got {w.shape}")
    fam = desc.family
    if fam == "I":
        return w.reshape(desc.params)
    if fam == "II":
        n = desc.params[0]
        z = np.zeros((n, n), dtype=complex)
        iu = np.triu_indices(n, 1)
        z[iu] = w
        return z - z.T
    if fam == "III":
        n = desc.params[0]
        z = np.zeros((n, n), dtype=complex)
        z[np.diag_indices(n)] = w[:n]
        iu = np.triu_indices(n, 1)
        z[iu] = w[n:] / _SQRT2
        return z + np.triu(z, 1).T
    if fam == "IV":
        return w / _SQRT2
    if fam == "V":
        return w / _SQRT2
    out = w.copy()
    out[3:] /= _SQRT2
    return out


def from_point(desc: DomainDescriptor, z) -> np.ndarray:
    z = _check_shape(desc, z)
    fam = desc.family
    if fam == "I":
        return z.reshape(-1).copy()
    if fam == "II":
        return z[np.triu_indices(desc.params[0], 1)].copy()
    if fam == "III":
        n = desc.params[0]
        return np.concatenate([np.diag(z), _SQRT2 * z[np.triu_indices(n, 1)]])
    if fam in ("IV", "V"):
        return _SQRT2 * z
    out = z.copy()
    out[3:] *= _SQRT2
    return out


def random_point(desc: DomainDescriptor, rng: np.random.Generator, radius: float = 0.9):
    """Random interior point with m1(z,z) <= radius**2 (spectral norm <= radius)."""
    w = rng.standard_normal(desc.d) + 1j * rng.standard_normal(desc.d)
    w *= radius * rng.uniform(0.0, 1.0) / np.linalg.norm(w)
    return to_point(desc, w)


# ----------------------------------------------------------------------------
# generic norm and membership

def spectral_values(desc: DomainDescriptor, z) -> np.ndarray:
    """Squared spectral values lambda_i^2 (r of them, decreasing) for I, II, III."""
    z = _check_shape(desc, z)
    fam = desc.family
    if fam not in ("I", "II", "III"):
        raise DomainError("spectral values are only computed for matrix families")
    from .numerics import hermitian_eigenvalues
    lam = np.asarray(hermitian_eigenvalues(z @ z.conj().T))
    if fam == "II":
        # eigenvalues of z z* come in equal pairs
        lam = 0.5 * (lam[0:2 * desc.r:2] + lam[1:2 * desc.r:2])
    return lam[:desc.r]


def _q(x):
    return np.sum(x * x)


def generic_norm_self(desc: DomainDescriptor, z) -> float:
    """N(z,z); real, positive exactly on the domain."""
    fam = desc.family
    zz = _check_shape(desc, z)
    if fam in ("I", "II", "III"):
        return float(np.prod(1.0 - spectral_values(desc, zz)))
    if fam == "IV":
        return float(1.0 - 2.0 * np.vdot(zz, zz).real + abs(_q(zz)) ** 2)
    if fam == "V":
        return float(np.real(ex.m21_norm(zz, zz)))
    return float(np.real(ex.h3_norm(zz, zz)))


def generic_norm(desc: DomainDescriptor, z, w) -> complex:
    """Two-point generic norm N(z, w); not exposed for type II."""
    fam = desc.family
    z = _check_shape(desc, z)
    w = _check_shape(desc, w)
    if fam in ("I", "III"):
        return complex(np.linalg.det(np.eye(z.shape[0]) - z @ w.conj().T))
    if fam == "IV":
        return complex(1.0 - 2.0 * np.sum(z * np.conj(w)) + _q(z) * np.conj(_q(w)))
    if fam == "V":
        return complex(ex.m21_norm(z, w))
    if fam == "VI":
        return complex(ex.h3_norm(z, w))
    raise DomainError("two-point generic norm is not provided for type II")


def contains(desc: DomainDescriptor, z) -> bool:
    fam = desc.family
    zz = _check_shape(desc, z)
    if fam in ("I", "II", "III"):
        return bool(np.all(spectral_values(desc, zz) < 1.0))
    if fam == "IV":
        s = 2.0 * np.vdot(zz, zz).real
        return bool(1.0 - s + abs(_q(zz)) ** 2 > 0.0 and 2.0 - s > 0.0)
    if fam == "V":
        return ex.contains_V(ex.M21Element(zz))
    return ex.contains_VI(ex.H3Element(zz))


def hartogs_contains(desc: DomainDescriptor, k: int, mu, z, Z) -> bool:
    """(z, Z) in the Hartogs domain ||Z||^2 < N(z,z)^mu over the domain."""
    Z = np.atleast_1d(np.asarray(Z, dtype=complex))
    if Z.shape != (k,):
        raise DomainError(f"fiber point must have {k} coordinates, got {Z.shape}")
    if mu <= 0 or k < 1:
        raise DomainError("need mu > 0 and k >= 1")
    if not contains(desc, z):
        return False
    return float(np.vdot(Z, Z).real) < generic_norm_self(desc, z) ** float(mu)
