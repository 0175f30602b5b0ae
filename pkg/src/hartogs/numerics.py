"""Floating-point kernels: quadrature, bracketed roots, complex Hessians, spectra."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate as _integrate
from scipy import optimize as _optimize


class QuadratureError(ArithmeticError):
    pass


class RootBracketError(ValueError):
    pass


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be strictly positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_QUADRATURE = QuadratureSpec()
DEFAULT_ROOT_TOL = 1e-12
DEFAULT_HESSIAN_STEP = 1e-3


def integrate(f, a: float, b: float, spec: QuadratureSpec = DEFAULT_QUADRATURE):
    """Adaptive Gauss-Kronrod quadrature of a smooth integrand on [a, b].

    Returns ``(value, error_estimate)``.  Infinite limits are not accepted:
    callers map tails to a finite interval first.
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integrate only takes finite limits; substitute y = 1/u first")
    if a == b:
        return 0.0, 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        value, err, info = _integrate.quad(
            f, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
            limit=spec.max_subdivisions, full_output=True)[:3]
    if not math.isfinite(value) or not math.isfinite(err):
        raise QuadratureError(f"non-finite integrand on [{a}, {b}]")
    if err > max(spec.abs_tol, spec.rel_tol * abs(value)):
        raise QuadratureError(
            f"tolerance not reached on [{a}, {b}]: value={value}, err={err}, "
            f"neval={info.get('neval')}")
    return value, err


def find_root_monotone(f, lo: float, hi: float, tol: float = DEFAULT_ROOT_TOL) -> float:
    """Root of a continuous monotone function on a sign-changing bracket."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if flo * fhi > 0:
        raise RootBracketError(f"no sign change on [{lo}, {hi}]: f={flo}, {fhi}")
    return _optimize.brentq(f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500)


@dataclass(frozen=True)
class ComplexHessian:
    """Estimates of d^2 f / dz_i dzbar_j and an error bound per entry."""
    matrix: np.ndarray
    error: float

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def det(self) -> float:
        return float(np.real(np.linalg.det(self.matrix)))


def _real_hessian(F, u0: np.ndarray, h: float) -> np.ndarray:
    m = u0.size
    f0 = F(u0)
    H = np.empty((m, m))
    e = np.eye(m) * h
    fp = np.array([F(u0 + e[i]) for i in range(m)])
    fm = np.array([F(u0 - e[i]) for i in range(m)])
    for i in range(m):
        H[i, i] = (fp[i] - 2.0 * f0 + fm[i]) / (h * h)
        for j in range(i + 1, m):
            v = (F(u0 + e[i] + e[j]) - F(u0 + e[i] - e[j])
                 - F(u0 - e[i] + e[j]) + F(u0 - e[i] - e[j])) / (4.0 * h * h)
            H[i, j] = H[j, i] = v
    return H


def _to_complex(Hr: np.ndarray, n: int) -> np.ndarray:
    xx = Hr[:n, :n]
    yy = Hr[n:, n:]
    xy = Hr[:n, n:]  # d/dx_i d/dy_j
    yx = Hr[n:, :n]  # d/dy_i d/dx_j
    return 0.25 * ((xx + yy) + 1j * (xy - yx))


def complex_hessian(f, z, step: float = DEFAULT_HESSIAN_STEP, richardson: bool = True) -> ComplexHessian:
    """Central-difference estimate of (d^2 f / dz_i dzbar_j) for real-valued f.

    With ``richardson`` the estimates at ``step`` and ``step/2`` are combined
    as (4 H(h/2) - H(h)) / 3.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    z = np.asarray(z, dtype=complex).ravel()
    n = z.size

    def F(u):
        val = f(u[:n] + 1j * u[n:])
        val = float(val)
        if not math.isfinite(val):
            raise ValueError(f"non-finite function value at stencil point {u[:n] + 1j * u[n:]}")
        return val

    u0 = np.concatenate([z.real, z.imag])
    H1 = _to_complex(_real_hessian(F, u0, step), n)
    if not richardson:
        return ComplexHessian(H1, float("nan"))
    H2 = _to_complex(_real_hessian(F, u0, step / 2), n)
    H = (4.0 * H2 - H1) / 3.0
    return ComplexHessian(H, float(np.max(np.abs(H2 - H1))) / 3.0)


def hermitian_eigenvalues(M, tol: float = 1e-10) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix in decreasing order."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("square matrix required")
    scale = 1.0 + (np.max(np.abs(M)) if M.size else 0.0)
    if M.size and np.max(np.abs(M - M.conj().T)) > tol * scale:
        raise ValueError("matrix is not Hermitian")
    return np.linalg.eigvalsh(0.5 * (M + M.conj().T))[::-1]
