"""Kähler-Einstein potential of the Hartogs domain by orbit reduction.

The potential is sought as g = -((gamma + k mu)/(d+k+1)) log N(z,z) + h(X),
X = ||Z||^2 / N(z,z)^mu.  The Monge-Ampère equation reduces to a first-order
ODE for Y0 = X h'(X) - beta,

    X (Y0 + beta)^d Y0' = Y0 S(Y0),   T^k S(T) = int_0^T ((d+k+1)t + k) t^(k-1) (t+beta)^d dt,

whose solution is written in closed quadrature form and inverted by
bracketed root-finding.  For k = 1 the polynomial S is R(T + beta), where
P(Y) = (Y - beta) R(Y) is the classical one-variable reduction.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import domains
from .exact import RationalPoly, antiderivative, divide_exact, format_rational
from .numerics import (DEFAULT_QUADRATURE, DEFAULT_ROOT_TOL, QuadratureSpec,
                       complex_hessian, find_root_monotone, integrate)

WORKERS_ENV = "HARTOGS_WORKERS"
X_ZERO_CUTOFF = 1e-10
_SPLIT = 1.0  # y <= 1 integrates U/S directly, y > 1 uses the u = 1/y tail


def _polyval(coeffs: np.ndarray, x):
    return np.polynomial.polynomial.polyval(x, coeffs)


@dataclass(frozen=True)
class ReducedProblem:
    desc: domains.DomainDescriptor
    k: int
    mu: Fraction
    beta: Fraction
    P: RationalPoly
    R: RationalPoly
    S: RationalPoly
    U: RationalPoly  # ((T+beta)^d - S(T)) / T
    C0: float
    quadrature: QuadratureSpec = field(default=DEFAULT_QUADRATURE, compare=False)
    root_tol: float = field(default=DEFAULT_ROOT_TOL, compare=False)

    @property
    def d(self) -> int:
        return self.desc.d

    @property
    def n(self) -> int:
        return self.desc.d + self.k

    @property
    def g_coefficient(self) -> Fraction:
        return (self.desc.gamma + self.k * self.mu) / (self.d + self.k + 1)

    @property
    def is_critical(self) -> bool:
        return self.beta == 1

    # float views of the polynomials used inside the integrands
    @property
    def _fS(self):
        return np.array(self.S.float_coeffs())

    @property
    def _fU(self):
        return np.array(self.U.float_coeffs())

    def as_dict(self) -> dict:
        return {
            "descriptor": self.desc.as_dict(),
            "k": self.k,
            "mu": format_rational(self.mu),
            "beta": format_rational(self.beta),
            "C0": self.C0,
        }


def beta_of(desc: domains.DomainDescriptor, k: int, mu) -> Fraction:
    mu = Fraction(mu)
    return (desc.gamma + k * mu) / (mu * (desc.d + k + 1))


def p_poly(desc: domains.DomainDescriptor, mu) -> RationalPoly:
    """P(Y) = Y^(d+2) - beta^(d+2) - (gamma/(mu(d+1))) (Y^(d+1) - beta^(d+1)), k = 1."""
    d = desc.d
    beta = beta_of(desc, 1, mu)
    lam = Fraction(desc.gamma) / (Fraction(mu) * (d + 1))
    Y = RationalPoly.monomial(1)
    return (Y ** (d + 2) - RationalPoly.constant(beta ** (d + 2))
            - (Y ** (d + 1) - RationalPoly.constant(beta ** (d + 1))) * lam)


def s_poly(d: int, k: int, beta: Fraction) -> RationalPoly:
    """S from T^k S(T) = int_0^T ((d+k+1)t + k) t^(k-1) (t+beta)^d dt."""
    t = RationalPoly.monomial(1)
    integrand = RationalPoly.linear(k, d + k + 1) * RationalPoly.monomial(k - 1) * (t + beta) ** d
    quot, rem = divide_exact(antiderivative(integrand), RationalPoly.monomial(k))
    if not rem.is_zero():
        raise ArithmeticError("antiderivative is not divisible by T^k")
    return quot


def _check_removable(U: RationalPoly, S: RationalPoly, beta: Fraction, d: int):
    y = 1e-8
    direct = ((y + float(beta)) ** d - S(y)) / y
    scale = 1.0 + abs(U(0.0)) + float(beta) ** d * 1e-8 / y
    if abs(direct - U(y)) > 1e-5 * scale:
        raise ArithmeticError("singularity of the reduced integrand at 0 is not removable")


def _c0(U: RationalPoly, S: RationalPoly, beta: Fraction, d: int, spec: QuadratureSpec):
    fU, fS = np.array(U.float_coeffs()), np.array(S.float_coeffs())
    head, e1 = integrate(lambda y: _polyval(fU, y) / _polyval(fS, y), 0.0, _SPLIT, spec)
    tail, e2 = _tail(S, beta, d, 1.0 / _SPLIT, spec)
    return math.log(_SPLIT) + head + tail, e1 + e2


def _tail(S: RationalPoly, beta: Fraction, d: int, upper: float, spec: QuadratureSpec):
    """int_{1/upper}^inf (y+beta)^d / (y S(y)) dy, written in u = 1/y on [0, upper]."""
    srev = np.array(S.float_coeffs()[::-1])  # u^(d+1) S(1/u), S monic so srev(0) = 1
    b = float(beta)
    return integrate(lambda u: (1.0 + b * u) ** d / _polyval(srev, u), 0.0, upper, spec)


def build_problem(desc: domains.DomainDescriptor, k: int, mu,
                  quadrature: QuadratureSpec = DEFAULT_QUADRATURE,
                  root_tol: float = DEFAULT_ROOT_TOL) -> ReducedProblem:
    if isinstance(mu, float):
        raise TypeError("mu must be an exact rational")
    mu = Fraction(mu)
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be an integer >= 1")
    if mu <= 0:
        raise ValueError("mu must be positive")
    d = desc.d
    beta = beta_of(desc, k, mu)
    P = p_poly(desc, mu)
    R, rem = divide_exact(P, RationalPoly.linear(-beta_of(desc, 1, mu), 1))
    if not rem.is_zero():
        raise ArithmeticError("P does not vanish at beta")
    S = s_poly(d, k, beta)
    U, rem = divide_exact((RationalPoly.linear(beta, 1) ** d) - S, RationalPoly.monomial(1))
    if not rem.is_zero():
        raise ArithmeticError("S(0) != beta^d")
    _check_removable(U, S, beta, d)
    C0, _ = _c0(U, S, beta, d, quadrature)
    return ReducedProblem(desc, k, mu, beta, P, R, S, U, C0, quadrature, root_tol)


# ----------------------------------------------------------------------------
# the map Y0 -> X and its inverse

def _log_ratio(problem: ReducedProblem, y0: float):
    """log(Y0 / X(Y0)) for Y0 > 0, with the quadrature error estimate."""
    if y0 <= _SPLIT:
        fU, fS = problem._fU, problem._fS
        val, err = integrate(lambda y: _polyval(fU, y) / _polyval(fS, y), 0.0, y0, problem.quadrature)
        return problem.C0 - val, err
    tail, err = _tail(problem.S, problem.beta, problem.d, 1.0 / y0, problem.quadrature)
    return math.log(y0) + tail, err


def log_X_of_Y0(problem: ReducedProblem, y0: float) -> float:
    if y0 <= 0:
        return -math.inf
    return math.log(y0) - _log_ratio(problem, y0)[0]


def X_of_Y(problem: ReducedProblem, Y: float) -> float:
    """Inverse of :func:`solve_Y`: the X at which the solution reaches Y >= beta."""
    y0 = Y - float(problem.beta)
    if y0 < 0:
        raise ValueError("Y must be >= beta")
    return math.exp(log_X_of_Y0(problem, y0))


@dataclass(frozen=True)
class Solution:
    X: float
    Y0: float
    Y: float
    log_ratio: float  # log(Y0/X), the X -> 0 limit when X is 0
    quad_error: float
    bracket_width: float


def _solve(problem: ReducedProblem, X: float) -> Solution:
    X = float(X)
    if not 0.0 <= X < 1.0:
        raise ValueError(f"X must lie in [0, 1), got {X}")
    beta = float(problem.beta)
    if X < X_ZERO_CUTOFF:
        return Solution(X, 0.0, beta, problem.C0, 0.0, 0.0)
    target = math.log(X)

    def f(y0):
        return log_X_of_Y0(problem, y0) - target

    # near 0, Y0 ~ X e^C0; walk outwards until the sign changes
    lo = 0.5 * X * math.exp(problem.C0)
    while f(lo) > 0:
        lo *= 0.5
    hi = max(beta + 1.0, 2.0 * lo)
    while f(hi) < 0:
        hi *= 2.0
    y0 = find_root_monotone(f, lo, hi, problem.root_tol)
    lr, err = _log_ratio(problem, y0)
    return Solution(X, y0, y0 + beta, lr, err, hi - lo)


def solve_Y(problem: ReducedProblem, X: float):
    """(Y0, Y) at X, with Y = Y0 + beta."""
    s = _solve(problem, X)
    return s.Y0, s.Y


def _h_from(problem: ReducedProblem, s: Solution) -> float:
    d, k = problem.d, problem.k
    S_val = problem.S(s.Y0) if s.Y0 else float(problem.beta) ** d
    return (d * math.log(problem.mu) + k * s.log_ratio + math.log(S_val)) / (d + k + 1)


def h_eval(problem: ReducedProblem, X: float) -> float:
    """h(X) = [d log mu + k log(Y0/X) + log S(Y0)] / (d+k+1)."""
    return _h_from(problem, _solve(problem, X))


# ----------------------------------------------------------------------------
# potentials

def _x_coordinate(desc, mu, z, Z):
    Z = np.atleast_1d(np.asarray(Z, dtype=complex))
    N = domains.generic_norm_self(desc, z)
    return N, float(np.vdot(Z, Z).real)


def g_eval(problem: ReducedProblem, z, Z) -> float:
    desc = problem.desc
    if not domains.hartogs_contains(desc, problem.k, problem.mu, z, Z):
        raise domains.DomainError("point is outside the Hartogs domain")
    N, zz = _x_coordinate(desc, problem.mu, z, Z)
    X = zz / N ** float(problem.mu)
    return -float(problem.g_coefficient) * math.log(N) + h_eval(problem, X)


@dataclass(frozen=True)
class GeneratingFunction:
    problem: ReducedProblem
    closed_form: bool = False

    def __post_init__(self):
        if self.closed_form and self.problem.mu != self.problem.desc.mu0:
            raise ValueError("the closed form only holds at the critical exponent")

    def __call__(self, z, Z) -> float:
        if not self.closed_form:
            return g_eval(self.problem, z, Z)
        p = self.problem
        if not domains.hartogs_contains(p.desc, p.k, p.mu, z, Z):
            raise domains.DomainError("point is outside the Hartogs domain")
        N, zz = _x_coordinate(p.desc, p.mu, z, Z)
        mu0 = p.desc.mu0
        return (p.d / (p.d + p.k + 1)) * math.log(mu0) - math.log(N ** float(mu0) - zz)


def critical_closed_form(desc: domains.DomainDescriptor, k: int) -> GeneratingFunction:
    """g = (d/(d+k+1)) log mu0 - log(N^mu0 - ||Z||^2); no quadrature involved."""
    return GeneratingFunction(build_problem(desc, k, desc.mu0), closed_form=True)


def ma_residual(gen, z, Z, step: float = 1e-3) -> float:
    """Relative Monge-Ampère defect |det H - e^((n+1)g)| / e^((n+1)g).

    ``gen`` is a :class:`GeneratingFunction` or a :class:`ReducedProblem`
    (numerically solved h).  The Hessian is taken in coordinates that are
    orthonormal for the generic trace on the base and standard on the fiber.
    """
    if isinstance(gen, ReducedProblem):
        gen = GeneratingFunction(gen)
    p = gen.problem
    d, k = p.d, p.k
    w0 = domains.from_point(p.desc, z)
    Z = np.atleast_1d(np.asarray(Z, dtype=complex))
    v0 = np.concatenate([w0, Z])

    def f(v):
        try:
            return gen(domains.to_point(p.desc, v[:d]), v[d:])
        except domains.DomainError as exc:
            raise ValueError(f"finite-difference stencil leaves the domain: {exc}") from exc

    H = complex_hessian(f, v0, step=step)
    rhs = math.exp((p.n + 1) * f(v0))
    return abs(H.det() - rhs) / rhs


# ----------------------------------------------------------------------------
# profiles

@dataclass(frozen=True)
class KEProfile:
    problem: ReducedProblem
    rows: tuple  # (Solution, h) pairs in grid order

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["X", "Y0", "Y", "h"])
        for s, h in self.rows:
            w.writerow([f"{v:.17g}" for v in (s.X, s.Y0, s.Y, h)])
        return buf.getvalue()

    def as_dict(self) -> dict:
        return {
            "problem": self.problem.as_dict(),
            "rows": [
                {"X": s.X, "Y0": s.Y0, "Y": s.Y, "h": h,
                 "quad_error": s.quad_error, "bracket_width": s.bracket_width}
                for s, h in self.rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def _profile_point(args):
    problem, X = args
    s = _solve(problem, X)
    return s, _h_from(problem, s)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def solve_profile(problem: ReducedProblem, grid, workers: int | None = None) -> KEProfile:
    """Solve on every grid point; rows keep grid order whatever the pool does."""
    grid = [float(x) for x in grid]
    workers = worker_count() if workers is None else workers
    jobs = [(problem, X) for X in grid]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_profile_point, jobs))
    else:
        rows = [_profile_point(j) for j in jobs]
    return KEProfile(problem, tuple(rows))
