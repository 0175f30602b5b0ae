"""Named randomized/exact invariant checks, grouped into suites.

Each check takes a numpy Generator and a trial count and returns
``(ok, worst, note)``.  The CLI prints one line per check.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np
from scipy import integrate as _sp_integrate

from . import bergman, domains, exceptional as ex, kemetric, octonion as oc
from .exact import (RationalPoly, expand_binomial_basis, format_rational,
                    parse_rational, pochhammer, shift_argument,
                    synthesize_binomial_basis)
from .numerics import complex_hessian, hermitian_eigenvalues, integrate

DEFAULT_TRIALS = {"identity": 200, "determinant": 50, "ma": 20, "exact": 100, "light": 20}


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    trials: int
    worst: float
    note: str = ""

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        extra = f"  {self.note}" if self.note else ""
        return f"{tag} {self.name:<40s} trials={self.trials:<4d} worst={self.worst:.3g}{extra}"


_REGISTRY = {}


def check(suite: str, name: str, kind: str = "light"):
    def deco(fn):
        _REGISTRY[f"{suite}.{name}"] = (suite, kind, fn)
        return fn
    return deco


def suites() -> list:
    return sorted({s for s, _, _ in _REGISTRY.values()})


def checks_in(suite: str) -> list:
    if suite == "all":
        return list(_REGISTRY)
    names = [n for n, (s, _, _) in _REGISTRY.items() if s == suite]
    if not names:
        raise KeyError(f"unknown suite {suite!r}; choose from {', '.join(suites() + ['all'])}")
    return names


def _run_one(args) -> CheckResult:
    name, seed, trials = args
    _, kind, fn = _REGISTRY[name]
    n = trials if trials is not None else DEFAULT_TRIALS[kind]
    rng = np.random.default_rng([seed, _stable_hash(name)])
    try:
        ok, worst, note = fn(rng, n)
    except Exception as exc:  # a crash is a failed invariant, reported on its line
        return CheckResult(name, False, n, float("nan"), f"error: {exc!r}")
    return CheckResult(name, bool(ok), n, float(worst), note)


def _stable_hash(s: str) -> int:
    h = 0
    for ch in s:
        h = (h * 131 + ord(ch)) % (2 ** 31)
    return h


def run_suite(suite: str, seed: int = 0, trials: int | None = None, workers: int = 1) -> list:
    """Run every check of ``suite``; results come back in registry order."""
    jobs = [(n, seed, trials) for n in checks_in(suite)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_one, jobs))
    return [_run_one(j) for j in jobs]


# ----------------------------------------------------------------------------
# helpers

def random_poly(rng, max_degree: int = 8) -> RationalPoly:
    deg = int(rng.integers(0, max_degree + 1))
    return RationalPoly([Fraction(int(rng.integers(-50, 51)), int(rng.integers(1, 13)))
                         for _ in range(deg + 1)])


def random_descriptor(rng, small: bool = False) -> domains.DomainDescriptor:
    fam = domains.FAMILIES[int(rng.integers(0, 6))]
    hi = 4 if small else 6
    if fam == "I":
        n = int(rng.integers(1, hi + 1))
        return domains.make_descriptor("I", int(rng.integers(1, n + 1)), n)
    if fam == "II":
        return domains.make_descriptor("II", int(rng.integers(2, hi + 2)))
    if fam == "III":
        return domains.make_descriptor("III", int(rng.integers(1, hi + 1)))
    if fam == "IV":
        return domains.make_descriptor("IV", int(rng.integers(3, hi + 4)))
    return domains.make_descriptor(fam)


def random_mu(rng, hi: int = 2) -> Fraction:
    q = int(rng.integers(1, 40))
    return Fraction(int(rng.integers(1, hi * q + 1)), q)


def _unit(cls, rng):
    x = cls.random(rng)
    return x * (1.0 / math.sqrt(x.norm2()))


def _norm(v) -> float:
    return float(np.linalg.norm(np.asarray(v)))


# ----------------------------------------------------------------------------
# exact

@check("exact", "binomial_left_inverse", "exact")
def _(rng, n):
    bad = 0
    for _ in range(n):
        p = random_poly(rng)
        q = synthesize_binomial_basis(expand_binomial_basis(p))
        bad += any(q(Fraction(k)) != p(Fraction(k)) for k in range(max(p.degree(), 0) + 1))
        bad += q != p
    return bad == 0, bad, "exact"


@check("exact", "binomial_sum_is_p0", "exact")
def _(rng, n):
    bad = sum(sum(expand_binomial_basis(p), Fraction(0)) != p(Fraction(0))
              for p in (random_poly(rng) for _ in range(n)))
    return bad == 0, bad, "exact"


def binomial_linear_solve(p: RationalPoly) -> list:
    """Oracle: solve sum_j c_j binom(k+j, j) = p(k), k = 0..d, by Gaussian elimination."""
    d = max(p.degree(), 0)
    A = [[Fraction(comb(k + j, j)) for j in range(d + 1)] + [p(Fraction(k))] for k in range(d + 1)]
    for col in range(d + 1):
        piv = next(r for r in range(col, d + 1) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        for r in range(d + 1):
            if r != col and A[r][col] != 0:
                f = A[r][col] / A[col][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [A[j][d + 1] / A[j][j] for j in range(d + 1)]


@check("exact", "binomial_vs_linear_solve", "exact")
def _(rng, n):
    bad = 0
    for _ in range(n):
        p = random_poly(rng)
        if p.is_zero():
            continue
        bad += list(expand_binomial_basis(p)) != binomial_linear_solve(p)
    return bad == 0, bad, "exact"


@check("exact", "pochhammer_recurrence", "exact")
def _(rng, n):
    bad = 0
    for _ in range(n):
        x = Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 9)))
        j = int(rng.integers(0, 12))
        bad += pochhammer(x, j + 1) != pochhammer(x, j) * (x + j)
    return bad == 0, bad, "exact"


# ----------------------------------------------------------------------------
# numerics

@check("numerics", "tail_substitution")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        a = rng.uniform(0.5, 3.0)
        c = rng.uniform(0.1, 2.0)
        f = lambda y: 1.0 / (y * y + c * y + 1.0)  # noqa: E731
        g = lambda u: 1.0 / (1.0 + c * u + u * u)  # f(1/u)/u^2
        v1, e1 = integrate(g, 0.0, 1.0 / a)
        v2, e2 = _sp_integrate.quad(f, a, np.inf, epsabs=1e-13, epsrel=1e-13)
        worst = max(worst, abs(v1 - v2) - (e1 + e2))
    return worst <= 1e-11, max(worst, 0.0), ""


@check("numerics", "hessian_quadratic_exact")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        m = int(rng.integers(1, 6))
        a = rng.uniform(0.1, 3.0, m)
        z = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        step = 10 ** rng.uniform(-1, 0)
        H = complex_hessian(lambda w: float(np.sum(a * np.abs(w) ** 2)), z, step=step).matrix
        worst = max(worst, float(np.max(np.abs(H - np.diag(a)))))
    return worst <= 1e-9, worst, "steps in [0.1, 1]"


@check("numerics", "eigen_trace_det")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        m = int(rng.integers(1, 31))
        A = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
        M = A @ A.conj().T / m + np.eye(m)
        lam = hermitian_eigenvalues(M)
        tr = np.trace(M).real
        ld = np.linalg.slogdet(M)[1]
        worst = max(worst, abs(lam.sum() - tr) / abs(tr), abs(np.sum(np.log(lam)) - ld) / max(1.0, abs(ld)))
        if np.any(np.diff(lam) > 0):
            return False, float("inf"), "not decreasing"
    return worst <= 1e-10, worst, ""


# ----------------------------------------------------------------------------
# octonion

def _rand_oct(rng):
    return oc.ComplexOctonion.random(rng, 1.0 / math.sqrt(8))


@check("octonion", "alternativity", "identity")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        a, b = _rand_oct(rng), _rand_oct(rng)
        worst = max(worst, _norm((a * (a * b) - (a * a) * b).coords),
                    _norm(((b * a) * a - b * (a * a)).coords))
    return worst <= 1e-12, worst, ""


@check("octonion", "composition", "identity")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        a, b = _rand_oct(rng), _rand_oct(rng)
        lhs, rhs = oc.cnorm(a * b), oc.cnorm(a) * oc.cnorm(b)
        worst = max(worst, abs(lhs - rhs) / max(abs(rhs), _norm(a.coords) ** 2 * _norm(b.coords) ** 2))
    return worst <= 1e-12, worst, ""


@check("octonion", "forms", "identity")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        a, b = _rand_oct(rng), _rand_oct(rng)
        h = oc.hermitian(a, a)
        worst = max(worst, abs(oc.bilinear(a, b) - oc.bilinear(b, a)), abs(h.imag),
                    abs(h.real - 2.0 * np.sum(np.abs(a.coords) ** 2)))
    return worst <= 1e-12, worst, "bilinear symmetric, (a|a) = 2 sum |a_i|^2"


@check("octonion", "trace_scalar", "identity")
def _(rng, n):
    for _ in range(n):
        oc.trace(_rand_oct(rng))  # raises if not a multiple of e0
    return True, 0.0, ""


# ----------------------------------------------------------------------------
# exceptional

@check("exceptional", "sharp_sharp", "identity")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        x = _unit(ex.H3Element, rng)
        worst = max(worst, _norm((ex.sharp(ex.sharp(x)) - x * ex.det3(x)).coords))
    return worst <= 1e-10, worst, "relative to |x|^4"


@check("exceptional", "det_sharp", "identity")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        x = _unit(ex.H3Element, rng)
        worst = max(worst, abs(ex.det3(ex.sharp(x)) - ex.det3(x) ** 2))
    return worst <= 1e-10, worst, "relative to |x|^6"


@check("exceptional", "trace_form_associative", "identity")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        x, y, z = (_unit(ex.H3Element, rng) for _ in range(3))
        worst = max(worst, abs(ex.bilinear(ex.freudenthal(x, y), z) - ex.bilinear(x, ex.freudenthal(y, z))))
    return worst <= 1e-10, worst, ""


@check("exceptional", "trace_D", "determinant")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        for cls, g in ((ex.H3Element, 18), (ex.M21Element, 12)):
            x, y = _unit(cls, rng), _unit(cls, rng)
            worst = max(worst, abs(ex.d_operator(x, y).trace() - g * ex.inner(x, y)))
    return worst <= 1e-10, worst, ""


def jordan_identity_error(x, y, u, v, w) -> float:
    T = ex.triple_product
    lhs = T(x, y, T(u, v, w)) - T(u, v, T(x, y, w))
    rhs = T(T(x, y, u), v, w) - T(u, T(v, x, y), w)
    return _norm((lhs - rhs).coords)


def fundamental_formula_error(x, y, v) -> float:
    Q = ex.quad
    return _norm((Q(Q(x, y), v) - Q(x, Q(y, Q(x, v)))).coords)


@check("exceptional", "jordan_identity", "identity")
def _(rng, n):
    worst = 0.0
    for i in range(n):
        cls = ex.H3Element if i % 2 == 0 else ex.M21Element
        worst = max(worst, jordan_identity_error(*(_unit(cls, rng) for _ in range(5))))
    return worst <= 1e-9, worst, ""


@check("exceptional", "fundamental_formula", "identity")
def _(rng, n):
    worst = 0.0
    for i in range(n):
        cls = ex.H3Element if i % 2 == 0 else ex.M21Element
        worst = max(worst, fundamental_formula_error(*(_unit(cls, rng) for _ in range(3))))
    return worst <= 1e-9, worst, ""


def det_bergman_error(x, y) -> float:
    g = 18 if isinstance(x, ex.H3Element) else 12
    lhs = ex.bergman_operator(x, y).det()
    rhs = ex.generic_norm(x, y) ** g
    return abs(lhs - rhs) / abs(rhs)


@check("exceptional", "det_bergman", "determinant")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        for cls in (ex.H3Element, ex.M21Element):
            x, y = ex.random_interior(cls, rng), ex.random_interior(cls, rng)
            worst = max(worst, det_bergman_error(x, y))
    return worst <= 1e-9, worst, "det B = N^18 (VI), N^12 (V)"


def log_norm_derivative_error(x, y, u, step: float = 1e-5) -> float:
    """|d/dt log N(x+tu, y) - (-(u | y^x))| with a central difference."""
    N = ex.generic_norm
    fd = (np.log(N(x + u * step, y)) - np.log(N(x - u * step, y))) / (2 * step)
    return abs(fd + ex.inner(u, ex.quasi_inverse(y, x)))


@check("exceptional", "log_norm_derivative", "determinant")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        for cls in (ex.H3Element, ex.M21Element):
            x, y = ex.random_interior(cls, rng), ex.random_interior(cls, rng)
            worst = max(worst, log_norm_derivative_error(x, y, _unit(cls, rng)))
    return worst <= 1e-6, worst, "step 1e-5"


@check("exceptional", "m21_quad_via_h3", "identity")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        x, y = _unit(ex.M21Element, rng), _unit(ex.M21Element, rng)
        worst = max(worst, _norm(ex.M21.quad(x.coords, y.coords) - ex.M21_VIA_H3.quad(x.coords, y.coords)))
    return worst <= 1e-12, worst, ""


# ----------------------------------------------------------------------------
# domains

def _pochhammer_product_at_zero(desc) -> Fraction:
    out = Fraction(1)
    for j in range(1, desc.r + 1):
        out *= pochhammer(1 + Fraction((j - 1) * desc.a, 2), 1 + desc.b + (desc.r - j) * desc.a)
    return out


@check("domains", "hua_chi0_and_degree", "exact")
def _(rng, n):
    bad = 0
    for _ in range(n):
        desc = random_descriptor(rng)
        chi = domains.hua_poly(desc)
        c0 = chi(Fraction(0))
        bad += not (c0 > 0 and c0 == _pochhammer_product_at_zero(desc) and chi.degree() == desc.d)
    return bad == 0, bad, "exact"


@check("domains", "norm_range")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        desc = random_descriptor(rng, small=True)
        z = domains.random_point(desc, rng, 0.95)
        if not domains.contains(desc, z):
            continue
        N = domains.generic_norm_self(desc, z)
        worst = max(worst, 0.0 if 0 < N <= 1 else 1.0)
        if np.linalg.norm(np.asarray(z)) > 1e-6 and N >= 1.0 and desc.family != "II":
            worst = 1.0
    z0 = domains.to_point(desc, np.zeros(desc.d))
    worst = max(worst, abs(domains.generic_norm_self(desc, z0) - 1.0))
    return worst == 0.0, worst, ""


@check("domains", "type_II_pfaffian_square")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        p = int(rng.integers(1, 4))
        desc = domains.make_descriptor("II", 2 * p)
        z = domains.random_point(desc, rng)
        N = domains.generic_norm_self(desc, z)
        direct = np.linalg.det(np.eye(2 * p) + z @ np.conj(z)).real
        worst = max(worst, abs(N * N - direct))
    return worst <= 1e-9, worst, ""


@check("domains", "mu0_below_one", "exact")
def _(rng, n):
    bad = 0
    for _ in range(n):
        desc = random_descriptor(rng)
        bad += (desc.mu0 != 1) if desc.r == 1 else (desc.mu0 >= 1)
    return bad == 0, bad, "exact; mu0 = 1 exactly in rank one"


# ----------------------------------------------------------------------------
# bergman

def _random_table(rng):
    return bergman.coefficient_table(random_descriptor(rng), random_mu(rng))


@check("bergman", "kernel_coeff_sum", "exact")
def _(rng, n):
    bad = sum(sum(t.kernel_coeffs, Fraction(0)) != 1 for t in (_random_table(rng) for _ in range(n)))
    return bad == 0, bad, "exact"


@check("bergman", "reconstruction", "exact")
def _(rng, n):
    bad = 0
    for _ in range(n):
        t = _random_table(rng)
        chi = domains.hua_poly(t.desc)
        for k in range(t.d + 1):
            val = sum((c * comb(k + j, j) for j, c in enumerate(t.kernel_coeffs)), Fraction(0))
            bad += val != chi(k * t.mu) / t.chi0
    return bad == 0, bad, "exact"


@check("bergman", "convention_bridge", "exact")
def _(rng, n):
    bad = 0
    for _ in range(n):
        t = _random_table(rng)
        bad += any(c * t.chi0 != t.mu ** t.d * factorial(j) * pc
                   for j, (c, pc) in enumerate(zip(t.kernel_coeffs, t.paper_coeffs)))
    return bad == 0, bad, "exact"


@check("bergman", "f_derivative")
def _(rng, n):
    worst = 0.0
    eps = 1e-5
    for _ in range(n):
        desc = random_descriptor(rng, small=True)
        mu = random_mu(rng)
        t = rng.uniform(0.05, 0.6)
        k = int(rng.integers(1, 4))
        fd = (bergman.f_chi_mu(desc, mu, t + eps, k - 1) - bergman.f_chi_mu(desc, mu, t - eps, k - 1)) / (2 * eps)
        exact = bergman.f_chi_mu(desc, mu, t, k)
        worst = max(worst, abs(fd - exact) / max(1.0, abs(exact)))
    return worst <= 1e-6, worst, "relative"


@check("bergman", "alternating_at_mu_one", "exact")
def _(rng, n):
    labels = [("III", 2), ("IV", 4), ("VI",)]
    reps = bergman.conjecture_scan
    bad = [lab for lab in labels if not reps(domains.make_descriptor(*lab), [1])[0].alternating]
    return not bad, len(bad), "III(2), IV(4), VI"


# ----------------------------------------------------------------------------
# kemetric

def _random_problem(rng, small: bool = True):
    desc = random_descriptor(rng, small=small)
    k = int(rng.integers(1, 4))
    mu = random_mu(rng)
    return kemetric.build_problem(desc, k, mu)


@check("kemetric", "monotone_and_Y0")
def _(rng, n):
    for _ in range(n):
        p = _random_problem(rng)
        ys = [kemetric.solve_Y(p, X)[1] for X in np.linspace(0.0, 0.99, 12)]
        if ys[0] != float(p.beta) or np.any(np.diff(ys) <= 0):
            return False, 1.0, f"{p.desc.label} k={p.k} mu={p.mu}"
    return True, 0.0, ""


@check("kemetric", "round_trip")
def _(rng, n):
    worst = 0.0
    grid = [0.01] + [i / 10 for i in range(1, 10)] + [0.99]
    for _ in range(n):
        p = _random_problem(rng)
        for X in grid:
            worst = max(worst, abs(kemetric.X_of_Y(p, kemetric.solve_Y(p, X)[1]) - X))
    return worst <= 1e-9, worst, ""


def ode_defect(p, X: float, eps: float = 1e-6) -> float:
    """Relative defect of the reduced ODE at X, Y' by centered differences."""
    y0m, ym = kemetric.solve_Y(p, X - eps)
    y0p, yp = kemetric.solve_Y(p, X + eps)
    y0, y = kemetric.solve_Y(p, X)
    d = p.d
    if p.k == 1:
        lhs = X * y ** d * (yp - ym) / (2 * eps)
        rhs = p.P(y)
    else:
        lhs = X * (y0 + float(p.beta)) ** d * (y0p - y0m) / (2 * eps)
        rhs = y0 * p.S(y0)
    return abs(lhs - rhs) / max(1.0, abs(rhs))


@check("kemetric", "ode_satisfied")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        p = _random_problem(rng)
        for X in (0.1, 0.4, 0.7):
            worst = max(worst, ode_defect(p, X))
    return worst <= 1e-7, worst, "relative"


@check("kemetric", "critical_agreement")
def _(rng, n):
    worst = 0.0
    labels = [("I", 2, 3), ("II", 4), ("III", 3), ("IV", 5), ("V",), ("VI",)]
    for lab in labels:
        desc = domains.make_descriptor(*lab)
        for k in (1, 2, 3):
            p = kemetric.build_problem(desc, k, desc.mu0)
            for X in np.arange(1, 20) / 20:
                worst = max(worst, abs(kemetric.solve_Y(p, X)[1] - 1 / (1 - X)))
    return worst <= 1e-8, worst, "grid 0.05..0.95"


@check("kemetric", "h_consistency")
def _(rng, n):
    worst = 0.0
    eps = 1e-5
    for _ in range(n):
        p = _random_problem(rng)
        X = rng.uniform(0.05, 0.9)
        dh = (kemetric.h_eval(p, X + eps) - kemetric.h_eval(p, X - eps)) / (2 * eps)
        y0 = kemetric.solve_Y(p, X)[0]
        worst = max(worst, abs(X * dh - y0) / max(1.0, y0))
    return worst <= 1e-7, worst, ""


@check("kemetric", "polynomial_consistency", "light")
def _(rng, n):
    bad = 0
    for _ in range(n):
        desc = random_descriptor(rng)
        mu = random_mu(rng)
        k = int(rng.integers(1, 4))
        beta = kemetric.beta_of(desc, k, mu)
        S = kemetric.s_poly(desc.d, k, beta)
        bad += S(Fraction(0)) != beta ** desc.d or S.degree() != desc.d + 1 or S.leading() != 1
        P = kemetric.p_poly(desc, mu)
        b1 = kemetric.beta_of(desc, 1, mu)
        bad += P(b1) != 0 or P.derivative()(b1) != b1 ** desc.d
        if k == 1:
            R, _ = divmod(P, RationalPoly.linear(-b1, 1))
            bad += shift_argument(R, b1) != S
    return bad == 0, bad, "exact"


@check("kemetric", "divergence_at_one")
def _(rng, n):
    for _ in range(n):
        p = _random_problem(rng)
        ys = [kemetric.solve_Y(p, 1 - 10.0 ** -e)[1] for e in (1, 2, 3, 4)]
        if not all(b > a for a, b in zip(ys, ys[1:])) or ys[-1] < 100:
            return False, ys[-1], f"{p.desc.label} k={p.k} mu={p.mu}"
    return True, 0.0, "Y(1 - 1e-4) > 100"


def random_hartogs_point(desc, k, mu, rng, radius=0.7, fill=0.7):
    z = domains.random_point(desc, rng, radius)
    N = domains.generic_norm_self(desc, z)
    Z = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    Z *= math.sqrt(rng.uniform(0.0, fill) * N ** float(mu)) / np.linalg.norm(Z)
    return z, Z


@check("kemetric", "ma_residual_critical", "ma")
def _(rng, n):
    worst = 0.0
    for lab in (("IV", 3), ("I", 1, 1)):
        desc = domains.make_descriptor(*lab)
        g = kemetric.critical_closed_form(desc, 1)
        for _ in range(n):
            z, Z = random_hartogs_point(desc, 1, desc.mu0, rng)
            worst = max(worst, kemetric.ma_residual(g, z, Z))
    return worst <= 5e-3, worst, "IV(3), I(1,1), k=1"


@check("kemetric", "closed_form_matches_solver")
def _(rng, n):
    worst = 0.0
    for _ in range(n):
        desc = random_descriptor(rng, small=True)
        k = int(rng.integers(1, 4))
        g = kemetric.critical_closed_form(desc, k)
        z, Z = random_hartogs_point(desc, k, desc.mu0, rng)
        worst = max(worst, abs(g(z, Z) - kemetric.g_eval(g.problem, z, Z)))
    return worst <= 1e-9, worst, ""


# ----------------------------------------------------------------------------
# cli

@check("cli", "rational_round_trip", "exact")
def _(rng, n):
    bad = 0
    for _ in range(n):
        t = _random_table(rng)
        for q in t.kernel_coeffs + t.paper_coeffs + (t.mu, t.chi0):
            bad += parse_rational(format_rational(q)) != q
    return bad == 0, bad, "exact"
