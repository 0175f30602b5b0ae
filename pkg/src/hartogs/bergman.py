"""Bergman-kernel coefficients of the Hartogs domains.

For a descriptor with Hua polynomial chi and an exponent mu, the polynomial
k -> chi(k mu)/chi(0) is expanded as sum_j c_{mu,j} binom(k+j, j) (the
"kernel" convention).  The same numbers, rescaled, give the expansion
chi(mu s) = mu^d sum_j c_j (s+1)_j (the "Maple" convention).  All sign
decisions are made on exact rationals.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import domains
from .exact import (RationalPoly, expand_binomial_basis, format_rational,
                    pochhammer, scale_argument)


@dataclass(frozen=True)
class CoefficientTable:
    desc: domains.DomainDescriptor
    mu: Fraction
    kernel_coeffs: tuple
    paper_coeffs: tuple
    chi0: Fraction

    @property
    def d(self) -> int:
        return self.desc.d

    def as_dict(self) -> dict:
        return {
            "family": self.desc.family,
            "params": list(self.desc.params),
            "mu": format_rational(self.mu),
            "paper_coeffs": [format_rational(c) for c in self.paper_coeffs],
            "kernel_coeffs": [format_rational(c) for c in self.kernel_coeffs],
            "chi0": format_rational(self.chi0),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def _rising_basis_coeffs(p: RationalPoly) -> list:
    """Coefficients of p in the basis (s+1)_j, by top-down elimination."""
    s1 = RationalPoly.linear(1, 1)
    rem = p
    out = [Fraction(0)] * (p.degree() + 1)
    for j in range(p.degree(), -1, -1):
        c = rem[j]  # (s+1)_j is monic of degree j
        out[j] = c
        if c:
            rem = rem - pochhammer(s1, j) * c
    if not rem.is_zero():
        raise ArithmeticError("rising-factorial elimination left a remainder")
    return out


def _check_mu(mu) -> Fraction:
    if isinstance(mu, float):
        raise TypeError("mu must be an exact rational, not a float")
    mu = Fraction(mu)
    if mu <= 0:
        raise ValueError("mu must be positive")
    return mu


@lru_cache(maxsize=512)
def coefficient_table(desc: domains.DomainDescriptor, mu) -> CoefficientTable:
    """Exact c_{mu,j} in both conventions."""
    mu = _check_mu(mu)
    chi = domains.hua_poly(desc)
    chi0 = chi(Fraction(0))
    scaled = scale_argument(chi, mu)
    kernel = expand_binomial_basis(scaled * (1 / chi0))
    rising = _rising_basis_coeffs(scaled * (1 / mu ** desc.d))
    return CoefficientTable(desc, mu, tuple(kernel), tuple(rising), chi0)


def f_chi_mu(desc: domains.DomainDescriptor, mu, t: float, order: int = 0) -> float:
    """F(t) = sum_j c_{mu,j} (1-t)^(-j) and its derivatives, term by term."""
    if not 0.0 <= t < 1.0:
        raise ValueError("t must lie in [0, 1)")
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    table = coefficient_table(desc, mu)
    u = 1.0 / (1.0 - t)
    total = 0.0
    for j, c in enumerate(table.kernel_coeffs):
        if c:
            total += float(c * pochhammer(j, order)) * u ** (j + order)
    return total


def kernel_series(desc: domains.DomainDescriptor, mu, t: float, order: int = 0) -> float:
    """G(t) = sum_m chi(m mu)/chi(0) t^m = sum_j c_{mu,j} (1-t)^(-j-1), derivative ``order``."""
    if not 0.0 <= t < 1.0:
        raise ValueError("t must lie in [0, 1)")
    table = coefficient_table(desc, mu)
    u = 1.0 / (1.0 - t)
    total = 0.0
    for j, c in enumerate(table.kernel_coeffs):
        if c:
            total += float(c * pochhammer(j + 1, order)) * u ** (j + 1 + order)
    return total


def bergman_kernel(desc: domains.DomainDescriptor, k: int, mu, z, Z) -> float:
    """Bergman kernel on the diagonal times pi^k vol(domain):

    N(z,z)^(-gamma - k mu) G^(k)(X),  X = ||Z||^2 / N(z,z)^mu.

    Over the disc with mu = 1 this is (k+1)! (1 - |z|^2 - ||Z||^2)^(-(k+2)).
    """
    mu = _check_mu(mu)
    if not domains.hartogs_contains(desc, k, mu, z, Z):
        raise ValueError("point is outside the Hartogs domain")
    N = domains.generic_norm_self(desc, z)
    Z = np.atleast_1d(np.asarray(Z, dtype=complex))
    X = float(np.vdot(Z, Z).real) / N ** float(mu)
    return N ** (-desc.gamma - k * float(mu)) * kernel_series(desc, mu, X, k)


# ----------------------------------------------------------------------------
# sign scans

def _sign(c: Fraction) -> str:
    return "+" if c > 0 else ("-" if c < 0 else "0")


@dataclass(frozen=True)
class SignReport:
    desc: domains.DomainDescriptor
    mu: Fraction
    signs: tuple
    all_positive: bool
    matches_critical_pattern: bool
    alternating: bool
    j0: int

    def as_dict(self) -> dict:
        return {
            "family": self.desc.family,
            "params": list(self.desc.params),
            "mu": format_rational(self.mu),
            "signs": list(self.signs),
            "all_positive": self.all_positive,
            "matches_critical_pattern": self.matches_critical_pattern,
            "alternating": self.alternating,
            "j0": self.j0,
        }


def sign_report(table: CoefficientTable) -> SignReport:
    c = table.kernel_coeffs
    d = len(c) - 1
    signs = tuple(_sign(x) for x in c)
    all_pos = all(s == "+" for s in signs)
    if table.desc.family == "I" and table.desc.params[0] == 1:
        critical = signs[d] == "+" and all(s == "0" for s in signs[:d])
    else:
        critical = d >= 1 and signs[d - 1] == "0" and all(
            s == "+" for j, s in enumerate(signs) if j != d - 1)
    j0 = 0
    while j0 <= d and signs[j0] == "0":
        j0 += 1
    # signs alternate from index d down to j0, then zeros
    alternating = all(signs[j] == ("+" if (d - j) % 2 == 0 else "-") for j in range(j0, d + 1))
    return SignReport(table.desc, table.mu, signs, all_pos, critical, alternating, j0)


def conjecture_scan(desc: domains.DomainDescriptor, mus) -> list:
    """Exact sign pattern of c_{mu,j} for each mu (rational arithmetic only)."""
    return [sign_report(coefficient_table(desc, _check_mu(mu))) for mu in mus]


def rational_grid(start, step, stop) -> list:
    """Inclusive grid of exact rationals ``start, start+step, ..., <= stop``."""
    start, step, stop = Fraction(start), Fraction(step), Fraction(stop)
    if step <= 0:
        raise ValueError("step must be positive")
    out = []
    x = start
    while x <= stop:
        out.append(x)
        x += step
    return out
