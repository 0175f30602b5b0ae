"""Exact rational arithmetic and univariate polynomials over Q.

Rationals are plain :class:`fractions.Fraction` values; they are always in
lowest terms with a positive denominator.  :class:`RationalPoly` is a small
immutable dense polynomial type, enough to build Hua polynomials, the
reduced Monge-Ampere polynomials and the kernel coefficient tables.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import comb
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimal notation is rejected on purpose."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = _RATIONAL_RE.match(str(text))
    if not m:
        raise ValueError(f"not an exact rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(q) -> str:
    return str(Fraction(q))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class RationalPoly:
    """Dense polynomial ``sum(coeffs[i] * T**i)`` with Fraction coefficients.

    Trailing zeros are trimmed, so ``degree()`` is the index of the last
    nonzero coefficient; the zero polynomial has degree -1.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_as_fraction(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def constant(cls, a) -> "RationalPoly":
        return cls([a])

    @classmethod
    def monomial(cls, n: int, a=1) -> "RationalPoly":
        return cls([0] * n + [a])

    @classmethod
    def linear(cls, a0, a1=1) -> "RationalPoly":
        """The polynomial ``a1*T + a0``."""
        return cls([a0, a1])

    @property
    def coeffs(self) -> tuple:
        return self._c

    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self._c):
            return self._c[i]
        return Fraction(0)

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __repr__(self):
        return f"RationalPoly({[str(a) for a in self._c]})"

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for i, a in reversed(list(enumerate(self._c))):
            if a == 0:
                continue
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if mono and a == 1:
                terms.append(mono)
            elif mono:
                terms.append(f"({a})*{mono}")
            else:
                terms.append(f"({a})")
        return " + ".join(terms)

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == RationalPoly([other])._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    @staticmethod
    def _coerce(other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        return RationalPoly([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self._c), len(other._c))
        return RationalPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-a for a in self._c)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            a = _as_fraction(other)
            return RationalPoly(a * c for c in self._c)
        if not self._c or not other._c:
            return RationalPoly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = RationalPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; works for Fraction, int, float, complex or a poly."""
        if isinstance(x, RationalPoly):
            acc = RationalPoly()
            for a in reversed(self._c):
                acc = acc * x + a
            return acc
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
        else:
            acc = 0.0
        for a in reversed(self._c):
            acc = acc * x + (a if isinstance(acc, Fraction) else float(a))
        return acc

    def derivative(self) -> "RationalPoly":
        return RationalPoly(i * a for i, a in enumerate(self._c) if i > 0)

    def float_coeffs(self) -> list:
        return [float(a) for a in self._c]

    def __divmod__(self, other):
        return divide_exact(self, other)


PolyLike = Union[RationalPoly, Fraction, int]


def pochhammer(x, j: int):
    """Rising factorial ``x (x+1) ... (x+j-1)``; ``pochhammer(x, 0) == 1``."""
    if j < 0:
        raise ValueError("pochhammer order must be nonnegative")
    if isinstance(x, RationalPoly):
        out = RationalPoly([1])
        for i in range(j):
            out = out * (x + i)
        return out
    x = _as_fraction(x)
    out = Fraction(1)
    for i in range(j):
        out *= x + i
    return out


def scale_argument(p: RationalPoly, mu) -> RationalPoly:
    """Return ``q`` with ``q(s) == p(mu*s)``."""
    mu = _as_fraction(mu)
    out = []
    power = Fraction(1)
    for a in p.coeffs:
        out.append(a * power)
        power *= mu
    return RationalPoly(out)


def shift_argument(p: RationalPoly, c) -> RationalPoly:
    """Return ``q`` with ``q(T) == p(T + c)``."""
    return p(RationalPoly.linear(_as_fraction(c), 1))


def expand_binomial_basis(p: RationalPoly) -> list:
    """Coefficients of ``p`` in the basis ``binom(k+j, j)``, j = 0..deg p.

    Uses the inverse binomial transform at the nodes k = -1, -2, ...:
    ``c_m = sum_i (-1)**i * binom(m, i) * p(-i-1)``.
    """
    d = p.degree()
    if d < 0:
        return []
    vals = [p(Fraction(-i - 1)) for i in range(d + 1)]
    out = []
    for m in range(d + 1):
        acc = Fraction(0)
        for i in range(m + 1):
            term = comb(m, i) * vals[i]
            acc += -term if i & 1 else term
        out.append(acc)
    return out


def synthesize_binomial_basis(coeffs: Sequence) -> RationalPoly:
    """Inverse of :func:`expand_binomial_basis`: ``sum_j c_j * binom(k+j, j)``."""
    k = RationalPoly.linear(1, 1)  # k + 1
    out = RationalPoly()
    for j, c in enumerate(coeffs):
        if c:
            basis = pochhammer(k, j) * Fraction(1, _factorial(j))
            out = out + basis * c
    return out


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def antiderivative(p: RationalPoly) -> RationalPoly:
    """The antiderivative vanishing at 0."""
    return RationalPoly([0] + [a / (i + 1) for i, a in enumerate(p.coeffs)])


def divide_exact(p: RationalPoly, q: RationalPoly):
    """Long division: returns ``(quotient, remainder)`` with ``deg r < deg q``."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(p.coeffs)
    dq = q.degree()
    lead = q.leading()
    if len(rem) - 1 < dq:
        return RationalPoly(), RationalPoly(rem)
    quot = [Fraction(0)] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        a = rem[i] / lead
        quot[i - dq] = a
        if a:
            for j, b in enumerate(q.coeffs):
                rem[i - dq + j] -= a * b
    return RationalPoly(quot), RationalPoly(rem[:dq])
