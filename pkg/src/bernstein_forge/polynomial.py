"""Dense univariate polynomials over exact rationals.

Coefficients are stored densely, index = monomial degree, trailing zeros
trimmed.  The zero polynomial has an empty coefficient tuple and degree
``-inf`` so that degree comparisons are never ambiguous.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable

from .errors import NonExactDivision
from .rational import as_rational, format_rational

_NEG_INF = float("-inf")


class Polynomial:
    """Immutable dense polynomial with Fraction coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Polynomial":
        c = as_rational(coeff)
        if c == 0:
            return cls.zero()
        return cls((0,) * degree + (c,))

    @classmethod
    def from_sparse(cls, text: str) -> "Polynomial":
        """Parse the sparse "degree:coefficient" pair format.

        Example: ``"0:1/4,2:-3/8,6:1/8"``.  The empty string and ``"0:0"``
        both denote the zero polynomial.
        """
        text = text.strip()
        if not text:
            return cls.zero()
        coeffs: dict[int, Fraction] = {}
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            deg_s, _, coef_s = chunk.partition(":")
            deg = int(deg_s)
            if deg < 0:
                raise ValueError(f"negative degree in sparse polynomial: {chunk!r}")
            if deg in coeffs:
                raise ValueError(f"duplicate degree {deg} in sparse polynomial")
            coeffs[deg] = as_rational(coef_s)
        if not coeffs:
            return cls.zero()
        top = max(coeffs)
        return cls(coeffs.get(i, 0) for i in range(top + 1))

    def to_sparse(self) -> str:
        if self.is_zero:
            return "0:0"
        return ",".join(
            f"{i}:{format_rational(c)}" for i, c in enumerate(self._coeffs) if c != 0
        )

    # -- basic queries -----------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def degree(self):
        """Degree of the polynomial; -inf for the zero polynomial."""
        return len(self._coeffs) - 1 if self._coeffs else _NEG_INF

    def coeff(self, k: int) -> Fraction:
        return self._coeffs[k] if 0 <= k < len(self._coeffs) else Fraction(0)

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def support(self) -> tuple:
        return tuple(i for i, c in enumerate(self._coeffs) if c != 0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial(
            (a[i] + b[i] if i < len(b) else a[i]) for i in range(len(a))
        )

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self._coeffs)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return Polynomial.zero()
            out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
            for i, a in enumerate(self._coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
            return Polynomial(out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, scalar) -> "Polynomial":
        s = as_rational(scalar)
        return Polynomial(s * c for c in self._coeffs)

    def __call__(self, x) -> Fraction:
        """Exact evaluation by Horner's rule."""
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, order: int = 1) -> "Polynomial":
        p = self
        for _ in range(order):
            p = Polynomial(i * c for i, c in enumerate(p._coeffs) if i > 0)
        return p

    def divrem(self, d: "Polynomial") -> tuple:
        """Exact quotient/remainder with rational coefficients."""
        if d.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._coeffs)
        dd = len(d._coeffs) - 1
        lead = d._coeffs[-1]
        q = [Fraction(0)] * max(len(rem) - dd, 0)
        for i in range(len(rem) - dd - 1, -1, -1):
            factor = rem[i + dd] / lead
            if factor == 0:
                continue
            q[i] = factor
            for j, dc in enumerate(d._coeffs):
                rem[i + j] -= factor * dc
        return Polynomial(q), Polynomial(rem[:dd])

    def div_exact(self, d: "Polynomial") -> "Polynomial":
        """Quotient q with self = q * d; raises NonExactDivision otherwise."""
        q, r = self.divrem(d)
        if not r.is_zero:
            raise NonExactDivision(
                f"remainder {r.to_sparse()} dividing {self.to_sparse()} by {d.to_sparse()}"
            )
        return q

    def __mod__(self, d: "Polynomial") -> "Polynomial":
        return self.divrem(d)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd by the Euclidean algorithm."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def squarefree_part(self) -> "Polynomial":
        if self.is_zero or self.degree == 0:
            return self
        return self.div_exact(self.gcd(self.derivative()))

    def primitive(self) -> "Polynomial":
        """Clear denominators and divide by the integer content.

        Keeps the sign of the input; orientation is the caller's business.
        """
        if self.is_zero:
            return self
        den = 1
        for c in self._coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self._coeffs]
        content = 0
        for v in ints:
            content = gcd(content, abs(v))
        return Polynomial(Fraction(v, content) for v in ints)

    # -- comparisons / misc ------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({self.to_sparse()!r})"
