"""Certified root counting, sign classification, and bisection enclosures.

Everything here runs over exact rationals: Sturm chains give exact counts
of distinct real roots, classifications carry checkable witnesses, and
bisection midpoint signs never see a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NoBracket, ZeroPolynomial
from .polynomial import Polynomial
from .rational import as_rational, format_rational, sign

STRICTLY_POSITIVE = "strictly-positive"
NONNEG_INTERIOR_ZEROS = "non-negative-with-interior-zeros"
SIGN_CHANGING = "sign-changing"
STRICTLY_NEGATIVE = "strictly-negative"
NONPOS_INTERIOR_ZEROS = "non-positive-with-interior-zeros"
IDENTICALLY_ZERO = "identically-zero"


@dataclass(frozen=True)
class SturmChain:
    """Signed remainder sequence of a square-free polynomial and its derivative."""

    sequence: tuple

    def variations(self, x) -> int:
        signs = [sign(p(x)) for p in self.sequence]
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclass(frozen=True)
class SampleWitness:
    x: Fraction
    sign: int

    def to_json(self):
        return {"kind": "sample", "x": format_rational(self.x), "sign": self.sign}


@dataclass(frozen=True)
class RootIntervalWitness:
    lo: Fraction
    hi: Fraction

    def to_json(self):
        return {
            "kind": "root-interval",
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
        }


@dataclass(frozen=True)
class SignClassification:
    verdict: str
    witnesses: tuple

    def to_json(self):
        return {
            "verdict": self.verdict,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


@dataclass(frozen=True)
class RootEnclosure:
    """Rational bracket around a root; lo == hi marks an exact rational root."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def to_json(self):
        return {"lo": format_rational(self.lo), "hi": format_rational(self.hi)}


def sturm_chain(p: Polynomial) -> SturmChain:
    """Sturm chain of the square-free part of p."""
    if p.is_zero:
        raise ZeroPolynomial("Sturm chain of the zero polynomial")
    sf = p.squarefree_part()
    seq = [sf]
    if sf.degree > 0:
        seq.append(sf.derivative())
        while seq[-1].degree > 0:
            rem = seq[-2] % seq[-1]
            if rem.is_zero:
                break
            seq.append(-rem)
    return SturmChain(tuple(seq))


def sturm_count(
    p: Polynomial,
    lo,
    hi,
    *,
    include_lo: bool,
    include_hi: bool,
) -> int:
    """Exact number of distinct real roots of p in the given interval.

    Endpoint openness is explicit; there is no silent default.
    """
    if p.is_zero:
        raise ZeroPolynomial("root count of the zero polynomial")
    lo, hi = as_rational(lo), as_rational(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    chain = sturm_chain(p)
    count = chain.variations(lo) - chain.variations(hi)  # roots in (lo, hi]
    if include_lo and p(lo) == 0:
        count += 1
    if not include_hi and p(hi) == 0:
        count -= 1
    return count


def isolate_roots(p: Polynomial, a, b) -> list:
    """Disjoint enclosures for the distinct roots of p in the open (a, b).

    Each element is a RootEnclosure; exact rational roots come back with
    zero width, every other enclosure has non-root endpoints and contains
    exactly one distinct root.
    """
    if p.is_zero:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    a, b = as_rational(a), as_rational(b)
    sf = p.squarefree_part()
    if sf.degree <= 0:
        return []
    chain = sturm_chain(sf)

    def open_count(lo, hi):
        c = chain.variations(lo) - chain.variations(hi)
        if sf(hi) == 0:
            c -= 1
        return c

    out = []
    stack = [(a, b, open_count(a, b))]
    while stack:
        lo, hi, k = stack.pop()
        if k == 0:
            continue
        if k == 1 and sf(lo) != 0 and sf(hi) != 0:
            out.append(RootEnclosure(lo, hi))
            continue
        mid = (lo + hi) / 2
        if sf(mid) == 0:
            out.append(RootEnclosure(mid, mid))
        stack.append((lo, mid, open_count(lo, mid)))
        stack.append((mid, hi, open_count(mid, hi)))
    out.sort(key=lambda e: e.lo)
    return out


def classify_on_interval(p: Polynomial, a, b) -> SignClassification:
    """Sign behavior of p on the open interval (a, b), with witnesses.

    Interior zeros are isolated first; exact sign samples between the root
    regions decide the verdict, which distinguishes strict positivity from
    non-negativity with interior zeros (even-multiplicity roots).
    """
    a, b = as_rational(a), as_rational(b)
    if not a < b:
        raise ValueError("need a < b")
    if p.is_zero:
        return SignClassification(IDENTICALLY_ZERO, (SampleWitness((a + b) / 2, 0),))

    enclosures = isolate_roots(p, a, b)
    if not enclosures:
        m = (a + b) / 2
        s = sign(p(m))
        verdict = STRICTLY_POSITIVE if s > 0 else STRICTLY_NEGATIVE
        return SignClassification(verdict, (SampleWitness(m, s),))

    # Sample points strictly between consecutive root regions.  Shared
    # enclosure endpoints are themselves non-roots and usable directly.
    points = []
    cursor = a
    for enc in enclosures:
        if cursor == enc.lo:
            if p(cursor) != 0:
                points.append(cursor)
        else:
            points.append((cursor + enc.lo) / 2)
        cursor = enc.hi
    points.append(b if cursor == b else (cursor + b) / 2)

    witnesses = []
    signs = set()
    for x in points:
        s = sign(p(x))
        if s == 0:  # only possible at the closed-boundary samples a or b
            continue
        signs.add(s)
        witnesses.append(SampleWitness(x, s))
    witnesses.extend(RootIntervalWitness(e.lo, e.hi) for e in enclosures)

    if signs == {1}:
        verdict = NONNEG_INTERIOR_ZEROS
    elif signs == {-1}:
        verdict = NONPOS_INTERIOR_ZEROS
    else:
        verdict = SIGN_CHANGING
    return SignClassification(verdict, tuple(witnesses))


def rational_roots(p: Polynomial, divisor_cap: int = 10**7) -> list:
    """Exact rational roots of p, via the rational root theorem.

    Returns [] (possibly missing roots) when the cleared-integer endpoints
    exceed divisor_cap; callers fall back to bisection in that case.
    """
    if p.is_zero:
        raise ZeroPolynomial("roots of the zero polynomial")
    prim = p.primitive()
    ints = [c.numerator for c in prim.coeffs]  # primitive => integer coeffs
    shift = 0
    while ints and ints[0] == 0:
        ints.pop(0)
        shift += 1
    roots = [Fraction(0)] if shift else []
    if len(ints) <= 1:
        return roots
    if len(ints) == 2:
        roots.append(Fraction(-ints[0], ints[1]))
        return sorted(set(roots))
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 > divisor_cap or an > divisor_cap:
        return roots

    def divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return out

    candidates = set()
    for num in divisors(a0):
        for den in divisors(an):
            candidates.add(Fraction(num, den))
            candidates.add(Fraction(-num, den))
    poly = Polynomial(ints)
    roots.extend(c for c in candidates if poly(c) == 0)
    return sorted(set(roots))


def bisect_root(p: Polynomial, lo, hi, tol) -> RootEnclosure:
    """Certified bisection enclosure of width <= tol for a sign change of p.

    Endpoint roots and exact midpoint hits come back with zero width.
    Raises NoBracket when the exact endpoint signs agree and neither
    endpoint is a root.
    """
    lo, hi = as_rational(lo), as_rational(hi)
    tol = as_rational(tol)
    s_lo, s_hi = sign(p(lo)), sign(p(hi))
    if s_lo == 0:
        return RootEnclosure(lo, lo)
    if s_hi == 0:
        return RootEnclosure(hi, hi)
    if s_lo == s_hi:
        raise NoBracket(
            f"p({format_rational(lo)}) and p({format_rational(hi)}) have equal sign"
        )
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = sign(p(mid))
        if s == 0:
            return RootEnclosure(mid, mid)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return RootEnclosure(lo, hi)
