"""Exact univariate polynomials, Sturm chains and real-root isolation."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _frac(c) -> Fraction:
    if isinstance(c, float):
        return Fraction(c).limit_denominator(10**12)
    return Fraction(c)


class UniPoly:
    """Polynomial with exact rational coefficients in ascending degree order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number | str]):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def parse(cls, text: str) -> "UniPoly":
        """Ascending coefficient list, e.g. ``"1 -10 0 8"`` for 1 - 10w + 8w^3."""
        parts = text.replace(",", " ").split()
        if not parts:
            raise ValueError("empty coefficient list")
        return cls(Fraction(p) for p in parts)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, t):
        acc = Fraction(0) if isinstance(t, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * t + (c if not isinstance(acc, float) else float(c))
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        m = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (m - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (m - len(other.coeffs))
        return UniPoly(x - y for x, y in zip(a, b))

    def scale(self, s: Number) -> "UniPoly":
        return UniPoly(s * c for c in self.coeffs)

    def substitute_scale(self, s: Number) -> "UniPoly":
        """p(s*t) as a polynomial in t."""
        return UniPoly(c * Fraction(s) ** k for k, c in enumerate(self.coeffs))

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 1)
        while len(rem) - 1 >= dq and any(rem):
            shift = len(rem) - 1 - dq
            f = rem[-1] / other.leading
            quot[shift] = f
            for k, c in enumerate(other.coeffs):
                rem[shift + k] -= f * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return UniPoly(quot), UniPoly(rem)

    def monic_abs(self) -> "UniPoly":
        """Rescale by a positive rational so the leading coefficient is +-1."""
        if self.is_zero():
            return self
        return self.scale(1 / abs(self.leading))

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = "" if (mag == 1 and k) else str(mag)
            var = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            parts.append(f"{sign}{body}{var}")
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic_abs() if not a.is_zero() else a


def squarefree_part(p: UniPoly) -> UniPoly:
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p
    return p.divmod(g)[0]


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    """Sturm chain p, p', -rem(p, p'), ... ending at a nonzero constant.

    Non-squarefree input is reduced to its squarefree part first. Each element
    is rescaled by a positive rational, which leaves sign changes intact.
    """
    if p.is_zero():
        raise ValueError("Sturm sequence of the zero polynomial")
    if p.degree < 1:
        raise ValueError("Sturm sequence needs a nonconstant polynomial")
    p = squarefree_part(p)
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        rem = chain[-2].divmod(chain[-1])[1]
        if rem.is_zero():
            break
        chain.append((-rem).monic_abs())
    return chain


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sign_changes(chain: Sequence[UniPoly], t: Number) -> int:
    signs = [s for s in (_sign(q(Fraction(t))) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_in_interval(p: UniPoly, a: Number, b: Number) -> int:
    """Number of distinct real roots in the half-open interval (a, b].

    Zero entries are dropped from the sign sequence, which makes the count
    exact even when an endpoint is itself a root.
    """
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    chain = sturm_sequence(p)
    return sign_changes(chain, a) - sign_changes(chain, b)


def isolate_roots(p: UniPoly, a: Number, b: Number) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], each holding exactly one root of p in (a, b]."""
    chain = sturm_sequence(p)
    a, b = Fraction(a), Fraction(b)
    out = []
    stack = [(a, b, sign_changes(chain, a) - sign_changes(chain, b))]
    while stack:
        lo, hi, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vm = sign_changes(chain, mid)
        stack.append((mid, hi, vm - sign_changes(chain, hi)))
        stack.append((lo, mid, sign_changes(chain, lo) - vm))
    return sorted(out)


def isolate_and_refine(p: UniPoly, a: Number, b: Number, tol: float = 1e-14) -> list[float]:
    """All real roots in (a, b], ascending, each bracketed to width <= tol.

    Refinement bisects on exact dyadic rationals, so no rounding enters the
    sign tests.
    """
    sq = squarefree_part(p)
    roots = []
    tol_q = Fraction(tol)
    for lo, hi in isolate_roots(sq, a, b):
        if sq(hi) == 0:
            roots.append(float(hi))
            continue
        s_hi = _sign(sq(hi))
        while hi - lo > tol_q:
            mid = (lo + hi) / 2
            v = sq(mid)
            if v == 0:
                lo = hi = mid
                break
            if _sign(v) == s_hi:
                hi = mid
            else:
                lo = mid
        roots.append(float((lo + hi) / 2))
    return roots


def glue_cubic(d: int) -> UniPoly:
    """8w^3 - (4 + 2d)w + 1, whose roots give w = sin(alpha/2) for the glued C5."""
    if d < 1:
        raise ValueError("glue_cubic needs d >= 1")
    return UniPoly([1, -(4 + 2 * d), 0, 8])


def depressed_glue_cubic(d: int) -> UniPoly:
    """y^3 - (d + 2)y + 1, i.e. glue_cubic after y = 2w (and division by 1)."""
    return UniPoly([1, -(d + 2), 0, 1])
