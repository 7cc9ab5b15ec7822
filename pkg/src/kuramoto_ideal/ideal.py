"""Polynomial generators of the Kuramoto ideal and related determinantal ideals.

Variables are ``x_0..x_{n-1}, y_0..y_{n-1}`` with ``x_i = sin(theta_i)`` and
``y_i = cos(theta_i)``. Exponent vectors therefore have length ``2n``.
Coefficients are Python integers, so identities hold exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .graphs import Graph

Monomial = tuple[int, ...]


class Poly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[Monomial, int] | None = None):
        self.n = n
        self.terms: dict[Monomial, int] = {}
        for mono, c in (terms or {}).items():
            if len(mono) != 2 * n:
                raise ValueError(f"exponent vector of length {len(mono)}, expected {2 * n}")
            if c:
                self.terms[tuple(mono)] = int(c)

    @classmethod
    def var(cls, n: int, name: str, i: int) -> "Poly":
        e = [0] * (2 * n)
        e[i if name == "x" else n + i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def constant(cls, n: int, c: int) -> "Poly":
        return cls(n, {(0,) * (2 * n): c})

    def _check(self, other: "Poly"):
        if other.n != self.n:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(self.n, out)

    def __neg__(self) -> "Poly":
        return Poly(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.n, out)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def evaluate(self, point: Sequence[float]) -> float:
        return evaluate(self, point)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        # graded reverse lexicographic, x_0 > ... > x_{n-1} > y_0 > ... > y_{n-1}
        def key(item):
            m = item[0]
            return (sum(m), tuple(-e for e in reversed(m)))
        return sorted(self.terms.items(), key=key, reverse=True)

    def render(self) -> str:
        """Text form in the style ``x_2y_0+x_3y_0-x_0y_2``."""
        if not self.terms:
            return "0"
        names = [f"x_{i}" for i in range(self.n)] + [f"y_{i}" for i in range(self.n)]
        out = []
        for m, c in self.sorted_terms():
            mono = "".join(names[k] + (f"^{e}" if e > 1 else "") for k, e in enumerate(m) if e)
            mag = abs(c)
            body = (str(mag) if (mag != 1 or not mono) else "") + mono
            out.append(("-" if c < 0 else "+") + body)
        text = "".join(out)
        return text[1:] if text[0] == "+" else text

    __str__ = render

    def __repr__(self) -> str:
        return f"Poly({self.render()!r})"

    def to_json(self) -> dict:
        return {"terms": [{"coef": c, "exps": list(m)} for m, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, n: int, obj: dict) -> "Poly":
        return cls(n, {tuple(t["exps"]): t["coef"] for t in obj["terms"]})


class IdealTag(str, enum.Enum):
    IG = "IG"
    ITHETA = "ITheta"
    IK = "IK"
    ISEGRE = "ISegre"


@dataclass(frozen=True)
class PolySystem:
    tag: IdealTag
    n: int
    generators: tuple[Poly, ...]

    @property
    def minimal_generator_count(self) -> int:
        # one generator of I_G is the negated sum of the others
        return self.n - 1 if self.tag == IdealTag.IG else len(self.generators)

    def to_json(self) -> dict:
        return {"tag": self.tag.value, "n": self.n, "generators": [p.to_json() for p in self.generators]}

    @classmethod
    def from_json(cls, obj: dict) -> "PolySystem":
        n = obj["n"]
        return cls(IdealTag(obj["tag"]), n, tuple(Poly.from_json(n, p) for p in obj["generators"]))


def _xy(n: int):
    return [Poly.var(n, "x", i) for i in range(n)], [Poly.var(n, "y", i) for i in range(n)]


def kuramoto_generators(g: Graph) -> PolySystem:
    """f_i = sum over neighbours j of x_j y_i - x_i y_j, one per vertex."""
    n = g.n
    x, y = _xy(n)
    gens = []
    for i in range(n):
        f = Poly(n)
        for j in g.neighbors(i):
            f = f + x[j] * y[i] - x[i] * y[j]
        gens.append(f)
    return PolySystem(IdealTag.IG, n, tuple(gens))


def theta_generators(n: int) -> PolySystem:
    x, y = _xy(n)
    one = Poly.constant(n, 1)
    return PolySystem(IdealTag.ITHETA, n, tuple(x[i] * x[i] + y[i] * y[i] - one for i in range(n)))


def kuramoto_system(g: Graph) -> PolySystem:
    ig = kuramoto_generators(g)
    return PolySystem(IdealTag.IK, g.n, ig.generators + theta_generators(g.n).generators)


def segre_generators(n: int) -> PolySystem:
    """2x2 minors x_i y_j - x_j y_i of the stacked (x; y) matrix."""
    x, y = _xy(n)
    return PolySystem(IdealTag.ISEGRE, n, tuple(x[i] * y[j] - x[j] * y[i] for i, j in combinations(range(n), 2)))


def linear_forms(n: int) -> tuple[Poly, Poly]:
    """L1 = sum x_i and L2 = sum y_i."""
    x, y = _xy(n)
    l1, l2 = Poly(n), Poly(n)
    for i in range(n):
        l1 = l1 + x[i]
        l2 = l2 + y[i]
    return l1, l2


def sum_generators(system: PolySystem) -> Poly:
    if system.tag != IdealTag.IG:
        raise ValueError("sum_generators expects an IG system")
    total = Poly(system.n)
    for f in system.generators:
        total = total + f
    return total


def evaluate(p: Poly, point: Sequence[float]) -> float:
    point = np.asarray(point, dtype=float)
    if point.shape != (2 * p.n,):
        raise ValueError(f"point must have {2 * p.n} coordinates, got {point.shape}")
    total = 0.0
    for m, c in p.terms.items():
        term = float(c)
        for k, e in enumerate(m):
            if e:
                term *= point[k] ** e
        total += term
    return total


def angles_to_point(theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    return np.concatenate([np.sin(theta), np.cos(theta)])


def _split(point, n: int | None = None):
    point = np.asarray(point, dtype=float)
    if point.ndim != 1 or point.size % 2:
        raise ValueError("point must hold 2n coordinates")
    if n is not None and point.size != 2 * n:
        raise ValueError(f"point must have {2 * n} coordinates, got {point.size}")
    half = point.size // 2
    return point[:half], point[half:]


def _block(g: Graph, v: np.ndarray) -> np.ndarray:
    a = g.adjacency_matrix()
    return v[:, None] * a - np.diag(a @ v)


def algebraic_jacobian_blocks(g: Graph, point) -> tuple[np.ndarray, np.ndarray]:
    """The matrices [Y] and [X] at a point.

    ``[Y][i, j] = d f_i / d x_j``: ``y_i`` for a neighbour j and
    ``-sum_{j ~ i} y_j`` on the diagonal, so ``[Y] @ x == f`` holds as a
    polynomial identity. ``[X]`` is the same with x in place of y, and the
    derivative block in y is ``-[X]``.
    """
    x, y = _split(point, g.n)
    return _block(g, y), _block(g, x)


def ideal_jacobian(g: Graph, point) -> np.ndarray:
    """n x 2n Jacobian of (f_0..f_{n-1}) with respect to (x, y)."""
    ymat, xmat = algebraic_jacobian_blocks(g, point)
    return np.hstack([ymat, -xmat])


def segre_residual(point) -> float:
    """Largest absolute 2x2 minor |x_i y_j - x_j y_i|."""
    x, y = _split(point)
    if x.size < 2:
        return 0.0
    minors = np.outer(x, y) - np.outer(y, x)
    return float(np.abs(minors).max())


def evaluate_system(system: PolySystem, point) -> np.ndarray:
    return np.array([evaluate(p, point) for p in system.generators])
