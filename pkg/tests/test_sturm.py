from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kuramoto_ideal.sturm import (
    UniPoly,
    count_roots_in_interval,
    depressed_glue_cubic,
    glue_cubic,
    isolate_and_refine,
    isolate_roots,
    poly_gcd,
    squarefree_part,
    sturm_sequence,
)


def real_roots(p: UniPoly, a: float, b: float) -> list[float]:
    """numpy oracle: distinct real roots in (a, b]."""
    r = np.roots([float(c) for c in reversed(p.coeffs)])
    real = sorted(x.real for x in r if abs(x.imag) < 1e-7 and a < x.real <= b)
    out = []
    for x in real:
        if not out or abs(x - out[-1]) > 1e-6:
            out.append(x)
    return out


def test_parse_and_str():
    p = UniPoly.parse("1 -10 0 8")
    assert p == glue_cubic(3)
    assert str(p) == "8t^3-10t+1"
    with pytest.raises(ValueError):
        UniPoly.parse("  ")


def test_chain_small_cases():
    assert sturm_sequence(UniPoly([-1, 0, 1])) == [UniPoly([-1, 0, 1]), UniPoly([0, 2]), UniPoly([1])]
    assert sturm_sequence(UniPoly([0, 1])) == [UniPoly([0, 1]), UniPoly([1])]
    with pytest.raises(ValueError):
        sturm_sequence(UniPoly([]))


@pytest.mark.parametrize("d", range(1, 11))
def test_depressed_chain_up_to_positive_scaling(d):
    chain = sturm_sequence(depressed_glue_cubic(d))
    expected = [
        UniPoly([1, -(d + 2), 0, 1]),
        UniPoly([-(d + 2), 0, 3]),
        UniPoly([-1, Fraction(2 * d + 4, 3)]),
        UniPoly([Fraction(d + 2) - Fraction(27, 4 * (d + 2) ** 2)]),
    ]
    assert len(chain) == 4
    for got, want in zip(chain, expected):
        ratio = {a / b for a, b in zip(got.coeffs, want.coeffs) if b}
        assert len(ratio) == 1 and ratio.pop() > 0
        assert all((a == 0) == (b == 0) for a, b in zip(got.coeffs, want.coeffs))


def test_chain_neighbours_coprime(rng):
    for _ in range(50):
        coeffs = [Fraction(int(c)) for c in rng.integers(-10, 11, size=5)]
        if coeffs[-1] == 0:
            coeffs[-1] = Fraction(1)
        chain = sturm_sequence(UniPoly(coeffs))
        for a, b in zip(chain, chain[1:]):
            assert poly_gcd(a, b).degree == 0


def test_counts_examples():
    assert count_roots_in_interval(UniPoly([1, 5, 0, -1]), -2, 2) == 1
    assert count_roots_in_interval(UniPoly([1, 0, 1]), -10, 10) == 0
    assert [count_roots_in_interval(depressed_glue_cubic(d), -2, 2) for d in (1, 2, 3)] == [3, 2, 1]


def test_half_open_endpoints():
    p = UniPoly([-1, 0, 1])  # roots -1, 1
    assert count_roots_in_interval(p, -1, 1) == 1
    assert count_roots_in_interval(p, -2, 1) == 2
    assert count_roots_in_interval(p, 1, 2) == 0


def test_non_squarefree_input():
    p = UniPoly([1, -2, 1])  # (t - 1)^2
    assert squarefree_part(p).degree == 1
    assert count_roots_in_interval(p, 0, 2) == 1


def test_refine_examples():
    roots = isolate_and_refine(glue_cubic(3), -2, 2)
    assert np.allclose(roots, real_roots(glue_cubic(3), -2, 2), atol=1e-13)
    # printed to two decimals by truncation: {-1.16, .10, 1.06}
    assert [int(r * 100) / 100 for r in roots] == [-1.16, 0.10, 1.06]
    one = isolate_and_refine(UniPoly([1, 5, 0, -1]), -2, 2)
    assert len(one) == 1 and round(one[0], 1) == -0.2
    assert abs(isolate_and_refine(UniPoly([-2, 0, 1]), 0, 2)[0] - 2 ** 0.5) < 1e-14


def test_refine_root_at_endpoint():
    lo, hi = isolate_and_refine(UniPoly([-1, 0, 1]), -2, 1)
    assert abs(lo + 1.0) <= 1e-14 and hi == 1.0


def test_against_dense_sampling(rng):
    xs = np.linspace(-10, 10, 10_001)
    checked = 0
    for _ in range(200):
        deg = int(rng.integers(3, 5))
        coeffs = [Fraction(int(c), int(rng.integers(1, 5))) for c in rng.integers(-10, 11, size=deg + 1)]
        if coeffs[-1] == 0:
            coeffs[-1] = Fraction(1)
        p = UniPoly(coeffs)
        vals = np.polyval([float(c) for c in reversed(p.coeffs)], xs)
        if np.any(vals == 0):
            continue
        sampled = int(np.sum(np.sign(vals[:-1]) != np.sign(vals[1:])))
        exact = count_roots_in_interval(p, -10, 10)
        oracle = len(real_roots(p, -10, 10))
        assert exact == oracle
        # sampling misses close pairs and double roots but never overcounts
        assert sampled <= exact and (exact - sampled) % 2 == 0
        checked += 1
    assert checked > 150


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-10, 10), min_size=2, max_size=6).filter(lambda c: c[-1] != 0))
def test_refined_roots_property(coeffs):
    p = UniPoly(coeffs)
    tol = 1e-12
    roots = isolate_and_refine(p, -20, 20, tol=tol)
    sq = squarefree_part(p)
    norm = sum(abs(float(c)) for c in sq.coeffs)
    for r in roots:
        assert abs(sq(r)) <= 1e-6 * (1 + norm) * max(1.0, abs(r)) ** sq.degree
    assert all(b - a > tol for a, b in zip(roots, roots[1:]))
    assert len(roots) == count_roots_in_interval(p, -20, 20) == len(isolate_roots(sq, -20, 20))


def test_glue_cubic_forms():
    assert glue_cubic(3) == UniPoly([1, -10, 0, 8])
    assert glue_cubic(1) == UniPoly([1, -6, 0, 8])
    for d in range(1, 20):
        # y = 2w turns 8w^3 - (4+2d)w + 1 into y^3 - (d+2)y + 1
        assert glue_cubic(d).substitute_scale(Fraction(1, 2)) == depressed_glue_cubic(d)
    with pytest.raises(ValueError):
        glue_cubic(0)


@pytest.mark.parametrize("d", range(1, 51))
def test_glue_root_pattern(d):
    n = count_roots_in_interval(depressed_glue_cubic(d), -2, 2)
    assert n == {1: 3, 2: 2}.get(d, 1)
    # arcsin window for w = sin(alpha/2): exactly one root in (0, 1/2]
    assert count_roots_in_interval(glue_cubic(d), 0, Fraction(1, 2)) == 1
