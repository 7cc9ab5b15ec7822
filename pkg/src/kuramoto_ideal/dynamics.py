"""Equilibria of the homogeneous Kuramoto flow on a graph.

Angles are plain float arrays. A state is normalised by rotating it so that
``theta[0] == 0`` and reducing every entry into ``[0, 2*pi)``.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import stability
from .graphs import Graph, UnsupportedSizeError, chordless_cycles
from .stability import Classification
from .sturm import glue_cubic, isolate_and_refine

TWO_PI = 2.0 * math.pi
STANDARD_MAX_N = 16


class NewtonDivergence(RuntimeError):
    pass


class NotEquilibriumError(ValueError):
    pass


@dataclass(frozen=True)
class SearchParams:
    restarts: Optional[int] = None  # None means 100 * n
    seed: int = 1
    flow_tol: float = 1e-7
    newton_tol: float = 1e-12
    max_flow_steps: int = 50_000
    dedup_radius: float = 1e-4
    newton_max_iter: int = 50
    zero_tol: float = stability.ZERO_TOL
    neg_tol: float = stability.NEG_TOL
    winding_seeds: bool = True

    def __post_init__(self):
        for name in ("flow_tol", "newton_tol", "dedup_radius", "zero_tol", "neg_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.restarts is not None and self.restarts < 1:
            raise ValueError("restarts must be positive")
        if self.max_flow_steps < 1:
            raise ValueError("max_flow_steps must be positive")

    def restart_count(self, n: int) -> int:
        return self.restarts if self.restarts is not None else 100 * n


# --- basic quantities -------------------------------------------------------

def _snapped_sin(d: np.ndarray) -> np.ndarray:
    # exact zeros at float multiples of pi so sync and standard states give exact residuals
    return np.where(np.remainder(d, math.pi) == 0.0, 0.0, np.sin(d))


def residual(g: Graph, theta) -> np.ndarray:
    """r_i = sum over neighbours j of sin(theta_j - theta_i)."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape[-1] != g.n:
        raise ValueError(f"state has {theta.shape[-1]} angles, graph has {g.n} vertices")
    diff = theta[..., None, :] - theta[..., :, None]
    return (g.adjacency_matrix() * _snapped_sin(diff)).sum(axis=-1)


def residual_norm(g: Graph, theta) -> float:
    return float(np.abs(residual(g, theta)).max(initial=0.0))


def energy(g: Graph, theta) -> float:
    """Potential -sum over edges of cos(theta_i - theta_j); its negative gradient is the residual."""
    theta = np.asarray(theta, dtype=float)
    return -float(sum(math.cos(theta[i] - theta[j]) for i, j in g.edges()))


def normalize(theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    out = np.remainder(theta - theta[..., :1], TWO_PI)
    out[out >= TWO_PI] = 0.0
    return out


def wrap_distance(a, b) -> float:
    """Largest componentwise distance between two angle vectors on the circle."""
    d = np.abs(np.remainder(np.asarray(a) - np.asarray(b) + math.pi, TWO_PI) - math.pi)
    return float(d.max(initial=0.0))


def is_synchronized(theta, tol: float = 1e-6) -> bool:
    return wrap_distance(normalize(theta), np.zeros(len(theta))) <= tol


def is_standard(theta, tol: float = 1e-6) -> bool:
    """All pairwise differences in {0, pi}."""
    t = normalize(theta)
    d = np.abs(np.remainder(t + math.pi / 2, math.pi) - math.pi / 2)
    return float(d.max(initial=0.0)) <= tol


# --- gradient flow ----------------------------------------------------------

def _batch_residual(a: np.ndarray, theta: np.ndarray) -> np.ndarray:
    s, c = np.sin(theta), np.cos(theta)
    return c * (s @ a) - s * (c @ a)


def _batch_energy(a: np.ndarray, theta: np.ndarray) -> np.ndarray:
    s, c = np.sin(theta), np.cos(theta)
    return -0.5 * ((c * (c @ a)).sum(axis=1) + (s * (s @ a)).sum(axis=1))


@dataclass
class FlowResult:
    theta: np.ndarray
    converged: bool
    steps: int
    residual_norm: float


def _flow_batch(g: Graph, init: np.ndarray, flow_tol: float, max_steps: int):
    """Adaptive RK4 on many initial states at once.

    A step is rejected and its size halved when the potential rises; accepted
    steps grow the size by 25% up to a cap set by the maximum degree.
    """
    a = g.adjacency_matrix()
    theta = np.array(init, dtype=float, copy=True)
    rows = theta.shape[0]
    maxdeg = max(max(g.degrees(), default=1), 1)
    h_max = 1.2 / maxdeg
    h_min = 1e-8 * h_max
    h = np.full(rows, 0.5 / maxdeg)
    r = _batch_residual(a, theta)
    e = _batch_energy(a, theta)
    res = np.abs(r).max(axis=1) if g.n else np.zeros(rows)
    steps = np.zeros(rows, dtype=int)
    active = res > flow_tol
    it = 0
    while active.any() and it < max_steps:
        idx = np.flatnonzero(active)
        th = theta[idx]
        hh = h[idx][:, None]
        k1 = r[idx]
        k2 = _batch_residual(a, th + 0.5 * hh * k1)
        k3 = _batch_residual(a, th + 0.5 * hh * k2)
        k4 = _batch_residual(a, th + hh * k3)
        new = th + (hh / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        e_new = _batch_energy(a, new)
        e_old = e[idx]
        ok = (e_new <= e_old + 1e-12 * (1.0 + np.abs(e_old))) | (h[idx] <= h_min)
        acc = idx[ok]
        theta[acc] = np.remainder(new[ok], TWO_PI)
        e[acc] = e_new[ok]
        r[acc] = _batch_residual(a, theta[acc])
        res[acc] = np.abs(r[acc]).max(axis=1)
        h[acc] = np.minimum(h[acc] * 1.25, h_max)
        rej = idx[~ok]
        h[rej] = np.maximum(h[rej] * 0.5, h_min)
        steps[idx] += 1
        active[idx] = res[idx] > flow_tol
        it += 1
    return theta, ~active, steps, res


def flow_to_equilibrium(g: Graph, init, params: SearchParams = SearchParams()) -> FlowResult:
    init = np.asarray(init, dtype=float).reshape(1, -1)
    theta, conv, steps, res = _flow_batch(g, init, params.flow_tol, params.max_flow_steps)
    return FlowResult(theta[0], bool(conv[0]), int(steps[0]), float(res[0]))


# --- Newton refinement ------------------------------------------------------

@dataclass
class NewtonResult:
    theta: np.ndarray
    residual_norm: float
    iterations: int
    degenerate_candidate: bool


def _reduced_step(jr: np.ndarray, rhs: np.ndarray) -> tuple[np.ndarray, bool]:
    try:
        if np.linalg.cond(jr) < 1e12:
            return np.linalg.solve(jr, rhs), False
    except np.linalg.LinAlgError:
        pass
    return np.linalg.lstsq(jr, rhs, rcond=1e-10)[0], True


def newton_refine(g: Graph, theta, params: SearchParams = SearchParams(),
                  tol: Optional[float] = None) -> NewtonResult:
    """Newton on the reduced system: vertex 0's equation and angle are dropped.

    A singular reduced Jacobian switches to minimum-norm least-squares steps,
    which still land on the equilibrium set; the result is then flagged as a
    degenerate candidate.
    """
    tol = params.newton_tol if tol is None else tol
    theta = normalize(theta)
    degenerate = False
    for it in range(params.newton_max_iter + 1):
        r = residual(g, theta)
        norm = float(np.abs(r).max(initial=0.0))
        if not np.isfinite(norm):
            raise NewtonDivergence("non-finite residual during Newton")
        if norm <= tol:
            return NewtonResult(normalize(theta), norm, it, degenerate)
        if it == params.newton_max_iter:
            break
        jr = stability.reduced_jacobian(g, theta)
        step, singular = _reduced_step(jr, -r[1:])
        degenerate |= singular
        theta = theta.copy()
        theta[1:] += step
    raise NewtonDivergence(f"Newton did not reach {tol:g} (last residual {norm:.3g})")


# --- records ----------------------------------------------------------------

@dataclass
class EquilibriumRecord:
    state: np.ndarray
    residual_norm: float
    eigenvalues: np.ndarray
    classification: Classification
    exotic: bool
    kernel_dim: int
    basin_hits: int = 1
    energy: float = 0.0

    @property
    def angles_deg(self) -> np.ndarray:
        return np.degrees(self.state)

    @property
    def standard(self) -> bool:
        return is_standard(self.state)

    def to_json(self) -> dict:
        return {
            "angles_rad": [float(t) for t in self.state],
            "angles_deg": [float(t) for t in self.angles_deg],
            "residual": float(self.residual_norm),
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "classification": self.classification.value,
            "exotic": bool(self.exotic),
            "kernel_dim": int(self.kernel_dim),
            "basin_hits": int(self.basin_hits),
            "energy": float(self.energy),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "EquilibriumRecord":
        return cls(
            state=np.array(obj["angles_rad"], dtype=float),
            residual_norm=obj["residual"],
            eigenvalues=np.array(obj["eigenvalues"], dtype=float),
            classification=Classification(obj["classification"]),
            exotic=obj["exotic"],
            kernel_dim=obj["kernel_dim"],
            basin_hits=obj["basin_hits"],
            energy=obj.get("energy", 0.0),
        )


def analyze_state(g: Graph, theta, params: SearchParams = SearchParams(), basin_hits: int = 1) -> EquilibriumRecord:
    """Spectral summary of an (already refined) equilibrium."""
    theta = normalize(theta)
    vals = stability.eigenvalues(stability.weighted_jacobian(g, theta))
    cls = stability.classify(vals, params.zero_tol, params.neg_tol)
    kdim = stability.kernel_dimension(stability.reduced_jacobian(g, theta), params.zero_tol) if g.n > 1 else 0
    exotic = cls == Classification.LINEARLY_STABLE and not is_synchronized(theta, params.dedup_radius)
    return EquilibriumRecord(
        state=theta,
        residual_norm=residual_norm(g, theta),
        eigenvalues=vals,
        classification=cls,
        exotic=exotic,
        kernel_dim=kdim,
        basin_hits=basin_hits,
        energy=energy(g, theta),
    )


def _record_sort_key(rec: EquilibriumRecord):
    return (rec.classification.rank, round(rec.energy, 9), tuple(np.round(rec.state, 6)))


# --- multistart -------------------------------------------------------------

def initial_angles(seed: int, index: int, n: int) -> np.ndarray:
    """Uniform angles for restart ``index``; stream (seed, index) is independent of the restart count."""
    bitgen = np.random.Philox(np.random.SeedSequence([seed & (2**64 - 1), index]))
    return np.random.Generator(bitgen).uniform(0.0, TWO_PI, size=n)


def winding_starts(g: Graph, max_starts: int = 729) -> list[np.ndarray]:
    """Deterministic starts that wind around chordless cycles of length >= 5.

    Each such cycle C gets a winding q with |q| < |C|/4; shorter chordless
    cycles get 0. Edge phase steps are the least-norm solution of "steps
    around C sum to 2*pi*q" and are integrated along a BFS tree from vertex 0.
    Some stable states have basins too thin for uniform sampling to hit, and
    these starts land in them.
    """
    cycles = chordless_cycles(g, 3)
    edges = g.edges()
    col = {e: k for k, e in enumerate(edges)}
    b = np.zeros((len(cycles), len(edges)))
    for r, c in enumerate(cycles):
        for k in range(len(c)):
            i, j = c[k], c[(k + 1) % len(c)]
            b[r, col[(min(i, j), max(i, j))]] = 1.0 if i < j else -1.0
    ranges = [range(-((len(c) - 1) // 4), (len(c) - 1) // 4 + 1) for c in cycles]
    starts = []
    for ws in itertools.product(*ranges):
        if not any(ws):
            continue
        if len(starts) >= max_starts:
            break
        step = np.linalg.lstsq(b, TWO_PI * np.array(ws, dtype=float), rcond=None)[0]
        theta = np.zeros(g.n)
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    k = col[(min(u, v), max(u, v))]
                    theta[u] = theta[v] + (step[k] if v < u else -step[k])
                    queue.append(u)
        starts.append(theta)
    return starts


@dataclass
class SearchResult:
    records: list[EquilibriumRecord]
    restarts: int
    unconverged: int
    seed: int
    structured: int = 0

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    @property
    def stable(self) -> list[EquilibriumRecord]:
        return [r for r in self.records if r.classification == Classification.LINEARLY_STABLE]

    @property
    def exotic(self) -> list[EquilibriumRecord]:
        return [r for r in self.records if r.exotic]

    def to_json(self) -> dict:
        return {
            "restarts": self.restarts,
            "unconverged": self.unconverged,
            "seed": self.seed,
            "structured_starts": self.structured,
            "records": [r.to_json() for r in self.records],
        }


def multistart_search(g: Graph, params: SearchParams = SearchParams()) -> SearchResult:
    """Seeded random starts, gradient flow, Newton polish, dedup and classification.

    Finding every stable equilibrium is likely at a large enough budget but
    not guaranteed. With ``params.winding_seeds`` the random starts are
    followed by the deterministic ones from :func:`winding_starts`.
    """
    starts = [initial_angles(params.seed, i, g.n) for i in range(params.restart_count(g.n))]
    extra = winding_starts(g) if params.winding_seeds and g.n > 0 else []
    starts.extend(extra)
    count = len(starts)
    init = np.stack(starts)
    final, converged, _, _ = _flow_batch(g, init, params.flow_tol, params.max_flow_steps)
    reps: list[np.ndarray] = []
    hits: list[int] = []
    unconverged = 0
    for i in range(count):
        if not converged[i]:
            unconverged += 1
            continue
        try:
            theta = newton_refine(g, final[i], params).theta
        except NewtonDivergence:
            unconverged += 1
            continue
        for k, rep in enumerate(reps):
            if wrap_distance(rep, theta) <= params.dedup_radius:
                hits[k] += 1
                break
        else:
            reps.append(theta)
            hits.append(1)
    records = [analyze_state(g, t, params, basin_hits=h) for t, h in zip(reps, hits)]
    records.sort(key=_record_sort_key)
    return SearchResult(records, count - len(extra), unconverged, params.seed, len(extra))


# --- special families -------------------------------------------------------

def standard_states(g: Graph, params: SearchParams = SearchParams()) -> list[tuple[np.ndarray, Classification]]:
    """Every assignment theta_0 = 0, theta_i in {0, pi}, with its classification."""
    if g.n > STANDARD_MAX_N:
        raise UnsupportedSizeError(f"standard-state enumeration supports n <= {STANDARD_MAX_N}")
    out = []
    for code in range(1 << max(g.n - 1, 0)):
        theta = np.array([0.0] + [math.pi if (code >> k) & 1 else 0.0 for k in range(g.n - 1)])
        vals = stability.eigenvalues(stability.weighted_jacobian(g, theta))
        out.append((theta, stability.classify(vals, params.zero_tol, params.neg_tol)))
    return out


def twisted_state(n: int, q: int) -> np.ndarray:
    if n < 3:
        raise ValueError("twisted states need n >= 3")
    return np.remainder(TWO_PI * q * np.arange(n) / n, TWO_PI)


def degree_two_filter(g: Graph, theta, tol: float = 1e-8) -> bool:
    """False if some degree-2 vertex has antipodal neighbours, which rules out linear stability.

    At an equilibrium each degree-2 vertex either sits at the midpoint of its
    neighbours (mod pi) or has neighbours exactly pi apart.
    """
    theta = np.asarray(theta, dtype=float)
    if residual_norm(g, theta) > tol:
        raise NotEquilibriumError("degree_two_filter needs an equilibrium")
    for v in range(g.n):
        if g.degree(v) != 2:
            continue
        a, c = (theta[u] for u in g.neighbors(v))
        if wrap_distance([c - a - math.pi], [0.0]) <= tol:
            return False
    return True


def glue_layout(alpha: float, d: int) -> np.ndarray:
    """Angles on the C5 (vertices 0..4) with all d body vertices at 0."""
    # vertices 4, 3, 2, 1, 0 advance by (pi - alpha)/2 from alpha round to -alpha
    head = [-alpha, -(math.pi + alpha) / 2, math.pi, (math.pi + alpha) / 2, alpha]
    return np.array(head + [0.0] * d)


@dataclass
class GlueCandidate:
    w: float
    alpha: float
    state: np.ndarray
    residual_norm: float
    classification: Classification


def glue_candidates(d: int, body: Optional[Graph] = None) -> list[GlueCandidate]:
    """Every root w in (0, 1] of the gluing cubic with the state it produces."""
    from .graphs import glue_c5

    g = glue_c5(d, body)
    out = []
    for w in isolate_and_refine(glue_cubic(d), -1, 1):
        if w <= 0:
            continue
        alpha = 2.0 * math.asin(w)
        theta = glue_layout(alpha, d)
        vals = stability.eigenvalues(stability.weighted_jacobian(g, theta))
        out.append(GlueCandidate(w, alpha, theta, residual_norm(g, theta), stability.classify(vals)))
    return out


def glue_exotic_state(d: int, body: Optional[Graph] = None) -> tuple[np.ndarray, float]:
    """Linearly stable equilibrium of glue_c5(d) and its angle alpha in radians.

    Takes the smallest positive root of 8w^3 - (4+2d)w + 1 whose state is
    linearly stable; for d >= 3 there is only one root in the arcsin range.
    """
    for cand in glue_candidates(d, body):
        if cand.classification == Classification.LINEARLY_STABLE and cand.residual_norm <= 1e-10:
            return cand.state, cand.alpha
    raise RuntimeError(f"no linearly stable glued state for d={d}")


def witness_positive_dimensional(g: Graph, rec: EquilibriumRecord | Sequence[float], steps: int = 20,
                                 step_size: float = 1e-2,
                                 params: SearchParams = SearchParams()) -> list[np.ndarray]:
    """Trace equilibria along a kernel direction of the reduced Jacobian.

    Each step moves ``step_size`` radians along the kernel vector (kept
    pointing the same way as the previous one) and projects back with Newton.
    Returns the distinct equilibria visited, starting point first; empty when
    the reduced Jacobian is nonsingular.
    """
    if not isinstance(rec, EquilibriumRecord):
        rec = analyze_state(g, rec, params)
    if rec.kernel_dim < 1:
        return []
    theta = normalize(rec.state)
    found = [theta]
    prev_dir = None
    for _ in range(steps):
        vals, vecs = stability.jacobi_eigh(stability.reduced_jacobian(g, theta))
        direction = vecs[:, int(np.argmin(np.abs(vals)))]
        if prev_dir is not None and direction @ prev_dir < 0:
            direction = -direction
        prev_dir = direction
        trial = theta.copy()
        trial[1:] += step_size * direction
        try:
            theta = newton_refine(g, trial, params).theta
        except NewtonDivergence:
            continue
        if all(wrap_distance(theta, f) > params.dedup_radius for f in found):
            found.append(theta)
    return found
