"""Jacobian of the homogeneous model, symmetric eigensolver and stability classes."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .graphs import Graph

ZERO_TOL = 1e-7
NEG_TOL = 1e-6


class Classification(str, enum.Enum):
    LINEARLY_STABLE = "LinearlyStable"
    DEGENERATE = "Degenerate"
    UNSTABLE = "Unstable"

    @property
    def rank(self) -> int:
        return _CLASS_ORDER[self]


_CLASS_ORDER = {
    Classification.LINEARLY_STABLE: 0,
    Classification.DEGENERATE: 1,
    Classification.UNSTABLE: 2,
}


class AsymmetricMatrixError(ValueError):
    pass


def weighted_jacobian(g: Graph, theta) -> np.ndarray:
    """Weighted negative Laplacian with edge weights cos(theta_i - theta_j)."""
    theta = np.asarray(theta, dtype=float)
    a = g.adjacency_matrix()
    w = a * np.cos(theta[:, None] - theta[None, :])
    return w - np.diag(w.sum(axis=1))


def reduced_jacobian(g: Graph, theta) -> np.ndarray:
    """Jacobian with vertex 0's row and column removed (gauge theta_0 fixed)."""
    return weighted_jacobian(g, theta)[1:, 1:]


def _check_symmetric(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise AsymmetricMatrixError("matrix must be square")
    scale = max(float(np.abs(m).max(initial=0.0)), 1.0)
    if np.abs(m - m.T).max(initial=0.0) > 1e-12 * scale:
        raise AsymmetricMatrixError("matrix is not symmetric")
    return m


def jacobi_eigh(m, tol: float = 1e-15, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a dense symmetric matrix by cyclic Jacobi rotations.

    Returns ``(values, vectors)`` with values ascending and eigenvectors in the
    columns of ``vectors``.
    """
    a = _check_symmetric(m).copy()
    n = a.shape[0]
    v = np.eye(n)
    if n == 0:
        return np.zeros(0), v
    scale = float(np.abs(a).max(initial=0.0))
    if scale == 0.0:
        return np.zeros(n), v
    mask = ~np.eye(n, dtype=bool)
    norm = np.linalg.norm(a / scale)
    for _ in range(max_sweeps):
        # off-diagonal mass measured directly; total minus diagonal cancels badly
        off = np.linalg.norm(a[mask] / scale)
        if off <= tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                elif theta:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                else:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    vals = np.diag(a).copy()
    order = np.argsort(vals, kind="stable")
    return vals[order], v[:, order]


def eigenvalues(m) -> np.ndarray:
    return jacobi_eigh(m)[0]


def _scale(vals: np.ndarray) -> float:
    s = float(np.abs(vals).max(initial=0.0))
    return s if s > 1e-12 else 1.0


def classify(vals, zero_tol: float = ZERO_TOL, neg_tol: float = NEG_TOL) -> Classification:
    """Linear stability from an ascending spectrum containing the gauge zero.

    Any eigenvalue above ``+neg_tol*scale`` makes the point Unstable; two or
    more near-zero eigenvalues, or anything caught between the bands, is
    Degenerate.
    """
    vals = np.asarray(vals, dtype=float)
    scale = _scale(vals)
    if np.any(vals >= neg_tol * scale):
        return Classification.UNSTABLE
    zeros = int(np.sum(np.abs(vals) <= zero_tol * scale))
    negatives = int(np.sum(vals <= -neg_tol * scale))
    if zeros == 1 and negatives == len(vals) - 1:
        return Classification.LINEARLY_STABLE
    return Classification.DEGENERATE


def kernel_dimension(m, zero_tol: float = ZERO_TOL) -> int:
    vals = eigenvalues(m)
    return int(np.sum(np.abs(vals) <= zero_tol * _scale(vals)))


def half_pi_sufficiency(g: Graph, theta) -> bool:
    """True when every edge difference lies strictly inside (-pi/2, pi/2) mod 2pi."""
    theta = np.asarray(theta, dtype=float)
    for i, j in g.edges():
        diff = (theta[i] - theta[j] + np.pi) % (2 * np.pi) - np.pi
        if not -np.pi / 2 < diff < np.pi / 2:
            return False
    return True


@dataclass
class SpectralReport:
    eigenvalues: np.ndarray
    zero_count: int
    classification: Classification
    zero_tol: float

    def to_json(self) -> dict:
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "zero_count": self.zero_count,
            "classification": self.classification.value,
            "zero_tol": self.zero_tol,
        }


def spectral_report(g: Graph, theta, zero_tol: float = ZERO_TOL, neg_tol: float = NEG_TOL) -> SpectralReport:
    vals = eigenvalues(weighted_jacobian(g, theta))
    zeros = int(np.sum(np.abs(vals) <= zero_tol * _scale(vals)))
    return SpectralReport(vals, zeros, classify(vals, zero_tol, neg_tol), zero_tol)


def _m2_number(x: float) -> str:
    if abs(x) < 5e-13:
        return "0"
    s = f"{x:.6g}"
    if "e" in s:
        return s
    if s.startswith("0."):
        s = s[1:]
    elif s.startswith("-0."):
        s = "-" + s[2:]
    return s


def format_matrix(m) -> str:
    """Six significant digits, leading zeros dropped, columns left aligned."""
    m = np.asarray(m, dtype=float)
    cells = [[_m2_number(x) for x in row] for row in m]
    widths = [max(len(r[k]) for r in cells) for k in range(m.shape[1])] if cells else []
    lines = []
    for r in cells:
        body = " ".join(c.ljust(w) for c, w in zip(r, widths))
        lines.append(f"| {body} |")
    return "\n".join(lines)
