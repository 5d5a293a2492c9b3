"""Adjacency spectra, inertia, square energies and the positive/negative split A = B - C."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.sparse.csgraph import connected_components

from .graph import Graph

DEFAULT_REL_TOL = 1e-8
EXACT_INERTIA_MAX_N = 30


class EigensolverError(RuntimeError):
    pass


def default_rel_tol() -> float:
    """Relative sign tolerance; ``SQEN_TOL`` in the environment overrides 1e-8."""
    raw = os.environ.get("SQEN_TOL")
    if raw:
        value = float(raw)
        if value < 0:
            raise ValueError("SQEN_TOL must be >= 0")
        return value
    return DEFAULT_REL_TOL


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray              # descending
    vectors: Optional[np.ndarray] = field(default=None, repr=False)  # columns match values
    residual: float = 0.0
    m: int = 0

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def scale(self) -> float:
        if self.n == 0:
            return 1.0
        return max(1.0, abs(float(self.values[0])), abs(float(self.values[-1])))

    def default_tau(self) -> float:
        return default_rel_tol() * self.scale


@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_zero: int
    n_minus: int

    @property
    def n(self) -> int:
        return self.n_plus + self.n_zero + self.n_minus

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_zero, self.n_minus)


@dataclass(frozen=True)
class SquareEnergies:
    s_plus: float
    s_minus: float
    ratio_max: float
    spread: float


@dataclass(frozen=True)
class ResolutionPair:
    B: np.ndarray
    C: np.ndarray


def eigenvalues_symmetric(g: Graph) -> Spectrum:
    """Full spectrum of the adjacency matrix via LAPACK ``syevd`` (numpy.linalg.eigh).

    Raises :class:`EigensolverError` if LAPACK reports non-convergence or the
    reconstruction residual ``||A - V diag(mu) V^T||_F`` exceeds
    ``1e-9 * n * max(1, 2m)``.
    """
    n = g.n
    if n < 1:
        raise ValueError("spectrum needs n >= 1")
    a = g.adjacency.astype(np.float64)
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver did not converge: {exc}") from exc
    w = w[::-1].copy()
    v = v[:, ::-1].copy()
    residual = float(np.linalg.norm(a - (v * w) @ v.T))
    limit = 1e-9 * n * max(1, 2 * g.m)
    if not np.isfinite(residual) or residual > limit:
        raise EigensolverError(f"reconstruction residual {residual:.3e} exceeds {limit:.3e}")
    w.setflags(write=False)
    v.setflags(write=False)
    return Spectrum(values=w, vectors=v, residual=residual, m=g.m)


def _tau(spec: Spectrum, tau: Optional[float]) -> float:
    if tau is None:
        return spec.default_tau()
    if tau < 0:
        raise ValueError("tolerance must be >= 0")
    return tau


def inertia(spec: Spectrum, tau: Optional[float] = None) -> Inertia:
    t = _tau(spec, tau)
    w = spec.values
    pos = int(np.count_nonzero(w > t))
    neg = int(np.count_nonzero(w < -t))
    return Inertia(pos, spec.n - pos - neg, neg)


def square_energies(spec: Spectrum, tau: Optional[float] = None) -> SquareEnergies:
    """s+ and s- with eigenvalues in [-tau, tau] counted in neither sum.

    ``ratio_max`` is ``inf`` when the smaller side is below ``tau**2``.
    """
    t = _tau(spec, tau)
    w = spec.values
    sp = float(np.sum(w[w > t] ** 2))
    sm = float(np.sum(w[w < -t] ** 2))
    lo = min(sp, sm)
    ratio = math.inf if lo < t * t or lo == 0.0 else max(sp / sm, sm / sp)
    return SquareEnergies(sp, sm, ratio, sp - sm)


def spectral_radius(g: Graph) -> float:
    return float(eigenvalues_symmetric(g).values[0])


# exact inertia ------------------------------------------------------------

def characteristic_polynomial(adj) -> list[int]:
    """Integer coefficients ``c[0..n]`` of det(xI - A) (c[n] = 1), Faddeev–LeVerrier.

    Works on Python integers throughout, so the result is exact for any size.
    """
    a = np.asarray(adj).astype(object)
    n = a.shape[0]
    c = [0] * (n + 1)
    c[n] = 1
    eye = np.eye(n, dtype=np.int64).astype(object)
    m = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        m = a.dot(m) + c[n - k + 1] * eye
        tr = int(np.trace(a.dot(m)))
        q, r = divmod(-tr, k)
        if r:
            raise ArithmeticError("non-integral Faddeev–LeVerrier step")
        c[n - k] = q
    return c


def _sign_changes(seq) -> int:
    signs = [1 if x > 0 else -1 for x in seq if x != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def inertia_from_charpoly(coeffs: list[int]) -> Inertia:
    """Inertia of a real-rooted polynomial via Descartes' rule (exact when all roots are real)."""
    n = len(coeffs) - 1
    zero = next(i for i, c in enumerate(coeffs) if c != 0)
    high_first = coeffs[::-1]
    pos = _sign_changes(high_first)
    neg = _sign_changes([c * (-1) ** (n - i) for i, c in enumerate(high_first)])
    return Inertia(pos, zero, neg)


def exact_inertia(g: Graph) -> Inertia:
    if g.n > EXACT_INERTIA_MAX_N:
        raise ValueError(f"exact inertia limited to n <= {EXACT_INERTIA_MAX_N}, got {g.n}")
    if g.n == 0:
        return Inertia(0, 0, 0)
    return inertia_from_charpoly(characteristic_polynomial(g.adjacency))


# spectral resolution ------------------------------------------------------

def spectral_resolution(g: Graph, tau: Optional[float] = None,
                        spec: Optional[Spectrum] = None) -> ResolutionPair:
    """B = sum over mu > tau of mu v v^T, C = sum over mu < -tau of (-mu) v v^T."""
    if spec is None:
        spec = eigenvalues_symmetric(g)
    t = _tau(spec, tau)
    w, v = spec.values, spec.vectors
    pos = w > t
    neg = w < -t
    B = (v[:, pos] * w[pos]) @ v[:, pos].T
    C = (v[:, neg] * -w[neg]) @ v[:, neg].T
    return ResolutionPair(B, C)


def support_irreducible(M, tau: float = 1e-8) -> bool:
    """Whether the off-diagonal support {(i, j): |M_ij| > tau} is connected."""
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    n = M.shape[0]
    if n <= 1:
        return True
    support = np.abs(M) > tau
    np.fill_diagonal(support, False)
    count, _ = connected_components(support, directed=False)
    return count == 1
