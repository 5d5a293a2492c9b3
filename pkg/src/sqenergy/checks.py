"""Named bound checks over a graph, producing structured verdicts.

Checks come in three kinds:

* ``proven``     -- published theorems; a failing verdict is an implementation bug.
* ``conjecture`` -- open conjectures; failures are findings, never errors.
* ``report``     -- open questions and side statistics, recorded without judgement.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import graph as gr
from .coloring import MAX_CHROMATIC_N, ChromaticResult, chromatic_number
from .graph import Graph
from .graph6 import encode_graph6
from .spectral import (
    EXACT_INERTIA_MAX_N,
    Inertia,
    Spectrum,
    SquareEnergies,
    eigenvalues_symmetric,
    exact_inertia,
    inertia,
    spectral_resolution,
    square_energies,
    support_irreducible,
)

PROVEN = "proven"
CONJECTURE = "conjecture"
REPORT = "report"

REL_TOL = 1e-7


@dataclass(frozen=True)
class Verdict:
    check_name: str
    kind: str
    applicable: bool
    holds: Optional[bool]
    lhs: float
    rhs: float
    relation: str       # "<=", ">=" or "=="
    margin: float       # slack, oriented so that holds <=> margin >= -tol
    tol: float
    graph_id: str
    note: str = ""

    @property
    def failed(self) -> bool:
        return self.applicable and self.holds is False

    def as_row(self) -> dict:
        return {
            "graphId": self.graph_id,
            "checkName": self.check_name,
            "kind": self.kind,
            "applicable": self.applicable,
            "holds": "" if self.holds is None else self.holds,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "margin": self.margin,
            "note": self.note,
        }


class Profile:
    """Lazily computed per-graph data shared by all checks (one spectrum per graph)."""

    def __init__(self, g: Graph, tau: Optional[float] = None):
        self.g = g
        self._tau = tau

    @cached_property
    def graph_id(self) -> str:
        return encode_graph6(self.g)

    @cached_property
    def spectrum(self) -> Spectrum:
        return eigenvalues_symmetric(self.g)

    @cached_property
    def tau(self) -> float:
        return self.spectrum.default_tau() if self._tau is None else self._tau

    @cached_property
    def energies(self) -> SquareEnergies:
        return square_energies(self.spectrum, self.tau)

    @cached_property
    def inertia(self) -> Inertia:
        """Exact inertia up to n = 30, tolerance-based beyond."""
        if self.g.n <= EXACT_INERTIA_MAX_N:
            return exact_inertia(self.g)
        return inertia(self.spectrum, self.tau)

    @cached_property
    def components(self) -> list[list[int]]:
        return gr.components(self.g)

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @cached_property
    def chromatic(self) -> Optional[ChromaticResult]:
        if self.g.n > MAX_CHROMATIC_N:
            return None
        return chromatic_number(self.g)

    @property
    def mu1(self) -> float:
        return float(self.spectrum.values[0])


def profile(g) -> Profile:
    return g if isinstance(g, Profile) else Profile(g)


def _verdict(name: str, kind: str, p: Profile, lhs: float, rhs: float, relation: str,
             tol: Optional[float] = None, note: str = "") -> Verdict:
    lhs, rhs = float(lhs), float(rhs)
    if tol is None:
        tol = REL_TOL * max(1.0, abs(lhs), abs(rhs))
    if relation == "<=":
        margin = rhs - lhs
    elif relation == ">=":
        margin = lhs - rhs
    elif relation == "==":
        margin = -abs(lhs - rhs)
    else:
        raise ValueError(f"unknown relation {relation!r}")
    holds = bool(margin >= -tol)
    return Verdict(name, kind, True, holds, lhs, rhs, relation, margin, tol, p.graph_id, note)


def _skip(name: str, kind: str, p: Profile, note: str = "") -> Verdict:
    return Verdict(name, kind, False, None, math.nan, math.nan, "", math.nan, math.nan, p.graph_id, note)


def _min_energy(p: Profile) -> float:
    return min(p.energies.s_plus, p.energies.s_minus)


# identities ---------------------------------------------------------------

def check_trace(g) -> list[Verdict]:
    """Zero trace and s+ + s- = 2m."""
    p = profile(g)
    w = p.spectrum.values
    scale = p.spectrum.scale
    e = p.energies
    zero = _verdict("trace_zero", PROVEN, p, float(np.sum(w)), 0.0, "==",
                    tol=1e-8 * p.g.n * scale)
    # eigenvalues inside [-tau, tau] are dropped from both sums; allow for them
    dropped = float(np.sum(w[np.abs(w) <= p.tau] ** 2))
    squares = _verdict("trace_squares", PROVEN, p, e.s_plus + e.s_minus, 2 * p.g.m, "==",
                       tol=REL_TOL * max(1, 2 * p.g.m) + dropped)
    return [zero, squares]


def check_bipartite_symmetry(g) -> Verdict:
    p = profile(g)
    if not gr.is_bipartite(p.g):
        return _skip("bipartite_symmetry", PROVEN, p, "not bipartite")
    return _verdict("bipartite_symmetry", PROVEN, p, p.energies.s_plus, p.energies.s_minus, "==",
                    tol=REL_TOL * max(1, 2 * p.g.m))


# proven bounds ------------------------------------------------------------

def check_ando_lin(g) -> Verdict:
    """1 + max(s+/s-, s-/s+) <= chi."""
    p = profile(g)
    if p.g.m < 1:
        return _skip("ando_lin", PROVEN, p, "no edges")
    if p.chromatic is None:
        return _skip("ando_lin", PROVEN, p, f"n > {MAX_CHROMATIC_N}: chromatic number out of budget")
    return _verdict("ando_lin", PROVEN, p, 1.0 + p.energies.ratio_max, p.chromatic.chi, "<=")


def check_hong(g) -> Verdict:
    """mu_1 <= sqrt(2m - n + 1) for connected graphs."""
    p = profile(g)
    if not p.connected:
        return _skip("hong", PROVEN, p, "disconnected")
    return _verdict("hong", PROVEN, p, p.mu1, math.sqrt(2 * p.g.m - p.g.n + 1), "<=")


def check_sqrt_n(g) -> Verdict:
    """min(s+, s-) >= sqrt(n) for connected graphs with n >= 3."""
    p = profile(g)
    if p.g.n < 3 or not p.connected:
        return _skip("sqrt_n", PROVEN, p, "needs connected, n >= 3")
    return _verdict("sqrt_n", PROVEN, p, _min_energy(p), math.sqrt(p.g.n), ">=")


def check_mubsm(g) -> tuple[Verdict, Verdict]:
    """s- <= 2m - 4m^2/n^2 <= n^2/4."""
    p = profile(g)
    n, m = p.g.n, p.g.m
    middle = 2 * m - 4 * m * m / (n * n)
    return (
        _verdict("neg_energy_avg_degree", PROVEN, p, p.energies.s_minus, middle, "<="),
        _verdict("avg_degree_quarter_square", PROVEN, p, middle, n * n / 4, "<="),
    )


def check_spread_bounds(g) -> tuple[Verdict, Verdict]:
    """Asserts s+ - s- <= 2m; reports s+ - s- <= (n-1)(n-2)."""
    p = profile(g)
    n, m = p.g.n, p.g.m
    spread = p.energies.spread
    return (
        _verdict("spread_two_m", PROVEN, p, spread, 2 * m, "<="),
        _verdict("spread_complete_bound", REPORT, p, spread, (n - 1) * (n - 2), "<="),
    )


def check_regular_disconnected(g) -> Verdict:
    """min(s+, s-) >= n - 1 for regular disconnected graphs without complete components."""
    p = profile(g)
    name = "regular_disconnected"
    if gr.is_regular(p.g) is None:
        return _skip(name, PROVEN, p, "not regular")
    if p.connected:
        return _skip(name, PROVEN, p, "connected")
    for comp in p.components:
        size = len(comp)
        sub_m = int(p.g.adjacency[np.ix_(comp, comp)].sum()) // 2
        if sub_m == size * (size - 1) // 2:
            return _skip(name, PROVEN, p, "has a complete component")
    return _verdict(name, PROVEN, p, _min_energy(p), p.g.n - 1, ">=")


def check_maximal_planar(g) -> list[Verdict]:
    """Bounds for maximal planar graphs; ``g`` must come from the triangulation generator.

    Planarity is not tested here, only the edge count 3(n-2).
    """
    p = profile(g)
    n, m = p.g.n, p.g.m
    if n < 3 or m != 3 * (n - 2):
        raise ValueError(f"not a maximal planar edge count: n={n}, m={m}")
    sp, sm = p.energies.s_plus, p.energies.s_minus
    return [
        _verdict("planar_neg_lower", PROVEN, p, sm, 1.5 * (n - 2), ">="),
        _verdict("planar_pos_upper", PROVEN, p, sp, 4.5 * (n - 2), "<="),
        _verdict("planar_pos_le_3neg", PROVEN, p, sp, 3 * sm, "<="),
        _verdict("planar_neg_le_3pos", PROVEN, p, sm, 3 * sp, "<="),
        _verdict("planar_pos_lower_question", REPORT, p, sp, 3 * (n - 2), ">="),
        _verdict("planar_neg_upper_question", REPORT, p, sm, 3 * (n - 2), "<="),
    ]


def check_blowup_spectrum(g, t: int) -> Verdict:
    """Spectrum of the t-blowup equals t * spectrum plus (t-1)n zeros."""
    p = profile(g)
    big = eigenvalues_symmetric(gr.blowup(p.g, t)).values
    expected = np.sort(np.concatenate([t * p.spectrum.values, np.zeros((t - 1) * p.g.n)]))
    dev = float(np.max(np.abs(np.sort(big) - expected))) if len(big) else 0.0
    return _verdict(f"blowup_spectrum_t{t}", PROVEN, p, dev, 0.0, "<=",
                    tol=REL_TOL * max(1.0, t * p.spectrum.scale))


# conjectures and open questions -------------------------------------------

def check_conjecture1(g) -> Verdict:
    """Connected graphs: min(s+, s-) >= n - 1."""
    p = profile(g)
    if not p.connected:
        return _skip("min_energy_connected", CONJECTURE, p, "disconnected")
    return _verdict("min_energy_connected", CONJECTURE, p, _min_energy(p), p.g.n - 1, ">=",
                    tol=REL_TOL * p.g.n)


def check_inertia_conjecture(g) -> Verdict:
    """All graphs: min(s+, s-) >= max(n+, n-)."""
    p = profile(g)
    ine = p.inertia
    return _verdict("inertia_bound", CONJECTURE, p, _min_energy(p), max(ine.n_plus, ine.n_minus), ">=")


def check_side_statistics(g) -> tuple[Verdict, Verdict]:
    """Per-side n - 1 lower bound on graphs without isolated vertices (connectivity not required)."""
    p = profile(g)
    if p.g.n == 0 or np.any(p.g.degrees() == 0):
        return (_skip("s_plus_no_isolated", REPORT, p, "isolated vertex"),
                _skip("s_minus_no_isolated", REPORT, p, "isolated vertex"))
    return (
        _verdict("s_plus_no_isolated", REPORT, p, p.energies.s_plus, p.g.n - 1, ">="),
        _verdict("s_minus_no_isolated", REPORT, p, p.energies.s_minus, p.g.n - 1, ">="),
    )


@dataclass(frozen=True)
class IrreducibilityReport:
    graph_id: str
    b_irreducible: bool
    c_irreducible: bool


def check_irreducibility_question(g) -> Optional[IrreducibilityReport]:
    """Support connectivity of B and C in A = B - C; ``None`` unless connected with m >= 1."""
    p = profile(g)
    if p.g.m < 1 or not p.connected:
        return None
    pair = spectral_resolution(p.g, p.tau, spec=p.spectrum)
    cut = 1e-8 * p.spectrum.scale
    return IrreducibilityReport(p.graph_id, support_irreducible(pair.B, cut), support_irreducible(pair.C, cut))


def _irreducibility_verdict(g) -> Verdict:
    p = profile(g)
    rep = check_irreducibility_question(p)
    if rep is None:
        return _skip("resolution_irreducible", REPORT, p, "needs connected, m >= 1")
    both = rep.b_irreducible and rep.c_irreducible
    return Verdict("resolution_irreducible", REPORT, True, both, float(rep.b_irreducible),
                   float(rep.c_irreducible), "==", 0.0 if both else -1.0, 0.0, p.graph_id,
                   "lhs/rhs: B/C support connected")


# suites -------------------------------------------------------------------

def _flatten(x) -> list[Verdict]:
    if isinstance(x, Verdict):
        return [x]
    return list(x)


_PROVEN_CHECKS: list[tuple[str, Callable]] = [
    ("trace", check_trace),
    ("bipartite_symmetry", check_bipartite_symmetry),
    ("ando_lin", check_ando_lin),
    ("hong", check_hong),
    ("sqrt_n", check_sqrt_n),
    ("mubsm", check_mubsm),
    ("spread", check_spread_bounds),
    ("regular_disconnected", check_regular_disconnected),
]
_CONJECTURE_CHECKS: list[tuple[str, Callable]] = [
    ("min_energy_connected", check_conjecture1),
    ("inertia_bound", check_inertia_conjecture),
    ("side_statistics", check_side_statistics),
    ("resolution_irreducible", _irreducibility_verdict),
]
SUITES = ("all", "proven", "conjectures")


def run_suite(g, suite: str | Sequence[str] = "all", *, maximal_planar: bool = False,
              tau: Optional[float] = None) -> list[Verdict]:
    """Run a suite on one graph; order is fixed, and a crashing check becomes a
    non-applicable verdict carrying the error text instead of aborting."""
    p = g if isinstance(g, Profile) else Profile(g, tau)
    if isinstance(suite, str):
        if suite not in SUITES:
            raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
        checks = []
        if suite in ("all", "proven"):
            checks += _PROVEN_CHECKS
            if maximal_planar:
                checks.append(("maximal_planar", check_maximal_planar))
        if suite in ("all", "conjectures"):
            checks += _CONJECTURE_CHECKS
    else:
        registry = dict(_PROVEN_CHECKS + _CONJECTURE_CHECKS + [("maximal_planar", check_maximal_planar)])
        unknown = [s for s in suite if s not in registry]
        if unknown:
            raise ValueError(f"unknown checks {unknown}")
        checks = [(s, registry[s]) for s in suite]
    conjectural = {name for name, _ in _CONJECTURE_CHECKS}
    out: list[Verdict] = []
    for name, fn in checks:
        try:
            out.extend(_flatten(fn(p)))
        except Exception as exc:  # recorded, never fatal for the suite
            kind = REPORT if name in conjectural else PROVEN
            out.append(_skip(name, kind, p, f"error: {type(exc).__name__}: {exc}"))
    return out


def proven_failures(verdicts: Iterable[Verdict]) -> list[Verdict]:
    """Failed proven checks, plus proven checks that crashed."""
    return [v for v in verdicts
            if v.kind == PROVEN and (v.failed or v.note.startswith("error:"))]


def findings(verdicts: Iterable[Verdict]) -> list[Verdict]:
    return [v for v in verdicts if v.kind != PROVEN and v.failed]
