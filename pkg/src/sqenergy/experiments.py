"""Random-graph sweeps, exhaustive average energies and family growth tables."""
from __future__ import annotations

import csv
import dataclasses
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import exact
from .graph import Graph
from .random_graphs import derive_seed, sample_gnp
from .spectral import default_rel_tol


def parallel_map(fn: Callable, items: Sequence, threads: int = 1) -> list:
    """Ordered map; LAPACK and the numba kernels release the GIL, so threads help."""
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def batch_energies(adjs: np.ndarray, rel_tol: Optional[float] = None) -> np.ndarray:
    """Columns s+, s-, mu1^2 for a stack of adjacency matrices of equal size."""
    if rel_tol is None:
        rel_tol = default_rel_tol()
    w = np.linalg.eigvalsh(np.asarray(adjs, dtype=np.float64))
    scale = np.maximum(1.0, np.maximum(np.abs(w[:, 0]), np.abs(w[:, -1])))
    tau = (rel_tol * scale)[:, None]
    sq = w * w
    sp = np.where(w > tau, sq, 0.0).sum(axis=1)
    sm = np.where(w < -tau, sq, 0.0).sum(axis=1)
    return np.column_stack([sp, sm, w[:, -1] ** 2])


# random sweeps ------------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    n: int
    p: float
    samples: int
    seed: int
    mean_s_plus: float
    std_s_plus: float
    mean_s_minus: float
    std_s_minus: float
    mean_mu1_sq: float
    std_mu1_sq: float
    mean_m: float
    std_m: float


def _std(x: np.ndarray) -> float:
    return float(np.std(x, ddof=1)) if len(x) > 1 else 0.0


def sweep_point(n: int, p: float, samples: int, seed: int) -> SweepRow:
    """Aggregate ``samples`` draws of G(n, p); sample i uses ``derive_seed(seed, i, p)``."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    graphs = [sample_gnp(n, p, derive_seed(seed, i, p)) for i in range(samples)]
    stats = batch_energies(np.stack([g.adjacency for g in graphs]))
    ms = np.array([g.m for g in graphs], dtype=np.float64)
    return SweepRow(
        n, float(p), samples, seed,
        float(stats[:, 0].mean()), _std(stats[:, 0]),
        float(stats[:, 1].mean()), _std(stats[:, 1]),
        float(stats[:, 2].mean()), _std(stats[:, 2]),
        float(ms.mean()), _std(ms),
    )


def random_sweep(n: int, p_grid: Iterable[float], samples: int, seed: int,
                 threads: int = 1) -> list[SweepRow]:
    grid = [float(p) for p in p_grid]
    return parallel_map(lambda p: sweep_point(n, p, samples, seed), grid, threads)


def parse_grid(text: str) -> list[float]:
    """``start:stop:step`` (inclusive of stop) or a comma-separated list."""
    if ":" in text:
        start, stop, step = (Fraction(x) for x in text.split(":"))
        if step <= 0:
            raise ValueError("grid step must be positive")
        count = int((stop - start) / step)
        return [float(start + i * step) for i in range(count + 1)]
    return [float(x) for x in text.split(",") if x.strip()]


@dataclass(frozen=True)
class AlmostAllStats:
    n: int
    samples: int
    s_plus_over_n2: float
    s_minus_over_n2: float
    mu1_sq_over_n2: float
    target_s_plus: float = 3 / 8
    target_s_minus: float = 1 / 8
    target_mu1_sq: float = 1 / 4


def almost_all_check(n: int, samples: int, seed: int) -> AlmostAllStats:
    """Normalised square energies of G(n, 1/2) against their limits 3/8, 1/8, 1/4."""
    if n < 50:
        raise ValueError("almost-all check needs n >= 50")
    row = sweep_point(n, 0.5, samples, seed)
    n2 = float(n * n)
    return AlmostAllStats(n, samples, row.mean_s_plus / n2, row.mean_s_minus / n2, row.mean_mu1_sq / n2)


# exhaustive averages ------------------------------------------------------

@dataclass(frozen=True)
class AverageRow:
    n: int
    m: int
    graph_count: int
    avg_s_plus: float
    avg_s_minus: float


@dataclass(frozen=True)
class AverageTable:
    n: int
    rows: tuple[AverageRow, ...]

    @property
    def total(self) -> int:
        return sum(r.graph_count for r in self.rows)

    def argmax_s_minus(self) -> int:
        best = max(self.rows, key=lambda r: (r.avg_s_minus, -r.m))
        return best.m

    def s_plus_nondecreasing(self) -> bool:
        vals = [r.avg_s_plus for r in self.rows]
        return all(b >= a - 1e-9 * max(1.0, abs(a)) for a, b in zip(vals, vals[1:]))

    def s_minus_unimodal(self) -> bool:
        """Nondecreasing up to the argmax, nonincreasing after it."""
        vals = [r.avg_s_minus for r in self.rows]
        k = vals.index(max(vals))
        up = all(b >= a - 1e-9 * max(1.0, abs(a)) for a, b in zip(vals[:k + 1], vals[1:k + 1]))
        down = all(b <= a + 1e-9 * max(1.0, abs(a)) for a, b in zip(vals[k:], vals[k + 1:]))
        return up and down


def average_square_energies(graphs: Iterable[Graph], batch: int = 4096) -> AverageTable:
    """Per-edge-count averages of s+ and s- over a stream of graphs on a common n."""
    n = None
    sums: dict[int, list] = {}
    buf: list[np.ndarray] = []
    ms: list[int] = []

    def flush():
        if not buf:
            return
        stats = batch_energies(np.stack(buf))
        for m, (sp, sm, _) in zip(ms, stats):
            acc = sums.setdefault(m, [0, 0.0, 0.0])
            acc[0] += 1
            acc[1] += sp
            acc[2] += sm
        buf.clear()
        ms.clear()

    for g in graphs:
        if n is None:
            n = g.n
        elif g.n != n:
            raise ValueError(f"mixed vertex counts in stream: {n} and {g.n}")
        buf.append(g.adjacency)
        ms.append(g.m)
        if len(buf) >= batch:
            flush()
    flush()
    if n is None:
        raise ValueError("empty graph stream")
    rows = tuple(AverageRow(n, m, c, float(sp / c), float(sm / c)) for m, (c, sp, sm) in sorted(sums.items()))
    return AverageTable(n, rows)


# family growth tables -----------------------------------------------------

@dataclass(frozen=True)
class GrowthRow:
    family: str
    param: str
    n: int
    s_plus: int
    s_minus: int
    spread: int
    mu1_sq: int
    ratio_neg_pos: float
    statistic: float
    statistic_name: str


STUDIES = ("gq-ratio", "gq-q2q3", "taylor-spread", "kneser-symmetry")
DEFAULT_GRIDS = {
    "gq-ratio": [2, 3, 4, 5, 7, 8, 9, 11, 13],
    "gq-q2q3": [2, 3, 4, 5, 7, 8, 9, 11, 13],
    "taylor-spread": [(q, a) for q in (3, 5, 7) for a in (0, 1, 2, 3)],
    "kneser-symmetry": [(k, j) for k in range(2, 11) for j in range(1, k)],
}


def _row(family: str, param: str, spec: exact.RationalSpectrum, statistic: float, name: str) -> GrowthRow:
    e = exact.exact_square_energies(spec)
    mu1 = spec.spectral_radius
    return GrowthRow(family, param, spec.n, e.s_plus, e.s_minus, e.spread, mu1 * mu1,
                     e.s_minus / e.s_plus, statistic, name)


def ratio_growth_study(study: str, grid: Optional[Sequence] = None) -> list[GrowthRow]:
    if study not in STUDIES:
        raise ValueError(f"unknown study {study!r}; choose from {STUDIES}")
    grid = DEFAULT_GRIDS[study] if grid is None else grid
    rows = []
    for param in grid:
        if study == "gq-ratio":
            q = int(param)
            spec = exact.gq_spectrum(q, q * q).spectrum()
            e = exact.exact_square_energies(spec)
            rows.append(_row("GQ(q,q^2)", str(q), spec, e.s_minus / e.s_plus / spec.n ** 0.25,
                             "(s-/s+)/n^(1/4)"))
        elif study == "gq-q2q3":
            q = int(param)
            spec = exact.gq_spectrum(q * q, q ** 3).spectrum()
            e = exact.exact_square_energies(spec)
            rows.append(_row("GQ(q^2,q^3)", str(q), spec, spec.spectral_radius ** 2 / e.s_plus,
                             "mu1^2/s+"))
        elif study == "taylor-spread":
            q, a = (int(x) for x in param)
            t = q ** a
            spec = exact.blowup_spectrum(exact.taylor_spectrum(q).spectrum(), t)
            e = exact.exact_square_energies(spec)
            rows.append(_row("Taylor blowup", f"q={q};a={a};t={t}", spec,
                             e.spread / spec.n ** (2 - 2 / (3 + a)), "spread/n^(2-2/(3+a))"))
        else:
            k, j = (int(x) for x in param)
            spec = exact.kneser_spectrum(2 * k + 2 * j, k)
            e = exact.exact_square_energies(spec)
            rows.append(_row("Kneser(2k+2j,k)", f"k={k};j={j}", spec, e.s_plus / e.s_minus, "s+/s-"))
    return rows


# output -------------------------------------------------------------------

def _as_dict(row) -> dict:
    if dataclasses.is_dataclass(row):
        return {f.name: getattr(row, f.name) for f in dataclasses.fields(row)}
    return dict(row)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def rows_to_csv(rows: Sequence) -> str:
    if not rows:
        raise ValueError("no rows to write")
    dicts = [_as_dict(r) for r in rows]
    header = list(dicts[0])
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for d in dicts:
        writer.writerow([_fmt(d[k]) for k in header])
    return out.getvalue()


def emit_csv(rows: Sequence, path) -> None:
    text = rows_to_csv(rows)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


_W, _H = 640, 440
_L, _R, _T, _B = 70, 20, 30, 50


def _svg_chart(series: list[tuple[str, str, list[tuple[float, float]]]], xlabel: str, ylabel: str,
               title: str) -> str:
    xs = [x for _, _, pts in series for x, _ in pts]
    ys = [y for _, _, pts in series for _, y in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = 0.0, max(ys) if max(ys) > 0 else 1.0
    x1 = x1 if x1 > x0 else x0 + 1.0

    def px(x):
        return _L + (x - x0) / (x1 - x0) * (_W - _L - _R)

    def py(y):
        return _H - _B - (y - y0) / (y1 - y0) * (_H - _T - _B)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{_W / 2:.1f}" y="18" text-anchor="middle" font-size="14">{title}</text>',
        f'<line x1="{_L}" y1="{_H - _B}" x2="{_W - _R}" y2="{_H - _B}" stroke="black"/>',
        f'<line x1="{_L}" y1="{_T}" x2="{_L}" y2="{_H - _B}" stroke="black"/>',
        f'<text x="{(_L + _W - _R) / 2:.1f}" y="{_H - 12}" text-anchor="middle" font-size="13">{xlabel}</text>',
        f'<text x="16" y="{(_T + _H - _B) / 2:.1f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 16 {(_T + _H - _B) / 2:.1f})">{ylabel}</text>',
    ]
    for i in range(6):
        xv = x0 + (x1 - x0) * i / 5
        yv = y0 + (y1 - y0) * i / 5
        lines.append(f'<text x="{px(xv):.1f}" y="{_H - _B + 16}" text-anchor="middle" font-size="11">{xv:g}</text>')
        lines.append(f'<text x="{_L - 6}" y="{py(yv) + 4:.1f}" text-anchor="end" font-size="11">{yv:.0f}</text>')
    for k, (name, colour, pts) in enumerate(series):
        path = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in pts)
        lines.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{path}"/>')
        for x, y in pts:
            lines.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="2.5" fill="{colour}"/>')
        ly = _T + 14 + 16 * k
        lines.append(f'<line x1="{_L + 12}" y1="{ly}" x2="{_L + 32}" y2="{ly}" stroke="{colour}" stroke-width="2"/>')
        lines.append(f'<text x="{_L + 38}" y="{ly + 4}" font-size="12">{name}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def sweep_svg(rows: Sequence[SweepRow], figure: int = 1) -> str:
    """Figure-1 style (energies against p) or Figure-2 style (s- and its upper bounds against m)."""
    if not rows:
        raise ValueError("no rows to plot")
    n = rows[0].n
    if figure == 1:
        return _svg_chart(
            [("s+", "blue", [(r.p, r.mean_s_plus) for r in rows]),
             ("s-", "red", [(r.p, r.mean_s_minus) for r in rows])],
            "p", "average square energies", f"Average square energies of G({n}, p)")
    if figure == 2:
        ms = sorted({r.mean_m for r in rows})
        return _svg_chart(
            [("sampled s-", "blue", [(r.mean_m, r.mean_s_minus) for r in rows]),
             ("2m - n + 1", "green", [(m, 2 * m - n + 1) for m in ms if 2 * m - n + 1 >= 0]),
             ("n^2/4", "red", [(m, n * n / 4) for m in ms]),
             ("2m - 4m^2/n^2", "brown", [(m, 2 * m - 4 * m * m / (n * n)) for m in ms])],
            "m", "negative square energy", f"Upper bounds for s- and sampled s-, n = {n}")
    raise ValueError("figure must be 1 or 2")


def emit_svg_plot(rows: Sequence[SweepRow], path, figure: int = 1) -> None:
    text = sweep_svg(rows, figure)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def figure2_dominance(rows: Sequence[SweepRow], sigmas: float = 3.0) -> list[bool]:
    """Per row: mean s- <= 2m - 4m^2/n^2 + sigmas * std(s-), with m the sampled mean edge count."""
    out = []
    for r in rows:
        bound = 2 * r.mean_m - 4 * r.mean_m ** 2 / (r.n * r.n)
        out.append(r.mean_s_minus <= bound + sigmas * r.std_s_minus + 1e-9 * max(1.0, bound))
    return out
