"""Root sweeps over closed-form families, interval certificates and the
real-root explorer for K_{1,n}[K_m]."""

from __future__ import annotations

import colorsys
import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .closed_forms import dt_friendship4, dt_lex_star_complete, lex_star_min_degree
from .errors import ParameterError
from .poly import Polynomial, eval_exact
from .report import CheckResult
from .roots import (
    RootSet,
    SolverConfig,
    certify_real_root_interval,
    check_residuals,
    check_root_bound,
    disk_radius,
    dyadic_below,
    find_roots,
    fujiwara_bound,
    neg_log,
)

SWEEP_FAMILIES = ("friendship4", "star_lex")
CSV_COLUMNS = ("family", "n", "m", "re", "im", "multiplicity")
CONJECTURE_MAX_DEGREE = 400


def fmt(v: float) -> str:
    """12 significant digits, with negative zero printed as 0."""
    return format(v + 0.0, ".12g")


# -- sweeps ------------------------------------------------------------------

@dataclass
class SweepPoint:
    n: int
    m: int
    order: int
    min_degree: int
    polynomial: Polynomial
    roots: RootSet
    checks: list[CheckResult] = field(default_factory=list)


@dataclass
class SweepResult:
    family: str
    points: list[SweepPoint]
    certificates: list[tuple[int, str, CheckResult]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Root counts, symmetry, disk bound and the (-1, 0) certificates all hold."""
        if any(c.failed for pt in self.points for c in pt.checks):
            return False
        return all(c.passed for _, kind, c in self.certificates if kind == "(-1,0)")

    def rows(self) -> list[tuple]:
        out = []
        for pt in self.points:
            for z, mult in pt.roots.centers():
                out.append((self.family, pt.n, pt.m, z.real, z.imag, mult))
        return out


def family_instance(family: str, n: int, m: int | None) -> tuple[Polynomial, int, int, int]:
    """(polynomial, m column, order, minimum degree) of one sweep member."""
    if family == "friendship4":
        if n < 1:
            raise ParameterError("friendship4 needs n >= 1")
        return dt_friendship4(n), 4, 3 * n + 1, 2
    if family == "star_lex":
        if m is None or m < 1 or n < 1:
            raise ParameterError("star_lex needs n >= 1 and m >= 1")
        return dt_lex_star_complete(n, m), m, m * (n + 1), lex_star_min_degree(n, m)
    raise ParameterError(f"unknown sweep family {family!r}; expected one of {', '.join(SWEEP_FAMILIES)}")


def conjugate_symmetry(rs: RootSet, tol: float = 1e-8) -> CheckResult:
    """Each non-real cluster has a conjugate partner of equal multiplicity."""
    unmatched = []
    for c in rs.clusters:
        if rs.config.is_real(c.center):
            continue
        target = c.center.conjugate()
        partner = [d for d in rs.clusters
                   if d.multiplicity == c.multiplicity and abs(d.center - target) <= tol * max(1.0, abs(target))]
        if not partner:
            unmatched.append([c.center.real, c.center.imag, c.multiplicity])
    return CheckResult.of("conjugate_symmetry", not unmatched, {"tolerance": tol, "unmatched": unmatched})


def root_count(rs: RootSet, degree: int) -> CheckResult:
    total = rs.zero_multiplicity + sum(c.multiplicity for c in rs.clusters)
    return CheckResult.of("root_count", total == degree, {"counted": total, "degree": degree})


def _sweep_point(family: str, n: int, m: int | None, cfg: SolverConfig) -> SweepPoint:
    p, m_col, order, delta = family_instance(family, n, m)
    rs = find_roots(p, cfg)
    pt = SweepPoint(n, m_col, order, delta, p, rs)
    pt.checks = [root_count(rs, p.degree), conjugate_symmetry(rs), check_root_bound(rs, order, delta),
                 check_residuals(rs)]
    return pt


def friendship_certificates(n: int) -> list[tuple[str, CheckResult]]:
    """IVT certificates for D_t(F_{n,4}): (-1, 0) when n is even, and (-n, -ln n)."""
    p = dt_friendship4(n)
    out = []
    if n % 2 == 0:
        cof = Polynomial(p.coeffs[n + 1:])
        out.append(("(-1,0)", certify_real_root_interval(
            cof, -1, 0, note=f"x^{n + 1} divided out; nonzero roots unchanged")))
    if n >= 2:
        b = dyadic_below(neg_log(n))
        out.append(("(-n,-ln n)", certify_real_root_interval(
            p, -n, b, note=f"upper end is a dyadic rational just below -ln {n}")))
    return out


def sweep(family: str, ns, m: int | None = None, cfg: SolverConfig = SolverConfig(),
          threads: int = 1) -> SweepResult:
    ns = list(ns)
    if threads <= 1:
        points = [_sweep_point(family, n, m, cfg) for n in ns]
    else:
        with ThreadPoolExecutor(threads) as pool:
            points = list(pool.map(lambda n: _sweep_point(family, n, m, cfg), ns))
    result = SweepResult(family, points)
    if family == "friendship4":
        for n in ns:
            for kind, cert in friendship_certificates(n):
                result.certificates.append((n, kind, cert))
    return result


def write_csv(rows, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for family, n, m, re, im, mult in rows:
        w.writerow([family, n, m, fmt(re), fmt(im), mult])


def csv_text(rows) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


# -- the (-n, -ln n) threshold ---------------------------------------------------

@dataclass
class ThresholdReport:
    lo: int
    hi: int
    certified: list[int]
    failed: list[int]

    @property
    def first_certified(self) -> int | None:
        return self.certified[0] if self.certified else None

    @property
    def threshold(self) -> int | None:
        """Least n0 such that every n in n0..hi is certified."""
        if not self.certified or self.certified[-1] != self.hi:
            return None
        n0 = self.hi
        while n0 - 1 in self.certified and n0 - 1 >= self.lo:
            n0 -= 1
        return n0


def interval_threshold(lo: int = 2, hi: int = 50) -> ThresholdReport:
    certified, failed = [], []
    for n in range(lo, hi + 1):
        p = dt_friendship4(n)
        cert = certify_real_root_interval(p, -n, dyadic_below(neg_log(n)))
        (certified if cert.passed else failed).append(n)
    return ThresholdReport(lo, hi, certified, failed)


# -- conjecture explorer ---------------------------------------------------------

@dataclass
class ConjectureCell:
    m: int
    n: int
    parity: str
    in_class: bool
    solver_real: int
    scan_zeros: list[int]
    scan_sign_changes: list[int]
    polynomial: Polynomial
    max_residual: float = 0.0

    @property
    def real_root_evidence(self) -> bool:
        return bool(self.solver_real or self.scan_zeros or self.scan_sign_changes)

    @property
    def verdict(self) -> str:
        if not self.in_class:
            return "OUT_OF_CLASS"
        return "COUNTEREXAMPLE" if self.real_root_evidence else "SUPPORTED"


def parity_class(m: int, n: int) -> tuple[str, bool]:
    label = f"m {'even' if m % 2 == 0 else 'odd'}, n {'even' if n % 2 == 0 else 'odd'}"
    return label, (m % 2 == 0 and n % 2 == 0) or n % 2 == 1


def integer_sign_scan(p: Polynomial, lo: int, hi: int) -> tuple[list[int], list[int]]:
    """Exact values at the integers lo..hi: zeros, and left ends t of sign changes on (t, t+1)."""
    zeros, changes = [], []
    prev = None
    for t in range(lo, hi + 1):
        v = eval_exact(p, t)
        s = (v > 0) - (v < 0)
        if s == 0:
            zeros.append(t)
        elif prev is not None and prev != 0 and s != prev:
            changes.append(t - 1)
        prev = s
    return zeros, changes


def conjecture_cell(m: int, n: int, cfg: SolverConfig = SolverConfig()) -> ConjectureCell:
    if m < 1 or n < 1:
        raise ParameterError("m and n must be >= 1")
    order = m * (n + 1)
    if order > CONJECTURE_MAX_DEGREE:
        raise ParameterError(f"m(n+1) = {order} exceeds {CONJECTURE_MAX_DEGREE}")
    p = dt_lex_star_complete(n, m)
    label, in_class = parity_class(m, n)
    rs = find_roots(p, cfg)
    solver_real = sum(c.multiplicity for c in rs.nonzero_real_clusters())
    q = Polynomial(p.coeffs[p.valuation:])
    # real roots lie within both the disk around -1 and the Fujiwara radius
    reach = min(disk_radius(order, lex_star_min_degree(n, m)) + 1.0, fujiwara_bound(q.coeffs))
    lo, hi = -math.ceil(reach), math.ceil(reach)
    zeros, changes = integer_sign_scan(q, lo, hi)
    return ConjectureCell(m, n, label, in_class, solver_real, zeros, changes, p, rs.max_residual)


def explore(ms, ns, cfg: SolverConfig = SolverConfig(), threads: int = 1) -> list[ConjectureCell]:
    grid = [(m, n) for m in ms for n in ns]
    for m, n in grid:
        if m * (n + 1) > CONJECTURE_MAX_DEGREE:
            raise ParameterError(f"cell (m={m}, n={n}) has degree {m * (n + 1)} > {CONJECTURE_MAX_DEGREE}")
    if threads <= 1:
        return [conjecture_cell(m, n, cfg) for m, n in grid]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(lambda mn: conjecture_cell(*mn, cfg), grid))


# -- SVG ---------------------------------------------------------------------

WIDTH, HEIGHT = 800, 600
_LEFT, _RIGHT, _TOP, _BOTTOM = 60, 130, 40, 50


def _color(k: int, count: int) -> str:
    t = k / max(1, count - 1)
    r, g, b = colorsys.hsv_to_rgb(0.70 * (1.0 - t), 0.85, 0.85)
    return f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}"


def _tick_step(span: float, target: int = 12) -> int:
    step = 1
    for s in (1, 2, 5, 10, 20, 50, 100, 200, 500, 1000):
        step = s
        if span / s <= target:
            break
    return step


def svg_scatter(series: list[tuple[str, list[complex]]], title: str) -> str:
    """Scatter of complex points, one colour per series, with axes and unit ticks."""
    pts = [z for _, zs in series for z in zs] or [0j]
    x0 = min(math.floor(min(z.real for z in pts)), 0) - 0.5
    x1 = max(math.ceil(max(z.real for z in pts)), 0) + 0.5
    ymax = max(math.ceil(max(abs(z.imag) for z in pts)), 1) + 0.5
    y0, y1 = -ymax, ymax
    pw, ph = WIDTH - _LEFT - _RIGHT, HEIGHT - _TOP - _BOTTOM

    def sx(x):
        return _LEFT + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return _TOP + (y1 - y) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<rect x="{_LEFT}" y="{_TOP}" width="{pw}" height="{ph}" fill="none" stroke="#999"/>',
    ]
    ax_y = sy(0.0)
    ax_x = sx(0.0)
    out.append(f'<line x1="{_LEFT}" y1="{ax_y:.2f}" x2="{_LEFT + pw}" y2="{ax_y:.2f}" stroke="black"/>')
    out.append(f'<line x1="{ax_x:.2f}" y1="{_TOP}" x2="{ax_x:.2f}" y2="{_TOP + ph}" stroke="black"/>')
    step = _tick_step(x1 - x0)
    for t in range(math.ceil(x0), math.floor(x1) + 1):
        x = sx(t)
        out.append(f'<line x1="{x:.2f}" y1="{ax_y - 3:.2f}" x2="{x:.2f}" y2="{ax_y + 3:.2f}" stroke="black"/>')
        if t % step == 0:
            out.append(f'<text x="{x:.2f}" y="{_TOP + ph + 16}" text-anchor="middle">{t}</text>')
    step = _tick_step(y1 - y0)
    for t in range(math.ceil(y0), math.floor(y1) + 1):
        y = sy(t)
        out.append(f'<line x1="{ax_x - 3:.2f}" y1="{y:.2f}" x2="{ax_x + 3:.2f}" y2="{y:.2f}" stroke="black"/>')
        if t % step == 0:
            out.append(f'<text x="{_LEFT - 6}" y="{y + 4:.2f}" text-anchor="end">{t}</text>')
    out.append(f'<text x="{_LEFT + pw / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle">Re</text>')
    out.append(f'<text x="16" y="{_TOP + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 16 {_TOP + ph / 2:.1f})">Im</text>')
    for k, (label, zs) in enumerate(series):
        color = _color(k, len(series))
        out.append(f'<g fill="{color}" fill-opacity="0.8">')
        for z in zs:
            out.append(f'<circle cx="{sx(z.real):.2f}" cy="{sy(z.imag):.2f}" r="3"/>')
        out.append("</g>")
    # legend
    lx = WIDTH - _RIGHT + 16
    row = min(18.0, (HEIGHT - _TOP - 20) / max(1, len(series)))
    for k, (label, _) in enumerate(series):
        y = _TOP + 8 + k * row
        out.append(f'<circle cx="{lx}" cy="{y:.2f}" r="4" fill="{_color(k, len(series))}"/>')
        out.append(f'<text x="{lx + 10}" y="{y + 4:.2f}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def sweep_svg(result: SweepResult) -> str:
    series = [(f"n = {pt.n}", [z for z, _ in pt.roots.centers()]) for pt in result.points]
    ns = [pt.n for pt in result.points]
    span = f"{min(ns)} <= n <= {max(ns)}" if ns else ""
    if result.family == "friendship4":
        title = f"Total domination roots of F(n,4), {span}"
    else:
        m = result.points[0].m if result.points else "?"
        title = f"Total domination roots of K(1,n)[K{m}], {span}"
    return svg_scatter(series, title)
