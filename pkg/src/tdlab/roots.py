"""Complex roots of integer polynomials and root-location checks.

The factor x^k and (by default) every integer root are divided out
exactly.  Starting estimates for the cofactor come from a double
precision Aberth-Ehrlich iteration on the coefficients in powers of
(x+1); these are then finished by the same iteration in MPFR arithmetic
at a precision chosen from their estimated condition numbers.  Each
reported residual is the backward error ``|p(z)| / sum |a_i| |z|^i``,
with ``p(z)`` evaluated exactly at the double ``z``.

Candidate groups of approximations come from Gerschgorin-type inclusion
disks.  A group of size m is accepted as one m-fold root when Newton's
method on the (m-1)-th derivative, started at the group mean, lands on
a point where every correction p^(j)/p^(j+1), j < m, is within the
cluster radius; otherwise the group is split along its minimum spanning
tree and each part is tried again.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction

import gmpy2
import numpy as np

from .errors import ConvergenceError, ParameterError
from .poly import Polynomial, compose, derivative, divmod_exact, eval_exact
from .report import CheckResult

EPS = 2.0 ** -52
ANGLE_OFFSET = (math.sqrt(5.0) - 1.0) / 2.0
ALLOWED_THREE_ROOT = (
    0j,
    complex(-2.0, math.sqrt(2.0)),
    complex(-2.0, -math.sqrt(2.0)),
    complex(-1.5, math.sqrt(3.0) / 2.0),
    complex(-1.5, -math.sqrt(3.0) / 2.0),
)


@dataclass(frozen=True)
class SolverConfig:
    max_iterations: int = 500
    tol: float = 1e-13
    residual_threshold: float = 1e-9
    cluster_radius: float = 1e-6
    real_tol: float = 1e-8
    deflate_integer_roots: bool = True

    def __post_init__(self):
        for name in ("max_iterations", "tol", "residual_threshold", "cluster_radius", "real_tol"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"solver setting {name} must be strictly positive")

    def cluster_tol(self, z: complex) -> float:
        return self.cluster_radius * max(1.0, abs(z))

    def is_real(self, z: complex) -> bool:
        return abs(z.imag) <= self.real_tol * (1.0 + abs(z))


@dataclass(frozen=True)
class Root:
    value: complex
    residual: float


@dataclass(frozen=True)
class Cluster:
    center: complex
    multiplicity: int


@dataclass
class RootSet:
    roots: list[Root]
    clusters: list[Cluster]
    source_degree: int
    zero_multiplicity: int
    precision: int = 53
    config: SolverConfig = field(default_factory=SolverConfig)

    @property
    def distinct_count(self) -> int:
        return len(self.clusters) + (1 if self.zero_multiplicity else 0)

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.roots), default=0.0)

    def centers(self) -> list[tuple[complex, int]]:
        """All distinct roots with multiplicity, zero included."""
        out = [(0j, self.zero_multiplicity)] if self.zero_multiplicity else []
        return out + [(c.center, c.multiplicity) for c in self.clusters]

    def nonreal_count(self) -> int:
        return sum(c.multiplicity for c in self.clusters if not self.config.is_real(c.center))

    def nonzero_real_clusters(self) -> list[Cluster]:
        return [c for c in self.clusters if self.config.is_real(c.center)]

    def as_dict(self) -> dict:
        return {
            "source_degree": self.source_degree,
            "zero_multiplicity": self.zero_multiplicity,
            "precision_bits": self.precision,
            "roots": [{"re": r.value.real, "im": r.value.imag, "residual": r.residual} for r in self.roots],
            "clusters": [{"re": c.center.real, "im": c.center.imag, "multiplicity": c.multiplicity}
                         for c in self.clusters],
        }


# -- numerics --------------------------------------------------------------

def _float_coeffs(coeffs) -> np.ndarray:
    """Coefficients as floats, scaled by a power of two if they would overflow."""
    top = max(abs(c) for c in coeffs).bit_length()
    sh = max(0, top - 1000)
    return np.array([float(c >> sh) if c >= 0 else -float((-c) >> sh) for c in coeffs])


def _horner(a: np.ndarray, z: np.ndarray):
    """p, p' and sum |a_i||z|^i at each z; ``a`` is ordered from degree 0 up."""
    p = np.full(z.shape, a[-1], dtype=complex)
    dp = np.zeros(z.shape, dtype=complex)
    az = np.abs(z)
    bound = np.full(z.shape, abs(a[-1]))
    for c in a[-2::-1]:
        dp = dp * z + p
        p = p * z + c
        bound = bound * az + abs(c)
    return p, dp, bound


def _newton_ratio(a: np.ndarray, z: np.ndarray):
    """Newton correction p/p' and a flag telling whether |p(z)| is at rounding level.

    Points outside the unit disk are evaluated through the reversed
    polynomial so that large |z| never overflows.
    """
    d = a.size - 1
    ratio = np.empty(z.shape, dtype=complex)
    small = np.zeros(z.shape, dtype=bool)
    inside = np.abs(z) <= 1.0
    with np.errstate(all="ignore"):
        if inside.any():
            zi = z[inside]
            p, dp, bound = _horner(a, zi)
            ratio[inside] = p / dp
            small[inside] = np.abs(p) <= 4.0 * (d + 1) * EPS * bound
        out = ~inside
        if out.any():
            zo = z[out]
            w = 1.0 / zo
            r, dr, bound = _horner(a[::-1], w)
            ratio[out] = 1.0 / (w * (d - w * dr / r))
            small[out] = np.abs(r) <= 4.0 * (d + 1) * EPS * bound
    return ratio, small


def _initial_guesses(a: np.ndarray) -> np.ndarray:
    """Starting points on circles read off the Newton polygon of log|a_i|.

    Each edge of the upper convex hull of (i, log|a_i|) contributes as
    many points as its width, on a circle whose radius is the root-size
    estimate that edge gives.
    """
    d = a.size - 1
    idx = [i for i in range(d + 1) if a[i] != 0]
    logs = {i: math.log(abs(a[i])) for i in idx}
    hull: list[int] = []
    for i in idx:
        while len(hull) >= 2:
            i0, i1 = hull[-2], hull[-1]
            # drop i1 if it lies on or below the chord from i0 to i
            if (logs[i1] - logs[i0]) * (i - i0) <= (logs[i] - logs[i0]) * (i1 - i0):
                hull.pop()
            else:
                break
        hull.append(i)
    z = np.empty(d, dtype=complex)
    pos = 0
    for lo, hi in zip(hull, hull[1:]):
        width = hi - lo
        radius = math.exp((logs[lo] - logs[hi]) / width)
        k = np.arange(width)
        z[pos:pos + width] = radius * np.exp(1j * (2.0 * np.pi * k / width + 2.0 * np.pi * lo / d + ANGLE_OFFSET))
        pos += width
    return z


def aberth(coeffs, cfg: SolverConfig = SolverConfig()) -> tuple[np.ndarray, int]:
    """All roots of the polynomial with the given integer coefficients (constant term nonzero)."""
    a = _float_coeffs(coeffs)
    d = a.size - 1
    if d == 1:
        return np.array([complex(-a[0] / a[1])]), 0
    z = _initial_guesses(a)
    done = np.zeros(d, dtype=bool)
    for it in range(1, cfg.max_iterations + 1):
        active = np.flatnonzero(~done)
        ratio, small = _newton_ratio(a, z[active])
        diff = z[active, None] - z[None, :]
        diff[np.arange(active.size), active] = 1.0
        with np.errstate(all="ignore"):
            s = np.sum(1.0 / diff, axis=1) - 1.0
            step = ratio / (1.0 - ratio * s)
        bad = ~np.isfinite(step)
        # points already at rounding level stay where they are
        step[bad | small] = 0.0
        # a point that landed exactly on a critical point is nudged off it
        nudge = bad & ~small
        step[nudge] = 1e-8 * (1.0 + np.abs(z[active][nudge]))
        z[active] -= step
        conv = small | (np.abs(step) <= cfg.tol * np.abs(z[active]))
        done[active[conv & ~nudge]] = True
        if done.all():
            return z, it
    raise ConvergenceError(
        f"Aberth iteration did not converge in {cfg.max_iterations} iterations "
        f"({int((~done).sum())} of {d} roots unconverged)",
        best=z.copy(),
        residuals=[backward_error(coeffs, complex(v)) for v in z],
    )


def start_points(coeffs, cfg: SolverConfig = SolverConfig()) -> np.ndarray:
    """Double-precision Aberth estimates, computed in the basis (x+1)^k.

    Total domination roots sit in a disk centred at -1, and the shifted
    coefficients cancel far less there than the monomial ones.
    """
    shifted = compose(Polynomial(coeffs), Polynomial((-1, 1))).coeffs
    if shifted[0] == 0:
        shifted = coeffs
        offset = 0.0
    else:
        offset = -1.0
    try:
        y, _ = aberth(shifted, cfg)
    except ConvergenceError as exc:
        y = exc.best
    return y + offset


def _log2_condition(coeffs, z: np.ndarray) -> np.ndarray:
    """log2 of sum|a_i||z|^i / |z p'(z)|, with p'(z_i) from the product over
    the other approximations (distances floored so clusters stay finite)."""
    az = np.abs(z)
    floor = 1e-8 * np.maximum(1.0, az)
    dist = np.maximum(np.abs(z[:, None] - z[None, :]), floor[:, None])
    np.fill_diagonal(dist, 1.0)
    log_dp = math.log(abs(coeffs[-1])) + np.sum(np.log(dist), axis=1)
    log_s = np.array([_log_abs_bound(coeffs, float(r)) for r in az])
    return (log_s - np.log(np.maximum(az, 1e-300)) - log_dp) / math.log(2.0)


def _mp_aberth(coeffs, z0: np.ndarray, prec: int, max_iterations: int):
    """Aberth iteration in MPFR complex arithmetic at ``prec`` bits.

    Returns the iterates (as mpc objects) and whether every point froze,
    either on a relative step below double resolution or on |p| at the
    working rounding level.
    """
    d = len(coeffs) - 1
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        a = [gmpy2.mpfr(c) for c in coeffs]
        mag = [abs(c) for c in a]
        z = np.array([gmpy2.mpc(complex(v)) for v in z0], dtype=object)
        noise = gmpy2.mpfr(4 * (d + 1)) * gmpy2.mpfr(2) ** (-prec)
        tiny = gmpy2.mpfr(2) ** -62
        done = np.zeros(d, dtype=bool)
        for _ in range(max_iterations):
            idx = np.flatnonzero(~done)
            if idx.size == 0:
                return z, True
            zi = z[idx]
            azi = np.array([abs(v) for v in zi], dtype=object)
            pv = np.full(idx.size, a[-1], dtype=object)
            dv = np.full(idx.size, gmpy2.mpc(0), dtype=object)
            bound = np.full(idx.size, mag[-1], dtype=object)
            for c, m in zip(a[-2::-1], mag[-2::-1]):
                dv = dv * zi + pv
                pv = pv * zi + c
                bound = bound * azi + m
            diff = zi[:, None] - z[None, :]
            diff[np.arange(idx.size), idx] = gmpy2.mpc(1)
            s = np.sum(1 / diff, axis=1) - 1
            small = np.array([abs(v) <= noise * b for v, b in zip(pv, bound)], dtype=bool)
            step = np.empty(idx.size, dtype=object)
            for k in range(idx.size):
                r = pv[k] / dv[k] if dv[k] != 0 else gmpy2.mpc(0)
                w = r / (1 - r * s[k])
                step[k] = w if not small[k] and gmpy2.is_finite(w) else gmpy2.mpc(0)
            z[idx] = zi - step
            conv = small | np.array([abs(w) <= tiny * abs(v) for w, v in zip(step, z[idx])], dtype=bool)
            done[idx[conv]] = True
        return z, bool(done.all())


def refine_roots(coeffs, z0: np.ndarray, cfg: SolverConfig = SolverConfig(),
                 max_precision: int = 8192) -> tuple[np.ndarray, int]:
    """Finish the double estimates at a precision matched to their conditioning.

    The working precision is 65 bits above the largest estimated log2
    condition number; it is raised and the iteration resumed until the
    estimate at the final points is covered.
    """
    prec = max(64, int(math.ceil(np.max(_log2_condition(coeffs, z0)))) + 65)
    z = z0
    while True:
        zm, ok = _mp_aberth(coeffs, z, prec, cfg.max_iterations)
        z = np.array([complex(v) for v in zm])
        need = int(math.ceil(np.max(_log2_condition(coeffs, z)))) + 65
        if ok and need <= prec:
            return z, prec
        if prec >= max_precision:
            raise ConvergenceError(
                f"root refinement did not settle at {prec} bits",
                best=z, residuals=[backward_error(coeffs, complex(v)) for v in z],
            )
        prec = min(max_precision, max(need, 2 * prec))


def _scaled(x: float) -> tuple[int, int]:
    num, den = x.as_integer_ratio()
    return num, den.bit_length() - 1


def exact_log_abs(coeffs, z: complex) -> float:
    """log|p(z)| computed exactly at the double ``z`` (-inf at an exact root)."""
    (an, ae), (bn, be) = _scaled(z.real), _scaled(z.imag)
    e = max(ae, be)
    A, B = an << (e - ae), bn << (e - be)
    d = len(coeffs) - 1
    # p(z) * 2^(e*d) by Horner over Gaussian integers
    re, im = coeffs[-1], 0
    for k in range(d - 1, -1, -1):
        re, im = re * A - im * B, re * B + im * A
        re += coeffs[k] << (e * (d - k))
    mag2 = re * re + im * im
    if mag2 == 0:
        return -math.inf
    return 0.5 * math.log(mag2) - e * d * math.log(2.0)


def _log_abs_bound(coeffs, r: float) -> float:
    logs = [math.log(abs(c)) + (k * math.log(r) if r > 0 else (0.0 if k == 0 else -math.inf))
            for k, c in enumerate(coeffs) if c]
    top = max(logs)
    return top + math.log(sum(math.exp(t - top) for t in logs))


def backward_error(coeffs, z: complex) -> float:
    """|p(z)| / sum |a_i| |z|^i with the numerator evaluated exactly."""
    num = exact_log_abs(coeffs, z)
    if num == -math.inf:
        return 0.0
    return math.exp(num - _log_abs_bound(coeffs, abs(z)))


def _inclusion_radii(coeffs, z: np.ndarray, log_abs: np.ndarray) -> np.ndarray:
    """Radii d|p(z_i)| / (|a_d| prod_j |z_i - z_j|); each connected union of
    k such disks holds exactly k roots."""
    d = z.size
    log_lead = math.log(abs(coeffs[-1]))
    floor = EPS * np.maximum(1.0, np.abs(z))
    dist = np.abs(z[:, None] - z[None, :])
    dist = np.maximum(dist, floor[:, None])
    np.fill_diagonal(dist, 1.0)
    log_prod = np.sum(np.log(dist), axis=1)
    with np.errstate(over="ignore"):
        radii = d * np.exp(np.minimum(log_abs - log_lead - log_prod, 700.0))
    return radii


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int):
        self.parent[self.find(i)] = self.find(j)

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            out.setdefault(self.find(i), []).append(i)
        return list(out.values())


class _Derivatives:
    """Exact derivatives of one polynomial, computed on demand."""

    def __init__(self, coeffs):
        self._cache = {0: tuple(coeffs)}

    def __getitem__(self, j: int) -> tuple[int, ...]:
        if j not in self._cache:
            self._cache[j] = derivative(Polynomial(self._cache[0]), j).coeffs
        return self._cache[j]


def _newton_step_exact(num, den, z: complex) -> complex | None:
    """num(z)/den(z) from exact values at the double ``z``.

    Zero when num(z) == 0, None when only den(z) vanishes.
    """
    (an, ae), (bn, be) = _scaled(z.real), _scaled(z.imag)
    e = max(ae, be)
    A, B = an << (e - ae), bn << (e - be)
    vals = []
    for coeffs in (num, den):
        d = len(coeffs) - 1
        re, im = coeffs[-1], 0
        for k in range(d - 1, -1, -1):
            re, im = re * A - im * B, re * B + im * A
            re += coeffs[k] << (e * (d - k))
        vals.append((re, im, d))
    (a, b, dn), (c, dd_, dd) = vals
    if a == 0 and b == 0:
        return 0j
    norm = c * c + dd_ * dd_
    if norm == 0:
        return None
    # values carry scale 2^(e*deg); den has degree dn - 1
    shift_e = e * (dd - dn)
    re_num, im_num = a * c + b * dd_, b * c - a * dd_
    if shift_e >= 0:
        re_num, im_num = re_num << shift_e, im_num << shift_e
    else:
        norm <<= -shift_e
    try:
        return complex(re_num / norm, im_num / norm)
    except OverflowError:
        return complex(math.inf, 0.0)


def _refine(derivs: _Derivatives, start: complex, m: int, reach: float) -> complex:
    """Newton on the (m-1)-th derivative, which has a simple root at an m-fold root."""
    num, den = derivs[m - 1], derivs[m]
    c = start
    last = math.inf
    stalls = 0
    for _ in range(60):
        step = _newton_step_exact(num, den, c)
        if step is None or not cmath.isfinite(step):
            break
        c -= step
        if abs(c - start) > reach:
            return start
        if abs(step) <= 4.0 * EPS * max(1.0, abs(c)):
            break
        stalls = stalls + 1 if abs(step) > 0.5 * last else 0
        if stalls >= 3:
            break
        last = abs(step)
    return c


def _is_multiple_root(derivs: _Derivatives, c: complex, m: int, cfg: SolverConfig) -> bool:
    """Every Newton correction p^(j)/p^(j+1), j < m, is within the cluster radius at ``c``."""
    tol = cfg.cluster_tol(c)
    for j in range(m):
        step = _newton_step_exact(derivs[j], derivs[j + 1], c)
        if step is None or not abs(step) <= tol:
            return False
    return True


def _split(z: np.ndarray, group: list[int]) -> tuple[list[int], list[int]]:
    """Cut the longest edge of the group's Euclidean minimum spanning tree."""
    pts = z[group]
    m = len(group)
    dist = np.abs(pts[:, None] - pts[None, :])
    in_tree = np.zeros(m, dtype=bool)
    in_tree[0] = True
    best = dist[0].copy()
    link = np.zeros(m, dtype=int)
    edges = []
    for _ in range(m - 1):
        cand = np.where(in_tree, np.inf, best)
        v = int(np.argmin(cand))
        edges.append((float(cand[v]), int(link[v]), v))
        in_tree[v] = True
        closer = dist[v] < best
        best = np.where(closer, dist[v], best)
        link = np.where(closer, v, link)
    edges.sort()
    uf = _UnionFind(m)
    for _, a, b in edges[:-1]:
        uf.union(a, b)
    parts = uf.groups()
    return [group[i] for i in parts[0]], [group[i] for i in parts[1]]


def _resolve(derivs, z, radii, group, cfg) -> list[list]:
    if len(group) == 1:
        return [[complex(z[group[0]]), 1]]
    pts = z[group]
    m = len(group)
    mean = complex(pts.mean())
    spread = float(np.max(np.abs(pts - mean)))
    # near an m-fold root |p/p'| at the mean is about |mean - root| / m
    step = _newton_step_exact(derivs[0], derivs[1], mean)
    if step is not None and abs(step) <= spread:
        c = _refine(derivs, mean, m, spread + float(np.max(radii[group])))
        if _is_multiple_root(derivs, c, m, cfg):
            return [[c, m]]
    left, right = _split(z, group)
    return _resolve(derivs, z, radii, left, cfg) + _resolve(derivs, z, radii, right, cfg)


def _cluster(coeffs, z: np.ndarray, log_abs: np.ndarray, cfg: SolverConfig) -> list[list]:
    radii = _inclusion_radii(coeffs, z, log_abs)
    uf = _UnionFind(z.size)
    touch = np.abs(z[:, None] - z[None, :]) <= radii[:, None] + radii[None, :]
    for i, j in zip(*np.nonzero(np.triu(touch, 1))):
        uf.union(int(i), int(j))
    derivs = _Derivatives(coeffs)
    found = []
    for group in uf.groups():
        found += _resolve(derivs, z, radii, group, cfg)
    return found


def _merge(found: list[list], cfg: SolverConfig) -> list[Cluster]:
    """Merge centres that coincide within the cluster radius."""
    merged: list[list] = []
    for c, m in sorted(found, key=lambda t: (t[0].real, t[0].imag)):
        for slot in merged:
            if abs(slot[0] - c) <= cfg.cluster_tol(c):
                total = slot[1] + m
                slot[0] = (slot[0] * slot[1] + c * m) / total
                slot[1] = total
                break
        else:
            merged.append([c, m])
    merged.sort(key=lambda t: (round(t[0].real, 9), t[0].imag))
    # adding 0.0 turns a signed zero into +0.0
    return [Cluster(complex(c.real + 0.0, c.imag + 0.0), m) for c, m in merged]


def fujiwara_bound(coeffs) -> float:
    """2 max |a_{d-k}/a_d|^(1/k): every root has modulus at most this."""
    d = len(coeffs) - 1
    if d == 0:
        return 0.0
    lead = math.log(abs(coeffs[-1]))
    best = max((math.log(abs(coeffs[d - k])) - lead) / k for k in range(1, d + 1) if coeffs[d - k])
    if coeffs[0]:
        best = max(best, (math.log(abs(coeffs[0]) / 2) - lead) / d)
    return 2.0 * math.exp(best)


def split_integer_roots(coeffs) -> tuple[list[tuple[int, int]], tuple[int, ...]]:
    """Remove every integer root exactly; returns ([(root, multiplicity)], cofactor).

    ``coeffs`` must have a nonzero constant term, so each integer root
    divides it.
    """
    q = Polynomial(coeffs)
    found = []
    if q.degree < 1:
        return found, q.coeffs
    limit = min(int(fujiwara_bound(coeffs)) + 1, abs(coeffs[0]))
    for mag in range(1, limit + 1):
        if coeffs[0] % mag:
            continue
        for t in (-mag, mag):
            mult = 0
            while q.degree > 0 and eval_exact(q, t) == 0:
                q, rem = divmod_exact(q, Polynomial((-t, 1)))
                mult += 1
            if mult:
                found.append((t, mult))
    return found, q.coeffs


def find_roots(p: Polynomial, cfg: SolverConfig = SolverConfig()) -> RootSet:
    if p.is_zero():
        raise ParameterError("the zero polynomial has no finite root set")
    k = p.valuation
    q = p.coeffs[k:]
    exact, rest = split_integer_roots(q) if cfg.deflate_integer_roots else ([], q)
    roots = [Root(complex(t), 0.0) for t, m in exact for _ in range(m)]
    found = [[complex(t), m] for t, m in exact]
    precision = 53
    if len(rest) > 1:
        z, precision = refine_roots(rest, start_points(rest, cfg), cfg)
        log_abs = np.array([exact_log_abs(rest, complex(v)) for v in z])
        residuals = [backward_error(q, complex(v)) for v in z]
        worst = max(residuals)
        if worst > cfg.residual_threshold:
            raise ConvergenceError(
                f"residual {worst:.3g} exceeds acceptance threshold {cfg.residual_threshold:g}",
                best=z, residuals=residuals,
            )
        roots += [Root(complex(v), r) for v, r in zip(z, residuals)]
        found += _cluster(rest, z, log_abs, cfg)
    return RootSet(roots, _merge(found, cfg), p.degree, k, precision, cfg)


# -- root-location checks --------------------------------------------------

def check_residuals(rs: RootSet) -> CheckResult:
    """Every backward error within the solver's acceptance threshold."""
    thr = rs.config.residual_threshold
    return CheckResult.of("root_residuals", rs.max_residual <= thr, {
        "max_residual": rs.max_residual, "threshold": thr, "precision_bits": rs.precision})


def check_nonreal_count(rs: RootSet, delta: int) -> CheckResult:
    """At least delta-2 non-real roots; if every root is real then delta <= 2."""
    count = rs.nonreal_count()
    bound_ok = count >= delta - 2
    all_real = count == 0
    real_ok = (not all_real) or delta <= 2
    return CheckResult.of("nonreal_count", bound_ok and real_ok, {
        "nonreal": count, "min_degree": delta, "required": max(delta - 2, 0),
        "all_real": all_real, "all_real_implies_delta_le_2": real_ok,
    })


def disk_radius(n: int, delta: int) -> float:
    return math.exp(math.log((1 << n) - 1) / delta)


def check_root_bound(rs: RootSet, n: int, delta: int) -> CheckResult:
    """Every root within |z+1| <= (2^n - 1)^(1/delta)."""
    if delta < 1:
        return CheckResult.na("root_disk_bound", {"min_degree": delta})
    radius = disk_radius(n, delta)
    limit = radius * (1.0 + 1e-9)
    worst = max(abs(z + 1) for z, _ in rs.centers()) if rs.centers() else 0.0
    outside = [[z.real, z.imag] for z, _ in rs.centers() if abs(z + 1) > limit]
    return CheckResult.of("root_disk_bound", not outside, {
        "radius": radius, "max_distance": worst, "outside": outside})


def integer_roots(p: Polynomial, n: int) -> list[int]:
    return [t for t in range(-(n + 1), 1) if eval_exact(p, t) == 0]


def check_integer_roots(p: Polynomial, n: int, delta: int) -> CheckResult:
    """Integer roots lie in {-3,-2,-1,0} when 3*delta >= 2n."""
    if 3 * delta < 2 * n:
        return CheckResult.na("integer_roots", {"n": n, "min_degree": delta})
    found = integer_roots(p, n)
    bad = [t for t in found if t not in (-3, -2, -1, 0)]
    return CheckResult.of("integer_roots", not bad, {"integer_roots": found, "outside_set": bad})


def check_three_root_theorem(rs: RootSet, delta: int) -> CheckResult:
    if delta < 3 or rs.distinct_count != 3:
        return CheckResult.na("three_root_theorem", {"min_degree": delta, "distinct_roots": rs.distinct_count})
    cfg = rs.config
    stray = []
    for c in rs.clusters:
        gap = min(abs(c.center - s) for s in ALLOWED_THREE_ROOT)
        if gap > cfg.cluster_tol(c.center):
            stray.append([c.center.real, c.center.imag, gap])
    return CheckResult.of("three_root_theorem", not stray, {
        "roots": [[z.real, z.imag, m] for z, m in rs.centers()], "not_in_allowed_set": stray})


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def certify_real_root_interval(p: Polynomial, a, b, note: str | None = None) -> CheckResult:
    """Exact intermediate-value certificate for a real root in (a, b)."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ParameterError("interval needs a < b")
    sa, sb = _sign(eval_exact(p, a)), _sign(eval_exact(p, b))
    details = {"a": str(a), "b": str(b), "sign_a": sa, "sign_b": sb}
    if note:
        details["note"] = note
    if sa == 0 or sb == 0:
        details["reason"] = "root at endpoint"
        return CheckResult("ivt_certificate", "fail", details)
    return CheckResult.of("ivt_certificate", sa * sb < 0, details)


def dyadic_below(x: Decimal, bits: int = 20) -> Fraction:
    """Largest multiple of 2^-bits strictly below ``x``."""
    scale = 1 << bits
    with localcontext() as ctx:
        ctx.prec = 60
        t = x * scale
        k = int(t.to_integral_value(rounding="ROUND_FLOOR"))
        if Decimal(k) == t:
            k -= 1
    return Fraction(k, scale)


def neg_log(n: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = 60
        return -Decimal(n).ln()


def limit_sequence(n: int) -> float:
    """ln(n) * ((ln(n) - 1) / ln(n))^n."""
    if n < 2:
        raise ParameterError("limit_sequence needs n >= 2")
    L = math.log(n)
    return L * ((L - 1.0) / L) ** n


def log_limit_sequence(n: int) -> float:
    """Natural log of :func:`limit_sequence`, which underflows to 0.0 near n = 6100."""
    if n < 3:
        raise ParameterError("log_limit_sequence needs n >= 3 (the sequence is 0 or negative below)")
    L = math.log(n)
    return math.log(L) + n * math.log1p(-1.0 / L)
