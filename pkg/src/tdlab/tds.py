"""Total domination polynomials by exhaustive subset enumeration.

A subset D is counted when the union of the open neighbourhoods of its
members covers the target set (all of V for the ordinary polynomial).
The sweep splits each subset mask into a low part, whose neighbourhood
unions are tabulated once with numpy, and a high part iterated in
Python; per-size tallies are int64 and are widened to Python ints at
the end.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import NoTotalDominatingSet, ParameterError, SizeError
from .graph import Graph, metrics, _bit_count
from .poly import Polynomial, tail_decompose
from .report import CheckResult

DEFAULT_MAX_N = 28
# masks are held in uint64 lanes
HARD_MAX_N = 64
LOW_BITS = 20


def is_total_dominating(g: Graph, d) -> bool:
    """True iff every vertex of ``g`` has a neighbour in ``d``.

    ``d`` may be an iterable of vertices or an int bitmask.
    """
    mask = _as_mask(g, d)
    covered = 0
    for v in range(g.n):
        if mask >> v & 1:
            covered |= g.adj[v]
    return covered == g.full_mask


def _as_mask(g: Graph, d) -> int:
    if isinstance(d, int):
        if d < 0 or d >> g.n:
            raise ParameterError(f"vertex mask {d:#x} has bits outside 0..{g.n - 1}")
        return d
    mask = 0
    for v in d:
        if not 0 <= v < g.n:
            raise ParameterError(f"vertex {v} out of range for order {g.n}")
        mask |= 1 << v
    return mask


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("TDLAB_THREADS", "1")))
    except ValueError:
        return 1


def _neighbourhood_table(adj: list[int], dtype) -> np.ndarray:
    """N(S) for every S over the given vertices, indexed by subset mask."""
    table = np.zeros(1 << len(adj), dtype=dtype)
    for b, nb in enumerate(adj):
        half = 1 << b
        np.bitwise_or(table[:half], dtype(nb), out=table[half:2 * half])
    return table


def _popcount_table(bits: int) -> np.ndarray:
    table = np.zeros(1 << bits, dtype=np.int64)
    for b in range(bits):
        half = 1 << b
        table[half:2 * half] = table[:half] + 1
    return table


def _count_covering(g: Graph, target: int, threads: int) -> list[int]:
    n = g.n
    dtype = np.uint32 if n <= 32 else np.uint64
    low = min(n, LOW_BITS)
    low_n = _neighbourhood_table(list(g.adj[:low]), dtype)
    low_pc = _popcount_table(low)
    high_adj = list(g.adj[low:])
    n_high = 1 << len(high_adj)
    tgt = dtype(target)

    # neighbourhood union of each high subset, as Python ints
    high_n = [0] * n_high
    for b, nb in enumerate(high_adj):
        half = 1 << b
        for h in range(half):
            high_n[half + h] = high_n[h] | nb

    def sweep(lo: int, hi: int) -> np.ndarray:
        counts = np.zeros(n + 1, dtype=np.int64)
        for h in range(lo, hi):
            hit = (low_n | dtype(high_n[h])) & tgt == tgt
            tally = np.bincount(low_pc[hit], minlength=low + 1)
            k = _bit_count(h)
            counts[k:k + low + 1] += tally
        return counts

    if threads <= 1 or n_high == 1:
        counts = sweep(0, n_high)
    else:
        step = math.ceil(n_high / threads)
        ranges = [(s, min(s + step, n_high)) for s in range(0, n_high, step)]
        with ThreadPoolExecutor(threads) as pool:
            counts = sum(pool.map(lambda r: sweep(*r), ranges))
    return [int(c) for c in counts]


def dt_partial(g: Graph, r, max_n: int = DEFAULT_MAX_N, threads: int | None = None) -> Polynomial:
    """Count k-subsets D whose open neighbourhood covers ``r``.

    Vertices outside ``r`` need not be dominated; members of D are
    otherwise unrestricted.  With ``r`` = V this is the total domination
    polynomial.
    """
    if g.n > min(max_n, HARD_MAX_N):
        raise SizeError(
            f"order {g.n} exceeds the enumeration cap {min(max_n, HARD_MAX_N)}; "
            "use a closed form or raise the cap (--max-n)"
        )
    target = _as_mask(g, r)
    threads = _default_threads() if threads is None else threads
    return Polynomial(_count_covering(g, target, threads))


def dt_polynomial(g: Graph, max_n: int = DEFAULT_MAX_N, threads: int | None = None) -> Polynomial:
    """Total domination polynomial of ``g``; zero if ``g`` has an isolated vertex."""
    if g.has_isolated_vertex():
        if g.n > max_n:
            raise SizeError(f"order {g.n} exceeds the enumeration cap {max_n}")
        return Polynomial()
    return dt_partial(g, g.full_mask, max_n=max_n, threads=threads)


def count_tds_naive(g: Graph) -> int:
    """Number of total dominating sets, by a plain loop over all masks."""
    full = g.full_mask
    total = 0
    for mask in range(1 << g.n):
        covered = 0
        m = mask
        while m:
            low = m & -m
            covered |= g.adj[low.bit_length() - 1]
            m ^= low
        total += covered == full
    return total


def gamma_t(g: Graph, p: Polynomial | None = None) -> int:
    """Total domination number: least size of a total dominating set."""
    if g.has_isolated_vertex():
        raise NoTotalDominatingSet("graph has an isolated vertex: no total dominating set")
    if p is None:
        p = dt_polynomial(g)
    return p.valuation


def dt_polynomial_batch(adj: np.ndarray) -> np.ndarray:
    """Total domination coefficients for many graphs of one order.

    ``adj`` is an ``(G, n)`` array of neighbourhood bitsets; returns an
    ``(G, n+1)`` int64 array of coefficients.
    """
    count, n = adj.shape
    full = (1 << n) - 1
    out = np.zeros((count, n + 1), dtype=np.int64)
    cols = [adj[:, v] for v in range(n)]

    def walk(v: int, cover: np.ndarray, size: int):
        if v == n:
            out[:, size] += cover == full
            return
        walk(v + 1, cover, size)
        walk(v + 1, cover | cols[v], size + 1)

    walk(0, np.zeros(count, dtype=adj.dtype), 0)
    return out


# -- coefficient theorems ------------------------------------------------

def coefficient_checks(g: Graph, p: Polynomial) -> list[CheckResult]:
    """Coefficient consequences of the minimum-degree and support-vertex theorems."""
    if g.n < 2:
        raise ParameterError("coefficient checks need order >= 2")
    if p.degree != g.n:
        raise ParameterError(f"polynomial degree {p.degree} does not match order {g.n}")
    m = metrics(g)
    return coefficient_checks_raw(g.n, m.min_degree, m.support_count, p)


def coefficient_checks_raw(n: int, delta: int, r: int, p: Polynomial) -> list[CheckResult]:
    c = [p[i] for i in range(n + 1)]
    out = []

    ok = c[n - 1] == n - r
    out.append(CheckResult.of("support_coefficient", ok, {
        "coefficient": c[n - 1], "expected": n - r, "n": n, "r": r}))

    bad = [i for i in range(n - delta + 1, n + 1) if c[i] != math.comb(n, i)]
    out.append(CheckResult.of("tail_binomial", not bad, {
        "from_index": n - delta + 1, "offending": {i: [c[i], math.comb(n, i)] for i in bad}}))

    bad = [i for i in range(2, n - delta + 1) if not c[i] < math.comb(n, i)]
    out.append(CheckResult.of("strict_below_binomial", not bad, {
        "range": [2, n - delta], "offending": {i: [c[i], math.comb(n, i)] for i in bad}}))

    f = tail_decompose(p, n)
    neg = [i for i, a in enumerate(f.coeffs) if a < 0]
    ok = not neg and f.degree == n - delta
    out.append(CheckResult.of("tail_decomposition", ok, {
        "f": list(f.coeffs), "degree": f.degree, "expected_degree": n - delta, "negative_at": neg}))

    bad = [i for i in range(n) if c[i] > 0 and c[i + 1] == 0]
    out.append(CheckResult.of("superset_closure", not bad, {"gaps_after": bad}))
    return out


def gamma_bound_check(n: int, delta: int, p: Polynomial) -> CheckResult:
    """gamma_t <= n/2 whenever the minimum degree is at least 3."""
    if delta < 3:
        return CheckResult.na("gamma_t_half_order", {"min_degree": delta})
    g = p.valuation
    return CheckResult.of("gamma_t_half_order", 2 * g <= n, {"gamma_t": g, "n": n})

