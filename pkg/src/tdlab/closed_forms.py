"""Closed-form total domination polynomials, expanded to exact coefficients."""

from __future__ import annotations

from .errors import ParameterError, UnsupportedFamily
from .graph import FamilySpec
from .poly import ONE, X, Polynomial, binomial_power, compose, mul, pow, scale, shift

_DIRECT = {"complete", "star", "helm", "generalized_helm", "gadget_g"}
SUPPORTED = ("complete", "star", "helm", "generalized_helm", "gadget_g", "friendship (q=4)")


def dt_complete(n: int) -> Polynomial:
    """(x+1)^n - n x - 1."""
    return binomial_power(n) - Polynomial((1, n))


def dt_star(n: int) -> Polynomial:
    """x((x+1)^n - 1) for the star with n leaves."""
    return shift(binomial_power(n) - ONE, 1)


def dt_generalized_helm(n: int, m: int) -> Polynomial:
    """x^n (1+x)^(mn+1)."""
    return shift(binomial_power(m * n + 1), n)


def dt_gadget(n: int) -> Polynomial:
    """(x(x+1)(x+2))^n: partial-target polynomial of the gadget, outer vertices as target."""
    return pow(Polynomial((0, 2, 3, 1)), n)


def dt_friendship4(n: int) -> Polynomial:
    """x^(n+1) (x+2)^n ((x+1)^n + x^(n-1))."""
    if n < 1:
        raise ParameterError("friendship graph needs n >= 1")
    inner = binomial_power(n) + Polynomial.monomial(n - 1)
    return shift(mul(binomial_power(n, 2), inner), n + 1)


def closed_form(spec: FamilySpec) -> Polynomial:
    p = spec.params
    kind = spec.kind
    if kind == "complete":
        return dt_complete(p[0])
    if kind == "star":
        return dt_star(p[0])
    if kind == "helm":
        return dt_generalized_helm(p[0], 1)
    if kind == "generalized_helm":
        return dt_generalized_helm(p[0], p[1])
    if kind == "gadget_g":
        return dt_gadget(p[0])
    if kind == "friendship" and p[1] == 4:
        return dt_friendship4(p[0])
    raise UnsupportedFamily(f"no closed form for {spec}; supported kinds: {', '.join(SUPPORTED)}")


def has_closed_form(spec: FamilySpec) -> bool:
    return spec.kind in _DIRECT or (spec.kind == "friendship" and spec.params[1] == 4)


def dt_corona_empty(n: int, m: int) -> Polynomial:
    """Corona of any order-n graph with the edgeless graph on m vertices: x^n (1+x)^(mn)."""
    if n < 2:
        raise ParameterError("corona formula needs order n >= 2")
    if m < 1:
        raise ParameterError("corona formula needs m >= 1")
    return shift(binomial_power(m * n), n)


def dt_join(p_g: Polynomial, p_h: Polynomial, m: int, n: int) -> Polynomial:
    """Total domination polynomial of G v H from those of G (order m) and H (order n).

    Graphs with an isolated vertex contribute the zero polynomial.
    """
    if p_g.degree > m or p_h.degree > n:
        raise ParameterError("polynomial degree exceeds the stated order")
    cross = mul(binomial_power(m) - ONE, binomial_power(n) - ONE)
    return cross + p_g + p_h


def dt_lex_complete(m: int, n: int) -> Polynomial:
    """K_m[K_n] via composition with the domination polynomial (1+x)^n - 1 of K_n."""
    if m < 1 or n < 1:
        raise ParameterError("m and n must be >= 1")
    outer = dt_complete(m)
    dom_kn = binomial_power(n) - ONE
    return compose(outer, dom_kn) + scale(dt_complete(n), m)


def dt_lex_star_complete(n: int, m: int) -> Polynomial:
    """K_{1,n}[K_m]: (1+x)^(mn)((1+x)^m - 1) + ((1+x)^m - mx - 1)^n - mx."""
    if m < 1 or n < 1:
        raise ParameterError("m and n must be >= 1")
    first = mul(binomial_power(m * n), binomial_power(m) - ONE)
    return first + pow(dt_complete(m), n) - scale(X, m)


def lex_star_min_degree(n: int, m: int) -> int:
    """Minimum degree of K_{1,n}[K_m] (a vertex of a leaf clique)."""
    return 2 * m - 1
