"""Dense univariate polynomials with exact integer coefficients.

``coeffs[i]`` is the coefficient of ``x**i``.  Values are normalised on
construction (no trailing zeros), so the zero polynomial has an empty
coefficient tuple and degree -1.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "Polynomial":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (the multiplicity of 0 as a root)."""
        if not self.coeffs:
            raise ValueError("zero polynomial has no valuation")
        return next(i for i, a in enumerate(self.coeffs) if a)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            a = self.coeffs[i]
            if not a:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(a) == 1:
                body = mono
            else:
                body = f"{abs(a)}{'*' + mono if mono else ''}"
            sign = "-" if a < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-a for a in self.coeffs)

    def __sub__(self, other):
        return add(self, -_coerce(other))

    def __rsub__(self, other):
        return add(_coerce(other), -self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return pow(self, k)

    def __call__(self, q):
        if isinstance(q, Polynomial):
            return compose(self, q)
        if isinstance(q, complex | float):
            return eval_complex(self, q)
        return eval_exact(self, q)

    def to_text(self) -> str:
        return to_text(self)


def _coerce(v) -> Polynomial:
    if isinstance(v, Polynomial):
        return v
    if isinstance(v, int):
        return Polynomial.const(v)
    raise TypeError(f"cannot combine Polynomial with {type(v).__name__}")


X = Polynomial.x()
ONE = Polynomial.const(1)
ZERO = Polynomial()


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    a, b = p.coeffs, q.coeffs
    if len(a) < len(b):
        a, b = b, a
    return Polynomial([x + y for x, y in zip(a, b)] + list(a[len(b):]))


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return Polynomial(out)


def scale(p: Polynomial, c: int) -> Polynomial:
    return Polynomial(c * a for a in p.coeffs)


def shift(p: Polynomial, k: int) -> Polynomial:
    """Multiply by ``x**k``."""
    if not p.coeffs:
        return p
    return Polynomial([0] * k + list(p.coeffs))


def pow(p: Polynomial, k: int) -> Polynomial:
    if k < 0:
        raise ValueError("negative exponent")
    result, base = ONE, p
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def binomial_power(k: int, shift_by: int = 1) -> Polynomial:
    """(x + shift_by)**k, built directly from binomial coefficients."""
    return Polynomial(math.comb(k, i) * shift_by ** (k - i) for i in range(k + 1))


def compose(p: Polynomial, q: Polynomial) -> Polynomial:
    """p(q(x)) by Horner's rule over polynomials."""
    result = ZERO
    for a in reversed(p.coeffs):
        result = add(mul(result, q), Polynomial.const(a))
    return result


def derivative(p: Polynomial, m: int = 1) -> Polynomial:
    if m < 0:
        raise ValueError("derivative order must be nonnegative")
    c = p.coeffs
    # falling factorial i*(i-1)*...*(i-m+1) = i! / (i-m)!
    return Polynomial(c[i] * math.perm(i, m) for i in range(m, len(c)))


def eval_exact(p: Polynomial, r) -> Fraction:
    r = Fraction(r)
    acc = Fraction(0)
    for a in reversed(p.coeffs):
        acc = acc * r + a
    return acc


def eval_complex(p: Polynomial, z: complex) -> complex:
    z = complex(z)
    acc = 0j
    for a in reversed(p.coeffs):
        acc = acc * z + float(a)
    return acc


def tail_decompose(p: Polynomial, n: int) -> Polynomial:
    """Return f with p = (x+1)**n - f."""
    if p.degree != n:
        raise ValueError(f"tail_decompose expects degree {n}, got {p.degree}")
    return add(binomial_power(n), -p)


def divmod_exact(p: Polynomial, d: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Long division by a monic divisor; returns (quotient, remainder)."""
    if d.is_zero() or abs(d.coeffs[-1]) != 1:
        raise ValueError("divisor must be monic (leading coefficient +-1)")
    rem = list(p.coeffs)
    lead = d.coeffs[-1]
    dd = d.degree
    quot = [0] * max(len(rem) - dd, 0)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i] * lead
        if c:
            quot[i - dd] = c
            for j, b in enumerate(d.coeffs):
                rem[i - dd + j] -= c * b
    return Polynomial(quot), Polynomial(rem)


def to_text(p: Polynomial) -> str:
    """Space-separated coefficients from degree 0 upward ("0" for the zero polynomial)."""
    return " ".join(map(str, p.coeffs)) if p.coeffs else "0"


def from_text(line: str) -> Polynomial:
    return Polynomial(int(t) for t in line.split())


def read_lines(text: str) -> list[Polynomial]:
    return [from_text(line) for line in text.splitlines() if line.strip()]


def from_roots(roots: Sequence[int]) -> Polynomial:
    out = ONE
    for r in roots:
        out = mul(out, Polynomial((-r, 1)))
    return out
