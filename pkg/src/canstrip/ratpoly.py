"""Exact dense univariate polynomials over the rationals.

Coefficients are `fractions.Fraction`, stored lowest degree first, with no
trailing zeros (the zero polynomial has an empty coefficient tuple).  Every
operation here is exact; floats never enter any verdict-relevant path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd
from typing import Optional, Union

Scalar = Union[int, Fraction]


class ConsistencyError(RuntimeError):
    """An identity that must hold by theorem (or by construction) failed."""


@dataclass(frozen=True)
class RatPoly:
    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        cs = tuple(Fraction(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def const(cls, c: Scalar) -> RatPoly:
        return cls((Fraction(c),))

    @classmethod
    def zero(cls) -> RatPoly:
        return cls(())

    @classmethod
    def one(cls) -> RatPoly:
        return cls((Fraction(1),))

    @classmethod
    def variable(cls) -> RatPoly:
        return cls((Fraction(0), Fraction(1)))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return not self.is_zero

    def __neg__(self) -> RatPoly:
        return RatPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other: RatPoly) -> RatPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(tuple(out))

    def __sub__(self, other: RatPoly) -> RatPoly:
        return self + (-other)

    def __mul__(self, other: Union[RatPoly, Scalar]) -> RatPoly:
        if isinstance(other, RatPoly):
            if self.is_zero or other.is_zero:
                return RatPoly(())
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return RatPoly(tuple(out))
        s = Fraction(other)
        return RatPoly(tuple(c * s for c in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, s: Scalar) -> RatPoly:
        return self * (Fraction(1) / Fraction(s))

    def __pow__(self, n: int) -> RatPoly:
        if n < 0:
            raise ValueError("negative polynomial power")
        out = RatPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction, float path otherwise."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0.0 if not isinstance(x, complex) else 0j
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def derivative(self) -> RatPoly:
        return RatPoly(tuple(c * i for i, c in enumerate(self.coeffs) if i))

    def compose_affine(self, a: Scalar, b: Scalar) -> RatPoly:
        """Return p(a*z + b), exactly.  a must be non-zero."""
        a, b = Fraction(a), Fraction(b)
        if a == 0:
            raise ValueError("affine substitution needs a != 0")
        t = RatPoly((b, a))
        acc = RatPoly(())
        for c in reversed(self.coeffs):
            acc = acc * t + RatPoly.const(c)
        return acc

    def __divmod__(self, other: RatPoly) -> tuple[RatPoly, RatPoly]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        d, lc = other.degree, other.leading
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(0, len(rem) - d)
        while True:
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            shift = len(rem) - 1 - d
            f = rem[-1] / lc
            quo[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= f * c
        return RatPoly(tuple(quo)), RatPoly(tuple(rem))

    def exact_div(self, other: RatPoly) -> RatPoly:
        """Divide, insisting on zero remainder (factorization consistency)."""
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ConsistencyError(f"inexact polynomial division, remainder {r}")
        return q

    def monic(self) -> RatPoly:
        if self.is_zero:
            return self
        return self / self.leading

    def scaled_primitive(self) -> RatPoly:
        """Rescale by a positive rational to integer coprime coefficients.

        Positive scaling preserves all evaluation signs, which is all the
        Sturm machinery needs.
        """
        if self.is_zero:
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // int_gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = int_gcd(g, abs(v))
        return RatPoly(tuple(Fraction(v, g) for v in ints))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = -c if c < 0 else c
            if i == 0:
                body = str(mag)
            elif i == 1:
                body = "z" if mag == 1 else f"{mag}*z"
            else:
                body = f"z^{i}" if mag == 1 else f"{mag}*z^{i}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def poly_gcd(p: RatPoly, q: RatPoly) -> RatPoly:
    """Monic gcd by the Euclidean algorithm."""
    a, b = p, q
    while not b.is_zero:
        a, b = b, divmod(a, b)[1].scaled_primitive()
    return a.monic()


def squarefree_parts(p: RatPoly) -> list[tuple[RatPoly, int]]:
    """Yun decomposition: [(factor, multiplicity)] with square-free, pairwise
    coprime monic factors whose weighted product is p up to a constant."""
    if p.is_zero:
        raise ValueError("zero polynomial has no square-free decomposition")
    if p.degree == 0:
        return []
    parts: list[tuple[RatPoly, int]] = []
    dp = p.derivative()
    g = poly_gcd(p, dp)
    c = p.exact_div(g)
    d = dp.exact_div(g) - c.derivative()
    i = 1
    while c.degree > 0:
        f = poly_gcd(c, d)
        if f.degree > 0:
            parts.append((f, i))
        c = c.exact_div(f)
        d = d.exact_div(f) - c.derivative()
        i += 1
    return parts


def is_squarefree(p: RatPoly) -> bool:
    return p.degree <= 0 or poly_gcd(p, p.derivative()).degree == 0


@dataclass(frozen=True)
class SturmCertificate:
    """Exact count of distinct real roots of a square-free polynomial.

    The interval convention is (lo, hi]: a root exactly at hi is counted,
    one exactly at lo is not.  `None` endpoints mean -oo / +oo.
    """

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    chain_length: int
    variations_lo: int
    variations_hi: int
    count: int

    def as_dict(self) -> dict:
        return {
            "lo": None if self.lo is None else str(self.lo),
            "hi": None if self.hi is None else str(self.hi),
            "chain_length": self.chain_length,
            "variations_lo": self.variations_lo,
            "variations_hi": self.variations_hi,
            "count": self.count,
        }


def sturm_chain(p: RatPoly) -> list[RatPoly]:
    chain = [p.scaled_primitive(), p.derivative().scaled_primitive()]
    while chain[-1].degree > 0:
        r = divmod(chain[-2], chain[-1])[1]
        if r.is_zero:
            break
        chain.append((-r).scaled_primitive())
    return chain


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _sign_at(p: RatPoly, x: Optional[Fraction], side: str) -> int:
    if p.is_zero:
        return 0
    if x is None:
        s = _sign(p.leading)
        return s if side == "hi" else s * (-1) ** p.degree
    return _sign(p(x))


def _variations(chain: list[RatPoly], x: Optional[Fraction], side: str) -> int:
    signs = [s for s in (_sign_at(q, x, side) for q in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def sturm_count(p: RatPoly, lo: Optional[Fraction], hi: Optional[Fraction]) -> SturmCertificate:
    """Count distinct real roots of square-free p in (lo, hi]."""
    if p.degree < 1:
        raise ValueError("need a non-constant polynomial")
    if not is_squarefree(p):
        raise ValueError("polynomial is not square-free")
    if lo is not None and hi is not None and not lo < hi:
        raise ValueError("need lo < hi")
    chain = sturm_chain(p)
    v_lo = _variations(chain, lo, "lo")
    v_hi = _variations(chain, hi, "hi")
    n = v_lo - v_hi
    if n < 0:
        raise ConsistencyError("negative Sturm count")
    return SturmCertificate(lo, hi, len(chain), v_lo, v_hi, n)


def symmetry_center(p: RatPoly) -> Optional[tuple[Fraction, int]]:
    """Detect the center c with p(z) = s*p(2c - z), s = (-1)^deg p.

    The only possible center is -a_{n-1}/(n*a_n); the identity is then
    checked coefficient by coefficient.  Returns (c, s) or None.
    """
    n = p.degree
    if n < 1:
        raise ValueError("need deg >= 1")
    c = -p.coeffs[n - 1] / (n * p.leading)
    s = (-1) ** n
    mirrored = p.compose_affine(-1, 2 * c)
    if mirrored == p * s:
        return c, s
    return None


def even_odd_split(p: RatPoly, center: Fraction) -> tuple[int, RatPoly]:
    """Write p = w^eps * q(w^2) with w = z - center.

    Requires p symmetric about `center` with sign (-1)^deg p; eps is then
    deg p mod 2 and q is returned with exact coefficients.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    q = p.compose_affine(1, Fraction(center))
    eps = p.degree % 2
    if any(c != 0 for i, c in enumerate(q.coeffs) if i % 2 != eps):
        raise ValueError(f"polynomial is not symmetric about {center}")
    return eps, RatPoly(q.coeffs[eps::2])
