"""Hilbert polynomials of marked homogeneous spaces, kept in factored form.

The primary object is the table of exponents h_{l,k}: the number of positive
roots at level l whose rho-pairing equals k.  The polynomial itself is the
product of the factors ((l*z + k)/k)^h times a residual factor, and is only
expanded on demand; the section/cover recursion operates on the tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .ratpoly import ConsistencyError, RatPoly
from .root_system import MarkedSystem, rho_pair


@dataclass
class LevelTable:
    """Exponents of one level's factors, keyed by the rho-pairing value k.

    Keys are exact rationals (integers in the simply-laced case) and every
    stored multiplicity is positive.
    """

    level: int
    exponents: dict[Fraction, int]

    @property
    def b(self) -> Fraction:
        return min(self.exponents)

    @property
    def top(self) -> Fraction:
        return max(self.exponents)

    @property
    def count(self) -> int:
        return sum(self.exponents.values())

    def sorted_items(self) -> list[tuple[Fraction, int]]:
        return sorted(self.exponents.items())

    def factor(self) -> RatPoly:
        """The product of ((l*z + k)/k)^h over the table, in the L-variable."""
        out = RatPoly.one()
        for k, h in self.sorted_items():
            out = out * (RatPoly((Fraction(1), Fraction(self.level) / k)) ** h)
        return out

    def check_symmetric(self, index: int) -> None:
        """Assert property (S): h at k matches h at level*index - k."""
        li = self.level * index
        for k, h in self.exponents.items():
            mirror = li - k
            if self.exponents.get(mirror) != h:
                raise ConsistencyError(
                    f"level {self.level}: h at {k} is {h} but at {li}-{k} is "
                    f"{self.exponents.get(mirror)}"
                )

    def unimodality_violations(self, index: int) -> list[tuple[Fraction, Fraction]]:
        """Key pairs k < k' <= level*index/2 with h(k) > h(k').

        Empty for every simply-laced mark (there it is a theorem about weight
        multiplicities).  Mixed root lengths genuinely break it: B4/P2 fails
        across the half-integer lattice and C4/P2 fails on the integer keys,
        so for those marks violations are reported rather than asserted.
        """
        half = Fraction(self.level * index, 2)
        lower = [(k, h) for k, h in self.sorted_items() if k <= half]
        return [
            (k1, k2)
            for (k1, h1), (k2, h2) in zip(lower, lower[1:])
            if h1 > h2
        ]


@dataclass
class HilbertData:
    """A Hilbert polynomial in factored form with its discrete invariants.

    `levels` carries the rational-root factors; `residual` is the leftover
    polynomial factor in the L-variable (1 for a homogeneous space itself).
    """

    description: str
    dim: int
    index: int
    lmax: int
    levels: list[LevelTable] = field(default_factory=list)
    residual: RatPoly = field(default_factory=RatPoly.one)
    simply_laced: bool = True  # all root lengths equal; makes (U) a theorem


def expand(hd: HilbertData, variable: str = "ample_generator") -> RatPoly:
    """Multiply the factored form out, in the requested variable."""
    out = hd.residual
    for table in hd.levels:
        out = out * table.factor()
    if variable == "ample_generator":
        return out
    if variable == "anticanonical":
        if hd.index <= 0:
            raise ValueError("anticanonical variable needs a positive index")
        return out.compose_affine(hd.index, 0)
    raise ValueError(f"unknown variable {variable!r}")


def degree_of(hd: HilbertData) -> int:
    """dim! times the leading coefficient; the degree of the polarization."""
    lead = expand(hd).leading
    value = lead * factorial(hd.dim)
    if value.denominator != 1 or value <= 0:
        raise ConsistencyError(f"{hd.description}: degree {value} is not a positive integer")
    return int(value)


def validate(hd: HilbertData) -> RatPoly:
    """Assert the structural invariants; returns the expanded polynomial.

    Symmetry of every table (unimodality too, for simply-laced marks), the
    expected degree, the anticanonical symmetry H(-iota-z) = (-1)^dim H(z),
    integrality on a window of integers, and chi(O) = 1 whenever the index
    is positive.
    """
    for table in hd.levels:
        if not hd.lmax >= table.level >= 1:
            raise ConsistencyError(f"{hd.description}: level {table.level} out of range")
        table.check_symmetric(hd.index)
        if hd.simply_laced:
            bad = table.unimodality_violations(hd.index)
            if bad:
                raise ConsistencyError(
                    f"{hd.description}: level {table.level} not unimodal at {bad[0]}"
                )
    H = expand(hd)
    if H.degree != hd.dim:
        raise ConsistencyError(
            f"{hd.description}: expanded degree {H.degree} != dim {hd.dim}"
        )
    if H.compose_affine(-1, -hd.index) != H * ((-1) ** hd.dim):
        raise ConsistencyError(f"{hd.description}: anticanonical symmetry fails")
    for k in range(-3, 10):
        if H(k).denominator != 1:
            raise ConsistencyError(f"{hd.description}: H({k}) = {H(k)} is not an integer")
    if hd.index > 0 and H(0) != 1:
        raise ConsistencyError(f"{hd.description}: chi(O) = {H(0)} != 1")
    return H


def hilbert_gp(ms: MarkedSystem) -> HilbertData:
    """The factored Hilbert polynomial of the ample generator on G/P."""
    tables = []
    for l, roots in sorted(ms.levels.items()):
        exps: dict[Fraction, int] = {}
        for a in roots:
            k = rho_pair(ms, a)
            exps[k] = exps.get(k, 0) + 1
        table = LevelTable(l, exps)
        if table.count != len(roots):
            raise ConsistencyError("lost roots while tabulating")
        if table.b + table.top != l * ms.index:
            raise ConsistencyError(
                f"{ms.description}: level {l} keys span [{table.b}, {table.top}], "
                f"expected b + top = {l * ms.index}"
            )
        tables.append(table)
    hd = HilbertData(
        description=ms.description,
        dim=ms.dim,
        index=ms.index,
        lmax=ms.lmax,
        levels=tables,
        residual=RatPoly.one(),
        simply_laced=all(di == 1 for di in ms.d),
    )
    validate(hd)
    return hd
