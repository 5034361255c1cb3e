"""Hyperplane sections, double covers, and abelian complete intersections.

A hypersurface section of degree d turns H(z) into H(z) - H(z-d); the
double cover branched in |2dL| gives H(z) + H(z-d).  Both propagate the
factored form by the same min-of-exponents rule on the level tables, with
the leftovers absorbed into the residual factor.  The reconstruction
identity is asserted exactly on every step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .hilbert import HilbertData, LevelTable, expand, hilbert_gp, validate
from .ratpoly import ConsistencyError, RatPoly
from .root_system import MarkedSystem


def section_step(hd: HilbertData, d: int, kind: str) -> HilbertData:
    """One degree-d step: difference for "intersection", sum for "cover".

    Per level, the new exponent at k is min(h_k, h_{k+l*d}); the factors the
    min rule leaves behind are collected into two leftover polynomials, and
    the residual becomes res(z)*B+ -/+ res(z-d)*B-, times the exact constant
    that restores the (l*z+k)/k normalization of the kept factors.
    """
    if kind not in ("intersection", "cover"):
        raise ValueError(f"unknown section kind {kind!r}")
    if d < 1:
        raise ValueError("degree must be a positive integer")
    if kind == "intersection" and hd.dim < 1:
        raise ValueError("cannot intersect a 0-dimensional space")

    new_index = hd.index - d
    new_tables: list[LevelTable] = []
    b_plus = RatPoly.one()
    b_minus = RatPoly.one()
    scale = Fraction(1)

    for table in hd.levels:
        l = table.level
        shift = l * d
        exps = table.exponents
        kept: dict[Fraction, int] = {}
        for k, h in table.sorted_items():
            m = min(h, exps.get(k + shift, 0))
            if m > 0:
                kept[k] = m
            scale *= k ** (m - h)
            # leftover of H^l(z); for a simply-laced mark these factors sit
            # strictly left of the new center, but mixed-length marks can
            # leak them across (C4/P2 with d=1 is the smallest case)
            e_plus = h - m
            if e_plus > 0:
                b_plus = b_plus * (RatPoly((k, Fraction(l))) ** e_plus)
            # leftover of H^l(z-d): factor position k - l*d
            pos = k - shift
            e_minus = h - min(exps.get(pos, 0), h)
            if e_minus > 0:
                b_minus = b_minus * (RatPoly((pos, Fraction(l))) ** e_minus)
        if kept:
            new_table = LevelTable(l, kept)
            # with equal root lengths the level supports have no holes and
            # the bottom exponent survives every cut; mixed lengths can lose
            # it (C3/P1 has no level-1 key at 3, so a degree-2 cut drops b)
            if hd.simply_laced and new_table.b != table.b:
                raise ConsistencyError("section step moved the bottom exponent b_l")
            new_tables.append(new_table)

    sign = -1 if kind == "intersection" else 1
    shifted = hd.residual.compose_affine(1, -d)
    residual = (hd.residual * b_plus + sign * (shifted * b_minus)) * scale

    if kind == "intersection":
        desc = f"{hd.description} ∩ ({d})"
        new_dim = hd.dim - 1
    else:
        desc = f"double cover of {hd.description} branched in |{2 * d}L|"
        new_dim = hd.dim

    out = HilbertData(
        description=desc,
        dim=new_dim,
        index=new_index,
        lmax=max((t.level for t in new_tables), default=0),
        levels=new_tables,
        residual=residual,
        simply_laced=hd.simply_laced,
    )

    H_old = expand(hd)
    target = H_old + sign * H_old.compose_affine(1, -d)
    if expand(out) != target:
        op = "+" if sign > 0 else "-"
        raise ConsistencyError(f"{desc}: factored form does not reconstruct H(z) {op} H(z-d)")
    validate(out)
    return out


def complete_intersection(ms: MarkedSystem, degrees: list[int]) -> HilbertData:
    """Iterated hypersurface sections of the given degrees."""
    hd = hilbert_gp(ms)
    if len(degrees) > hd.dim:
        raise ValueError(
            f"{len(degrees)} hypersurfaces in {hd.description} of dimension {hd.dim}"
        )
    if degrees:
        for d in degrees:
            hd = section_step(hd, d, "intersection")
        joined = ",".join(str(d) for d in degrees)
        hd.description = f"{ms.description} ∩ ({joined})"
    return hd


def double_cover(ms: MarkedSystem, d: int) -> HilbertData:
    """Double cover branched over a member of |2dL|, polarized by the pullback.

    d < iota is Fano, d = iota is the Calabi-Yau cover; larger d gives
    general-type covers, computed the same way but with no general
    localization guarantee attached.
    """
    return section_step(hilbert_gp(ms), d, "cover")


@dataclass(frozen=True)
class AbelianSpec:
    """Complete intersection of c ample hypersurfaces in an abelian variety.

    `numbers` maps each exponent tuple (l_1, ..., l_c) with sum n + c to the
    intersection number L_1^{l_1} ... L_c^{l_c}; missing tuples count as 0.
    """

    n: int
    c: int
    numbers: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self) -> None:
        if self.n < 1 or self.c < 1:
            raise ValueError("need n >= 1 and c >= 1")
        seen = set()
        for tup, value in self.numbers:
            if len(tup) != self.c:
                raise ValueError(f"tuple {tup} does not have c = {self.c} entries")
            if any(e < 0 for e in tup) or sum(tup) != self.n + self.c:
                raise ValueError(f"tuple {tup} must have non-negative sum n+c = {self.n + self.c}")
            if not isinstance(value, int) or value <= 0:
                raise ValueError(f"intersection number for {tup} must be a positive integer")
            if tup in seen:
                raise ValueError(f"duplicate tuple {tup}")
            seen.add(tup)


def abelian_spec_from_json(obj: dict) -> AbelianSpec:
    """Parse {"n": int, "c": int, "numbers": [{"tuple": [...], "value": v}]}."""
    try:
        numbers = tuple(
            (tuple(int(e) for e in item["tuple"]), int(item["value"]))
            for item in obj["numbers"]
        )
        return AbelianSpec(int(obj["n"]), int(obj["c"]), numbers)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed abelian spec: {exc}") from exc


def pell(l: int) -> RatPoly:
    """The difference polynomial z^l - (z-1)^l."""
    if l < 0:
        raise ValueError("need l >= 0")
    z = RatPoly.variable()
    return z**l - RatPoly((Fraction(-1), Fraction(1))) ** l


def abelian_ci(spec: AbelianSpec) -> RatPoly:
    """Koszul-complex Hilbert polynomial of the anticanonical class.

    Sum over exponent tuples of (intersection number)/(l_1! ... l_c!) times
    the product of the difference polynomials P_{l_i}.
    """
    out = RatPoly.zero()
    for tup, value in spec.numbers:
        term = RatPoly.const(Fraction(value))
        for e in tup:
            term = term * pell(e) / factorial(e)
        out = out + term
    return out
