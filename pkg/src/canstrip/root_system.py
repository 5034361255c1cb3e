"""Root systems of the simple Lie types with a marked node.

Roots are integer coefficient vectors over the simple roots, in Bourbaki
numbering.  The Cartan matrix convention is C[i][j] = 2(a_i, a_j)/(a_i, a_i),
so pairing a root (as a coefficient vector) against the i-th simple coroot is
row i of C times the vector.  Marking a node rescales the invariant pairing
so the marked simple root has squared length 2; everything downstream of the
pairing is an exact `Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

Root = tuple[int, ...]

_RANK_BOUNDS = {"A": 1, "B": 2, "C": 3, "D": 4, "F": 4, "G": 2}

# low-rank coincidences accepted as input and renumbered onto the canonical
# series (C2 = B2 and D3 = A3 with the nodes permuted)
_ALIASES = {
    ("C", 2): ("B", 2, {1: 2, 2: 1}),
    ("D", 3): ("A", 3, {1: 2, 2: 1, 3: 3}),
}


def canonicalize(series: str, rank: int, node: int | None = None):
    """Normalize a (series, rank[, node]) triple, resolving the aliases."""
    series = series.upper()
    if (series, rank) in _ALIASES:
        new_series, new_rank, node_map = _ALIASES[(series, rank)]
        if node is not None:
            if node not in node_map:
                raise ValueError(f"node {node} out of range for {series}{rank}")
            node = node_map[node]
        return new_series, new_rank, node
    return series, rank, node


def _check_series_rank(series: str, rank: int) -> None:
    if series == "E":
        if rank not in (6, 7, 8):
            raise ValueError(f"invalid type E{rank}: rank must be 6, 7 or 8")
        return
    if series in ("F", "G"):
        if rank != _RANK_BOUNDS[series]:
            raise ValueError(f"invalid type {series}{rank}")
        return
    if series == "A" or series in _RANK_BOUNDS:
        lo = _RANK_BOUNDS.get(series, 1)
        if rank < lo:
            raise ValueError(f"invalid type {series}{rank}: rank must be >= {lo}")
        return
    raise ValueError(f"unknown series {series!r}")


@dataclass(frozen=True)
class SimpleType:
    series: str
    rank: int

    def __post_init__(self) -> None:
        _check_series_rank(self.series, self.rank)

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"


def _expected_count(t: SimpleType) -> int:
    n = t.rank
    if t.series == "A":
        return n * (n + 1) // 2
    if t.series in ("B", "C"):
        return n * n
    if t.series == "D":
        return n * (n - 1)
    if t.series == "E":
        return {6: 36, 7: 63, 8: 120}[n]
    return 24 if t.series == "F" else 6


def _cartan_matrix(t: SimpleType) -> tuple[tuple[int, ...], ...]:
    n = t.rank
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i: int, j: int, cij: int = -1, cji: int = -1) -> None:
        C[i - 1][j - 1] = cij
        C[j - 1][i - 1] = cji

    s = t.series
    if s in ("A", "B", "C"):
        for i in range(1, n):
            bond(i, i + 1)
        if s == "B":
            bond(n - 1, n, -1, -2)  # a_n short
        if s == "C":
            bond(n - 1, n, -2, -1)  # a_n long
    elif s == "D":
        for i in range(1, n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1)
        bond(n - 2, n)
    elif s == "E":
        chain = [1, 3, 4, 5, 6, 7, 8][: n - 1]
        for a, b in zip(chain, chain[1:]):
            bond(a, b)
        bond(2, 4)
    elif s == "F":
        bond(1, 2)
        bond(2, 3, -1, -2)  # a_3, a_4 short
        bond(3, 4)
    elif s == "G":
        bond(1, 2, -3, -1)  # a_1 short
    return tuple(tuple(row) for row in C)


def _symmetrizer(cartan: tuple[tuple[int, ...], ...]) -> tuple[Fraction, ...]:
    """Positive rationals d with d_i C_ij symmetric, spread over the diagram."""
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    todo = [0]
    while todo:
        i = todo.pop()
        for j in range(n):
            if j != i and cartan[i][j] != 0 and d[j] is None:
                d[j] = d[i] * cartan[i][j] / cartan[j][i]
                todo.append(j)
    assert all(v is not None for v in d), "Dynkin diagram is not connected"
    return tuple(d)  # type: ignore[arg-type]


def _generate_positive_roots(cartan: tuple[tuple[int, ...], ...]) -> tuple[Root, ...]:
    """Closure over root strings, breadth-first by height."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots: set[Root] = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for a in layer:
            for i in range(n):
                pairing = sum(cartan[i][j] * a[j] for j in range(n))
                down = list(a)
                p = 0
                while True:
                    down[i] -= 1
                    if down[i] < 0 or tuple(down) not in roots:
                        break
                    p += 1
                if p - pairing > 0:
                    up = list(a)
                    up[i] += 1
                    c = tuple(up)
                    if c not in roots:
                        roots.add(c)
                        nxt.append(c)
        layer = nxt
    return tuple(sorted(roots, key=lambda r: (sum(r), r)))


@dataclass(frozen=True)
class RootSystem:
    simple_type: SimpleType
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[Fraction, ...]
    positive_roots: tuple[Root, ...]

    @property
    def rank(self) -> int:
        return self.simple_type.rank

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.positive_roots)

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def is_root(self, a: Root) -> bool:
        a = tuple(a)
        return a in self.root_set or tuple(-c for c in a) in self.root_set


@lru_cache(maxsize=None)
def build_root_system(t: SimpleType) -> RootSystem:
    """All positive roots plus Cartan data for a simple type."""
    cartan = _cartan_matrix(t)
    d = _symmetrizer(cartan)
    for i in range(t.rank):
        for j in range(t.rank):
            assert d[i] * cartan[i][j] == d[j] * cartan[j][i]
    roots = _generate_positive_roots(cartan)
    if len(roots) != _expected_count(t):
        raise AssertionError(
            f"{t.name}: generated {len(roots)} positive roots, expected {_expected_count(t)}"
        )
    return RootSystem(t, cartan, d, roots)


def _solve_exact(mat: tuple[tuple[int, ...], ...], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan over Fraction for a small square system."""
    n = len(rhs)
    aug = [[Fraction(mat[i][j]) for j in range(n)] + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


@dataclass(frozen=True, eq=False)
class MarkedSystem:
    rs: RootSystem
    node: int  # 1-based Bourbaki index of the marked simple root
    d: tuple[Fraction, ...]  # symmetrizer rescaled so d[node-1] == 1
    omega0: tuple[Fraction, ...]  # omega_0 over the simple roots
    omega0_norm: Fraction  # (omega_0, omega_0)
    index: int
    lmax: int
    dim: int
    levels: dict[int, tuple[Root, ...]]
    coxeter_number: int

    @property
    def description(self) -> str:
        return f"{self.rs.simple_type.name}/P{self.node}"

    @property
    def cominuscule(self) -> bool:
        return self.lmax == 1


def rho_pair(ms: MarkedSystem, a: Root) -> Fraction:
    """(rho, a) in the marked normalization: sum of c_i * d_i."""
    a = tuple(a)
    if not ms.rs.is_root(a):
        raise ValueError(f"{a} is not a root of {ms.rs.simple_type.name}")
    return sum((c * di for c, di in zip(a, ms.d)), Fraction(0))


def level_of(ms: MarkedSystem, a: Root) -> int:
    return a[ms.node - 1]


def index_formulas(ms: MarkedSystem) -> tuple[Fraction, Fraction]:
    """The index computed two independent ways.

    (a) (2 rho, omega_0) / (omega_0, omega_0), the numerator being the sum of
        the marked coefficients over all positive roots;
    (b) the proportionality 2 rho_X = iota * omega_0, where 2 rho_X is the sum
        of the roots at positive level (checked on every coordinate).
    """
    i = ms.node - 1
    two_rho_omega = Fraction(sum(a[i] for a in ms.rs.positive_roots))
    via_remark = two_rho_omega / ms.omega0_norm

    two_rho_x = [Fraction(0)] * ms.rs.rank
    for roots in ms.levels.values():
        for a in roots:
            for j, c in enumerate(a):
                two_rho_x[j] += c
    via_lemma = two_rho_x[i] / ms.omega0[i]
    for j in range(ms.rs.rank):
        if two_rho_x[j] != via_lemma * ms.omega0[j]:
            raise AssertionError(
                f"{ms.description}: sum of positive-level roots is not proportional to omega_0"
            )
    return via_remark, via_lemma


@lru_cache(maxsize=None)
def mark(rs: RootSystem, node: int) -> MarkedSystem:
    """Mark a node: normalized pairing, grading, index, extremal data."""
    n = rs.rank
    if not 1 <= node <= n:
        raise ValueError(f"node {node} out of range for {rs.simple_type.name} (1..{n})")
    i = node - 1
    d = tuple(v / rs.symmetrizer[i] for v in rs.symmetrizer)

    rhs = [Fraction(int(j == i)) for j in range(n)]
    omega0 = _solve_exact(rs.cartan, rhs)
    # (omega_0, a_j^vee) = delta check, directly against every simple coroot
    for j in range(n):
        pairing = sum(Fraction(rs.cartan[j][k]) * omega0[k] for k in range(n))
        assert pairing == (1 if j == i else 0)
    omega0_norm = omega0[i]

    levels: dict[int, list[Root]] = {}
    for a in rs.positive_roots:
        if a[i] > 0:
            levels.setdefault(a[i], []).append(a)
    lmax = rs.highest_root[i]
    assert sorted(levels) == list(range(1, lmax + 1)), "empty level in the grading"
    dim = sum(len(v) for v in levels.values())

    frozen = {
        l: tuple(sorted(v, key=lambda a: (sum(ci * di for ci, di in zip(a, d)), a)))
        for l, v in sorted(levels.items())
    }
    coxeter = sum(rs.highest_root) + 1

    ms = MarkedSystem(
        rs=rs,
        node=node,
        d=d,
        omega0=tuple(omega0),
        omega0_norm=omega0_norm,
        index=0,  # placeholder, replaced below
        lmax=lmax,
        dim=dim,
        levels=frozen,
        coxeter_number=coxeter,
    )
    via_remark, via_lemma = index_formulas(ms)
    if via_remark != via_lemma or via_remark.denominator != 1 or via_remark <= 0:
        raise AssertionError(
            f"{ms.description}: index formulas disagree or give a non-positive "
            f"non-integer ({via_remark} vs {via_lemma})"
        )
    object.__setattr__(ms, "index", int(via_remark))

    for l in range(1, lmax + 1):
        extremal_roots(ms, l)  # asserts uniqueness and (rho, b+g) = iota*l
    return ms


def extremal_roots(ms: MarkedSystem, l: int) -> tuple[Root, Root]:
    """The (rho, .)-minimal and -maximal roots of one level, both unique."""
    if l not in ms.levels:
        raise ValueError(f"level {l} is empty in {ms.description}")
    pairs = [(rho_pair(ms, a), a) for a in ms.levels[l]]
    values = [v for v, _ in pairs]
    lo, hi = min(values), max(values)
    if values.count(lo) != 1 or values.count(hi) != 1:
        raise AssertionError(f"{ms.description}: non-unique extremal root at level {l}")
    beta = next(a for v, a in pairs if v == lo)
    gamma = next(a for v, a in pairs if v == hi)
    if lo + hi != ms.index * l:
        raise AssertionError(
            f"{ms.description}: (rho, beta+gamma) = {lo + hi} != iota*l = {ms.index * l}"
        )
    return beta, gamma


def marked(series: str, rank: int, node: int) -> MarkedSystem:
    """Build and mark in one step, accepting alias names (C2, D3)."""
    series, rank, node = canonicalize(series, rank, node)
    return mark(build_root_system(SimpleType(series, rank)), node)


def all_simple_types(max_rank: int) -> list[SimpleType]:
    """Every canonical simple type with rank <= max_rank, in a fixed order."""
    out = []
    for series in "ABCDEFG":
        lo = _RANK_BOUNDS.get(series, 1)
        for r in range(lo, max_rank + 1):
            if series == "E" and r not in (6, 7, 8):
                continue
            if series in ("F", "G") and r != lo:
                continue
            out.append(SimpleType(series, r))
    return out
