from fractions import Fraction
from math import factorial

import pytest

from canstrip.hilbert import HilbertData, LevelTable, degree_of, expand, hilbert_gp, validate
from canstrip.ratpoly import ConsistencyError, RatPoly
from canstrip.root_system import all_simple_types, build_root_system, mark, marked, rho_pair

from oracles import binom_poly, peval

E6_P4_TABLES = {
    1: {1: 1, 2: 3, 3: 5, 4: 5, 5: 3, 6: 1},
    2: {5: 1, 6: 2, 7: 3, 8: 2, 9: 1},
    3: {10: 1, 11: 1},
}


def weyl_product(ms, k):
    """chi(L^k) straight from the root list, bypassing the level tables."""
    value = Fraction(1)
    i = ms.node - 1
    for a in ms.rs.positive_roots:
        if a[i] > 0:
            rho = rho_pair(ms, a)
            value *= (k * a[i] + rho) / rho
    return value


class TestHilbertGP:
    def test_projective_space_tables(self):
        for n in range(1, 8):
            hd = hilbert_gp(marked("A", n, 1))
            assert len(hd.levels) == 1
            assert hd.levels[0].exponents == {Fraction(k): 1 for k in range(1, n + 1)}
            assert list(expand(hd).coeffs) == binom_poly(n)

    def test_p3_expanded(self):
        hd = hilbert_gp(marked("A", 3, 1))
        assert expand(hd) == RatPoly((1, Fraction(11, 6), 1, Fraction(1, 6)))

    def test_p1_anticanonical(self):
        hd = hilbert_gp(marked("A", 1, 1))
        assert expand(hd, "anticanonical") == RatPoly((1, 2))

    def test_e6_p4_tables(self):
        hd = hilbert_gp(marked("E", 6, 4))
        got = {t.level: {int(k): h for k, h in t.exponents.items()} for t in hd.levels}
        assert got == E6_P4_TABLES

    def test_b_and_top(self):
        for t in all_simple_types(5):
            rs = build_root_system(t)
            for node in range(1, t.rank + 1):
                ms = mark(rs, node)
                hd = hilbert_gp(ms)
                for table in hd.levels:
                    assert table.b + table.top == table.level * ms.index
                    assert table.count == len(ms.levels[table.level])

    def test_anticanonical_needs_positive_index(self):
        hd = hilbert_gp(marked("A", 2, 1))
        hd.index = 0
        with pytest.raises(ValueError):
            expand(hd, "anticanonical")


class TestDegree:
    def test_projective_spaces(self):
        for n in range(1, 8):
            assert degree_of(hilbert_gp(marked("A", n, 1))) == 1

    def test_known_classical_degrees(self):
        for series, rank, node, want in [
            ("A", 3, 2, 2),      # the Pluecker quadric Gr(2,4)
            ("A", 4, 2, 5),      # Gr(2,5)
            ("B", 2, 1, 2),      # 3-dimensional quadric
            ("D", 5, 1, 2),      # 8-dimensional quadric
            ("D", 5, 5, 12),     # 10-dimensional spinor variety
            ("E", 6, 1, 78),     # Cayley plane
            ("E", 7, 7, 13110),  # 27-dimensional Freudenthal variety
        ]:
            assert degree_of(hilbert_gp(marked(series, rank, node))) == want

    def test_e6_p4_degree(self):
        # forced by the level tables: 29! times the product of (l/k)^h
        hd = hilbert_gp(marked("E", 6, 4))
        lead = Fraction(1)
        for level, exps in E6_P4_TABLES.items():
            for k, h in exps.items():
                lead *= Fraction(level, k) ** h
        assert factorial(29) * lead == 6976089058498560
        assert degree_of(hd) == 6976089058498560
        assert degree_of(hd) == hd.index * 996584151214080


class TestCrossChecks:
    def test_weyl_product_small_window(self):
        for t in all_simple_types(4):
            rs = build_root_system(t)
            for node in range(1, t.rank + 1):
                ms = mark(rs, node)
                H = expand(hilbert_gp(ms))
                assert H(0) == 1
                for k in range(6):
                    assert H(k) == weyl_product(ms, k), ms.description

    def test_d5_node1_against_evaluation(self):
        # degree-8 quadric: ten evaluations pin the degree-8 polynomial
        ms = marked("D", 5, 1)
        hd = hilbert_gp(ms)
        assert hd.dim == 8
        H = expand(hd)
        for k in range(10):
            assert H(k) == weyl_product(ms, k)

    def test_e6_module_dimension(self):
        H = expand(hilbert_gp(marked("E", 6, 4)))
        assert H(1) == 2925

    def test_cominuscule_roots(self):
        # full splitting: anticanonical roots are -j/iota, 0 < j < iota
        for series, rank, node in [("A", 4, 1), ("A", 5, 2), ("D", 5, 1), ("E", 6, 1)]:
            ms = marked(series, rank, node)
            assert ms.cominuscule
            hd = hilbert_gp(ms)
            roots = {}
            for table in hd.levels:
                for k, h in table.exponents.items():
                    r = -k / (table.level * ms.index)
                    roots[r] = roots.get(r, 0) + h
            assert set(roots) == {Fraction(-j, ms.index) for j in range(1, ms.index)}


class TestValidate:
    def test_symmetry_violation_detected(self):
        hd = HilbertData("broken", 2, 2, 1, [LevelTable(1, {Fraction(1): 2, Fraction(2): 1})])
        with pytest.raises(ConsistencyError):
            validate(hd)

    def test_unimodality_gate(self):
        # same shape that real mixed-length marks produce; allowed only there
        table = LevelTable(1, {Fraction(k): h for k, h in [(1, 1), (2, 2), (3, 1), (4, 1), (5, 2), (6, 1)]})
        assert table.unimodality_violations(7)
        hd = hilbert_gp(marked("C", 4, 2))
        assert not hd.simply_laced

    def test_wrong_chi_detected(self):
        hd = HilbertData("broken", 1, 1, 1, [], RatPoly((2, 2)))
        with pytest.raises(ConsistencyError):
            validate(hd)
