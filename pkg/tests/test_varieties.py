import itertools
import random
from fractions import Fraction

import pytest

from canstrip.hilbert import degree_of, expand, hilbert_gp
from canstrip.ratpoly import RatPoly
from canstrip.root_system import all_simple_types, build_root_system, mark, marked
from canstrip.varieties import (
    AbelianSpec,
    abelian_ci,
    abelian_spec_from_json,
    complete_intersection,
    double_cover,
    pell,
    section_step,
)
from canstrip.verify import check_line, strip_report

from oracles import binom_poly, cover_sum, iterated_difference


def as_ratpoly(coeffs):
    return RatPoly(tuple(coeffs))


class TestSectionStep:
    def test_hyperplane_in_projective_space(self):
        for n in range(2, 7):
            cut = complete_intersection(marked("A", n, 1), [1])
            plain = hilbert_gp(marked("A", n - 1, 1))
            assert expand(cut) == expand(plain)
            assert (cut.dim, cut.index) == (plain.dim, plain.index)
            assert [t.exponents for t in cut.levels] == [t.exponents for t in plain.levels]
            assert cut.residual == plain.residual == RatPoly.one()

    def test_quadric_surface(self):
        hd = complete_intersection(marked("A", 3, 1), [2])
        assert expand(hd) == RatPoly((1, 2, 1))
        assert (hd.index, hd.dim) == (2, 2)
        assert expand(hd) == as_ratpoly(iterated_difference(binom_poly(3), [2]))
        rep = strip_report(hd)
        # one -1/2 comes from the kept level factor, the other sits in the
        # residual (2z+1 in the anticanonical variable), certified on-line
        assert rep.rational_roots == [(Fraction(-1, 2), 1)]
        assert rep.residual_on_line == "certified"
        assert hd.residual == RatPoly((1, 1))
        assert rep.verdicts == {k: "holds" for k in ("CS", "NCS", "TCS", "CL")}

    def test_quintic_threefold(self):
        hd = complete_intersection(marked("A", 4, 1), [5])
        oracle = iterated_difference(binom_poly(4), [5])
        assert list(expand(hd).coeffs) == oracle
        assert hd.index == 0
        assert expand(hd)(0) == 0
        line = check_line(expand(hd))
        assert line.status == "certified" and line.center == 0

    def test_reconstruction_across_kinds(self):
        hd = hilbert_gp(marked("B", 3, 2))
        H = expand(hd)
        for d in (1, 2, 3):
            cut = section_step(hd, d, "intersection")
            assert expand(cut) == H - H.compose_affine(1, -d)
            cov = section_step(hd, d, "cover")
            assert expand(cov) == H + H.compose_affine(1, -d)
            assert cov.dim == hd.dim and cut.dim == hd.dim - 1
            assert cov.index == cut.index == hd.index - d

    def test_bad_inputs(self):
        hd = hilbert_gp(marked("A", 2, 1))
        with pytest.raises(ValueError):
            section_step(hd, 0, "intersection")
        with pytest.raises(ValueError):
            section_step(hd, 1, "union")
        point = complete_intersection(marked("A", 1, 1), [1])
        assert point.dim == 0
        with pytest.raises(ValueError):
            section_step(point, 1, "intersection")


class TestCompleteIntersection:
    def test_del_pezzo_of_degree_four(self):
        hd = complete_intersection(marked("A", 4, 1), [2, 2])
        assert (hd.dim, hd.index) == (2, 1)
        assert degree_of(hd) == 4
        assert list(expand(hd).coeffs) == iterated_difference(binom_poly(4), [2, 2])
        rep = strip_report(hd)
        assert rep.verdicts["TCS"] == "holds" and rep.verdicts["CL"] == "holds"

    def test_quartic_surface_k3(self):
        hd = complete_intersection(marked("A", 3, 1), [4])
        assert hd.index == 0
        assert expand(hd)(0) == 2  # chi(O) of a K3
        rep = strip_report(hd)
        assert rep.variety_class == "Calabi-Yau"
        assert rep.verdicts["CL"] == "holds"

    def test_e6_calabi_yau_cut(self):
        hd = complete_intersection(marked("E", 6, 4), [7])
        assert hd.index == 0
        assert strip_report(hd).verdicts["CL"] == "holds"

    def test_order_independence(self):
        ms = marked("A", 5, 1)
        polys = {
            expand(complete_intersection(ms, list(perm)))
            for perm in itertools.permutations([2, 3, 4])
        }
        assert len(polys) == 1
        ms = marked("B", 3, 1)
        polys = {
            expand(complete_intersection(ms, list(perm)))
            for perm in itertools.permutations([1, 2, 2])
        }
        assert len(polys) == 1

    def test_oracle_equivalence_on_projective_spaces(self):
        rng = random.Random(17)
        for n in range(1, 9):
            ms = marked("A", n, 1)
            cases = [[1], [2], [n + 1], [1, 1], [2, 3]]
            for _ in range(4):
                k = rng.randint(1, min(3, n))
                cases.append(sorted(rng.randint(1, 6) for _ in range(k)))
            for degrees in cases:
                if len(degrees) > n:
                    continue
                got = expand(complete_intersection(ms, degrees))
                want = iterated_difference(binom_poly(n), degrees)
                assert list(got.coeffs) == want, (n, degrees)

    def test_too_many_degrees(self):
        with pytest.raises(ValueError):
            complete_intersection(marked("A", 2, 1), [1, 1, 1])

    def test_general_type_stays_on_line(self):
        hd = complete_intersection(marked("A", 2, 1), [4])
        assert hd.index == -1
        rep = strip_report(hd)
        assert rep.variety_class == "general type"
        assert rep.verdicts["CL"] == "holds"
        assert rep.residual_line == Fraction(1, 2)  # L-variable center -iota/2


class TestDoubleCover:
    def test_worked_examples(self):
        assert expand(double_cover(marked("A", 1, 1), 1)) == RatPoly((1, 2))
        assert expand(double_cover(marked("A", 2, 1), 1)) == RatPoly((1, 2, 1))
        assert expand(double_cover(marked("A", 1, 1), 2)) == RatPoly((0, 2))

    def test_oracle_equivalence(self):
        for n in range(1, 6):
            ms = marked("A", n, 1)
            for d in range(1, n + 2):
                got = expand(double_cover(ms, d))
                assert list(got.coeffs) == cover_sum(binom_poly(n), d), (n, d)

    def test_dichotomy_for_quadric_covers(self):
        for series, rank in [("B", 2), ("B", 3), ("D", 4), ("D", 5)]:
            ms = marked(series, rank, 1)
            for d in range(1, ms.index + 1):
                rep = strip_report(double_cover(ms, d))
                key = "TCS" if rep.index > 0 else "CL"
                assert rep.verdicts[key] == "holds", (ms.description, d)

    def test_calabi_yau_cover(self):
        ms = marked("A", 1, 1)
        hd = double_cover(ms, 2)
        rep = strip_report(hd)
        assert rep.variety_class == "Calabi-Yau"
        assert rep.verdicts["CL"] == "holds"

    def test_beyond_the_index(self):
        # no structural claim applies, but the polynomial is still computable
        hd = double_cover(marked("A", 1, 1), 3)
        assert expand(hd) == RatPoly((-1, 2))
        rep = strip_report(hd)
        assert rep.variety_class == "general type"
        assert rep.verdicts["CL"] == "holds"


class TestAbelian:
    def test_genus_two_curve(self):
        spec = AbelianSpec(1, 1, (((2,), 2),))
        poly = abelian_ci(spec)
        assert poly == RatPoly((-1, 2))
        line = check_line(poly)
        assert line.status == "certified" and line.center == Fraction(1, 2)

    def test_abelian_surface_hypersurface(self):
        spec = AbelianSpec(2, 1, (((3,), 6),))
        assert abelian_ci(spec) == RatPoly((1, -3, 3))
        assert check_line(abelian_ci(spec)).status == "certified"

    def test_single_term_matches_direct_formula(self):
        from math import factorial

        for n in range(1, 6):
            spec = AbelianSpec(n, 1, (((n + 1,), 5),))
            want = pell(n + 1) * Fraction(5, factorial(n + 1))
            assert abelian_ci(spec) == want

    def test_multifactor(self):
        spec = AbelianSpec(2, 2, (((2, 2), 4), ((1, 3), 6), ((3, 1), 6)))
        poly = abelian_ci(spec)
        assert poly.degree == 2
        assert check_line(poly).status == "certified"

    def test_pell_properties(self):
        for l in range(1, 13):
            p = pell(l)
            assert p.degree == l - 1
            shifted = p.compose_affine(1, Fraction(1, 2))
            assert all(c >= 0 for c in shifted.coeffs)
            # parity: even function for odd l, odd function for even l
            sign = (-1) ** (l + 1)
            assert shifted.compose_affine(-1, 0) == shifted * sign
            if l >= 2:
                line = check_line(p)
                assert line.status == "certified" and line.center == Fraction(1, 2)

    def test_invalid_specs(self):
        with pytest.raises(ValueError):
            AbelianSpec(1, 1, (((3,), 2),))  # sum != n + c
        with pytest.raises(ValueError):
            AbelianSpec(1, 1, (((2,), 0),))  # non-positive number
        with pytest.raises(ValueError):
            AbelianSpec(1, 1, (((2,), 2), ((2,), 3)))  # duplicate tuple
        with pytest.raises(ValueError):
            AbelianSpec(2, 2, (((4,), 2),))  # tuple length != c

    def test_json_parsing(self):
        spec = abelian_spec_from_json(
            {"n": 1, "c": 1, "numbers": [{"tuple": [2], "value": 2}]}
        )
        assert spec == AbelianSpec(1, 1, (((2,), 2),))
        with pytest.raises(ValueError):
            abelian_spec_from_json({"n": 1, "c": 1})


class TestSymmetryPropagation:
    def test_every_output_is_symmetric(self):
        rng = random.Random(23)
        bases = [("A", 3, 2), ("B", 3, 1), ("C", 3, 3), ("G", 2, 1), ("D", 4, 2)]
        for series, rank, node in bases:
            ms = marked(series, rank, node)
            for _ in range(4):
                k = rng.randint(1, min(3, ms.dim - 1))
                degrees = [rng.randint(1, 4) for _ in range(k)]
                hd = complete_intersection(ms, degrees)
                H = expand(hd)
                assert H.compose_affine(-1, -hd.index) == H * ((-1) ** hd.dim)
