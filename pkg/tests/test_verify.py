from fractions import Fraction

import pytest

from canstrip.hilbert import expand, hilbert_gp
from canstrip.ratpoly import RatPoly
from canstrip.root_system import marked
from canstrip.varieties import complete_intersection, double_cover
from canstrip.verify import approx_roots, check_line, strip_report

from oracles import binom_poly, iterated_difference


def P(*coeffs):
    return RatPoly(tuple(Fraction(c) for c in coeffs))


class TestCheckLine:
    def test_on_line(self):
        line = check_line(P(1, 1, 1))
        assert line.status == "certified"
        assert line.center == Fraction(-1, 2)
        assert line.certificates[0].count == 1  # the u-root -3/4

    def test_off_line(self):
        line = check_line(P(2, 3, 1))  # roots -1 and -2
        assert line.status == "violated"

    def test_quintic_threefold_oracle_polynomial(self):
        poly = P(*iterated_difference(binom_poly(4), [5]))
        line = check_line(poly)
        assert line.status == "certified" and line.center == 0

    def test_constant(self):
        assert check_line(P(5)).status == "not_applicable"

    def test_linear(self):
        line = check_line(P(1, 2))
        assert line.status == "certified" and line.center == Fraction(-1, 2)

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            check_line(P(1, 0, 0, 1))

    def test_multiplicity_handling(self):
        # (z^2+z+1)^2 has all roots on the line, detected via square-free parts
        line = check_line(P(1, 1, 1) * P(1, 1, 1))
        assert line.status == "certified"


class TestStripReport:
    def test_e6_p4(self):
        rep = strip_report(hilbert_gp(marked("E", 6, 4)))
        assert rep.verdicts["TCS"] == "holds"
        assert rep.rational_roots[0][0] == Fraction(-6, 7)
        assert rep.rational_roots[-1][0] == Fraction(-1, 7)
        assert rep.residual_on_line == "not_applicable"
        assert rep.boundary_contact  # roots at both segment endpoints

    def test_projective_space_roots(self):
        for n in (1, 2, 5):
            rep = strip_report(hilbert_gp(marked("A", n, 1)))
            assert [r for r, _ in rep.rational_roots] == [
                Fraction(-j, n + 1) for j in range(n, 0, -1)
            ]
            assert rep.verdicts["TCS"] == "holds"
            assert rep.boundary_contact

    def test_index_one_case(self):
        rep = strip_report(complete_intersection(marked("A", 4, 1), [2, 2]))
        assert rep.index == 1
        assert rep.rational_roots == []
        assert rep.residual_on_line == "certified"
        assert rep.verdicts["TCS"] == "holds" and rep.verdicts["CL"] == "holds"

    def test_segment_dichotomy_case(self):
        # mixed root lengths push a real residual pair off the line but
        # inside the closed strip segment
        rep = strip_report(complete_intersection(marked("C", 4, 2), [1]))
        assert rep.residual_on_line == "violated"
        assert rep.residual_dichotomy == "certified"
        assert rep.verdicts["TCS"] == "holds"
        assert rep.verdicts["CL"] == "fails"

    def test_narrow_strip_edge_for_p1(self):
        # the narrow strip of a curve is empty, so NCS fails at -1/2
        rep = strip_report(hilbert_gp(marked("A", 1, 1)))
        assert rep.verdicts["NCS"] == "fails"
        assert rep.witnesses["NCS"] == "-1/2"

    def test_calabi_yau(self):
        rep = strip_report(complete_intersection(marked("A", 4, 1), [5]))
        assert rep.variety_class == "Calabi-Yau"
        assert rep.verdicts["TCS"] == "not_applicable"
        assert rep.verdicts["CL"] == "holds"
        assert rep.residual_line == 0

    def test_general_type(self):
        rep = strip_report(complete_intersection(marked("A", 2, 1), [5]))
        assert rep.variety_class == "general type"
        assert rep.verdicts["CL"] == "holds"
        assert rep.residual_line == Fraction(1)  # -iota/2 with iota = -2

    def test_all_applicable_hold(self):
        assert strip_report(hilbert_gp(marked("A", 3, 1))).all_applicable_hold
        assert strip_report(double_cover(marked("A", 1, 1), 2)).all_applicable_hold


class TestApproxRoots:
    def test_pure_imaginary_pair(self):
        roots = approx_roots(P(1, 0, 1), digits=10)
        values = sorted(r.value.imag for r in roots)
        assert abs(values[0] + 1) < 1e-9 and abs(values[1] - 1) < 1e-9
        assert all(abs(r.value.real) < 1e-9 for r in roots)

    def test_double_root(self):
        roots = approx_roots(P(1, 2, 1), digits=10)
        assert len(roots) == 1
        assert roots[0].multiplicity == 2
        assert abs(roots[0].value - (-1)) < 1e-9

    def test_e6_p4_anticanonical(self):
        hd = hilbert_gp(marked("E", 6, 4))
        poly = expand(hd, "anticanonical")
        roots = approx_roots(poly, digits=10)
        assert sum(r.multiplicity for r in roots) == 29
        exact = {}
        for table in hd.levels:
            for k, h in table.exponents.items():
                r = -k / (table.level * hd.index)
                exact[r] = exact.get(r, 0) + h
        assert len(roots) == len(exact)
        for approx in roots:
            closest = min(exact, key=lambda r: abs(float(r) - approx.value.real))
            assert abs(approx.value - float(closest)) < 1e-8
            assert approx.multiplicity == exact[closest]

    def test_agreement_with_exact_verdicts(self):
        # advisory float cross-check: approximate real parts sit on the
        # certified center line
        for poly in (P(1, 1, 1), P(1, 2, 2), P(*iterated_difference(binom_poly(4), [5]))):
            if poly.degree < 1:
                continue
            line = check_line(poly)
            if line.status != "certified":
                continue
            for r in approx_roots(poly, digits=10):
                assert abs(r.value.real - float(line.center)) < 1e-7

    def test_rejects_constants(self):
        with pytest.raises(ValueError):
            approx_roots(P(3))
