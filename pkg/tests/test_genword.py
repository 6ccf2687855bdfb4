from fractions import Fraction

import pytest

from birendo.bipoly import UniPoly, parse
from birendo.endo import Line, PlaneEndo, compose, fundamental_points, missing_lines
from birendo.errors import NotAMissingCurve, ParseError, PreconditionError
from birendo.genword import (
    MAT_I,
    AffineGen,
    ContractedToPoint,
    GenWord,
    Ggen,
    Hgen,
    MatM,
    SacAt,
    SacStd,
    TriangularGen,
    Vgen,
    depth_of,
    l_count,
    matM_factor,
    matM_product,
    parse_word,
    pushforward_curve,
    serialize_word,
    to_endo,
    word_center,
    word_contracting_set,
    word_missing_set,
    word_n,
)

P = parse
E = PlaneEndo.parse


def v(*roots, lead=1):
    return Vgen(UniPoly.from_roots(roots, lead))


def polys(text):
    return {P(t) for t in text.split(";")}


class TestGenerators:
    def test_hgen_degree_bound(self):
        with pytest.raises(PreconditionError):
            Hgen(1, UniPoly([0, 1]))

    def test_vgen_nonzero(self):
        with pytest.raises(PreconditionError):
            Vgen(UniPoly([]))

    def test_matm_determinant(self):
        with pytest.raises(PreconditionError):
            MatM(2, 1, 2, 1)

    def test_sacat_point_on_line(self):
        with pytest.raises(PreconditionError):
            SacAt(Line(1, 0, 0), (1, 0))

    def test_sac_variants(self):
        assert SacStd(0).to_endo() == E("x ; x*y")
        assert SacStd(1).to_endo() == E("x*y ; y")
        assert SacStd(2).to_endo() == E("x*(1-y) ; 1-y")

    def test_sacat_is_conjugate_of_standard(self):
        s = SacAt(Line(1, -1, 0), (1, 1))
        f = s.to_endo()
        assert missing_lines(f).lines == (Line(1, -1, 0),)
        assert fundamental_points(f) == {(1, 1)}


class TestToEndo:
    def test_v_gamma_h(self):
        w = GenWord([Vgen(UniPoly([0, 1])), Ggen(MatM(1, 1, 0, 1)), Hgen(1, UniPoly([0]))])
        assert to_endo(w) == E("x*y^2 ; x*y^3")

    def test_single_sac(self):
        assert to_endo(GenWord([SacStd(0)])) == E("x ; x*y")

    def test_empty(self):
        assert to_endo(GenWord([])) == PlaneEndo.identity()

    def test_concatenation(self):
        w1 = GenWord([SacStd(1), AffineGen(((1, 1), (0, 1)), (2, -1))])
        w2 = GenWord([v(1, 2), TriangularGen(2, UniPoly([0, 0, 1]))])
        assert to_endo(w1 + w2) == compose(to_endo(w1), to_endo(w2))


class TestWordN:
    def test_examples(self):
        assert word_n(GenWord([Hgen(3, UniPoly([1, 1]))])) == 3
        assert word_n(GenWord([AffineGen(((0, 1), (1, 0)), (0, 0))])) == 0
        assert word_n(GenWord([SacStd(1), v(1, 2)])) == 3

    def test_ggen_uses_l_count(self):
        assert word_n(GenWord([Ggen(MatM(1, 2, 1, 3))])) == 3


class TestMatM:
    def test_factor_example(self):
        M = MatM(1, 2, 1, 3)
        assert matM_factor(M) == ["S", "L", "S", "L", "L"]
        assert matM_product(matM_factor(M)) == M
        assert l_count(M) == 3

    def test_identity_and_swap(self):
        assert matM_factor(MAT_I) == []
        assert matM_factor(MatM(0, 1, 1, 0)) == ["S"]

    def test_ggen_composition_is_matrix_product(self):
        A, B = MatM(1, 1, 0, 1), MatM(2, 1, 1, 1)
        assert compose(Ggen(A).to_endo(), Ggen(B).to_endo()) == Ggen(A @ B).to_endo()


class TestPushforward:
    def test_alpha0_line(self):
        assert pushforward_curve(SacStd(0), P("y - 1")) == P("x - y")

    def test_alpha1_vertical(self):
        assert pushforward_curve(SacStd(1), P("x - 3")) == P("x - 3*y")

    def test_monomial_map_keeps_axis(self):
        # (x, xy) sends the axis Z(y) onto Z(Y); (xy, y) sends Z(x) onto Z(X)
        assert pushforward_curve(Ggen(MatM(1, 0, 1, 1)), P("y")) == P("y")
        assert pushforward_curve(Ggen(MatM(1, 1, 0, 1)), P("x")) == P("x")
        assert pushforward_curve(Ggen(MatM(1, 1, 1, 0)), P("y")) == P("x")
        w = parse_word("g 1 0 1 1\nv x^2 - 3*x\nh 2 0\n")
        assert word_missing_set(w) == {ln.poly for ln in missing_lines(to_endo(w)).lines}

    def test_contracted(self):
        assert pushforward_curve(SacStd(0), P("x")) == ContractedToPoint((0, 0))

    def test_image_lies_on_result(self):
        # image of a point of y = x^2 + 1 under alpha0 lies on the pushforward
        C = pushforward_curve(SacStd(0), P("y - x^2 - 1"))
        for t in (2, 3, Fraction(1, 2)):
            pt = SacStd(0).to_endo()((Fraction(t), Fraction(t) ** 2 + 1))
            assert C.evaluate(*pt) == 0


class TestWordSets:
    def test_missing(self):
        assert word_missing_set(GenWord([SacStd(1), v(1, 2)])) == polys("y; x - y; x - 2*y")
        assert word_missing_set(GenWord([v(0)])) == {P("x")}
        assert word_missing_set(GenWord([Hgen(2, UniPoly([3, 5]))])) == {P("y")}

    def test_missing_matches_raw(self):
        w = GenWord([SacStd(1), v(1, 2)])
        raw = {ln.poly for ln in missing_lines(to_endo(w)).lines}
        assert raw == word_missing_set(w)

    def test_contracting(self):
        assert word_contracting_set(GenWord([v(0, 1)])) == polys("x; x - 1")
        assert word_contracting_set(GenWord([SacStd(1), v(1, 2)])) == polys("y; x - 1; x - 2")
        assert word_contracting_set(GenWord([Ggen(MatM(2, 1, 1, 1))])) == polys("x; y")

    def test_center(self):
        w = GenWord([SacStd(1), v(1, 2)])
        assert word_center(w) == fundamental_points(to_endo(w)) == {(0, 0)}


class TestDepth:
    def test_examples(self):
        w = GenWord([SacStd(1), v(1)])
        assert depth_of(w, P("y")) == 1
        assert depth_of(w, P("x - y")) == 2
        assert depth_of(GenWord([SacStd(0)]), P("x")) == 1

    def test_not_missing(self):
        with pytest.raises(NotAMissingCurve):
            depth_of(GenWord([SacStd(0)]), P("y"))

    def test_needs_single_sacs(self):
        with pytest.raises(PreconditionError):
            depth_of(GenWord([v(1, 2)]), P("x - 1"))


class TestWordFiles:
    TEXT = """# a mixed word
aff 1 2 0 1 -1 1/2
tri -1 x^2 + 1
h 1 3
g 0 1 1 0
v x - 2
sacstd 2
sacat 1 -1 0 1 1
"""

    def test_round_trip(self):
        w = parse_word(self.TEXT)
        assert len(w) == 7
        assert parse_word(serialize_word(w)) == w
        assert to_endo(parse_word(serialize_word(w))) == to_endo(w)

    def test_round_trip_text_only(self):
        w = parse_word("h 2 y + 3\ng 1 2 1 3\nv x^2 - 3*x + 2\n")
        assert w == GenWord([Hgen(2, UniPoly([3, 1])), Ggen(MatM(1, 2, 1, 3)), v(1, 2)])
        assert parse_word(serialize_word(w)) == w

    @pytest.mark.parametrize("bad", ["foo 1", "g 1 2 3", "aff 1 0 0 1 0", "sacstd x", "h two y"])
    def test_bad_letters(self, bad):
        with pytest.raises((ParseError, PreconditionError)):
            parse_word(bad)
