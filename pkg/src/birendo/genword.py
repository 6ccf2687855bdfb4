"""Words in named generators and their compositional invariants.

Letters are stored leftmost-applied-last: the word ``[a, b, c]`` denotes
``a o b o c``.  Each generator knows its polynomial pair, its number of
blow-ups ``n``, its missing and contracting curves, its fundamental points
and how to push a curve forward through itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bipoly import (
    ONE,
    X,
    Y,
    BiPoly,
    UniPoly,
    divides,
    exact_div,
    factor,
    gcd,
    laurent_substitute_y_over_x,
    parse,
    serialize,
    substitute,
    substitute_monomial,
)
from .endo import (
    Affine,
    Line,
    PlaneEndo,
    Triangular,
    compose,
    contracting_curves,
    image_point,
    missing_lines,
)
from .errors import IrrationalData, NotAMissingCurve, ParseError, PreconditionError, Unresolved

ORIGIN = (Fraction(0), Fraction(0))


# ---------------------------------------------------------------------------
# the matrix monoid


@dataclass(frozen=True)
class MatM:
    """Matrix (i j; k l) with natural entries and determinant +-1."""

    i: int
    j: int
    k: int
    l: int

    def __post_init__(self):
        if min(self.i, self.j, self.k, self.l) < 0:
            raise PreconditionError("MatM entries must be natural numbers")
        if self.det not in (1, -1):
            raise PreconditionError(f"det {self.det} is not +-1")

    @property
    def det(self) -> int:
        return self.i * self.l - self.j * self.k

    def __matmul__(self, o: MatM) -> MatM:
        return MatM(
            self.i * o.i + self.j * o.k,
            self.i * o.j + self.j * o.l,
            self.k * o.i + self.l * o.k,
            self.k * o.j + self.l * o.l,
        )

    def rows(self):
        return ((self.i, self.j), (self.k, self.l))

    def inverse_exponents(self):
        d = self.det
        return ((self.l * d, -self.j * d), (-self.k * d, self.i * d))

    def __str__(self):
        return f"({self.i} {self.j};{self.k} {self.l})"


MAT_L = MatM(1, 1, 0, 1)
MAT_S = MatM(0, 1, 1, 0)
MAT_I = MatM(1, 0, 0, 1)


def matM_factor(M: MatM):
    """Word over 'L' = (1 1;0 1) and 'S' = (0 1;1 0) whose product is M.

    Euclidean row reduction: peel L while the first row dominates the
    second, swap rows (peel S) when the second dominates.
    """
    word = []
    cur = M
    while cur != MAT_I:
        if cur == MAT_S:
            word.append("S")
            break
        (i, j), (k, l) = cur.rows()
        if i >= k and j >= l:
            word.append("L")
            cur = MatM(i - k, j - l, k, l)
        elif k >= i and l >= j:
            word.append("S")
            cur = MatM(k, l, i, j)
        else:
            raise AssertionError(f"rows of {cur} are incomparable")
    return word


def matM_product(word) -> MatM:
    out = MAT_I
    for s in word:
        out = out @ (MAT_L if s == "L" else MAT_S)
    return out


def l_count(M: MatM) -> int:
    return matM_factor(M).count("L")


# ---------------------------------------------------------------------------
# pushforward plumbing


@dataclass(frozen=True)
class ContractedToPoint:
    point: tuple


def _strip_monomials(F: BiPoly, xs: bool, ys: bool) -> BiPoly:
    for var, use in ((X, xs), (Y, ys)):
        while use and not F.is_const() and divides(var, F):
            F = exact_div(F, var)
    return F


def _saturate(F: BiPoly, D: BiPoly) -> BiPoly:
    while True:
        g = gcd(F, D)
        if g.is_const():
            return F
        F = exact_div(F, g)


def _finish(F: BiPoly) -> BiPoly:
    if F.is_const():
        raise AssertionError("pushforward of a non-contracted curve became constant")
    return F.monic()


def _monic_set(polys):
    return frozenset(p.monic() for p in polys)


def _rational_linear_factors(phi: UniPoly):
    roots = phi.rational_roots()
    rest = phi
    for r in roots:
        while rest.deg > 0 and rest(r) == 0:
            rest = rest // UniPoly([-r, 1])
    if rest.deg > 0:
        raise IrrationalData(f"{phi.to_bipoly('x')} has non-rational roots")
    return roots


# ---------------------------------------------------------------------------
# generators


class _Gen:
    is_automorphism = False

    def missing(self) -> frozenset:
        raise NotImplementedError

    def contracting(self) -> frozenset:
        raise NotImplementedError

    def center(self) -> frozenset:
        raise NotImplementedError

    def _push(self, F: BiPoly) -> BiPoly:
        raise NotImplementedError

    def pushforward(self, F: BiPoly):
        pt = image_point(self.to_endo(), F)
        if pt is not None:
            return ContractedToPoint(pt)
        return _finish(self._push(F))


class _AutMixin(_Gen):
    is_automorphism = True
    n = 0

    def missing(self):
        return frozenset()

    def contracting(self):
        return frozenset()

    def center(self):
        return frozenset()

    def pushforward(self, F: BiPoly):
        inv = self.inverse().to_endo()
        return substitute(F, inv.px, inv.qy).monic()

    def to_text(self) -> str:
        raise NotImplementedError


class AffineGen(Affine, _AutMixin):
    def to_text(self):
        (a, b), (c, d) = self.matrix
        t1, t2 = self.translation
        return " ".join(["aff"] + [str(v) for v in (a, b, c, d, t1, t2)])

    def inverse(self):
        inv = Affine.inverse(self)
        return AffineGen(inv.matrix, inv.translation)


class TriangularGen(Triangular, _AutMixin):
    def to_text(self):
        return f"tri {self.c} {serialize(self.r.to_bipoly('x'))}"

    def inverse(self):
        inv = Triangular.inverse(self)
        return TriangularGen(inv.c, inv.r)


def as_generator(g):
    """Promote plain Affine/Triangular factors to word letters."""
    if isinstance(g, _Gen):
        return g
    if isinstance(g, Affine):
        return AffineGen(g.matrix, g.translation)
    if isinstance(g, Triangular):
        return TriangularGen(g.c, g.r)
    raise TypeError(g)


@dataclass(frozen=True)
class Hgen(_Gen):
    """h_{m,p}: (x, y) -> (x*y^m + p(y), y), deg p < m."""

    m: int
    p: UniPoly = UniPoly()

    def __post_init__(self):
        if not isinstance(self.p, UniPoly):
            object.__setattr__(self, "p", UniPoly.from_bipoly(self.p, "y"))
        if self.m < 0 or not (self.p.deg < self.m):
            raise PreconditionError("h_{m,p} needs deg p < m")

    @property
    def n(self):
        return self.m

    @property
    def is_automorphism(self):
        return self.m == 0

    def to_endo(self):
        return PlaneEndo(BiPoly.monomial(1, self.m) + self.p.to_bipoly("y"), Y, check=False)

    def missing(self):
        return frozenset([Y]) if self.m else frozenset()

    contracting = missing

    def center(self):
        return frozenset([(self.p(Fraction(0)), Fraction(0))]) if self.m else frozenset()

    def _push(self, F):
        # inverse is ((x - p(y)) / y^m, y)
        N, _ = substitute_monomial(F, (1, -self.m), (0, 1))
        G = substitute(N, X - self.p.to_bipoly("y"), Y)
        return _strip_monomials(G, False, True)

    def pushforward(self, F):
        if self.m == 0:
            return F.monic()
        return super().pushforward(F)

    def to_text(self):
        return f"h {self.m} {serialize(self.p.to_bipoly('y'))}"


@lru_cache(maxsize=None)
def _ggen_invariants(M: MatM):
    f = PlaneEndo(BiPoly.monomial(M.i, M.j), BiPoly.monomial(M.k, M.l))
    return contracting_curves(f), missing_lines(f)


@dataclass(frozen=True)
class Ggen(_Gen):
    """gamma_M: (x, y) -> (x^i y^j, x^k y^l)."""

    M: MatM

    @property
    def n(self):
        return l_count(self.M)

    @property
    def is_automorphism(self):
        return self.M in (MAT_I, MAT_S)

    def to_endo(self):
        M = self.M
        return PlaneEndo(BiPoly.monomial(M.i, M.j), BiPoly.monomial(M.k, M.l), check=False)

    def _raw(self):
        return _ggen_invariants(self.M)

    def missing(self):
        if self.is_automorphism:
            return frozenset()
        return frozenset(ln.poly.monic() for ln in self._raw()[1])

    def contracting(self):
        if self.is_automorphism:
            return frozenset()
        return frozenset(cf.equation for cf in self._raw()[0])

    def center(self):
        if self.is_automorphism:
            return frozenset()
        return frozenset(cf.image_point for cf in self._raw()[0])

    def _push(self, F):
        M = self.M
        if F in (X, Y):
            # a non-contracted axis goes to an axis: on Z(y) the map is
            # (x^i [j = 0], x^k [l = 0]), on Z(x) it is (y^j [i = 0], y^l [k = 0])
            first_zero = M.j > 0 if F == Y else M.i > 0
            return X if first_zero else Y
        ex, ey = M.inverse_exponents()
        N, _ = substitute_monomial(F, ex, ey)
        return _strip_monomials(N, True, True)

    def pushforward(self, F):
        if self.M == MAT_S:
            return F.swap().monic()
        if self.M == MAT_I:
            return F.monic()
        return super().pushforward(F)

    def to_text(self):
        return f"g {self.M.i} {self.M.j} {self.M.k} {self.M.l}"


@dataclass(frozen=True)
class Vgen(_Gen):
    """v_phi: (x, y) -> (x, phi(x) y), phi != 0."""

    phi: UniPoly

    def __post_init__(self):
        if not isinstance(self.phi, UniPoly):
            object.__setattr__(self, "phi", UniPoly.from_bipoly(self.phi, "x"))
        if self.phi.is_zero():
            raise PreconditionError("v_phi needs phi != 0")

    @property
    def n(self):
        return int(self.phi.deg)

    @property
    def is_automorphism(self):
        return self.phi.deg == 0

    def to_endo(self):
        return PlaneEndo(X, self.phi.to_bipoly("x") * Y, check=False)

    def _roots(self):
        return _rational_linear_factors(self.phi)

    def missing(self):
        return frozenset(X - r for r in self._roots())

    contracting = missing

    def center(self):
        return frozenset((r, Fraction(0)) for r in self._roots())

    def _push(self, F):
        phi = self.phi.to_bipoly("x")
        D = int(F.deg_y)
        powers = [ONE]
        for _ in range(D):
            powers.append(powers[-1] * phi)
        N = BiPoly()
        for (i, j), c in F.items():
            N = N + BiPoly.monomial(i, j, c) * powers[D - j]
        return _saturate(N, phi)

    def to_text(self):
        return f"v {serialize(self.phi.to_bipoly('x'))}"


_SAC_STD = {
    0: (BiPoly.parse("x"), BiPoly.parse("x*y")),
    1: (BiPoly.parse("x*y"), BiPoly.parse("y")),
    2: (BiPoly.parse("x - x*y"), BiPoly.parse("1 - y")),
}


@dataclass(frozen=True)
class SacStd(_Gen):
    """alpha_0 = (x, xy), alpha_1 = (xy, y), alpha_2 = (x(1-y), 1-y)."""

    variant: int

    def __post_init__(self):
        if self.variant not in _SAC_STD:
            raise PreconditionError("SAC variant must be 0, 1 or 2")

    n = 1

    def to_endo(self):
        return PlaneEndo(*_SAC_STD[self.variant], check=False)

    def missing(self):
        return frozenset([X if self.variant == 0 else Y])

    def contracting(self):
        return frozenset([{0: X, 1: Y, 2: Y - 1}[self.variant]])

    def center(self):
        return frozenset([ORIGIN])

    def _push(self, F):
        if self.variant == 0:
            N, _ = laurent_substitute_y_over_x(F)
            return _strip_monomials(N, True, False)
        if self.variant == 2:
            F = substitute(F, X, 1 - Y)
        N, _ = substitute_monomial(F, (1, -1), (0, 1))
        return _strip_monomials(N, False, True)

    def to_text(self):
        return f"sacstd {self.variant}"


def canonical_affine(line: Line, point) -> Affine:
    """The affine map sending line to Z(X) and point to the origin."""
    x0, y0 = point
    if line.a != 0:
        return Affine(((1, line.b), (0, 1)), (line.c, -y0))
    return Affine(((0, 1), (1, 0)), (line.c, -x0))


@dataclass(frozen=True)
class SacAt(_Gen):
    """A^-1 o alpha_0 o A with A the canonical affine map for (line, point)."""

    line: Line
    point: tuple

    def __post_init__(self):
        object.__setattr__(self, "point", (Fraction(self.point[0]), Fraction(self.point[1])))
        if not self.line.contains(self.point):
            raise PreconditionError("SAC point must lie on its line")

    n = 1

    @property
    def affine(self) -> Affine:
        return canonical_affine(self.line, self.point)

    def to_endo(self):
        A = self.affine
        return compose(A.inverse().to_endo(), compose(SacStd(0).to_endo(), A.to_endo()))

    def missing(self):
        return frozenset([self.line.poly.monic()])

    contracting = missing

    def center(self):
        return frozenset([self.point])

    def _push(self, F):
        A = self.affine
        Ai = A.inverse().to_endo()
        F1 = substitute(F, Ai.px, Ai.qy)
        F2 = SacStd(0)._push(F1)
        Ae = A.to_endo()
        return substitute(F2, Ae.px, Ae.qy)

    def to_text(self):
        ln, (px, py) = self.line, self.point
        return f"sacat {ln.a} {ln.b} {ln.c} {px} {py}"


# ---------------------------------------------------------------------------
# words


class GenWord:
    """Ordered letters, leftmost applied last."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        self.letters = tuple(as_generator(g) for g in letters)

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, idx):
        out = self.letters[idx]
        return GenWord(out) if isinstance(idx, slice) else out

    def __add__(self, other):
        return GenWord(self.letters + tuple(other))

    def __eq__(self, other):
        return isinstance(other, GenWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"GenWord({list(self.letters)!r})"

    def to_endo(self) -> PlaneEndo:
        return to_endo(self)

    @property
    def n(self) -> int:
        return word_n(self)

    def is_automorphism_word(self) -> bool:
        return all(g.is_automorphism for g in self.letters)

    def to_text(self) -> str:
        return serialize_word(self)

    @classmethod
    def parse(cls, text: str) -> GenWord:
        return parse_word(text)


def to_endo(w) -> PlaneEndo:
    out = PlaneEndo.identity()
    for g in reversed(tuple(w)):
        out = compose(g.to_endo(), out)
    return out


def word_n(w) -> int:
    return sum(g.n for g in w)


def pushforward_curve(g, F: BiPoly):
    """Defining equation of the closure of g(Z(F)), or ContractedToPoint."""
    return as_generator(g).pushforward(F)


def _check_resolved(facs, unresolved, what):
    if unresolved:
        raise Unresolved(f"could not split {what}")
    return facs


def word_invariants(w):
    """(Miss, Cont, cent) computed letter by letter from the right."""
    miss, cont, cent = frozenset(), frozenset(), frozenset()
    acc = PlaneEndo.identity()
    for g in reversed(tuple(w)):
        new_cont = set(cont)
        for G in g.contracting():
            if G in miss:
                continue
            H = acc.pullback(G)
            _, facs, unresolved = factor(H)
            for fac, _k in _check_resolved(facs, unresolved, H):
                new_cont.add(fac)
        new_miss = set(g.missing())
        for C in miss:
            img = g.pushforward(C)
            if not isinstance(img, ContractedToPoint):
                new_miss.add(img)
        ge = g.to_endo()
        cent = frozenset(g.center()) | frozenset(ge(p) for p in cent)
        miss, cont = frozenset(new_miss), frozenset(new_cont)
        acc = compose(ge, acc)
    return miss, cont, cent


def word_missing_set(w) -> frozenset:
    miss = frozenset()
    for g in reversed(tuple(w)):
        new = set(g.missing())
        for C in miss:
            img = g.pushforward(C)
            if not isinstance(img, ContractedToPoint):
                new.add(img)
        miss = frozenset(new)
    return miss


def word_contracting_set(w) -> frozenset:
    return word_invariants(w)[1]


def word_center(w) -> frozenset:
    cent = frozenset()
    for g in reversed(tuple(w)):
        ge = g.to_endo()
        cent = frozenset(g.center()) | frozenset(ge(p) for p in cent)
    return cent


def depth_of(w, C: BiPoly) -> int:
    """1-based index, among SAC letters, at which the missing curve C arises."""
    letters = tuple(w)
    C = C.monic()
    for g in letters:
        if not g.is_automorphism and g.n != 1:
            raise PreconditionError("depth_of needs a word of single SACs and automorphisms")
    ordinal = 0
    for idx, g in enumerate(letters):
        if g.is_automorphism:
            continue
        ordinal += 1
        for D in g.missing():
            cur = D
            for h in reversed(letters[:idx]):
                cur = h.pushforward(cur)
                if isinstance(cur, ContractedToPoint):
                    break
            if not isinstance(cur, ContractedToPoint) and cur == C:
                return ordinal
    raise NotAMissingCurve(f"{C} is not a missing curve of the word")


# ---------------------------------------------------------------------------
# word files


def _frac(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {tok!r}") from exc


def _int(tok: str) -> int:
    try:
        return int(tok)
    except ValueError as exc:
        raise ParseError(f"bad integer {tok!r}") from exc


def parse_letter(line: str):
    parts = line.split(None, 1)
    kind = parts[0]
    rest = parts[1] if len(parts) > 1 else ""
    toks = rest.split()
    try:
        if kind == "aff":
            if len(toks) != 6:
                raise ParseError("aff needs 6 numbers")
            v = [_frac(t) for t in toks]
            return AffineGen(((v[0], v[1]), (v[2], v[3])), (v[4], v[5]))
        if kind == "tri":
            c, poly = rest.split(None, 1)
            return TriangularGen(_frac(c), UniPoly.from_bipoly(parse(poly), "x"))
        if kind == "h":
            m, poly = rest.split(None, 1)
            return Hgen(_int(m), UniPoly.from_bipoly(parse(poly), "y"))
        if kind == "g":
            if len(toks) != 4:
                raise ParseError("g needs 4 integers")
            return Ggen(MatM(*[_int(t) for t in toks]))
        if kind == "v":
            return Vgen(UniPoly.from_bipoly(parse(rest), "x"))
        if kind == "sacstd":
            if len(toks) != 1:
                raise ParseError("sacstd needs one variant")
            return SacStd(_int(toks[0]))
        if kind == "sacat":
            if len(toks) != 5:
                raise ParseError("sacat needs 5 numbers")
            v = [_frac(t) for t in toks]
            return SacAt(Line(v[0], v[1], v[2]), (v[3], v[4]))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"{line!r}: {exc}") from exc
    raise ParseError(f"unknown letter {kind!r}")


def parse_word(text: str) -> GenWord:
    letters = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            letters.append(parse_letter(line))
    return GenWord(letters)


def serialize_word(w) -> str:
    return "".join(g.to_text() + "\n" for g in w)
