"""Polynomial endomorphisms of the plane and their intrinsic invariants.

An endomorphism is a pair ``(px, qy)`` of ``BiPoly`` read as the map
``(x, y) -> (px(x, y), qy(x, y))``.  Composition follows the usual
``compose(g, f) = g o f`` convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .bipoly import (
    ONE,
    X,
    Y,
    ZERO,
    BiPoly,
    UniPoly,
    divides,
    exact_div,
    factor,
    gcd,
    parse,
    remainder,
    substitute,
)
from .errors import (
    IrrationalData,
    NotBirational,
    ParseError,
    PreconditionError,
    Unresolved,
)

DEFAULT_POINT_SEARCH = 50


def _rat(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def fmt_rat(v: Fraction) -> str:
    return str(v)


# ---------------------------------------------------------------------------
# lines


@dataclass(frozen=True, order=False)
class Line:
    """The line Z(a*X + b*Y + c), first nonzero of (a, b) equal to 1."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __init__(self, a, b, c):
        a, b, c = _rat(a), _rat(b), _rat(c)
        if a == 0 and b == 0:
            raise PreconditionError("a line needs (a, b) != (0, 0)")
        lead = a if a != 0 else b
        object.__setattr__(self, "a", a / lead)
        object.__setattr__(self, "b", b / lead)
        object.__setattr__(self, "c", c / lead)
        object.__setattr__(self, "_hash", hash((self.a, self.b, self.c)))

    def __hash__(self):
        return self._hash

    @classmethod
    def from_poly(cls, f: BiPoly) -> Line:
        if f.deg != 1:
            raise PreconditionError(f"{f} is not of degree 1")
        return cls(f.coeff(1, 0), f.coeff(0, 1), f.coeff(0, 0))

    @classmethod
    def parse(cls, text: str) -> Line:
        return cls.from_poly(parse(text))

    @classmethod
    def through(cls, p, q) -> Line:
        (x1, y1), (x2, y2) = p, q
        if (x1, y1) == (x2, y2):
            raise PreconditionError("need two distinct points")
        a, b = y2 - y1, x1 - x2
        return cls(a, b, -(a * x1 + b * y1))

    @property
    def poly(self) -> BiPoly:
        return BiPoly({(1, 0): self.a, (0, 1): self.b, (0, 0): self.c})

    @property
    def direction(self):
        return (self.a, self.b)

    def contains(self, pt) -> bool:
        return self.a * pt[0] + self.b * pt[1] + self.c == 0

    def sort_key(self):
        return (self.a, self.b, self.c)

    def to_json(self):
        return {"a": fmt_rat(self.a), "b": fmt_rat(self.b), "c": fmt_rat(self.c)}

    def __str__(self):
        return str(self.poly)


def fmt_point(p):
    return [fmt_rat(p[0]), fmt_rat(p[1])]


# ---------------------------------------------------------------------------
# endomorphisms


class PlaneEndo:
    """The map (x, y) -> (px, qy)."""

    __slots__ = ("px", "qy", "_jac")

    def __init__(self, px, qy, check: bool = True):
        self.px = px if isinstance(px, BiPoly) else BiPoly.const(px)
        self.qy = qy if isinstance(qy, BiPoly) else BiPoly.const(qy)
        self._jac = None
        if check:
            if self.px.is_const() and self.qy.is_const():
                raise PreconditionError("constant map")
            if self.jacobian().is_zero():
                raise PreconditionError("Jacobian determinant is identically zero")

    @classmethod
    def identity(cls) -> PlaneEndo:
        return cls(X, Y, check=False)

    @classmethod
    def parse(cls, text: str) -> PlaneEndo:
        parts = text.split(";")
        if len(parts) != 2:
            raise ParseError("expected 'P ; Q'")
        return cls(parse(parts[0]), parse(parts[1]))

    @property
    def degree(self) -> int:
        return int(max(self.px.deg, self.qy.deg))

    def jacobian(self) -> BiPoly:
        if self._jac is None:
            p, q = self.px, self.qy
            self._jac = p.diff_x() * q.diff_y() - p.diff_y() * q.diff_x()
        return self._jac

    def __call__(self, pt):
        a, b = _rat(pt[0]), _rat(pt[1])
        return (self.px.evaluate(a, b), self.qy.evaluate(a, b))

    def pullback(self, F: BiPoly) -> BiPoly:
        """F o self."""
        return substitute(F, self.px, self.qy)

    def __eq__(self, other):
        if not isinstance(other, PlaneEndo):
            return NotImplemented
        return self.px == other.px and self.qy == other.qy

    def __hash__(self):
        return hash((self.px, self.qy))

    def __str__(self):
        return f"{self.px} ; {self.qy}"

    def __repr__(self):
        return f"PlaneEndo({str(self)!r})"


def compose(g: PlaneEndo, f: PlaneEndo) -> PlaneEndo:
    """g o f."""
    return PlaneEndo(f.pullback(g.px), f.pullback(g.qy), check=False)


def compose_all(*maps: PlaneEndo) -> PlaneEndo:
    out = maps[-1]
    for g in reversed(maps[:-1]):
        out = compose(g, out)
    return out


def jacobian(f: PlaneEndo) -> BiPoly:
    return f.jacobian()


def _jac2(u: BiPoly, F: BiPoly) -> BiPoly:
    return u.diff_x() * F.diff_y() - u.diff_y() * F.diff_x()


# ---------------------------------------------------------------------------
# contracting curves


@dataclass(frozen=True)
class CurveFactor:
    equation: BiPoly
    multiplicity: int
    is_line: bool
    image_point: tuple | None

    def to_json(self):
        return {
            "factor": str(self.equation),
            "multiplicity_in_jacobian": self.multiplicity,
            "image_point": fmt_point(self.image_point) if self.image_point else None,
        }


@dataclass(frozen=True)
class Contraction:
    jacobian: BiPoly
    curves: tuple
    non_contracted: tuple

    @property
    def equations(self):
        return [cf.equation for cf in self.curves]

    def __iter__(self):
        return iter(self.curves)

    def __len__(self):
        return len(self.curves)


def parametrize_line(F: BiPoly):
    """(sx, sy) polynomials in the parameter x tracing the line Z(F)."""
    a, b, c = F.coeff(1, 0), F.coeff(0, 1), F.coeff(0, 0)
    if b != 0:
        return X, (X.scale(-a) - c) / b
    return BiPoly.const(-c / a), X


def _scan_order(n: int):
    yield 0
    for k in range(1, n + 1):
        yield k
        yield -k


def rational_point(F: BiPoly, max_point_search: int = DEFAULT_POINT_SEARCH):
    """Some rational point on Z(F), scanning x in -N..N; None if none found."""
    if F.deg == 1:
        sx, sy = parametrize_line(F)
        return (sx.evaluate(0, 0), sy.evaluate(0, 0))
    for x0 in _scan_order(max_point_search):
        g = substitute(F, BiPoly.const(x0), X)
        if g.is_zero():
            return (Fraction(x0), Fraction(0))
        roots = UniPoly.from_bipoly(g, "x").rational_roots()
        if roots:
            return (Fraction(x0), roots[0])
    return None


def image_point(f: PlaneEndo, F: BiPoly, max_point_search: int = DEFAULT_POINT_SEARCH):
    """f(Z(F)) if it is a point, else None."""
    if not (divides(F, _jac2(f.px, F)) and divides(F, _jac2(f.qy, F))):
        return None
    if F.deg == 1:
        sx, sy = parametrize_line(F)
        u, v = substitute(f.px, sx, sy), substitute(f.qy, sx, sy)
        return (u.const_value(), v.const_value())
    # normal forms modulo F are the constant coordinates of the image
    ra, rb = remainder(f.px, F), remainder(f.qy, F)
    if ra.is_const() and rb.is_const():
        return (ra.const_value(), rb.const_value())
    pt = rational_point(F, max_point_search)
    if pt is None:
        raise IrrationalData(f"no rational point found on {F}")
    a, b = f(pt)
    if not (divides(F, f.px - a) and divides(F, f.qy - b)):
        raise AssertionError(f"contracted curve {F} failed the image check")
    return (a, b)


def contracting_curves(f: PlaneEndo, max_point_search: int = DEFAULT_POINT_SEARCH) -> Contraction:
    J = f.jacobian()
    if J.is_zero():
        raise PreconditionError("Jacobian determinant is identically zero")
    if J.is_const():
        return Contraction(J, (), ())
    _, facs, unresolved = factor(J)
    if unresolved:
        raise Unresolved(f"Jacobian {J} has factors outside the supported class")
    curves, others = [], []
    for F, k in facs:
        pt = image_point(f, F, max_point_search)
        if pt is None:
            others.append(F)
        else:
            curves.append(CurveFactor(F, k, F.deg == 1, pt))
    return Contraction(J, tuple(curves), tuple(others))


def _birational_contraction(f, max_point_search=DEFAULT_POINT_SEARCH) -> Contraction:
    con = contracting_curves(f, max_point_search)
    if con.non_contracted:
        raise NotBirational(
            "non-contracted Jacobian factor(s): " + ", ".join(map(str, con.non_contracted))
        )
    return con


def fundamental_points(f: PlaneEndo, max_point_search: int = DEFAULT_POINT_SEARCH) -> frozenset:
    con = _birational_contraction(f, max_point_search)
    return frozenset(cf.image_point for cf in con.curves)


# ---------------------------------------------------------------------------
# missing lines


@dataclass(frozen=True)
class MissingLines:
    lines: tuple
    c: int
    exponents: dict = field(default_factory=dict, compare=False)

    @property
    def q(self) -> int:
        return len(self.lines)

    @property
    def all_missing_are_lines(self) -> bool:
        return len(self.lines) == self.c

    def __iter__(self):
        return iter(self.lines)

    def __len__(self):
        return len(self.lines)

    def as_set(self):
        return frozenset(self.lines)


def _factor_exponents(G: BiPoly, factors):
    """Exponent vector e with G = lambda * prod factors^e, else None."""
    if G.is_zero():
        return None
    exps = []
    for F in factors:
        k = 0
        while not G.is_const() and divides(F, G):
            G = exact_div(G, F)
            k += 1
        exps.append(k)
    return tuple(exps) if G.is_const() else None


def _proportional(u: BiPoly, v: BiPoly):
    """(a, b) != 0 with a*u + b*v = 0, or None."""
    if u.is_zero() and v.is_zero():
        return None
    if v.is_zero():
        return (Fraction(0), Fraction(1))
    if u.is_zero():
        return (Fraction(1), Fraction(0))
    e, cv = v.leading()
    cu = u.coeff(*e)
    if cu == 0:
        return None
    k = cu / cv
    if u != v.scale(k):
        return None
    return (Fraction(1), -k)


def _candidate_lines(f: PlaneEndo, con: Contraction):
    pts = sorted({cf.image_point for cf in con.curves})
    out = set()
    for p, q in combinations(pts, 2):
        out.add(Line.through(p, q))
    for p in pts:
        U, V = f.px - p[0], f.qy - p[1]
        g = gcd(U, V)
        U1, V1 = exact_div(U, g), exact_div(V, g)
        dirs = []
        for cf in con.curves:
            if cf.image_point != p:
                continue
            F = cf.equation
            dirs.append(_proportional(remainder(U1, F), remainder(V1, F)))
        nc = lambda h: h - h.coeff(0, 0)
        dirs.append(_proportional(nc(U1), nc(V1)))
        for d in dirs:
            if d is not None:
                a, b = d
                out.add(Line(a, b, -(a * p[0] + b * p[1])))
    return out


def missing_lines(f: PlaneEndo, max_point_search: int = DEFAULT_POINT_SEARCH) -> MissingLines:
    """Degree-one missing curves of a birational f.

    A line Z(l) is missing exactly when l o f is a nonzero constant times a
    product of contracting-curve equations.  Candidates are the lines
    through two fundamental points together with, for each fundamental
    point p, the finitely many lines through p along which some
    contracting curve over p, or the constant term, forces a relation;
    each candidate is then checked against the product criterion.
    """
    con = _birational_contraction(f, max_point_search)
    eqs = con.equations
    found = {}
    for line in _candidate_lines(f, con):
        lf = f.px.scale(line.a) + f.qy.scale(line.b) + line.c
        e = _factor_exponents(lf, eqs)
        if e is not None:
            found[line] = e
    lines = tuple(sorted(found, key=Line.sort_key))
    return MissingLines(lines, len(eqs), {ln: found[ln] for ln in lines})


def _exponent_vectors(degs, budget):
    if not degs:
        yield ()
        return
    d0, rest = degs[0], degs[1:]
    for e in range(budget // d0 + 1):
        for tail in _exponent_vectors(rest, budget - e * d0):
            yield (e,) + tail


def nullspace(columns):
    """Rational nullspace basis of the matrix whose columns are given as
    dicts (row key -> value)."""
    rows = sorted({r for col in columns for r in col}, key=repr)
    m = [[col.get(r, Fraction(0)) for col in columns] for r in rows]
    ncols = len(columns)
    pivots = []
    r = 0
    for cidx in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][cidx] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][cidx]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][cidx] != 0:
                fac = m[i][cidx]
                m[i] = [a - fac * b for a, b in zip(m[i], m[r])]
        pivots.append(cidx)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(vec)
    return basis


def missing_lines_enumerative(f: PlaneEndo, max_point_search: int = DEFAULT_POINT_SEARCH) -> MissingLines:
    """Missing lines by exhaustive exponent enumeration.

    For every exponent vector with sum e_i * deg F_i <= degree(f), solve
    a*px + b*qy + c = lambda * prod F_i^e_i for (a, b, c, lambda).
    Exponential in the number of contracting curves; used as an oracle.
    """
    con = _birational_contraction(f, max_point_search)
    eqs = con.equations
    degs = [int(F.deg) for F in eqs]
    found = {}
    cols = [f.px.terms, f.qy.terms, {(0, 0): Fraction(1)}]
    for e in _exponent_vectors(degs, f.degree):
        if not any(e):
            continue
        T = ONE
        for F, k in zip(eqs, e):
            if k:
                T = T * F**k
        for vec in nullspace(cols + [(-T).terms]):
            a, b, c, lam = vec
            if lam != 0 and (a, b) != (0, 0):
                found[Line(a, b, c)] = e
    lines = tuple(sorted(found, key=Line.sort_key))
    return MissingLines(lines, len(eqs), {ln: found[ln] for ln in lines})


# ---------------------------------------------------------------------------
# automorphism factors


def _mat_det(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


@dataclass(frozen=True)
class Affine:
    """(x, y) -> (a11 x + a12 y + t1, a21 x + a22 y + t2)."""

    matrix: tuple
    translation: tuple = (Fraction(0), Fraction(0))

    def __post_init__(self):
        m = tuple(tuple(_rat(v) for v in row) for row in self.matrix)
        t = tuple(_rat(v) for v in self.translation)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "translation", t)
        if _mat_det(m) == 0:
            raise PreconditionError("affine map with singular linear part")

    n = 0
    is_automorphism = True

    @classmethod
    def identity(cls):
        return cls(((1, 0), (0, 1)))

    @classmethod
    def swap(cls):
        return cls(((0, 1), (1, 0)))

    @classmethod
    def from_endo(cls, f: PlaneEndo) -> Affine:
        p, q = f.px, f.qy
        if p.deg > 1 or q.deg > 1:
            raise PreconditionError(f"{f} is not affine")
        return cls(
            ((p.coeff(1, 0), p.coeff(0, 1)), (q.coeff(1, 0), q.coeff(0, 1))),
            (p.coeff(0, 0), q.coeff(0, 0)),
        )

    def to_endo(self) -> PlaneEndo:
        (a, b), (c, d) = self.matrix
        t1, t2 = self.translation
        return PlaneEndo(
            BiPoly({(1, 0): a, (0, 1): b, (0, 0): t1}),
            BiPoly({(1, 0): c, (0, 1): d, (0, 0): t2}),
            check=False,
        )

    def inverse(self) -> Affine:
        (a, b), (c, d) = self.matrix
        det = _mat_det(self.matrix)
        inv = ((d / det, -b / det), (-c / det, a / det))
        t1, t2 = self.translation
        return Affine(inv, (-(inv[0][0] * t1 + inv[0][1] * t2), -(inv[1][0] * t1 + inv[1][1] * t2)))

    def then(self, other: Affine) -> Affine:
        """other o self."""
        return Affine.from_endo(compose(other.to_endo(), self.to_endo()))

    def apply(self, pt):
        (a, b), (c, d) = self.matrix
        return (a * pt[0] + b * pt[1] + self.translation[0], c * pt[0] + d * pt[1] + self.translation[1])


@dataclass(frozen=True)
class Triangular:
    """(x, y) -> (x, c*y + r(x)) with c != 0."""

    c: Fraction
    r: UniPoly

    def __post_init__(self):
        object.__setattr__(self, "c", _rat(self.c))
        if self.c == 0:
            raise PreconditionError("triangular map needs c != 0")
        if not isinstance(self.r, UniPoly):
            object.__setattr__(self, "r", UniPoly.from_bipoly(self.r, "x"))

    n = 0
    is_automorphism = True

    def to_endo(self) -> PlaneEndo:
        return PlaneEndo(X, Y.scale(self.c) + self.r.to_bipoly("x"), check=False)

    def inverse(self) -> Triangular:
        return Triangular(1 / self.c, -self.r * UniPoly([1 / self.c]))


def word_endo(word) -> PlaneEndo:
    if not word:
        return PlaneEndo.identity()
    return compose_all(*[g.to_endo() for g in word])


# ---------------------------------------------------------------------------
# automorphism verification


@dataclass(frozen=True)
class AutVerdict:
    ok: bool
    word: tuple = ()
    stage: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def _merge_affine(word):
    out = []
    for g in word:
        if out and isinstance(g, Affine) and isinstance(out[-1], Affine):
            out[-1] = g.then(out[-1])
        else:
            out.append(g)
    return [g for g in out if not (isinstance(g, Affine) and g == Affine.identity())]


def verify_automorphism(f: PlaneEndo) -> AutVerdict:
    """Degree reduction by elementary maps until an affine map remains.

    On success the word (leftmost applied last) composes exactly to f.
    """
    P, Q = f.px, f.qy
    # After reductions t_1, ..., t_k we reach an affine A with
    # t_k o ... o t_1 o f = A, so f = t_1^-1 o ... o t_k^-1 o A.
    inverses = []
    for _ in range(10_000):
        dP, dQ = P.deg, Q.deg
        if dP < 1 or dQ < 1:
            return AutVerdict(False, stage="constant-component", detail=f"{P} ; {Q}")
        if dP == 1 and dQ == 1:
            a = ((P.coeff(1, 0), P.coeff(0, 1)), (Q.coeff(1, 0), Q.coeff(0, 1)))
            if _mat_det(a) == 0:
                return AutVerdict(False, stage="affine-singular", detail=f"{P} ; {Q}")
            final = Affine(a, (P.coeff(0, 0), Q.coeff(0, 0)))
            word = _merge_affine(inverses + [final])
            if word_endo(word) != f:
                raise AssertionError("automorphism decomposition failed to recompose")
            return AutVerdict(True, tuple(word))
        hi, lo, swapped = (P, Q, False) if dP >= dQ else (Q, P, True)
        d, e = int(hi.deg), int(lo.deg)
        if d % e:
            return AutVerdict(False, stage="leading-form", detail=f"degrees {int(dP)}, {int(dQ)}")
        k = d // e
        top_hi, top_lo = hi.homogeneous_part(d), lo.homogeneous_part(e) ** k
        c = top_hi.lc() / top_lo.lc()
        if top_hi != top_lo.scale(c):
            return AutVerdict(
                False,
                stage="leading-form",
                detail=f"leading forms {top_hi} and {lo.homogeneous_part(e)} are not power-related",
            )
        hi = hi - (lo**k).scale(c)
        if not swapped:
            P = hi
            if k == 1:
                inverses.append(Affine(((1, c), (0, 1))))
            else:
                sw = Affine.swap()
                inverses.extend([sw, Triangular(1, UniPoly([0] * k + [c])), sw])
        else:
            Q = hi
            if k == 1:
                inverses.append(Affine(((1, 0), (c, 1))))
            else:
                inverses.append(Triangular(1, UniPoly([0] * k + [c])))
    return AutVerdict(False, stage="iteration-limit")


def is_automorphism(f: PlaneEndo) -> bool:
    return verify_automorphism(f).ok


# ---------------------------------------------------------------------------
# report


def report(f: PlaneEndo, max_point_search: int = DEFAULT_POINT_SEARCH) -> dict:
    con = contracting_curves(f, max_point_search)
    out = {
        "degree": f.degree,
        "jacobian": str(con.jacobian),
        "contracting": [cf.to_json() for cf in con.curves],
        "non_contracted": [str(F) for F in con.non_contracted],
    }
    if con.non_contracted:
        out.update({"missing_lines": None, "q": None, "c": len(con.curves), "all_missing_are_lines": None})
        return out
    ml = missing_lines(f, max_point_search)
    out.update(
        {
            "missing_lines": [ln.to_json() for ln in ml.lines],
            "q": ml.q,
            "c": ml.c,
            "all_missing_are_lines": ml.all_missing_are_lines,
        }
    )
    return out
