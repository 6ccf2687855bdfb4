"""Finite configurations of lines in the plane.

Covers admissibility (checked two independent ways), the four
configuration shapes realizable as missing sets with all curves lines,
rectification to a canonical position, and generator words realizing
each shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm

from .bipoly import ONE, X, Y, BiPoly, UniPoly, substitute
from .endo import Affine, Line, fmt_point, fmt_rat
from .errors import BadParams, MethodDisagreement, NotRealizable, ParseError, PreconditionError
from .genword import GenWord, SacStd, Vgen

TYPES = ("a", "b", "c", "d")


@dataclass(frozen=True)
class LineConfig:
    lines: frozenset

    def __init__(self, lines=()):
        lines = frozenset(ln if isinstance(ln, Line) else Line.from_poly(ln) for ln in lines)
        object.__setattr__(self, "lines", lines)

    @classmethod
    def parse(cls, text: str) -> LineConfig:
        parts = [p.strip() for p in text.split(";")]
        parts = [p for p in parts if p]
        try:
            lines = [Line.parse(p) for p in parts]
        except PreconditionError as exc:
            raise ParseError(str(exc)) from exc
        if len(set(lines)) != len(lines):
            raise ParseError("configuration lists the same line twice")
        return cls(lines)

    def sorted(self):
        return sorted(self.lines, key=Line.sort_key)

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.sorted())

    def __str__(self):
        return "; ".join(str(ln) for ln in self.sorted())


def _meet(l1: Line, l2: Line):
    det = l1.a * l2.b - l1.b * l2.a
    if det == 0:
        return None
    x = (l1.b * l2.c - l2.b * l1.c) / det
    y = (l2.a * l1.c - l1.a * l2.c) / det
    return (x, y)


def direction_classes(cfg: LineConfig):
    classes = {}
    for ln in cfg.sorted():
        classes.setdefault(ln.direction, []).append(ln)
    return sorted(classes.values(), key=lambda c: (-len(c), c[0].sort_key()))


@lru_cache(maxsize=4096)
def _int_form(ln: Line):
    """(a, b, c) scaled to coprime integers."""
    den = lcm(ln.a.denominator, ln.b.denominator, ln.c.denominator)
    return int(ln.a * den), int(ln.b * den), int(ln.c * den)


def _admissible_by_definition(cfg: LineConfig) -> bool:
    forms = [_int_form(ln) for ln in cfg.sorted()]
    n = len(forms)
    crossing = {
        (i, j): forms[i][0] * forms[j][1] != forms[i][1] * forms[j][0]
        for i, j in combinations(range(n), 2)
    }
    # simple normal crossings: no point on three lines.  With lines i, j
    # crossing, k passes through their meet iff the 3x3 determinant vanishes.
    for i, j, k in combinations(range(n), 3):
        if not crossing[i, j]:
            continue
        (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = forms[i], forms[j], forms[k]
        det = a1 * (b2 * c3 - b3 * c2) - b1 * (a2 * c3 - a3 * c2) + c1 * (a2 * b3 - a3 * b2)
        if det == 0:
            return False
    # the dual graph (one edge per crossing) must be a forest
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (i, j), crosses in crossing.items():
        if not crosses:
            continue
        ri, rj = find(i), find(j)
        if ri == rj:
            return False
        parent[ri] = rj
    return True


def _admissible_by_shape(cfg: LineConfig) -> bool:
    sizes = sorted(len(c) for c in direction_classes(cfg))
    return len(sizes) <= 1 or (len(sizes) == 2 and sizes[0] == 1)


def is_admissible(cfg: LineConfig) -> bool:
    one = _admissible_by_definition(cfg)
    two = _admissible_by_shape(cfg)
    if one != two:
        raise MethodDisagreement(f"admissibility methods disagree on {cfg}")
    return one


def concurrency_point(lines):
    """Common point of all given lines, or None."""
    lines = list(lines)
    if len(lines) < 2:
        return None
    p = _meet(lines[0], lines[1])
    if p is None or not all(ln.contains(p) for ln in lines):
        return None
    return p


def _split_d(cfg: LineConfig):
    """(L0, concurrent lines, point) for a type-d configuration, else None."""
    lines = cfg.sorted()
    if len(lines) < 4:
        return None
    for L0 in lines:
        rest = [ln for ln in lines if ln != L0]
        p = concurrency_point(rest)
        if p is None or L0.contains(p):
            continue
        if any(ln.direction == L0.direction for ln in rest):
            return L0, rest, p
    return None


@dataclass(frozen=True)
class ConfigClass:
    admissible: bool
    corollary_type: str
    directions: tuple
    point: tuple | None
    params: tuple
    weakly_admissible: bool = True

    def to_json(self):
        return {
            "weakly_admissible": self.weakly_admissible,
            "admissible": self.admissible,
            "corollary_type": self.corollary_type,
            "directions": [[str(ln) for ln in cls] for cls in self.directions],
            "concurrency_point": None if self.point is None else fmt_point(self.point),
            "canonical_params": [fmt_rat(c) for c in self.params],
        }


def _shape(cfg: LineConfig):
    classes = direction_classes(cfg)
    if len(classes) <= 1:
        return "a", None
    if len(classes) == 2 and len(classes[1]) == 1:
        return "b", None
    if len(cfg) >= 3:
        p = concurrency_point(cfg.lines)
        if p is not None:
            return "c", p
    split = _split_d(cfg)
    if split is not None:
        return "d", split[2]
    return "none", None


def classify_corollary(cfg: LineConfig) -> ConfigClass:
    admissible = is_admissible(cfg)
    kind, point = _shape(cfg)
    params = ()
    if kind != "none":
        params = tuple(rectify(cfg)[2])
    if (kind in ("a", "b")) != admissible:
        raise MethodDisagreement(f"shape {kind} inconsistent with admissibility for {cfg}")
    return ConfigClass(admissible, kind, tuple(tuple(c) for c in direction_classes(cfg)), point, params)


# ---------------------------------------------------------------------------
# rectification


def normalize_params(values):
    """Canonical representative of a finite set of rationals up to t -> lam*t + mu.

    Returns (params, lam, mu) with params = sorted(lam*v + mu).  The
    smallest value goes to 0 and the next one to 1; of the two
    orientations the lexicographically smaller result is kept.
    """
    vals = sorted(set(values))
    if not vals:
        return (), Fraction(1), Fraction(0)
    if len(vals) == 1:
        return (Fraction(0),), Fraction(1), -vals[0]
    best = None
    for sign in (1, -1):
        vs = sorted(sign * v for v in vals)
        lam = Fraction(sign) / (vs[1] - vs[0])
        mu = -vs[0] / (vs[1] - vs[0])
        out = tuple(sorted(lam * v + mu for v in vals))
        if best is None or out < best[0]:
            best = (out, lam, mu)
    return best


def _form(ln: Line):
    return (ln.a, ln.b, ln.c)


def _coords(u, w, l):
    """(alpha, beta) with linear part of l = alpha*u + beta*w (linear parts only)."""
    det = u[0] * w[1] - u[1] * w[0]
    alpha = (l[0] * w[1] - l[1] * w[0]) / det
    beta = (u[0] * l[1] - u[1] * l[0]) / det
    return alpha, beta


def _affine_from_forms(fx, fy) -> Affine:
    return Affine(((fx[0], fx[1]), (fy[0], fy[1])), (fx[2], fy[2]))


def canonical_lines(kind: str, params):
    cs = [Fraction(c) for c in params]
    if kind == "a":
        return [X - c for c in cs]
    if kind == "b":
        return [Y] + [X - c for c in cs]
    if kind == "c":
        return [Y] + [X - Y.scale(c) for c in cs]
    if kind == "d":
        return [Y, Y - 1] + [X - Y.scale(c) for c in cs]
    raise NotRealizable(f"no canonical form for type {kind}")


def canonical_equation(kind: str, params) -> BiPoly:
    out = ONE
    for F in canonical_lines(kind, params):
        out = out * F
    return out


def image_config(A: Affine, cfg: LineConfig) -> LineConfig:
    inv = A.inverse().to_endo()
    return LineConfig(Line.from_poly(substitute(ln.poly, inv.px, inv.qy)) for ln in cfg.sorted())


def _other_form(u):
    return (Fraction(0), Fraction(1), Fraction(0)) if u[0] != 0 else (Fraction(1), Fraction(0), Fraction(0))


def _rectify_parallel(lines, fy=None):
    # every line is u + c_i with a shared linear part u
    u = (lines[0].a, lines[0].b, Fraction(0))
    _, lam, mu = normalize_params([-ln.c for ln in lines])
    fx = (lam * u[0], lam * u[1], mu)
    if fy is None:
        fy = _other_form(u)
    params = sorted(lam * -ln.c + mu for ln in lines)
    return fx, fy, params


def _rectify_pencil(y_line: Line, others, fy):
    # forms through a common point; write each as alpha*X0 + beta*Y'
    base = others[0]
    x0 = _form(base)
    cs = []
    for ln in others:
        alpha, beta = _coords(x0, fy, _form(ln))
        cs.append(-beta / alpha)
    params, lam, mu = normalize_params(cs)
    fx = tuple(lam * x0[i] + mu * fy[i] for i in range(3))
    return fx, list(params)


def rectify(cfg: LineConfig):
    """(A, canonical equation, params) with A mapping cfg to canonical position."""
    kind, _ = _shape(cfg)
    lines = cfg.sorted()
    if kind == "none":
        raise NotRealizable(f"{cfg} is not one of the realizable shapes")
    if kind == "a":
        if not lines:
            A, params = Affine.identity(), []
        else:
            fx, fy, params = _rectify_parallel(lines)
            A = _affine_from_forms(fx, fy)
    elif kind == "b":
        classes = direction_classes(cfg)
        par, (L0,) = classes[0], classes[1]
        if len(par) == 1 and par[0].a == 0:
            # two crossing lines: keep a horizontal one as L0
            par, L0 = [L0], par[0]
        fx, fy, params = _rectify_parallel(par, _form(L0))
        A = _affine_from_forms(fx, fy)
    elif kind == "c":
        best = None
        for y_line in lines:
            others = [ln for ln in lines if ln != y_line]
            fy = _form(y_line)
            fx, params = _rectify_pencil(y_line, others, fy)
            key = tuple(params)
            if best is None or key < best[0]:
                best = (key, fx, fy)
        params, fx, fy = list(best[0]), best[1], best[2]
        A = _affine_from_forms(fx, fy)
    else:
        L0, rest, _ = _split_d(cfg)
        L1 = next(ln for ln in rest if ln.direction == L0.direction)
        k = L1.c - L0.c
        fy = (L1.a / k, L1.b / k, L1.c / k)
        others = [ln for ln in rest if ln != L1]
        fx, params = _rectify_pencil(L1, others, fy)
        A = _affine_from_forms(fx, fy)
    target = LineConfig(canonical_lines(kind, params))
    if image_config(A, cfg) != target:
        raise AssertionError(f"rectification of {cfg} failed to verify")
    return A, canonical_equation(kind, params), list(params)


# ---------------------------------------------------------------------------
# examples


def _phi(params) -> UniPoly:
    out = UniPoly([1])
    for c in params:
        out = out * UniPoly([-Fraction(c), 1])
    return out


def generate_example(kind: str, params) -> GenWord:
    """A generator word whose missing set is the canonical configuration.

    For types a and b the params are the vertical lines X = c; for c and d
    they are the slopes of the lines X = c*Y besides Y itself, so a pencil
    of s lines takes s - 1 params.
    """
    cs = [Fraction(c) for c in params]
    if len(set(cs)) != len(cs):
        raise BadParams("params must be distinct")
    need = {"a": 0, "b": 1, "c": 2, "d": 2}
    if kind not in need:
        raise BadParams(f"unknown configuration type {kind!r}")
    if len(cs) < need[kind]:
        raise BadParams(f"type {kind} needs at least {need[kind]} params")
    v = Vgen(_phi(cs))
    if kind == "a":
        return GenWord([v])
    if kind == "b":
        return GenWord([v, SacStd(1)])
    if kind == "c":
        return GenWord([SacStd(1), v])
    return GenWord([SacStd(2), v, SacStd(1)])
