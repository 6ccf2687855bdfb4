"""Sparse bivariate polynomials over the rationals.

A ``BiPoly`` is an immutable map from exponent pairs ``(i, j)`` (meaning
``x^i * y^j``) to nonzero ``Fraction`` coefficients.  ``UniPoly`` is a dense
univariate companion used for coefficient rings and for the polynomials
``phi(x)``, ``p(y)``, ``r(x)`` that parametrize generators.

Leading terms and monic normalization use graded lexicographic order with
``x > y``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import product

from .errors import NotDivisible, ParseError

NEG_INF = float("-inf")


def _rat(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"not a rational: {c!r}")


# ---------------------------------------------------------------------------
# univariate


class UniPoly:
    """Dense univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def from_roots(cls, roots, lead=1):
        p = cls([lead])
        for r in roots:
            p = p * cls([-_rat(r), 1])
        return p

    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def __repr__(self):
        return f"UniPoly({self.to_bipoly('x')})"

    def __add__(self, other):
        other = _uni(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly([u + v for u, v in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_uni(other))

    def __rsub__(self, other):
        return _uni(other) - self

    def __mul__(self, other):
        other = _uni(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result, base = UniPoly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def divmod(self, other: UniPoly):
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        q = [Fraction(0)] * (dq + 1)
        lc = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = r[k + len(other.coeffs) - 1] / lc
            q[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    r[k + i] -= c * b
        return UniPoly(q), UniPoly(r)

    def __floordiv__(self, other):
        q, r = self.divmod(_uni(other))
        if not r.is_zero():
            raise NotDivisible(f"{other!r} does not divide {self!r}")
        return q

    def __mod__(self, other):
        return self.divmod(_uni(other))[1]

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return UniPoly([c / lc for c in self.coeffs])

    def deriv(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def to_bipoly(self, var: str = "x") -> BiPoly:
        if var == "x":
            return BiPoly({(i, 0): c for i, c in enumerate(self.coeffs)})
        if var == "y":
            return BiPoly({(0, i): c for i, c in enumerate(self.coeffs)})
        raise ValueError(var)

    @classmethod
    def from_bipoly(cls, f: BiPoly, var: str = "x") -> UniPoly:
        k = 0 if var == "x" else 1
        if any(e[1 - k] for e in f.terms):
            raise ValueError(f"{f} is not a polynomial in {var} alone")
        d = int(f.deg) if not f.is_zero() else -1
        cs = [Fraction(0)] * (d + 1)
        for e, c in f.terms.items():
            cs[e[k]] = c
        return cls(cs)

    def rational_roots(self):
        """Distinct rational roots, ascending."""
        return sorted(_rational_roots(self))

    def sqrt(self):
        """Exact square root, or None if self is not a square in Q[t]."""
        return _uni_sqrt(self)


def _uni(c) -> UniPoly:
    return c if isinstance(c, UniPoly) else UniPoly([c])


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _integer_coeffs(p: UniPoly):
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [v // g for v in ints] if g else ints


def _factorint(n: int) -> dict:
    n = abs(n)
    out: dict = {}
    d = 2
    while d * d <= n and d < 100000:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        if d * d > n:
            out[n] = out.get(n, 0) + 1
        else:
            from sympy import factorint

            for q, e in factorint(n).items():
                out[q] = out.get(q, 0) + e
    return out


def _divisors(n: int):
    divs = [1]
    for q, e in _factorint(n).items():
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return divs


def _rational_roots(p: UniPoly) -> set:
    if p.deg <= 0:
        return set()
    roots = set()
    cs = list(p.coeffs)
    while cs and cs[0] == 0:
        roots.add(Fraction(0))
        cs.pop(0)
    q = UniPoly(cs)
    if q.deg <= 0:
        return roots
    q = q // uni_gcd(q, q.deriv())
    if q.deg == 1:
        roots.add(-q.coeffs[0] / q.coeffs[1])
        return roots
    ints = _integer_coeffs(q)
    n = len(ints) - 1
    a0, an = ints[0], ints[-1]
    for u in _divisors(a0):
        for v in _divisors(an):
            if math.gcd(u, v) != 1:
                continue
            for su in (u, -u):
                # v^n q(su/v) with integers only
                acc, vp = 0, 1
                for c in reversed(ints):
                    acc = acc * su + c * vp
                    vp *= v
                if acc == 0:
                    roots.add(Fraction(su, v))
    return roots


def _frac_sqrt(c: Fraction):
    if c < 0:
        return None
    n, d = math.isqrt(c.numerator), math.isqrt(c.denominator)
    if n * n == c.numerator and d * d == c.denominator:
        return Fraction(n, d)
    return None


def _uni_sqrt(p: UniPoly):
    if p.is_zero():
        return UniPoly()
    if p.deg % 2:
        return None
    cs = p.coeffs
    k = 0
    while cs[k] == 0:
        k += 1
    if k % 2:
        return None
    core = UniPoly(cs[k:])
    lead = _frac_sqrt(core.lc())
    if lead is None:
        return None
    m = core.deg // 2
    # Solve for the root from the top coefficient downwards.
    r = [Fraction(0)] * (m + 1)
    r[m] = lead
    for t in range(1, m + 1):
        idx = 2 * m - t
        acc = core.coeffs[idx]
        for a in range(m - t + 1, m):
            b = idx - a
            if m - t < b <= m:
                acc -= r[a] * r[b]
        r[m - t] = acc / (2 * lead)
    root = UniPoly(r)
    if root * root != core:
        return None
    return UniPoly([0] * (k // 2) + list(root.coeffs))


# ---------------------------------------------------------------------------
# bivariate


def _grlex_key(e):
    return (e[0] + e[1], e[0])


class BiPoly:
    """Immutable sparse polynomial in x and y with rational coefficients."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for e, c in terms.items():
                c = _rat(c)
                if c:
                    t[(int(e[0]), int(e[1]))] = c
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t: dict) -> BiPoly:
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> BiPoly:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> BiPoly:
        return cls({(i, j): c})

    @classmethod
    def parse(cls, text: str) -> BiPoly:
        return parse(text)

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def is_zero(self) -> bool:
        return not self._t

    def is_const(self) -> bool:
        return not self._t or (len(self._t) == 1 and (0, 0) in self._t)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"{self} is not constant")
        return self._t.get((0, 0), Fraction(0))

    def coeff(self, i: int, j: int) -> Fraction:
        return self._t.get((i, j), Fraction(0))

    @property
    def deg(self):
        return max((i + j for i, j in self._t), default=NEG_INF)

    @property
    def deg_x(self):
        return max((i for i, _ in self._t), default=NEG_INF)

    @property
    def deg_y(self):
        return max((j for _, j in self._t), default=NEG_INF)

    def leading(self):
        """Leading (exponent, coefficient) under graded lex, x > y."""
        e = max(self._t, key=_grlex_key)
        return e, self._t[e]

    def lc(self) -> Fraction:
        return self.leading()[1] if self._t else Fraction(0)

    def monic(self) -> BiPoly:
        if not self._t:
            return self
        lc = self.lc()
        if lc == 1:
            return self
        return BiPoly._raw({e: c / lc for e, c in self._t.items()})

    def homogeneous_part(self, d: int) -> BiPoly:
        return BiPoly._raw({e: c for e, c in self._t.items() if e[0] + e[1] == d})

    def swap(self) -> BiPoly:
        return BiPoly._raw({(j, i): c for (i, j), c in self._t.items()})

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == BiPoly.const(other)._t
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def sort_key(self):
        """Deterministic total order: by degree then by grlex term list."""
        ts = sorted(self._t.items(), key=lambda it: _grlex_key(it[0]), reverse=True)
        return (self.deg if self._t else -1, [(_grlex_key(e), e, c) for e, c in ts])

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _bi(other)
        if other is None:
            return NotImplemented
        t = dict(self._t)
        for e, c in other._t.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return BiPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        other = _bi(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _bi(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = _bi(other)
        if other is None:
            return NotImplemented
        t: dict = {}
        for (i, j), a in self._t.items():
            for (k, l), b in other._t.items():
                e = (i + k, j + l)
                t[e] = t.get(e, 0) + a * b
        return BiPoly._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> BiPoly:
        c = _rat(c)
        if not c:
            return BiPoly()
        return BiPoly._raw({e: c * v for e, v in self._t.items()})

    def __pow__(self, n: int) -> BiPoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a natural number")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / _rat(other))
        return exact_div(self, other)

    def diff_x(self) -> BiPoly:
        return BiPoly._raw({(i - 1, j): i * c for (i, j), c in self._t.items() if i})

    def diff_y(self) -> BiPoly:
        return BiPoly._raw({(i, j - 1): j * c for (i, j), c in self._t.items() if j})

    def __call__(self, sx, sy):
        return substitute(self, sx, sy)

    def evaluate(self, a, b) -> Fraction:
        a, b = _rat(a), _rat(b)
        return sum((c * a**i * b**j for (i, j), c in self._t.items()), Fraction(0))

    # -- views -----------------------------------------------------------

    def y_coeffs(self) -> dict:
        """Map j -> UniPoly in x with self = sum_j coeff_j(x) * y^j."""
        by: dict = {}
        for (i, j), c in self._t.items():
            by.setdefault(j, {})[i] = c
        out = {}
        for j, d in by.items():
            cs = [Fraction(0)] * (max(d) + 1)
            for i, c in d.items():
                cs[i] = c
            out[j] = UniPoly(cs)
        return out

    @classmethod
    def from_y_coeffs(cls, coeffs: dict) -> BiPoly:
        t = {}
        for j, u in coeffs.items():
            for i, c in enumerate(u.coeffs):
                if c:
                    t[(i, j)] = c
        return cls._raw(t)

    def __repr__(self):
        return f"BiPoly({str(self)!r})"

    def __str__(self):
        return serialize(self)


def _bi(c):
    if isinstance(c, BiPoly):
        return c
    if isinstance(c, (int, Fraction)):
        return BiPoly.const(c)
    if isinstance(c, UniPoly):
        return c.to_bipoly("x")
    return None


ZERO = BiPoly()
ONE = BiPoly.const(1)
X = BiPoly.monomial(1, 0)
Y = BiPoly.monomial(0, 1)


# ---------------------------------------------------------------------------
# text form

_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, var, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif var is not None:
            out.append(("var", var))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        if self.take() != ("op", op):
            raise ParseError(f"expected {op!r}")

    def parse(self) -> BiPoly:
        if not self.toks:
            raise ParseError("empty polynomial")
        val = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at token {self.i}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.factor()
            if op == "*":
                val = val * rhs
            else:
                if not rhs.is_const() or rhs.is_zero():
                    raise ParseError("division only by nonzero constants")
                val = val.scale(1 / rhs.const_value())
        return val

    def factor(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.factor()
        if self.peek() == ("op", "+"):
            self.take()
            return self.factor()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a natural number")
            return base**val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return BiPoly.const(val)
        if kind == "var":
            return X if val == "x" else Y
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def parse(text: str) -> BiPoly:
    return _Parser(text).parse()


def _monomial_str(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


def serialize(f: BiPoly) -> str:
    if f.is_zero():
        return "0"
    out = []
    for e in sorted(f._t, key=_grlex_key, reverse=True):
        c = f._t[e]
        mono = _monomial_str(*e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


# ---------------------------------------------------------------------------
# substitution


def _powers(p: BiPoly, n: int):
    out = [ONE]
    for _ in range(n):
        out.append(out[-1] * p)
    return out


def substitute(f: BiPoly, sx: BiPoly, sy: BiPoly) -> BiPoly:
    """f(sx, sy), grouping by powers of x then expanding in y."""
    if f.is_zero():
        return ZERO
    sx, sy = _bi(sx), _bi(sy)
    by_i: dict = {}
    for (i, j), c in f._t.items():
        by_i.setdefault(i, {})[j] = c
    ypow = _powers(sy, int(f.deg_y))
    xpow = _powers(sx, int(f.deg_x))
    acc = ZERO
    for i, row in by_i.items():
        inner = ZERO
        for j, c in row.items():
            inner = inner + ypow[j].scale(c)
        acc = acc + xpow[i] * inner
    return acc


def laurent_substitute_y_over_x(f: BiPoly):
    """Return (N, k) with N = x^k * f(x, y/x) and k minimal."""
    if f.is_zero():
        return ZERO, 0
    k = max(0, max(j - i for i, j in f._t))
    return BiPoly._raw({(i - j + k, j): c for (i, j), c in f._t.items()}), k


def substitute_monomial(f: BiPoly, ex, ey):
    """f(x^a y^b, x^c y^d) for integer (possibly negative) exponent pairs.

    Returns (N, (u, v)) where N = x^u y^v * f(...) is a polynomial with
    u, v >= 0 minimal.
    """
    (a, b), (c, d) = ex, ey
    t: dict = {}
    for (i, j), v in f._t.items():
        e = (a * i + c * j, b * i + d * j)
        t[e] = t.get(e, 0) + v
    t = {e: v for e, v in t.items() if v}
    if not t:
        return ZERO, (0, 0)
    u = max(0, -min(e[0] for e in t))
    w = max(0, -min(e[1] for e in t))
    return BiPoly._raw({(e[0] + u, e[1] + w): v for e, v in t.items()}), (u, w)


# ---------------------------------------------------------------------------
# division and gcd


def exact_div(a: BiPoly, b: BiPoly) -> BiPoly:
    """Quotient q with a = q*b; raises NotDivisible otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if len(b._t) == 1:
        (bi, bj), bc = next(iter(b._t.items()))
        out = {}
        for (i, j), c in a._t.items():
            if i < bi or j < bj:
                raise NotDivisible(f"{b} does not divide {a}")
            out[(i - bi, j - bj)] = c / bc
        return BiPoly._raw(out)
    (li, lj), lc = b.leading()
    r = dict(a._t)
    q: dict = {}
    bt = list(b._t.items())
    while r:
        e = max(r, key=_grlex_key)
        c = r[e]
        if e[0] < li or e[1] < lj:
            raise NotDivisible(f"{b} does not divide {a}")
        s = (e[0] - li, e[1] - lj)
        m = c / lc
        q[s] = m
        for (i, j), v in bt:
            k = (i + s[0], j + s[1])
            nv = r.get(k, 0) - m * v
            if nv:
                r[k] = nv
            else:
                r.pop(k, None)
    return BiPoly._raw(q)


def divides(b: BiPoly, a: BiPoly) -> bool:
    try:
        exact_div(a, b)
    except NotDivisible:
        return False
    return True


def remainder(a: BiPoly, b: BiPoly) -> BiPoly:
    """Normal form of a modulo the principal ideal (b), grlex order."""
    (li, lj), lc = b.leading()
    r = dict(a._t)
    rem: dict = {}
    bt = list(b._t.items())
    while r:
        e = max(r, key=_grlex_key)
        c = r.pop(e)
        if e[0] < li or e[1] < lj:
            rem[e] = c
            continue
        s = (e[0] - li, e[1] - lj)
        m = c / lc
        for (i, j), v in bt:
            k = (i + s[0], j + s[1])
            if k == e:
                continue
            nv = r.get(k, 0) - m * v
            if nv:
                r[k] = nv
            else:
                r.pop(k, None)
    return BiPoly._raw(rem)


def content_y(f: BiPoly) -> UniPoly:
    """Monic gcd in Q[x] of the y-coefficients of f."""
    g = UniPoly()
    for u in f.y_coeffs().values():
        g = uni_gcd(g, u)
        if g.deg == 0:
            break
    return g


def content_x(f: BiPoly) -> UniPoly:
    """Monic gcd in Q[y] of the x-coefficients of f (as a polynomial in y)."""
    return content_y(f.swap())


def primitive_y(f: BiPoly) -> BiPoly:
    c = content_y(f)
    if c.deg <= 0:
        return f
    return exact_div(f, c.to_bipoly("x"))


def _prem_y(a: BiPoly, b: BiPoly) -> BiPoly:
    db = int(b.deg_y)
    cb = b.y_coeffs()
    lcb = cb[db].to_bipoly("x")
    r = a
    while not r.is_zero() and r.deg_y >= db:
        dr = int(r.deg_y)
        lcr = r.y_coeffs()[dr].to_bipoly("x")
        r = lcb * r - lcr * BiPoly.monomial(0, dr - db) * b
    return r


def _coprime_by_specialization(a: BiPoly, b: BiPoly) -> bool:
    """True if a(x0, y) and b(x0, y) are coprime for some x0 keeping both y-degrees.

    A common factor of positive y-degree would survive such a
    specialization, so True certifies that the y-primitive parts are coprime.
    """
    la = a.y_coeffs()[int(a.deg_y)]
    lb = b.y_coeffs()[int(b.deg_y)]
    for x0 in (0, 1, -1, 2, -2, 3):
        if la(x0) == 0 or lb(x0) == 0:
            continue
        ua = UniPoly.from_bipoly(substitute(a, BiPoly.const(x0), X), "x")
        ub = UniPoly.from_bipoly(substitute(b, BiPoly.const(x0), X), "x")
        return uni_gcd(ua, ub).deg == 0
    return False


def gcd(a: BiPoly, b: BiPoly) -> BiPoly:
    """Monic (graded-lex) greatest common divisor."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_const() or b.is_const():
        return ONE
    ca, cb = content_y(a), content_y(b)
    c = uni_gcd(ca, cb)
    pa = exact_div(a, ca.to_bipoly("x")) if ca.deg > 0 else a
    pb = exact_div(b, cb.to_bipoly("x")) if cb.deg > 0 else b
    g = ONE
    if pa.deg_y > 0 and pb.deg_y > 0 and not _coprime_by_specialization(pa, pb):
        if pa.deg_y < pb.deg_y:
            pa, pb = pb, pa
        while True:
            r = _prem_y(pa, pb)
            if r.is_zero():
                g = primitive_y(pb)
                break
            r = primitive_y(r)
            if r.deg_y == 0:
                break
            pa, pb = pb, r
    return (c.to_bipoly("x") * g).monic()


def resultant_y(a: BiPoly, b: BiPoly) -> BiPoly:
    """Sylvester resultant eliminating y (rows of a first, then rows of b)."""
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant of a zero polynomial")
    m, n = int(a.deg_y), int(b.deg_y)
    if m == 0 and n == 0:
        raise ValueError("at least one argument must involve y")
    ca = [c.to_bipoly("x") for c in _dense_y(a)]
    cb = [c.to_bipoly("x") for c in _dense_y(b)]
    size = m + n
    rows = []
    for r in range(n):
        row = [ZERO] * size
        for k, c in enumerate(reversed(ca)):
            row[r + k] = c
        rows.append(row)
    for r in range(m):
        row = [ZERO] * size
        for k, c in enumerate(reversed(cb)):
            row[r + k] = c
        rows.append(row)
    return _bareiss_det(rows)


def _dense_y(f: BiPoly):
    cs = f.y_coeffs()
    return [cs.get(j, UniPoly()) for j in range(int(f.deg_y) + 1)]


def _bareiss_det(rows) -> BiPoly:
    mat = [list(r) for r in rows]
    n = len(mat)
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if mat[k][k].is_zero():
            for r in range(k + 1, n):
                if not mat[r][k].is_zero():
                    mat[k], mat[r] = mat[r], mat[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]
                mat[i][j] = exact_div(num, prev)
        prev = mat[k][k]
    det = mat[n - 1][n - 1]
    return det if sign > 0 else -det


# ---------------------------------------------------------------------------
# factorization


def squarefree_factors(f: BiPoly):
    """Yun decomposition: returns (constant, [(factor, multiplicity), ...]).

    Factors are monic, pairwise coprime and squarefree; the product of
    factor^multiplicity times the constant equals f.
    """
    if f.is_zero() or f.is_const():
        raise ValueError("squarefree_factors needs a non-constant polynomial")
    out: dict = {}
    # x-only content, handled with the univariate Yun step.
    cont = content_y(f)
    prim = exact_div(f, cont.to_bipoly("x")) if cont.deg > 0 else f
    for fac, k in _uni_yun(cont):
        out[fac.to_bipoly("x")] = k
    if prim.deg_y > 0:
        for fac, k in _bi_yun(prim):
            out[fac] = out.get(fac, 0) + k
    factors = sorted(out.items(), key=lambda it: (it[1], it[0].sort_key()))
    prod = ONE
    for fac, k in factors:
        prod = prod * fac**k
    const = f.lc() / prod.lc()
    return const, factors


def _uni_yun(p: UniPoly):
    if p.deg <= 0:
        return []
    res = []
    a = p.monic()
    b = uni_gcd(a, a.deriv())
    c = a // b
    d = (a.deriv() // b) - c.deriv()
    i = 1
    while c.deg > 0:
        g = uni_gcd(c, d)
        if g.deg > 0:
            res.append((g, i))
        c = c // g
        d = (d // g) - c.deriv()
        i += 1
    return res


def _bi_yun(a: BiPoly):
    res = []
    ay = a.diff_y()
    b = gcd(a, ay)
    c = exact_div(a, b)
    d = exact_div(ay, b) - c.diff_y()
    i = 1
    while not c.is_const():
        g = gcd(c, d) if not d.is_zero() else c.monic()
        if not g.is_const():
            res.append((g.monic(), i))
        c = exact_div(c, g)
        d = exact_div(d, g) - c.diff_y()
        i += 1
    return res


def _line_candidates(f: BiPoly):
    """Candidate linear factors of f (f not divisible by x or y assumed
    for the non-vertical family).  Yields monic BiPoly lines."""
    out = []
    for c in content_y(f).rational_roots():
        out.append(X - c)
    d = int(f.deg)
    top = f.homogeneous_part(d)
    # top(1, t) as a polynomial in t; a non-vertical line y - a x - b
    # forces top(1, a) = 0 and f(0, b) = 0.
    slope_poly = UniPoly.from_bipoly(substitute(top, ONE, X), "x")
    at_zero = UniPoly.from_bipoly(substitute(f, ZERO, X), "x")
    if not at_zero.is_zero():
        slopes = slope_poly.rational_roots()
        offsets = at_zero.rational_roots()
        for a, b in product(slopes, offsets):
            out.append((Y - a * X - b).monic())
    return out


def linear_factors(f: BiPoly):
    """Return ([(line, multiplicity)], residual) with f = residual * prod."""
    found = []
    rest = f
    for var in (X, Y):
        k = 0
        while not rest.is_const() and divides(var, rest):
            rest = exact_div(rest, var)
            k += 1
        if k:
            found.append((var, k))
    if rest.is_const():
        return found, rest
    for line in _line_candidates(rest):
        k = 0
        while not rest.is_const() and divides(line, rest):
            rest = exact_div(rest, line)
            k += 1
        if k:
            found.append((line, k))
    return found, rest


def _split_quadratic(f: BiPoly):
    """f primitive in y, deg_y f == 2, no rational linear factors.

    Returns the list of its irreducible factors over Q.
    """
    cs = f.y_coeffs()
    a = cs.get(2, UniPoly())
    b = cs.get(1, UniPoly())
    c = cs.get(0, UniPoly())
    disc = b * b - UniPoly([4]) * a * c
    root = disc.sqrt()
    if root is None:
        return [f.monic()]
    one = (a * UniPoly([2])).to_bipoly("x") * Y + (b - root).to_bipoly("x")
    one = primitive_y(one).monic()
    other = exact_div(f, one).monic()
    return [one, other]


def _split_residual(f: BiPoly):
    """Split a squarefree polynomial free of linear factors.

    Returns (factors, unresolved).
    """
    factors, unresolved = [], False
    cont = content_y(f)
    if cont.deg > 0:
        f = exact_div(f, cont.to_bipoly("x"))
        factors.append(cont.to_bipoly("x"))
        if cont.deg > 3:
            unresolved = True
    contx = content_x(f)
    if contx.deg > 0:
        f = exact_div(f, contx.to_bipoly("y"))
        factors.append(contx.to_bipoly("y"))
        if contx.deg > 3:
            unresolved = True
    if f.is_const():
        return factors, unresolved
    if f.deg_y <= 1 or f.deg_x <= 1:
        factors.append(f.monic())
    elif f.deg_y == 2:
        factors.extend(_split_quadratic(f))
    elif f.deg_x == 2:
        factors.extend(g.swap().monic() for g in _split_quadratic(f.swap()))
    else:
        factors.append(f.monic())
        unresolved = True
    return factors, unresolved


def split_irreducible(f: BiPoly):
    """Irreducible factors of a squarefree f: returns (factors, unresolved)."""
    if f.is_const():
        return [], False
    lins, rest = linear_factors(f)
    factors = [line for line, _ in lins]
    more, unresolved = _split_residual(rest) if not rest.is_const() else ([], False)
    factors.extend(more)
    return sorted(factors, key=BiPoly.sort_key), unresolved


def _external_split(f: BiPoly):
    """Irreducible factors over Q via sympy, for pieces the local methods leave whole."""
    import sympy

    x, y = sympy.symbols("x y")
    poly = sympy.Poly.from_dict(
        {k: sympy.Rational(c.numerator, c.denominator) for k, c in f.items()}, x, y, domain="QQ"
    )
    out = []
    for piece, _k in poly.factor_list()[1]:
        terms = {}
        for (i, j), c in piece.terms():
            c = sympy.Rational(c)
            terms[(int(i), int(j))] = Fraction(int(c.p), int(c.q))
        out.append(BiPoly(terms).monic())
    return out


def factor(f: BiPoly, complete: bool = True):
    """Irreducible factorization of f.

    Returns (constant, [(factor, multiplicity)], unresolved).  The local
    methods cover factors of degree at most 2 in some variable; with
    ``complete`` any piece they cannot split is handed to sympy.
    """
    if f.is_zero():
        raise ValueError("cannot factor zero")
    if f.is_const():
        return f.const_value(), [], False
    lins, rest = linear_factors(f)
    out = dict(lins)
    unresolved = False
    if not rest.is_const():
        _, sqf = squarefree_factors(rest)
        for piece, k in sqf:
            parts, flag = _split_residual(piece)
            if flag and complete:
                parts, flag = _external_split(piece), False
            unresolved = unresolved or flag
            for p in parts:
                out[p] = out.get(p, 0) + k
    items = sorted(out.items(), key=lambda it: it[0].sort_key())
    prod = ONE
    for p, k in items:
        prod = prod * p**k
    return f.lc() / prod.lc(), items, unresolved
