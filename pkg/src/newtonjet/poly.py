"""Exact sparse polynomials in ``x, y`` over the rationals.

Also holds the text parser, the weighted order ``nu``, initial forms and the
expansion of ``f(x(t), y(t))`` into the jet polynomials ``f^(0), ..., f^(m)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

Exp = tuple[int, int]


class PolyParseError(ValueError):
    pass


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class SparsePoly:
    """Immutable mapping ``(a, b) -> c`` standing for ``sum c x^a y^b``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, object] | Iterable[tuple[Exp, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exp, Fraction] = {}
        for (a, b), c in items:
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in {(a, b)}")
            acc[(a, b)] = acc.get((a, b), Fraction(0)) + Fraction(c)
        self._terms = {k: v for k, v in acc.items() if v != 0}
        self._hash = None

    # -- construction ---------------------------------------------------
    @classmethod
    def constant(cls, c) -> "SparsePoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c=1) -> "SparsePoly":
        return cls({(a, b): c})

    # -- access ---------------------------------------------------------
    @property
    def terms(self) -> dict[Exp, Fraction]:
        return dict(self._terms)

    def support(self) -> list[Exp]:
        return sorted(self._terms)

    def coeff(self, a: int, b: int) -> Fraction:
        return self._terms.get((a, b), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    # -- ring operations ------------------------------------------------
    def __add__(self, other) -> "SparsePoly":
        other = _as_poly(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return SparsePoly(out)

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        return SparsePoly({k: -v for k, v in self._terms.items()})

    def __sub__(self, other) -> "SparsePoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "SparsePoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "SparsePoly":
        other = _as_poly(other)
        out: dict[Exp, Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return SparsePoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SparsePoly":
        if n < 0:
            raise ValueError("negative power")
        result, base = SparsePoly.constant(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.constant(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def swapped(self) -> "SparsePoly":
        """``f(y, x)``."""
        return SparsePoly({(b, a): c for (a, b), c in self._terms.items()})

    def __call__(self, x, y):
        return sum((c * x**a * y**b for (a, b), c in self._terms.items()), Fraction(0))

    # -- printing -------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Exp, Fraction]]:
        """Graded-lex order: total degree ascending, then larger x-power first."""
        return sorted(self._terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], -kv[0][0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, ((a, b), c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = "*".join(
                s for s in (_var("x", a), _var("y", b)) if s
            )
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{_fmt_coeff(mag)}*{mono}"
            else:
                body = _fmt_coeff(mag)
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"SparsePoly({str(self)!r})"


def _var(name: str, e: int) -> str:
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}"


def _as_poly(v) -> SparsePoly:
    if isinstance(v, SparsePoly):
        return v
    if isinstance(v, (int, Fraction)):
        return SparsePoly.constant(v)
    raise TypeError(f"cannot combine SparsePoly with {type(v).__name__}")


X = SparsePoly.monomial(1, 0)
Y = SparsePoly.monomial(0, 1)


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()])|(\S))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - the regex always matches something
            break
        num, ident, op, bad = m.groups()
        pos = m.end()
        if num is not None:
            toks.append(("num", num))
        elif ident is not None:
            if set(ident) <= {"x", "y"}:
                toks.extend(("var", ch) for ch in ident)
            else:
                raise PolyParseError(f"unknown variable {ident}")
        elif op is not None:
            toks.append(("op", "^" if op == "**" else op))
        else:
            raise PolyParseError(f"unexpected character {bad!r}")
    return toks


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "")

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, v = self.take()
        if v != value:
            raise PolyParseError(f"expected {value!r}, found {v or 'end of input'!r}")

    def parse(self) -> SparsePoly:
        if not self.toks:
            raise PolyParseError("empty input")
        out = self.expr()
        if self.peek()[0] != "eof":
            raise PolyParseError(f"unexpected {self.peek()[1]!r}")
        return out

    def expr(self) -> SparsePoly:
        kind, v = self.peek()
        neg = False
        if v in "+-" and kind == "op":
            self.take()
            neg = v == "-"
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek() in (("op", "+"), ("op", "-")):
            _, v = self.take()
            rhs = self.term()
            acc = acc + rhs if v == "+" else acc - rhs
        return acc

    def _starts_factor(self) -> bool:
        kind, v = self.peek()
        return kind in ("num", "var") or (kind == "op" and v == "(")

    def term(self) -> SparsePoly:
        acc = self.factor()
        while True:
            kind, v = self.peek()
            if kind == "op" and v in "*/":
                self.take()
                rhs = self.factor()
                if v == "*":
                    acc = acc * rhs
                else:
                    if len(rhs) != 1 or rhs.support() != [(0, 0)]:
                        raise PolyParseError("division only by a nonzero constant")
                    acc = acc * SparsePoly.constant(1 / rhs.coeff(0, 0))
            elif self._starts_factor():
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> SparsePoly:
        kind, v = self.peek()
        if kind == "op" and v == "-":
            self.take()
            return -self.factor()
        base = self.base()
        if self.peek() == ("op", "^"):
            self.take()
            kind, v = self.take()
            if kind != "num" or not v.isdigit():
                raise PolyParseError(f"malformed exponent {v or 'end of input'!r}")
            base = base ** int(v)
        return base

    def base(self) -> SparsePoly:
        kind, v = self.take()
        if kind == "num":
            return SparsePoly.constant(Fraction(v))
        if kind == "var":
            return X if v == "x" else Y
        if kind == "op" and v == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise PolyParseError(f"unexpected {v or 'end of input'!r}")


def parse(text: str) -> SparsePoly:
    """Parse and expand a polynomial expression in ``x`` and ``y``.

    >>> str(parse("(y^2-x^3)*(y^2-2x^3)"))
    'y^4 - 3*x^3*y^2 + 2*x^6'
    """
    return _Parser(_tokenize(text)).parse()


# ---------------------------------------------------------------------------
# weighted orders

def nu(f: SparsePoly, w) -> int:
    """``min (a, b) . w`` over the support of ``f``."""
    if f.is_zero():
        raise ValueError("weighted order of the zero polynomial")
    return min(a * w[0] + b * w[1] for a, b in f.support())


def initial_form(f: SparsePoly, w) -> SparsePoly:
    if w[0] == 0 and w[1] == 0:
        raise ValueError("initial form needs a nonzero weight")
    n = nu(f, w)
    return SparsePoly({(a, b): c for (a, b), c in f.items() if a * w[0] + b * w[1] == n})


# ---------------------------------------------------------------------------
# jets

# jet variable x^(j) is coded 2j, y^(j) is coded 2j + 1
JetMono = tuple[tuple[int, int], ...]


def jet_var(name: str, j: int) -> int:
    return 2 * j + (name == "y")


def _mono_mul(m1: JetMono, m2: JetMono) -> JetMono:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


@dataclass(frozen=True)
class JetPolynomial:
    level: int
    terms: dict = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.terms

    def weight_set(self) -> set[int]:
        return {sum((v // 2) * e for v, e in mono) for mono in self.terms}

    def is_weighted_homogeneous(self) -> bool:
        return self.weight_set() <= {self.level}

    def substitute_zero(self, killed) -> "JetPolynomial":
        killed = set(killed)
        return JetPolynomial(
            self.level,
            {m: c for m, c in self.terms.items() if not any(v in killed for v, _ in m)},
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (mono, c) in enumerate(sorted(self.terms.items())):
            factors = []
            for v, e in mono:
                name = f"{'xy'[v % 2]}{v // 2}"
                factors.append(name if e == 1 else f"{name}^{e}")
            mag = -c if c < 0 else c
            body = "*".join(factors)
            if not body:
                body = _fmt_coeff(mag)
            elif mag != 1:
                body = f"{_fmt_coeff(mag)}*{body}"
            sign = ("-" if c < 0 else "") if i == 0 else (" - " if c < 0 else " + ")
            out.append(sign + body)
        return "".join(out)


def _series_mul(s1, s2, m):
    out = [dict() for _ in range(m + 1)]
    for i, p1 in enumerate(s1):
        if not p1:
            continue
        for j in range(0, m + 1 - i):
            p2 = s2[j]
            if not p2:
                continue
            acc = out[i + j]
            for m1, c1 in p1.items():
                for m2, c2 in p2.items():
                    k = _mono_mul(m1, m2)
                    acc[k] = acc.get(k, 0) + c1 * c2
    for acc in out:
        for k in [k for k, c in acc.items() if c == 0]:
            del acc[k]
    return out


def _series_powers(s, top, m):
    pw = [[{(): Fraction(1)}] + [dict() for _ in range(m)]]
    for _ in range(top):
        pw.append(_series_mul(pw[-1], s, m))
    return pw


def jet_expand(f: SparsePoly, m: int, vanish=(0, 0)) -> list[JetPolynomial]:
    """Coefficients ``f^(0..m)`` of ``f(sum x^(j) t^j, sum y^(j) t^j)``.

    ``vanish = (a, b)`` sets ``x^(j) = 0`` for ``j < a`` and ``y^(j) = 0`` for
    ``j < b`` before expanding, i.e. works modulo the ideal of ``H^(a,b)``.
    Cost grows quickly with ``m``; meant for oracle use with small ``m``.
    """
    if m < 0:
        raise ValueError("level must be nonnegative")
    a0, b0 = vanish
    xs = [dict() for _ in range(m + 1)]
    ys = [dict() for _ in range(m + 1)]
    for j in range(m + 1):
        if j >= a0:
            xs[j] = {((jet_var("x", j), 1),): Fraction(1)}
        if j >= b0:
            ys[j] = {((jet_var("y", j), 1),): Fraction(1)}
    top_a = max((a for a, _ in f.support()), default=0)
    top_b = max((b for _, b in f.support()), default=0)
    xp = _series_powers(xs, top_a, m)
    yp = _series_powers(ys, top_b, m)
    total = [dict() for _ in range(m + 1)]
    for (a, b), c in f.items():
        prod = _series_mul(xp[a], yp[b], m)
        for k in range(m + 1):
            for mono, v in prod[k].items():
                total[k][mono] = total[k].get(mono, 0) + c * v
    return [
        JetPolynomial(k, {mono: v for mono, v in total[k].items() if v != 0})
        for k in range(m + 1)
    ]


def lift_to_jets(g: SparsePoly, level: int, jx: int, jy: int) -> JetPolynomial:
    """``g(x^(jx), y^(jy))`` as a jet polynomial tagged with ``level``."""
    terms = {}
    for (a, b), c in g.items():
        mono = tuple(
            sorted(((jet_var("x", jx), a),) * (a > 0) + ((jet_var("y", jy), b),) * (b > 0))
        )
        terms[mono] = terms.get(mono, 0) + c
    return JetPolynomial(level, {k: v for k, v in terms.items() if v != 0})
