"""Sparse polynomials in x1, x2, x3 with exact rational coefficients.

Terms are stored as ``{(e1, e2, e3): Fraction}`` and always iterated in
graded-lex order with x1 > x2 > x3, leading term first, so two equal
polynomials print and serialize identically.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Exponent = tuple[int, int, int]
Number = Union[int, Fraction]

MAX_EXPONENT = 255
VARIABLES = ("x1", "x2", "x3")


class NotDivisible(ArithmeticError):
    """Raised by :func:`divide_exact` when the quotient is not a polynomial."""


def monomial_key(e: Exponent) -> tuple[int, int, int, int]:
    """Sort key for graded-lex order (larger key = larger monomial)."""
    return (e[0] + e[1] + e[2], e[0], e[1], e[2])


def monomials_of_degree(m: int) -> list[Exponent]:
    """All exponents of total degree ``m``, largest first."""
    out = [(i, j, m - i - j) for i in range(m, -1, -1) for j in range(m - i, -1, -1)]
    return out


def _check_exponent(e: Exponent) -> Exponent:
    if min(e) < 0:
        raise ValueError(f"negative exponent {e}")
    if max(e) > MAX_EXPONENT:
        raise OverflowError(f"exponent {e} exceeds engine bound {MAX_EXPONENT}")
    return e


def as_fraction(value) -> Fraction:
    """Exact conversion; floats are rejected so nothing inexact sneaks in."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_fraction(text: str) -> Fraction:
    """Parse ``p``, ``-p`` or ``p/q``. Decimals are refused."""
    match = _FRACTION_RE.match(text)
    if not match:
        raise ValueError(f"not an exact fraction: {text!r} (use p or p/q)")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Poly:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Number] | None = None):
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = as_fraction(c)
                if c:
                    clean[_check_exponent(tuple(e))] = c
        self._terms = dict(sorted(clean.items(), key=lambda kv: monomial_key(kv[0]), reverse=True))
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction]) -> "Poly":
        # Caller guarantees nonzero Fraction coefficients and valid exponents.
        p = cls.__new__(cls)
        p._terms = dict(sorted(terms.items(), key=lambda kv: monomial_key(kv[0]), reverse=True))
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Number) -> "Poly":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, e: Sequence[int], c: Number = 1) -> "Poly":
        return cls({tuple(e): c})

    @classmethod
    def var(cls, axis: int) -> "Poly":
        e = [0, 0, 0]
        e[axis - 1] = 1
        return cls({tuple(e): 1})

    # -- container protocol -------------------------------------------------

    def terms(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self._terms.items())

    def coeff(self, e: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(e), Fraction(0))

    def support(self) -> list[Exponent]:
        return list(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def leading(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return next(iter(self._terms.items()))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(e == (0, 0, 0) for e in self._terms)

    # -- arithmetic -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __neg__(self) -> "Poly":
        return Poly._raw({e: -c for e, c in self._terms.items()})

    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add(self, -other)

    def __rsub__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return add(other, -self)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero")
            return self.scale(Fraction(1) / as_fraction(other))
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = Poly.constant(1)
        base = self
        while n:
            if n & 1:
                result = mul(result, base)
            n >>= 1
            if n:
                base = mul(base, base)
        return result

    def scale(self, c: Number) -> "Poly":
        c = as_fraction(c)
        if not c:
            return Poly()
        return Poly._raw({e: c * v for e, v in self._terms.items()})

    def monic(self) -> "Poly":
        """Scale so the leading coefficient is 1."""
        if not self._terms:
            return self
        return self.scale(1 / self.leading()[1])

    # -- presentation -----------------------------------------------------------

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"Poly({to_text(self)!r})"


def _coerce(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.constant(value)
    return NotImplemented


X1, X2, X3 = Poly.var(1), Poly.var(2), Poly.var(3)
ONE = Poly.constant(1)
ZERO = Poly()


def add(f: Poly, g: Poly) -> Poly:
    out = dict(f._terms)
    for e, c in g._terms.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return Poly._raw(out)


def mul(f: Poly, g: Poly) -> Poly:
    out: dict[Exponent, Fraction] = {}
    for (a1, a2, a3), c in f._terms.items():
        for (b1, b2, b3), d in g._terms.items():
            e = (a1 + b1, a2 + b2, a3 + b3)
            out[e] = out.get(e, 0) + c * d
    for e in out:
        _check_exponent(e)
    return Poly._raw({e: c for e, c in out.items() if c})


def partial(f: Poly, axis: int) -> Poly:
    """Formal derivative with respect to x1, x2 or x3 (``axis`` in 1..3)."""
    if axis not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
    k = axis - 1
    out = {}
    for e, c in f._terms.items():
        if e[k]:
            d = list(e)
            d[k] -= 1
            out[tuple(d)] = c * e[k]
    return Poly._raw(out)


def _divides_monomial(b: Exponent, a: Exponent) -> bool:
    return b[0] <= a[0] and b[1] <= a[1] and b[2] <= a[2]


def divide_exact(f: Poly, g: Poly) -> Poly:
    """Return ``q`` with ``f == q * g`` or raise :class:`NotDivisible`.

    Plain leading-term elimination in graded-lex order; the first remainder
    term that the leading monomial of ``g`` does not divide ends the attempt.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead_e, lead_c = g.leading()
    rem = dict(f._terms)
    quot: dict[Exponent, Fraction] = {}
    g_terms = list(g._terms.items())
    while rem:
        e = max(rem, key=monomial_key)
        if not _divides_monomial(lead_e, e):
            raise NotDivisible(f"{to_text(g)} does not divide {to_text(f)}")
        qe = (e[0] - lead_e[0], e[1] - lead_e[1], e[2] - lead_e[2])
        qc = rem[e] / lead_c
        quot[qe] = qc
        for (b1, b2, b3), d in g_terms:
            k = (qe[0] + b1, qe[1] + b2, qe[2] + b3)
            v = rem.get(k, 0) - qc * d
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return Poly._raw(quot)


def try_divide(f: Poly, g: Poly) -> Poly | None:
    try:
        return divide_exact(f, g)
    except NotDivisible:
        return None


def homogeneous_components(f: Poly) -> list[tuple[int, Poly]]:
    parts: dict[int, dict[Exponent, Fraction]] = {}
    for e, c in f._terms.items():
        parts.setdefault(sum(e), {})[e] = c
    return [(d, Poly._raw(parts[d])) for d in sorted(parts)]


def evaluate(f: Poly, point: Sequence[Number]) -> Fraction:
    x = [as_fraction(v) for v in point]
    total = Fraction(0)
    for (a, b, c), coef in f._terms.items():
        total += coef * x[0] ** a * x[1] ** b * x[2] ** c
    return total


def evaluate_float(f: Poly, point: Sequence[float]) -> float:
    x1, x2, x3 = (float(v) for v in point)
    return sum(float(c) * x1**a * x2**b * x3**k for (a, b, k), c in f._terms.items())


def euler_check(f: Poly) -> bool:
    """True iff ``f`` is homogeneous of degree m and x.grad(f) == m f."""
    if f.is_zero():
        return True
    if not f.is_homogeneous():
        return False
    m = f.degree()
    lhs = X1 * partial(f, 1) + X2 * partial(f, 2) + X3 * partial(f, 3)
    return lhs == f.scale(m)


@dataclass(frozen=True)
class LinForm:
    """The linear form alpha*x1 + beta*x2 + gamma*x3."""

    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)
    gamma: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    @classmethod
    def from_poly(cls, f: Poly) -> "LinForm | None":
        """Inverse of :meth:`as_poly`; None when ``f`` is not a constant-free linear form."""
        if any(sum(e) != 1 for e in f.support()):
            return None
        return cls(f.coeff((1, 0, 0)), f.coeff((0, 1, 0)), f.coeff((0, 0, 1)))

    def as_poly(self) -> Poly:
        return Poly({(1, 0, 0): self.alpha, (0, 1, 0): self.beta, (0, 0, 1): self.gamma})

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.alpha, self.beta, self.gamma)

    def is_zero(self) -> bool:
        return not (self.alpha or self.beta or self.gamma)

    def __add__(self, other: "LinForm") -> "LinForm":
        return LinForm(self.alpha + other.alpha, self.beta + other.beta, self.gamma + other.gamma)

    def __sub__(self, other: "LinForm") -> "LinForm":
        return LinForm(self.alpha - other.alpha, self.beta - other.beta, self.gamma - other.gamma)

    def __neg__(self) -> "LinForm":
        return LinForm(-self.alpha, -self.beta, -self.gamma)

    def __mul__(self, k: Number) -> "LinForm":
        return LinForm(self.alpha * k, self.beta * k, self.gamma * k)

    __rmul__ = __mul__

    def evaluate_float(self, point: Sequence[float]) -> float:
        return float(self.alpha) * point[0] + float(self.beta) * point[1] + float(self.gamma) * point[2]

    def to_json(self) -> dict:
        return {
            "alpha": format_fraction(self.alpha),
            "beta": format_fraction(self.beta),
            "gamma": format_fraction(self.gamma),
        }

    def __str__(self) -> str:
        return to_text(self.as_poly())


def sum_linforms(forms: Iterable[LinForm]) -> LinForm:
    total = LinForm()
    for f in forms:
        total = total + f
    return total


# -- text and JSON forms -------------------------------------------------------


def _monomial_text(e: Exponent) -> str:
    parts = []
    for name, k in zip(VARIABLES, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def to_text(f: Poly) -> str:
    """Human-readable form, e.g. ``x1^2*x2 - 1/2*x3^3``."""
    if f.is_zero():
        return "0"
    pieces = []
    for idx, (e, c) in enumerate(f.terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _monomial_text(e)
        if not mono:
            body = format_fraction(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_fraction(a)}*{mono}"
        if idx == 0:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


def to_json(f: Poly) -> list[dict]:
    return [{"e": list(e), "c": format_fraction(c)} for e, c in f.terms()]


def from_json(data) -> Poly:
    if isinstance(data, str):
        data = json.loads(data)
    terms: dict[Exponent, Fraction] = {}
    for term in data:
        e = tuple(int(k) for k in term["e"])
        if len(e) != 3:
            raise ValueError(f"exponent must have three entries: {term!r}")
        c = term["c"]
        c = parse_fraction(c) if isinstance(c, str) else as_fraction(c)
        terms[e] = terms.get(e, 0) + c
    return Poly(terms)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(x[123])|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ValueError(f"unexpected character at {pos} in {text!r}")
        tokens.append(match.group(match.lastindex))
        pos = match.end()
    return tokens


class _Parser:
    """Recursive descent over the grammar

        expr   := ['-'|'+'] term (('+'|'-') term)*
        term   := power (('*'|'/') power)*
        power  := atom ('^' INT)?
        atom   := INT | VAR | '(' expr ')'

    so unary minus binds loosest, then +/-, then * and /, then ^.
    Division is only allowed by a nonzero constant.
    """

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.text = text

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected or 'token'} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise ValueError("empty polynomial")
        out = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input {self.peek()!r} in {self.text!r}")
        return out

    def expr(self) -> Poly:
        negate = False
        if self.peek() in ("-", "+"):
            negate = self.take() == "-"
        out = self.term()
        if negate:
            out = -out
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> Poly:
        out = self.power()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.power()
            if op == "*":
                out = out * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ValueError(f"division only by nonzero constants in {self.text!r}")
                out = out.scale(1 / rhs.coeff((0, 0, 0)))
        return out

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            exp = self.take()
            if not exp.isdigit():
                raise ValueError(f"exponent must be a non-negative integer in {self.text!r}")
            base = base ** int(exp)
        return base

    def atom(self) -> Poly:
        tok = self.take()
        if tok.isdigit():
            return Poly.constant(int(tok))
        if tok in VARIABLES:
            return Poly.var(int(tok[1]))
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ValueError(f"unexpected {tok!r} in {self.text!r}")


def parse_poly(text: str) -> Poly:
    """Parse either the text grammar or the JSON term list."""
    stripped = text.strip()
    if stripped.startswith("["):
        return from_json(stripped)
    return _Parser(stripped).parse()
