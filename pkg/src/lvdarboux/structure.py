"""Factorization certificates and parameter classification.

A homogeneous Darboux polynomial of the LV system is expected to split as

    x1^i x2^j x3^k (x1+x2)^l12 (x2+x3)^l23 (x1+x3)^l13 * I

with I a first integral, where the binomial factors only occur on the
coincidence loci s = t, r = s and r = -t respectively. :func:`certify`
finds that split by repeated exact division and checks it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

from .lv import H, LVParams, cofactor_of, lie_derivative
from .poly import ONE, X1, X2, X3, LinForm, Poly, to_json, try_divide

FACTOR_NAMES = ("x1", "x2", "x3", "x1+x2", "x2+x3", "x1+x3")
_FACTOR_POLYS = {
    "x1": X1,
    "x2": X2,
    "x3": X3,
    "x1+x2": X1 + X2,
    "x2+x3": X2 + X3,
    "x1+x3": X1 + X3,
}


def special_linear_factors(p: LVParams) -> list[tuple[Poly, LinForm]]:
    """Linear Darboux polynomials available for ``p`` with their cofactors."""
    out = [
        (X1, LinForm(0, p.r, p.s)),
        (X2, LinForm(-p.r, 0, p.t)),
        (X3, LinForm(-p.s, -p.t, 0)),
        (H, LinForm()),
    ]
    if p.s == p.t:
        out.append((X1 + X2, LinForm(0, 0, p.s)))
    if p.r == p.s:
        out.append((X2 + X3, LinForm(-p.r, 0, 0)))
    if p.r == -p.t:
        out.append((X1 + X3, LinForm(0, p.r, 0)))
    return out


def _factor_cofactors(p: LVParams) -> dict[str, LinForm]:
    return {
        "x1": LinForm(0, p.r, p.s),
        "x2": LinForm(-p.r, 0, p.t),
        "x3": LinForm(-p.s, -p.t, 0),
        "x1+x2": LinForm(0, 0, p.s),
        "x2+x3": LinForm(-p.r, 0, 0),
        "x1+x3": LinForm(0, p.r, 0),
    }


def monomial_cofactor(p: LVParams, i: int, j: int, k: int) -> LinForm:
    """Cofactor of x1^i x2^j x3^k: (-rj - sk, ri - tk, si + tj)."""
    if min(i, j, k) < 0:
        raise ValueError("exponents must be non-negative")
    return LinForm(-p.r * j - p.s * k, p.r * i - p.t * k, p.s * i + p.t * j)


@dataclass(frozen=True)
class Certificate:
    i: int
    j: int
    k: int
    l12: int
    l23: int
    l13: int
    remainder: Poly
    cofactor: LinForm

    @property
    def exponents(self) -> dict[str, int]:
        return dict(zip(FACTOR_NAMES, (self.i, self.j, self.k, self.l12, self.l23, self.l13)))

    def factors_used(self) -> set[str]:
        return {name for name, n in self.exponents.items() if n}

    def recompose(self) -> Poly:
        out = self.remainder
        for name, n in self.exponents.items():
            if n:
                out = out * _FACTOR_POLYS[name] ** n
        return out

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "k": self.k,
            "l12": self.l12,
            "l23": self.l23,
            "l13": self.l13,
            "remainder": to_json(self.remainder),
            "cofactor": self.cofactor.to_json(),
        }


@dataclass(frozen=True)
class CannotCertify:
    """The factor-stripping left a remainder that is not a first integral."""

    exponents: dict[str, int]
    remainder: Poly
    remainder_cofactor: LinForm

    def to_json(self) -> dict:
        return {
            "certified": False,
            "exponents": dict(self.exponents),
            "remainder": to_json(self.remainder),
            "remainder_cofactor": self.remainder_cofactor.to_json(),
        }


def certify(p: LVParams, f: Poly) -> Certificate | CannotCertify:
    if f.is_zero():
        raise ValueError("cannot certify the zero polynomial")
    total = cofactor_of(p, f)
    if total is None:
        raise ValueError(f"{f} is not a Darboux polynomial for {p}")

    allowed = ["x1", "x2", "x3"]
    if p.s == p.t:
        allowed.append("x1+x2")
    if p.r == p.s:
        allowed.append("x2+x3")
    if p.r == -p.t:
        allowed.append("x1+x3")

    counts = dict.fromkeys(FACTOR_NAMES, 0)
    rest = f
    for name in allowed:
        factor = _FACTOR_POLYS[name]
        while rest.degree() > 0:
            q = try_divide(rest, factor)
            if q is None:
                break
            rest = q
            counts[name] += 1

    cofs = _factor_cofactors(p)
    stripped = LinForm()
    for name, n in counts.items():
        stripped = stripped + cofs[name] * n
    rest_cof = total - stripped
    if not lie_derivative(p, rest).is_zero():
        return CannotCertify(counts, rest, rest_cof)
    if not rest_cof.is_zero():
        raise AssertionError("cofactor bookkeeping disagrees with the Lie derivative")
    return Certificate(
        counts["x1"], counts["x2"], counts["x3"],
        counts["x1+x2"], counts["x2+x3"], counts["x1+x3"],
        rest, stripped,
    )


def casimir_exponents(p: LVParams) -> tuple[int, int, int] | None:
    """Primitive integer exponents (a, b, c) with x1^a x2^b x3^c a Casimir.

    Proportional to (t, -s, r); None when all three parameters vanish.
    """
    raw = (p.t, -p.s, p.r)
    if not any(raw):
        return None
    den = lcm(*(v.denominator for v in raw))
    ints = [int(v * den) for v in raw]
    g = gcd(*ints)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def casimir_conditions(p: LVParams, exps: tuple[int, int, int]) -> tuple[Fraction, Fraction, Fraction]:
    """(br + cs, ar - ct, as + bt); all zero iff x^(a,b,c) is a first integral."""
    a, b, c = exps
    return (b * p.r + c * p.s, a * p.r - c * p.t, a * p.s + b * p.t)


# -- parameter conditions ------------------------------------------------------


def multiples(x: Fraction, m: int) -> set[Fraction]:
    """{x, 2x, ..., mx}."""
    return {n * x for n in range(1, m + 1)}


def _disjoint(a: Iterable[Fraction], b: Iterable[Fraction]) -> bool:
    return not (set(a) & set(b))


@dataclass(frozen=True)
class ParamClass:
    degree: int
    s_zero: bool
    t_zero: bool
    r_zero: bool
    s_eq_t: bool
    r_eq_s: bool
    r_eq_neg_t: bool
    condition_i: bool
    condition_ii: bool
    remark2_case: str

    def to_json(self) -> dict:
        return dict(self.__dict__)


def classify_params(p: LVParams, m: int) -> ParamClass:
    if m < 1:
        raise ValueError("degree must be at least 1")
    r, s, t = p.r, p.s, p.t
    Nr, Ns, Nt = multiples(r, m), multiples(s, m), multiples(t, m)
    neg = lambda xs: {-x for x in xs}  # noqa: E731
    cond_i = s == 0 and _disjoint(Nr, neg(Nt))
    cond_ii = (
        r != 0 and s != 0 and t != 0
        and _disjoint(Nr, neg(Nt))
        and _disjoint(Ns, Nt)
        and _disjoint(neg(Nr), neg(Ns))
    )
    if s * t < 0:
        case = "a"
    elif s * t > 0 and (s / t < Fraction(1, m) or s / t > m):
        case = "d"
    else:
        case = "not applicable"
    return ParamClass(
        degree=m,
        s_zero=s == 0,
        t_zero=t == 0,
        r_zero=r == 0,
        s_eq_t=s == t,
        r_eq_s=r == s,
        r_eq_neg_t=r == -t,
        condition_i=cond_i,
        condition_ii=cond_ii,
        remark2_case=case,
    )


# -- index hypotheses used by the property tests -------------------------------


def _in_small_naturals(x: Fraction, n: int, with_zero: bool = True) -> bool:
    lo = 0 if with_zero else 1
    return x.denominator == 1 and lo <= x <= n


def alpha_beta_hypothesis(p: LVParams, m: int, a1: int, a2: int, b1: int, b2: int) -> bool:
    """Index hypothesis under which alpha2 == beta2 is forced (r, s, t nonzero).

    For j = 0..m-1 both a1 + (a2 - j) s/r and b1 - (b2 - j) t/r must avoid
    {0, 1, ..., m - j}.
    """
    if not (p.r and p.s and p.t):
        return False
    inv_q1 = p.s / p.r
    inv_q2 = p.t / p.r
    for j in range(m):
        if _in_small_naturals(a1 + (a2 - j) * inv_q1, m - j):
            return False
        if _in_small_naturals(b1 - (b2 - j) * inv_q2, m - j):
            return False
    return True


def s_eq_t_hypothesis(p: LVParams, m: int, a1: int, a2: int, b1: int, b2: int) -> bool:
    """Index hypothesis for the s = t factorization through (x1 + x2)."""
    if not (p.r and p.s and p.t) or p.s != p.t:
        return False
    q1 = p.r / p.s
    for j in range(m):
        n = m - j
        if _in_small_naturals(a1 + (a2 - j) / q1, n):
            return False
        if _in_small_naturals(b1 - (b2 - j) / q1, n):
            return False
        if _in_small_naturals((a1 - j) * q1 + a2, n):
            return False
        if _in_small_naturals(-((b1 - j) * q1 - b2), n):
            return False
    return True


def describe(cert: Certificate | CannotCertify) -> str:
    if isinstance(cert, CannotCertify):
        return f"not certified: remainder {cert.remainder} has cofactor {cert.remainder_cofactor}"
    parts = []
    for name, n in cert.exponents.items():
        if n:
            base = f"({name})" if "+" in name else name
            parts.append(f"{base}^{n}" if n > 1 else base)
    if cert.remainder != ONE or not parts:
        parts.append(f"({cert.remainder})")
    return f"{'*'.join(parts)}  cofactor {cert.cofactor}"
