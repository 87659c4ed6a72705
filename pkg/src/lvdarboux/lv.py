"""The three-dimensional skew-symmetric Lotka-Volterra system.

    x1' = x1 (r x2 + s x3)
    x2' = x2 (-r x1 + t x3)
    x3' = x3 (-s x1 - t x2)

together with its Lie derivative, cofactor extraction and the quadratic
Poisson bracket for which H = x1 + x2 + x3 generates the flow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .poly import (
    ONE,
    X1,
    X2,
    X3,
    LinForm,
    Poly,
    as_fraction,
    format_fraction,
    parse_fraction,
    partial,
    try_divide,
)

H = X1 + X2 + X3


@dataclass(frozen=True)
class LVParams:
    r: Fraction
    s: Fraction
    t: Fraction

    def __post_init__(self):
        for name in ("r", "s", "t"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    @classmethod
    def parse(cls, r: str, s: str, t: str) -> "LVParams":
        return cls(parse_fraction(r), parse_fraction(s), parse_fraction(t))

    @classmethod
    def from_json(cls, data: dict) -> "LVParams":
        return cls.parse(str(data["r"]), str(data["s"]), str(data["t"]))

    def to_json(self) -> dict:
        return {"r": format_fraction(self.r), "s": format_fraction(self.s), "t": format_fraction(self.t)}

    def as_floats(self) -> tuple[float, float, float]:
        return (float(self.r), float(self.s), float(self.t))

    def __str__(self) -> str:
        return "(r, s, t) = ({}, {}, {})".format(*(format_fraction(v) for v in (self.r, self.s, self.t)))


KM = LVParams(1, 0, 1)
PERIODIC_KM = LVParams(1, -1, 1)


class VectorField(NamedTuple):
    v1: Poly
    v2: Poly
    v3: Poly


def lv_vector_field(p: LVParams) -> VectorField:
    return VectorField(
        X1 * (X2.scale(p.r) + X3.scale(p.s)),
        X2 * (X1.scale(-p.r) + X3.scale(p.t)),
        X3 * (X1.scale(-p.s) - X2.scale(p.t)),
    )


def lie_derivative(p: LVParams, f: Poly) -> Poly:
    """Time derivative of ``f`` along the flow: sum of v_i * df/dx_i."""
    v = lv_vector_field(p)
    return v.v1 * partial(f, 1) + v.v2 * partial(f, 2) + v.v3 * partial(f, 3)


def cofactor_of(p: LVParams, f: Poly) -> LinForm | None:
    """The linear cofactor of ``f``, or None if ``f`` is not a Darboux polynomial.

    A zero LinForm means ``f`` is a first integral. Quotients that are not
    constant-free linear forms are rejected.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has no cofactor")
    lf = lie_derivative(p, f)
    if lf.is_zero():
        return LinForm()
    q = try_divide(lf, f)
    if q is None:
        return None
    return LinForm.from_poly(q)


def is_first_integral(p: LVParams, f: Poly) -> bool:
    return lie_derivative(p, f).is_zero()


def poisson_bracket(p: LVParams, f: Poly, g: Poly) -> Poly:
    f1, f2, f3 = (partial(f, k) for k in (1, 2, 3))
    g1, g2, g3 = (partial(g, k) for k in (1, 2, 3))
    return (
        (X1 * X2).scale(p.r) * (f1 * g2 - f2 * g1)
        + (X1 * X3).scale(p.s) * (f1 * g3 - f3 * g1)
        + (X2 * X3).scale(p.t) * (f2 * g3 - f3 * g2)
    )


def hamiltonian_consistency(p: LVParams) -> bool:
    """Check {x_i, H} == v_i for i = 1, 2, 3."""
    v = lv_vector_field(p)
    return all(poisson_bracket(p, xi, H) == vi for xi, vi in zip((X1, X2, X3), v))


def jacobi_sum(p: LVParams, f: Poly = X1, g: Poly = X2, h: Poly = X3) -> Poly:
    """{f,{g,h}} + {g,{h,f}} + {h,{f,g}}; identically zero for a Poisson bracket."""
    pb = lambda a, b: poisson_bracket(p, a, b)  # noqa: E731
    return pb(f, pb(g, h)) + pb(g, pb(h, f)) + pb(h, pb(f, g))


def laurent_bracket_residuals(p: LVParams, exponents: tuple[int, int, int]) -> list[Poly]:
    """Polynomial form of {x_i, x^a} for a Laurent monomial x^a, i = 1..3.

    With x^a = M / D where M, D are honest monomials, the quotient rule gives
    {x_i, M/D} = ({x_i, M} D - M {x_i, D}) / D^2; the numerators are returned.
    All three vanish iff x^a is a Casimir.
    """
    shift = tuple(max(0, -a) for a in exponents)
    num = Poly.monomial(tuple(a + d for a, d in zip(exponents, shift)))
    den = Poly.monomial(shift) if any(shift) else ONE
    out = []
    for xi in (X1, X2, X3):
        out.append(poisson_bracket(p, xi, num) * den - num * poisson_bracket(p, xi, den))
    return out
