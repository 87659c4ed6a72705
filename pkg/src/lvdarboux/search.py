"""Exhaustive search for homogeneous Darboux polynomials of a fixed degree.

Every homogeneous Darboux polynomial of degree m has a cofactor whose
coefficients are drawn from

    alpha = -(a1 r + a2 s),  beta = b1 r - b2 t,  gamma = c1 s + c2 t

with a1 + a2, b1 + b2, c1 + c2 <= m. For each such candidate the equation
L(f) = lambda f is linear in the C(m+2, 2) coefficients of f, so the search
reduces to one exact kernel computation per candidate.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from . import linalg
from .lv import LVParams, lie_derivative
from .poly import LinForm, Poly, euler_check, monomials_of_degree, to_json

IndexPair = tuple[int, int]


@dataclass(frozen=True)
class CofactorCandidate:
    """A lattice cofactor and every index pair that produces each coefficient."""

    value: LinForm
    alpha_indices: tuple[IndexPair, ...]
    beta_indices: tuple[IndexPair, ...]
    gamma_indices: tuple[IndexPair, ...]


@dataclass
class SearchResult:
    degree: int
    cofactor: LinForm
    basis: list[Poly]
    candidate: CofactorCandidate | None = field(default=None, compare=False, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "cofactor": self.cofactor.to_json(),
            "basis": [to_json(f) for f in self.basis],
        }


def linform_key(form: LinForm) -> tuple[Fraction, Fraction, Fraction]:
    return form.as_tuple()


def _pairs(m: int) -> list[IndexPair]:
    return [(i, j) for i in range(m + 1) for j in range(m + 1 - i)]


def _group(values: dict[IndexPair, Fraction]) -> dict[Fraction, tuple[IndexPair, ...]]:
    out: dict[Fraction, list[IndexPair]] = {}
    for pair, v in values.items():
        out.setdefault(v, []).append(pair)
    return {v: tuple(sorted(ps)) for v, ps in out.items()}


def lattice_candidates(p: LVParams, m: int) -> list[CofactorCandidate]:
    if m < 0:
        raise ValueError("degree must be non-negative")
    pairs = _pairs(m)
    alphas = _group({(a1, a2): -(a1 * p.r + a2 * p.s) for a1, a2 in pairs})
    betas = _group({(b1, b2): b1 * p.r - b2 * p.t for b1, b2 in pairs})
    gammas = _group({(c1, c2): c1 * p.s + c2 * p.t for c1, c2 in pairs})
    cands = [
        CofactorCandidate(LinForm(a, b, c), alphas[a], betas[b], gammas[c])
        for a, b, c in itertools.product(sorted(alphas), sorted(betas), sorted(gammas))
    ]
    return cands


def cofactor_lattice(p: LVParams, m: int) -> list[LinForm]:
    """Distinct candidate cofactors for degree ``m``, in canonical order."""
    return [c.value for c in lattice_candidates(p, m)]


@lru_cache(maxsize=256)
def _lie_matrix(p: LVParams, m: int) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[int, ...]]:
    """Matrix of L restricted to degree-m forms, and the denominator scale.

    Rows are degree-(m+1) monomials, columns degree-m monomials, both in
    descending graded-lex order.
    """
    cols = monomials_of_degree(m)
    rows = monomials_of_degree(m + 1)
    row_index = {e: i for i, e in enumerate(rows)}
    mat = [[Fraction(0)] * len(cols) for _ in rows]
    for j, e in enumerate(cols):
        for out_e, c in lie_derivative(p, Poly.monomial(e)).terms():
            mat[row_index[out_e]][j] = c
    scale = lcm(p.r.denominator, p.s.denominator, p.t.denominator)
    return tuple(tuple(r) for r in mat), (scale,)


def _shift_positions(m: int) -> list[list[tuple[int, int]]]:
    cols = monomials_of_degree(m)
    row_index = {e: i for i, e in enumerate(monomials_of_degree(m + 1))}
    out = []
    for axis in range(3):
        pos = []
        for j, e in enumerate(cols):
            bumped = list(e)
            bumped[axis] += 1
            pos.append((row_index[tuple(bumped)], j))
        out.append(pos)
    return out


def _system(p: LVParams, m: int, lam: LinForm) -> list[list[int]]:
    """Integer matrix whose kernel is {f of degree m : L(f) = lam f}."""
    base, (scale,) = _lie_matrix(p, m)
    mat = [list(r) for r in base]
    for axis, coef in enumerate(lam.as_tuple()):
        if coef:
            for i, j in _shift_positions(m)[axis]:
                mat[i][j] -= coef
    return [[int(v * scale) for v in row] for row in mat]


def _basis_to_polys(m: int, vectors: list[list[Fraction]]) -> list[Poly]:
    cols = monomials_of_degree(m)
    return [Poly(dict(zip(cols, v))) for v in vectors]


def darboux_nullspace(p: LVParams, m: int, lam: LinForm) -> list[Poly]:
    """Basis (canonical RREF) of degree-m forms f with L(f) = lam * f."""
    if m < 0:
        raise ValueError("degree must be non-negative")
    ncols = len(monomials_of_degree(m))
    return _basis_to_polys(m, linalg.nullspace(_system(p, m, lam), ncols))


def _prefilter(p: LVParams, m: int, cands: list[CofactorCandidate], chunk: int = 2048) -> list[CofactorCandidate]:
    """Drop candidates whose system has full column rank modulo a prime."""
    if not cands:
        return []
    base, (scale,) = _lie_matrix(p, m)
    P = linalg.PRIME
    A = np.array([[int(v * scale) % P for v in row] for row in base], dtype=np.int64)
    shifts = np.zeros((3,) + A.shape, dtype=np.int64)
    for axis, pos in enumerate(_shift_positions(m)):
        for i, j in pos:
            shifts[axis, i, j] = 1
    ncols = A.shape[1]
    keep = []
    for start in range(0, len(cands), chunk):
        part = cands[start:start + chunk]
        lam = np.array([[int(v * scale) % P for v in c.value.as_tuple()] for c in part], dtype=np.int64)
        mats = A[None, :, :] - np.einsum("ka,aij->kij", lam, shifts)
        ranks = linalg.batch_rank_mod_p(np.mod(mats, P), P)
        keep.extend(c for c, rk in zip(part, ranks) if rk < ncols)
    return keep


def _solve(p: LVParams, m: int, cand: CofactorCandidate) -> SearchResult | None:
    basis = darboux_nullspace(p, m, cand.value)
    if not basis:
        return None
    lam = cand.value.as_poly()
    for f in basis:
        if lie_derivative(p, f) != lam * f or not euler_check(f):
            raise AssertionError(f"kernel element failed verification: {f}")
    return SearchResult(m, cand.value, basis, cand)


def search(p: LVParams, m: int, workers: int | None = None) -> list[SearchResult]:
    """All cofactors of degree-m Darboux polynomials with their solution spaces.

    ``workers`` > 1 solves the surviving candidate systems in a thread pool;
    the output is sorted by cofactor either way.
    """
    if m < 1:
        raise ValueError("search degree must be at least 1")
    survivors = _prefilter(p, m, lattice_candidates(p, m))
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            solved = list(pool.map(lambda c: _solve(p, m, c), survivors))
    else:
        solved = [_solve(p, m, c) for c in survivors]
    results = [r for r in solved if r is not None]
    results.sort(key=lambda r: linform_key(r.cofactor))
    return results


def search_all(p: LVParams, m_max: int, workers: int | None = None) -> list[SearchResult]:
    if m_max < 1:
        raise ValueError("maximum degree must be at least 1")
    out: list[SearchResult] = []
    for m in range(1, m_max + 1):
        out.extend(search(p, m, workers=workers))
    return out


def in_span(f: Poly, basis: list[Poly]) -> bool:
    """True iff ``f`` reduces to zero against an RREF basis."""
    rem = f
    for b in basis:
        lead, _ = b.leading()
        c = rem.coeff(lead)
        if c:
            rem = rem - b.scale(c)
    return rem.is_zero()


def find_result(results: list[SearchResult], degree: int, cofactor: LinForm) -> SearchResult | None:
    for r in results:
        if r.degree == degree and r.cofactor == cofactor:
            return r
    return None
