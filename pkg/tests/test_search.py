import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from conftest import random_params
from lvdarboux.linalg import PRIME, batch_rank_mod_p, nullspace, rank, rref
from lvdarboux.lv import KM, PERIODIC_KM, LVParams, lie_derivative
from lvdarboux.poly import X1, X2, X3, LinForm, euler_check, parse_poly, try_divide
from lvdarboux.search import (
    cofactor_lattice,
    darboux_nullspace,
    find_result,
    in_span,
    lattice_candidates,
    search,
    search_all,
)
from lvdarboux.structure import alpha_beta_hypothesis
from oracles import dense_nullity
from tables import KM_ROWS, PERIODIC_ROWS, S_EQ_T, S_EQ_T_ROWS, expand_rows

H = X1 + X2 + X3


def test_lattice_examples():
    km = cofactor_lattice(KM, 1)
    assert len(km) == 12
    assert set(km) == {LinForm(a, b, c) for a, b, c in product((0, -1), (-1, 0, 1), (0, 1))}
    assert {LinForm(0, 1, 0), LinForm(-1, 0, 1), LinForm(0, -1, 0), LinForm()} <= set(km)
    assert cofactor_lattice(LVParams(3, 4, 5), 0) == [LinForm()]
    assert LinForm(0, 0, 1) in cofactor_lattice(S_EQ_T, 1)


def test_lattice_degenerate_params():
    assert cofactor_lattice(LVParams(0, 0, 0), 3) == [LinForm()]


def test_lattice_annotations():
    for cand in lattice_candidates(LVParams(2, 1, 1), 2):
        for a1, a2 in cand.alpha_indices:
            assert cand.value.alpha == -(a1 * 2 + a2 * 1)
            assert a1 + a2 <= 2


def test_nullspace_examples():
    assert darboux_nullspace(KM, 1, LinForm(0, 1, 0)) == [X1]
    basis = darboux_nullspace(KM, 2, LinForm())
    assert len(basis) == 2
    assert in_span(X1 * X3, basis) and in_span(H**2, basis)
    assert darboux_nullspace(KM, 1, LinForm(1, 0, 0)) == []


def test_search_examples():
    km = search(KM, 1)
    assert {r.cofactor for r in km} == {LinForm(0, 1, 0), LinForm(-1, 0, 1), LinForm(0, -1, 0), LinForm()}
    assert all(r.dimension == 1 for r in km)
    periodic = search(PERIODIC_KM, 1)
    assert {r.cofactor for r in periodic} == {LinForm(0, 1, -1), LinForm(-1, 0, 1), LinForm(1, -1, 0), LinForm()}
    hit = find_result(search(S_EQ_T, 1), 1, LinForm(0, 0, 1))
    assert hit is not None and in_span(X1 + X2, hit.basis)


def test_search_rejects_degree_zero():
    with pytest.raises(ValueError):
        search(KM, 0)


@pytest.mark.parametrize(
    "params, rows",
    [(KM, KM_ROWS), (PERIODIC_KM, PERIODIC_ROWS), (S_EQ_T, S_EQ_T_ROWS)],
    ids=["KM", "periodic KM", "s=t"],
)
def test_search_all_covers_tables(params, rows):
    results = search_all(params, 3)
    for table, row, text, cof in expand_rows(rows):
        f = parse_poly(text)
        lam = LinForm.from_poly(parse_poly(cof)) or LinForm()
        hit = find_result(results, f.degree(), lam)
        assert hit is not None and in_span(f, hit.basis), (table, row)


def test_km_cubic_first_integrals_beyond_tables():
    # degree-3 first integrals exist for KM though no table row lists them
    hit = find_result(search(KM, 3), 3, LinForm())
    assert hit.dimension == 2
    assert in_span(H**3, hit.basis) and in_span(X1 * X3 * H, hit.basis)


def test_basis_is_canonical_rref():
    for res in search_all(PERIODIC_KM, 3):
        lead = [f.leading() for f in res.basis]
        assert all(c == 1 for _, c in lead)
        pivots = [e for e, _ in lead]
        assert pivots == sorted(pivots, reverse=True) and len(set(pivots)) == len(pivots)
        for f in res.basis:
            for e in pivots:
                if e != f.leading()[0]:
                    assert f.coeff(e) == 0


def test_search_soundness_random(rng):
    for _ in range(10):
        p = random_params(rng)
        for res in search_all(p, 3):
            for f in res.basis:
                assert f.is_homogeneous() and f.degree() == res.degree
                assert lie_derivative(p, f) == res.cofactor.as_poly() * f
                assert euler_check(f)


def test_no_x3_power_term_when_gamma_nonzero(rng):
    for _ in range(15):
        p = random_params(rng)
        for res in search_all(p, 3):
            if res.cofactor.gamma != 0:
                assert all(f.coeff((0, 0, res.degree)) == 0 for f in res.basis)


def test_x2_divides_when_gamma_off_s_multiples(rng):
    checked = 0
    for _ in range(15):
        p = random_params(rng)
        if p.s == 0:
            continue
        for res in search_all(p, 3):
            g = res.cofactor.gamma
            if g != 0 and g not in {n * p.s for n in range(1, res.degree + 1)}:
                checked += 1
                assert all(try_divide(f, X2) is not None for f in res.basis)
    assert checked > 0


def test_alpha_beta_index_agreement(rng):
    applicable = 0
    for _ in range(15):
        p = random_params(rng)
        for res in search_all(p, 3):
            c = res.candidate
            pairs = [(a, b) for a in c.alpha_indices for b in c.beta_indices]
            ok = [(a, b) for a, b in pairs if alpha_beta_hypothesis(p, res.degree, *a, *b)]
            if ok:
                applicable += 1
                assert any(a[1] == b[1] for a, b in ok)
    print(f"index hypothesis applicable to {applicable} results")


@pytest.mark.parametrize("workers", [None, 1, 4])
def test_deterministic_order(workers):
    a = [r.to_json() for r in search_all(PERIODIC_KM, 3)]
    b = [r.to_json() for r in search_all(PERIODIC_KM, 3, workers=workers)]
    assert a == b


# -- elimination ---------------------------------------------------------------


def _random_int_matrix(rng, rows, cols, density=0.5):
    return [[rng.randint(-4, 4) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)]


def test_rank_and_nullspace_against_oracle():
    rng = random.Random(7)
    for _ in range(200):
        rows, cols = rng.randint(1, 7), rng.randint(1, 7)
        a = _random_int_matrix(rng, rows, cols)
        kernel = nullspace(a, cols)
        assert len(kernel) == dense_nullity([[Fraction(v) for v in row] for row in a])
        assert cols - rank(a) == len(kernel)
        for v in kernel:
            assert all(sum(Fraction(x) * y for x, y in zip(row, v)) == 0 for row in a)


def test_rref_is_reduced():
    rows = [[Fraction(2), Fraction(4), Fraction(0)], [Fraction(1), Fraction(2), Fraction(3)]]
    assert rref(rows) == [[1, 2, 0], [0, 0, 1]]


def test_modular_rank_matches_exact():
    rng = random.Random(11)
    mats = [_random_int_matrix(rng, 6, 5, 0.4) for _ in range(100)]
    got = batch_rank_mod_p(np.array(mats, dtype=np.int64) % PRIME)
    assert [int(g) for g in got] == [rank(m) for m in mats]
