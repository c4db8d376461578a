import itertools

import pytest

from nilherm.catalog import builtin
from nilherm.forms import (
    Form,
    coeff_norm_sq,
    conjugate,
    d_bar,
    d_holo,
    differential,
    permutation_sign,
    project,
    wedge,
)
from nilherm.scalars import ModeError, QQi

from gen import random_bihomogeneous, random_form, rng_for, valid_algebra

IWA = builtin("iwasawa").algebra
KT = builtin("kodaira-thurston").algebra


def a(n, holo=(), anti=(), c=1):
    return Form.basis(n, holo, anti, c)


# wedge ----------------------------------------------------------------------


def test_wedge_repeated_index(backend):
    assert wedge(Form.alpha(2, 1), Form.alpha(2, 1)).is_zero()


def test_wedge_canonical_order(backend):
    assert wedge(Form.alpha(2, 1), Form.alpha_bar(2, 1)) == a(2, (1,), (1,))
    assert wedge(Form.alpha_bar(2, 1), Form.alpha(2, 1)) == a(2, (1,), (1,), -1)


def test_wedge_square_of_kahler_form(backend):
    w = a(2, (1,), (1,)) + a(2, (2,), (2,))
    assert wedge(w, w) == a(2, (1, 2), (1, 2), -2)


def test_wedge_mode_mismatch():
    with pytest.raises(ModeError):
        wedge(Form.alpha(2, 1), Form.alpha(2, 2, exact=False))


def _factor_sign_oracle(factors, n):
    """Product of basis 1-forms by permutation sign of the concatenated positions."""
    pos = []
    for kind, i in factors:
        pos.append(i - 1 if kind == "h" else n + i - 1)
    return permutation_sign(pos), pos


def test_wedge_permutation_sign_oracle(backend):
    n = 3
    letters = [("h", i) for i in range(1, n + 1)] + [("a", i) for i in range(1, n + 1)]
    for r in range(1, 5):
        for combo in itertools.permutations(letters, r):
            f = Form.one(n)
            for kind, i in combo:
                f = wedge(f, Form.alpha(n, i) if kind == "h" else Form.alpha_bar(n, i))
            sign, pos = _factor_sign_oracle(combo, n)
            mask = sum(1 << p for p in pos)
            assert f.terms == {mask: QQi(sign)}


def test_wedge_graded_commutative_and_associative(backend):
    rng = rng_for(3)
    for _ in range(100):
        n = rng.randint(1, 4)
        p, q = rng.randint(0, min(3, 2 * n)), rng.randint(0, min(3, 2 * n))
        x, y, z = random_form(rng, n, degree=p), random_form(rng, n, degree=q), random_form(rng, n)
        assert wedge(x, y) == wedge(y, x).scale((-1) ** (p * q))
        assert wedge(wedge(x, y), z) == wedge(x, wedge(y, z))


# differential -----------------------------------------------------------------


def test_differential_examples(backend):
    assert differential(Form.alpha(3, 1), IWA).is_zero()
    assert differential(Form.alpha(3, 3), IWA) == a(3, (1, 2))
    assert differential(a(3, (1, 3), (1, 3)), IWA).is_zero()


def test_differential_of_conjugate_generator(backend):
    assert differential(Form.alpha_bar(3, 3), IWA) == conjugate(a(3, (1, 2)))
    assert differential(Form.alpha_bar(2, 2), KT) == conjugate(a(2, (1,), (1,)))


def test_leibniz_and_d_squared(backend):
    rng = rng_for(4)
    for _ in range(60):
        A = valid_algebra(rng)
        n = A.n
        p = rng.randint(0, 3)
        x, y = random_form(rng, n, degree=p), random_form(rng, n)
        lhs = differential(wedge(x, y), A)
        rhs = wedge(differential(x, A), y) + wedge(x, differential(y, A)).scale((-1) ** p)
        assert lhs == rhs
        assert differential(differential(x, A), A).is_zero()


def test_dbar_d_decomposition(backend):
    rng = rng_for(5)
    for _ in range(60):
        A = valid_algebra(rng)
        x = random_bihomogeneous(rng, A.n, rng.randint(0, 2), rng.randint(0, 2))
        assert differential(x, A) == d_holo(x, A) + d_bar(x, A)
        assert d_holo(d_holo(x, A), A).is_zero()
        assert d_bar(d_bar(x, A), A).is_zero()
        assert d_holo(d_bar(x, A), A) == -d_bar(d_holo(x, A), A)


# projection, conjugation, norm -----------------------------------------------------


def test_project_examples():
    assert project(differential(Form.alpha(2, 2), KT), 1, 1) == a(2, (1,), (1,))
    assert project(differential(Form.alpha(3, 3), IWA), 2, 0) == a(3, (1, 2))
    assert project(a(2, (1,), (1,)), 0, 2).is_zero()


def test_projections_reconstruct():
    rng = rng_for(6)
    for _ in range(50):
        phi = random_form(rng, 3, terms=5)
        total = Form.zero(3)
        for p in range(4):
            for q in range(4):
                total = total + project(phi, p, q)
        assert total == phi


def test_conjugate_examples():
    assert conjugate(a(2, (1,), (1,))) == a(2, (1,), (1,), -1)
    assert conjugate(a(2, (1, 2))) == a(2, (), (1, 2))
    rng = rng_for(7)
    for _ in range(50):
        phi = random_form(rng, 3)
        assert conjugate(conjugate(phi)) == phi


def test_conjugate_commutes_with_d(backend):
    rng = rng_for(8)
    for _ in range(50):
        A = valid_algebra(rng)
        phi = random_form(rng, A.n)
        assert conjugate(differential(phi, A)) == differential(conjugate(phi), A)


def test_coeff_norm_sq():
    assert coeff_norm_sq(Form.zero(2)) == 0
    assert coeff_norm_sq(a(2, (1, 2)) - a(2, (1,), (1,))) == 2
    assert coeff_norm_sq(a(2, (1, 2), (1, 2), 2)) == 4
    assert coeff_norm_sq(a(2, (1,), (), QQi(1, 1))) == 2


def test_float_mode_roundtrip():
    phi = a(2, (1,), (2,), QQi("1/2"))
    f = phi.to_float()
    assert not f.exact
    assert coeff_norm_sq(f) == pytest.approx(0.25)
