import json

import pytest

from nilherm.algebra import (
    AlgebraError,
    ComplexNilAlgebra,
    NormalForm,
    NormalFormFailure,
    change_coframe,
    nilpotency_step,
    to_normal_form,
    validate,
)
from nilherm.catalog import CATALOG, builtin
from nilherm.forms import Form, differential
from nilherm.scalars import QQi

from gen import nonabelian_normal_form, normal_form_algebra, random_change, random_form, rng_for, valid_algebra


def alg(n, tz=None, oo=None, name="t"):
    return ComplexNilAlgebra(n, name, {k: QQi(v) for k, v in (tz or {}).items()}, {k: QQi(v) for k, v in (oo or {}).items()})


# validation -------------------------------------------------------------------------


def test_validate_abelian():
    assert validate(alg(2)).valid


def test_validate_iwasawa():
    assert validate(builtin("iwasawa").algebra).valid


def test_d2a13_d3a12_is_valid_but_not_nilpotent():
    # d(alpha^1 ^ alpha^2) = -alpha^1 ^ alpha^13 vanishes, so d^2 = 0 here
    A = alg(3, tz={(2, 1, 3): 1, (3, 1, 2): 1})
    assert validate(A).valid
    with pytest.raises(AlgebraError, match="not nilpotent"):
        nilpotency_step(A)


def test_validate_rejects_jacobi_failure():
    A = alg(3, oo={(2, 1, 1): 1, (3, 2, 2): 1})
    rep = validate(A)
    assert not rep.valid
    assert set(rep.failures()) == {3}
    assert rep.failures()[3] == differential(differential(Form.alpha(3, 3), A), A)


def test_index_out_of_range():
    with pytest.raises(AlgebraError):
        alg(2, oo={(3, 1, 1): 1})


def test_two_zero_requires_r_less_than_s():
    with pytest.raises(AlgebraError):
        alg(3, tz={(3, 2, 1): 1})


def test_catalog_entries_valid():
    for e in CATALOG:
        assert validate(e.algebra).valid, e.name


# nilpotency ---------------------------------------------------------------------------


@pytest.mark.parametrize("name,step", [("torus", 1), ("kodaira-thurston", 2), ("iwasawa", 2)])
def test_nilpotency_examples(name, step):
    assert nilpotency_step(builtin(name).algebra) == step


def test_three_step():
    A = alg(3, oo={(2, 1, 1): 1}, tz={(3, 1, 2): 1})
    assert validate(A).valid
    assert nilpotency_step(A) == 3


def test_step_invariant_under_coframe_change():
    rng = rng_for(11)
    for _ in range(40):
        A = valid_algebra(rng)
        P = random_change(rng, A.n, lower=rng.random() < 0.5)
        assert nilpotency_step(change_coframe(A, P)) == nilpotency_step(A)


def test_step_one_iff_abelian():
    rng = rng_for(12)
    for _ in range(40):
        A = valid_algebra(rng)
        assert (nilpotency_step(A) == 1) == A.is_abelian()


# normal form ----------------------------------------------------------------------------


def test_normal_form_kt_and_iwasawa():
    nf = to_normal_form(builtin("kt").algebra)
    assert isinstance(nf, NormalForm) and nf.k == 1 and nf.change.is_identity()
    nf = to_normal_form(builtin("iwasawa").algebra)
    assert isinstance(nf, NormalForm) and nf.k == 2 and nf.change.is_identity()


def test_normal_form_failure_is_a_value():
    A = alg(3, oo={(2, 1, 1): 1, (3, 1, 1): 1, (3, 1, 2): 1, (3, 2, 1): 1})
    assert validate(A).valid
    res = to_normal_form(A)
    assert isinstance(res, NormalFormFailure) and not res
    assert res.reason.startswith("no adapted coframe")
    assert res.k == 1
    assert ("oneOne", 3, 1, 2) in res.offending and ("oneOne", 3, 2, 1) in res.offending


def test_normal_form_recovers_hidden_shape():
    rng = rng_for(13)
    for _ in range(40):
        A, k = nonabelian_normal_form(rng)
        B = change_coframe(A, random_change(rng, A.n))
        nf = to_normal_form(B)
        assert isinstance(nf, NormalForm)
        again = to_normal_form(nf.base)
        assert again.change.is_identity() and again.k == nf.k
        # the recorded change really maps B to the normal form
        assert change_coframe(B, nf.change).constants_equal(nf.base)


def test_normal_form_k_is_dim_closed_forms():
    rng = rng_for(14)
    for _ in range(30):
        A, _ = nonabelian_normal_form(rng)
        nf = to_normal_form(A)
        closed = [j for j in range(1, A.n + 1) if differential(Form.alpha(A.n, j), nf.base).is_zero()]
        assert closed == list(range(1, nf.k + 1))


# file format ------------------------------------------------------------------------------


def test_roundtrip():
    rng = rng_for(15)
    for _ in range(30):
        A, _ = normal_form_algebra(rng)
        assert ComplexNilAlgebra.loads(A.dumps()) == A


def test_parse_decimal_and_fraction():
    text = json.dumps({"name": "x", "n": 2, "twoZero": [], "oneOne": [{"j": 2, "r": 1, "s": 1, "re": "0.5", "im": "-1/3"}]})
    A = ComplexNilAlgebra.loads(text)
    assert A.c11(2, 1, 1) == QQi("1/2", "-1/3")


def test_duplicate_keys_rejected():
    entry = {"j": 2, "r": 1, "s": 1, "re": "1", "im": "0"}
    text = json.dumps({"name": "x", "n": 2, "twoZero": [], "oneOne": [entry, entry]})
    with pytest.raises(ValueError):
        ComplexNilAlgebra.loads(text)


def test_bad_rational_rejected():
    text = json.dumps({"name": "x", "n": 2, "twoZero": [], "oneOne": [{"j": 2, "r": 1, "s": 1, "re": "e", "im": "0"}]})
    with pytest.raises(ValueError):
        ComplexNilAlgebra.loads(text)


def test_d2_zero_on_random_one_forms():
    rng = rng_for(16)
    for _ in range(30):
        A = valid_algebra(rng)
        phi = random_form(rng, A.n, degree=1)
        assert differential(differential(phi, A), A).is_zero()
