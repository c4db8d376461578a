"""Random exact instances shared by the test modules."""

import random
from itertools import combinations

from nilherm import linalg
from nilherm.algebra import CoframeChange, ComplexNilAlgebra, change_coframe, validate
from nilherm.forms import Form
from nilherm.metrics import HermitianMetric
from nilherm.scalars import QQi

SMALL = [0, 0, 1, -1, 2, -2, "1/2", "-1/3", "3/2"]


def rand_q(rng, allow_zero=True):
    while True:
        re = QQi.parse(str(rng.choice(SMALL)))
        im = QQi.parse(str(rng.choice(SMALL))) if rng.random() < 0.4 else QQi()
        z = re + im * QQi(0, 1)
        if z or allow_zero:
            return z


def normal_form_algebra(rng, n=None, k=None, density=0.5, name="rand"):
    """2-step algebra already in normal form: d alpha^j (j > k) built from alpha^1..alpha^k."""
    n = n or rng.randint(2, 4)
    k = k or rng.randint(1, n - 1)
    tz, oo = {}, {}
    for j in range(k + 1, n + 1):
        for r, s in combinations(range(1, k + 1), 2):
            if rng.random() < density:
                tz[(j, r, s)] = rand_q(rng, False)
        for r in range(1, k + 1):
            for s in range(1, k + 1):
                if rng.random() < density:
                    oo[(j, r, s)] = rand_q(rng, False)
    return ComplexNilAlgebra(n, name, tz, oo), k


def nonabelian_normal_form(rng, n=None, k=None, name="rand"):
    while True:
        A, k2 = normal_form_algebra(rng, n, k, name=name)
        if not A.is_abelian():
            return A, k2


def triangular_algebra(rng, n=None, density=0.35, name="tri"):
    """Random d alpha^j built from indices < j, kept only when d^2 = 0 (may be 3-step)."""
    n = n or rng.randint(2, 4)
    while True:
        tz, oo = {}, {}
        for j in range(2, n + 1):
            for r, s in combinations(range(1, j), 2):
                if rng.random() < density:
                    tz[(j, r, s)] = rand_q(rng, False)
            for r in range(1, j):
                for s in range(1, j):
                    if rng.random() < density:
                        oo[(j, r, s)] = rand_q(rng, False)
        A = ComplexNilAlgebra(n, name, tz, oo)
        if validate(A).valid:
            return A


def random_change(rng, n, lower=False):
    while True:
        P = [[rand_q(rng) for _ in range(n)] for _ in range(n)]
        if lower:
            for i in range(n):
                for j in range(i + 1, n):
                    P[i][j] = QQi()
        if linalg.det(P):
            return CoframeChange.from_matrix(P)


def valid_algebra(rng, n=None):
    """A valid algebra in a random coframe (normal form, triangular, or changed)."""
    choice = rng.random()
    if choice < 0.4:
        A, _ = normal_form_algebra(rng, n)
    elif choice < 0.7:
        A = triangular_algebra(rng, n)
    else:
        A, _ = normal_form_algebra(rng, n)
        A = change_coframe(A, random_change(rng, A.n))
    return A


def random_pd(rng, n):
    """a = T^* T + diag(1/2) with T random lower triangular: exactly positive definite."""
    T = [[rand_q(rng) if j <= i else QQi() for j in range(n)] for i in range(n)]
    a = [[QQi() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = QQi("1/2") if i == j else QQi()
            for m in range(n):
                acc = acc + T[m][i].conjugate() * T[m][j]
            a[i][j] = acc
    return HermitianMetric(n, a)


def random_form(rng, n, terms=3, degree=None):
    phi = Form.zero(n)
    for _ in range(terms):
        deg = degree if degree is not None else rng.randint(0, min(4, 2 * n))
        bits = rng.sample(range(2 * n), deg)
        holo = [b + 1 for b in bits if b < n]
        anti = [b - n + 1 for b in bits if b >= n]
        phi = phi + Form.basis(n, holo, anti, rand_q(rng, False))
    return phi


def random_bihomogeneous(rng, n, p, q, terms=3):
    phi = Form.zero(n)
    if p > n or q > n:
        return phi
    for _ in range(terms):
        holo = rng.sample(range(1, n + 1), p)
        anti = rng.sample(range(1, n + 1), q)
        phi = phi + Form.basis(n, holo, anti, rand_q(rng, False))
    return phi


def rng_for(seed):
    return random.Random(seed)
