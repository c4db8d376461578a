"""End-to-end acceptance criteria; one PASS/FAIL line per criterion is printed in the summary."""

import os
import subprocess
import sys
import time

import pytest

from nilherm.algebra import NormalForm, change_coframe, to_normal_form
from nilherm.catalog import CATALOG, builtin
from nilherm.forms import conjugate, d_bar, d_holo, differential, wedge
from nilherm.metrics import HermitianMetric, classify, fundamental_form, skt_reduced_coefficients, sktnew_value, unitarize
from nilherm.search import FEASIBLE, INFEASIBLE, SearchOptions, find_balanced_metric, find_skt_metric
from nilherm.verifier import quadratic_identity, theorem_sweep

from gen import (
    normal_form_algebra,
    random_bihomogeneous,
    random_change,
    random_form,
    random_pd,
    rng_for,
    valid_algebra,
)

RESULTS: dict[int, str] = {}
TOL = 1e-9


def record(n, ok, detail):
    RESULTS[n] = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    print(RESULTS[n])
    assert ok, RESULTS[n]


def test_1_calculus_soundness():
    rng = rng_for(1001)
    failures = instances = 0
    t0 = time.perf_counter()
    while instances < 1000:
        A = valid_algebra(rng)
        n = A.n
        p, q = rng.randint(0, 2), rng.randint(0, 2)
        x = random_bihomogeneous(rng, n, p, q)
        y = random_form(rng, n)
        dx = differential(x, A)
        ok = differential(dx, A).is_zero()
        ok &= differential(wedge(x, y), A) == wedge(dx, y) + wedge(x, differential(y, A)).scale((-1) ** (p + q))
        ok &= dx == d_holo(x, A) + d_bar(x, A)
        ok &= d_holo(d_holo(x, A), A).is_zero() and d_bar(d_bar(x, A), A).is_zero()
        ok &= conjugate(differential(y, A)) == differential(conjugate(y), A)
        failures += not ok
        instances += 1
    record(1, failures == 0, f"{instances} exact instances, {failures} failures ({time.perf_counter() - t0:.1f}s)")


def test_2_coefficient_oracle():
    rng = rng_for(1002)
    mismatches = 0
    count = 0
    while count < 200:
        n = rng.randint(2, 4)
        A, k = normal_form_algebra(rng, n=n, k=rng.randint(1, min(2, n - 1)))
        H = random_pd(rng, n)
        ddbar = d_holo(d_bar(fundamental_form(H), A), A)
        for (r, s), v in skt_reduced_coefficients(NormalForm(A, k, None), H).items():
            if ddbar.coefficient((r, s), (r, s)) != v:
                mismatches += 1
        count += 1
    record(2, mismatches == 0, f"{count} random normal forms (k <= 2), {mismatches} coefficient mismatches")


def test_3_quadratic_identity():
    rng = rng_for(1003)
    bad_eq = bad_zero = 0
    abelian_seen = 0
    for i in range(220):
        A, k = normal_form_algebra(rng, density=0.15 if i % 4 == 0 else 0.5)
        nf = NormalForm(A, k, None)
        H = random_pd(rng, A.n)
        lhs, rhs, eq = quadratic_identity(nf, H)
        bad_eq += not (eq and lhs == rhs)
        bad_zero += (sktnew_value(nf, H) == 0) != A.is_abelian()
        abelian_seen += A.is_abelian()
    record(3, bad_eq == 0 and bad_zero == 0,
           f"220 instances ({abelian_seen} abelian): {bad_eq} identity failures, {bad_zero} zero-iff-abelian failures")


def test_4_catalog_ground_truth():
    rng = rng_for(1004)
    opts = SearchOptions(tol=TOL)
    kt, iwa, torus = builtin("kt").algebra, builtin("iwasawa").algebra, builtin("torus").algebra
    problems = []
    for _ in range(50):
        mc = classify(random_pd(rng, 2), kt)
        if not mc.skt or mc.balanced:
            problems.append("kt metric misclassified")
    if find_balanced_metric(kt, opts).status != INFEASIBLE:
        problems.append("kt balanced search not certified infeasible")
    if not classify(HermitianMetric.identity(3), iwa).balanced:
        problems.append("iwasawa identity not balanced")
    rep = find_skt_metric(iwa, opts)
    if rep.status != INFEASIBLE or "a_{33̄} = 0" not in rep.certificate["text"]:
        problems.append("iwasawa skt certificate missing")
    for _ in range(50):
        if not classify(random_pd(rng, 3), torus).kahler:
            problems.append("torus metric not Kähler")
    record(4, not problems, "KT/Iwasawa/torus ground truth" + (f": {problems[:3]}" if problems else " matches"))


def _random_two_step(rng, i):
    A, _ = normal_form_algebra(rng, name=f"rand-{i:03d}")
    if i % 2:
        A = change_coframe(A, random_change(rng, A.n), name=A.name)
    return A


def test_5_theorem_sweep():
    rng = rng_for(1005)
    randoms = [_random_two_step(rng, i) for i in range(110)]
    t0 = time.perf_counter()
    res = theorem_sweep(list(CATALOG) + randoms, SearchOptions(seeds=4, max_iter=150, tol=TOL))
    bad = [r.algebra for r in res.rows if not r.consistent]
    record(5, not bad and len(res.rows) == 116,
           f"{len(res.rows)} rows, {len(bad)} inconsistent ({time.perf_counter() - t0:.1f}s)")


def test_6_one_metric_kahler_fact():
    rng = rng_for(1006)
    offenders = 0
    checked = 0
    for _ in range(400):
        A = valid_algebra(rng)
        mc = classify(random_pd(rng, A.n), A)
        offenders += mc.skt and mc.balanced and not mc.kahler
        checked += 1
    for i in range(40):
        A = _random_two_step(rng, i)
        for finder in (find_skt_metric, find_balanced_metric):
            rep = finder(A, SearchOptions(seeds=2, max_iter=100))
            if rep.status == FEASIBLE:
                mc = classify(rep.witness, A)
                offenders += mc.skt and mc.balanced and not mc.kahler
                checked += 1
    record(6, offenders == 0, f"{checked} metrics classified, {offenders} SKT+balanced non-Kähler")


def test_7_unitarizer():
    rng = rng_for(1007)
    bad = 0
    for _ in range(200):
        A, _ = normal_form_algebra(rng)
        nf = to_normal_form(A)
        H = random_pd(rng, A.n)
        new, T = unitarize(nf, H)
        ok = H.in_coframe(T) == HermitianMetric.identity(A.n)
        ok &= T.is_lower_triangular()
        again = to_normal_form(new.base)
        ok &= again.k == nf.k and again.change.is_identity()
        ok &= classify(H, A).balanced == classify(HermitianMetric.identity(A.n), new.base).balanced
        bad += not ok
    record(7, bad == 0, f"200 random metrics, {bad} failures (identity / flag / balanced invariance)")


def test_8_determinism():
    commands = [
        ["search", "skt-not-balanced-6d", "--target", "both", "--format", "structured"],
        ["search", "balanced-not-skt-6d", "--target", "balanced", "--method", "descent"],
        ["verify", "iwasawa", "--format", "structured"],
        ["verify", "kodaira-thurston"],
    ]
    differing = []
    for argv in commands:
        outs = []
        for hashseed in ("1", "2"):
            env = dict(os.environ, PYTHONHASHSEED=hashseed)
            proc = subprocess.run([sys.executable, "-m", "nilherm.cli", *argv], capture_output=True, env=env)
            outs.append((proc.returncode, proc.stdout))
        if outs[0] != outs[1]:
            differing.append(" ".join(argv))
    record(8, not differing, f"{len(commands)} commands run twice in fresh processes, {len(differing)} differ")
