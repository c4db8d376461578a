"""Step-by-step execution of the SKT + balanced => abelian argument on concrete data.

Given an algebra, a candidate balanced metric ``g`` and a candidate SKT
metric ``g2``, :func:`proof_chain` runs the argument mechanically and records
every intermediate quantity exactly:

    twoStepCheck -> normalForm -> unitarize -> balancedResiduals
    -> coefficientIdentity -> sktnewIdentity -> xVectors -> conclusion

When both hypotheses hold exactly the chain must end in ``forcedAbelian``;
on a non-abelian algebra it stops at the first hypothesis that fails.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Iterable

from .algebra import AlgebraError, ComplexNilAlgebra, NormalForm, nilpotency_step, to_normal_form, validate
from .metrics import (
    HermitianMetric,
    balanced_quadratic,
    balanced_residuals,
    classify,
    skt_reduced_coefficients,
    sktnew_value,
    unitarize,
)
from .scalars import QQi
from .search import FEASIBLE, SearchOptions, find_both

__all__ = [
    "ProofTrace",
    "STEP_NAMES",
    "SweepResult",
    "SweepRow",
    "TraceStep",
    "XVectorFamily",
    "proof_chain",
    "quadratic_identity",
    "theorem_sweep",
    "x_vectors",
]

STEP_NAMES = (
    "twoStepCheck",
    "normalForm",
    "unitarize",
    "balancedResiduals",
    "coefficientIdentity",
    "sktnewIdentity",
    "xVectors",
    "conclusion",
)


# X-vectors ---------------------------------------------------------------------


@dataclass
class XVectorFamily:
    """Vectors X_{rs} = sum_i c^i_{rs} X_i and X_{r sbar} = sqrt(2) sum_i c^i_{r sbar} X_i, i > k.

    The sqrt(2) is kept as the exact squared weight ``one_one_weight`` = 2.
    Components are stored for all n indices (zero for i <= k).
    """

    n: int
    k: int
    two_zero: dict[tuple[int, int], list]
    one_one: dict[tuple[int, int], list]
    one_one_weight: int = 2

    def is_zero(self) -> bool:
        return not any(x for vec in self.two_zero.values() for x in vec) and not any(
            x for vec in self.one_one.values() for x in vec
        )


def x_vectors(NF: NormalForm) -> XVectorFamily:
    A, k, n = NF.base, NF.k, NF.base.n
    tz, oo = {}, {}
    for r in range(1, k + 1):
        for s in range(1, k + 1):
            tz[(r, s)] = [A.c20(i, r, s) if i > k else QQi() for i in range(1, n + 1)]
            oo[(r, s)] = [A.c11(i, r, s) if i > k else QQi() for i in range(1, n + 1)]
    return XVectorFamily(n, k, tz, oo)


def quadratic_identity(NF: NormalForm, H: HermitianMetric) -> tuple[object, object, bool]:
    """(sum of omega(X, Xbar) over the X-vector family, sktnew_value, exact equality)."""
    fam = x_vectors(NF)
    lhs = QQi()
    for vec in fam.two_zero.values():
        lhs = lhs + H.pairing(vec)
    for vec in fam.one_one.values():
        lhs = lhs + fam.one_one_weight * H.pairing(vec)
    rhs = sktnew_value(NF, H)
    return lhs, rhs, lhs == rhs


# trace types -------------------------------------------------------------------


@dataclass
class TraceStep:
    step: str
    inputs_digest: str
    outcome: str  # "pass", "fail", "skipped"
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"step": self.step, "inputsDigest": self.inputs_digest, "outcome": self.outcome, "details": self.details}


@dataclass
class ProofTrace:
    algebra: str
    steps: list[TraceStep]
    conclusion: str  # forcedAbelian | hypothesisFailed | outsideLemmaClass | inconsistent
    failed_hypothesis: str | None = None
    defect: str | None = None

    def to_dict(self) -> dict:
        concl = {"kind": self.conclusion}
        if self.failed_hypothesis:
            concl["which"] = self.failed_hypothesis
        if self.defect is not None:
            concl["defect"] = self.defect
        return {"algebra": self.algebra, "steps": [s.to_dict() for s in self.steps], "conclusion": concl}

    @property
    def step_names(self) -> list[str]:
        return [s.step for s in self.steps]


def _canon_algebra(A: ComplexNilAlgebra) -> str:
    tz = ",".join(f"{k}:{A.two_zero[k]}" for k in sorted(A.two_zero))
    oo = ",".join(f"{k}:{A.one_one[k]}" for k in sorted(A.one_one))
    return f"n={A.n};tz=[{tz}];oo=[{oo}]"


def _canon_matrix(M) -> str:
    return ";".join(",".join(str(x) for x in row) for row in M)


def _digest(*parts: str) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p.encode())
        h.update(b"\x00")
    return h.hexdigest()[:16]


def _fmt_map(d: dict) -> dict:
    return {(",".join(map(str, k)) if isinstance(k, tuple) else str(k)): str(v) for k, v in d.items()}


class _Builder:
    def __init__(self, name: str):
        self.name = name
        self.steps: list[TraceStep] = []

    def add(self, step: str, digest: str, outcome: str, **details):
        self.steps.append(TraceStep(step, digest, outcome, details))

    def finish(self, conclusion: str, which: str | None = None, defect: str | None = None, **details) -> ProofTrace:
        done = {s.step for s in self.steps}
        for name in STEP_NAMES[:-1]:
            if name not in done:
                self.steps.append(TraceStep(name, "", "skipped", {}))
        order = {name: i for i, name in enumerate(STEP_NAMES)}
        self.steps.sort(key=lambda s: order[s.step])
        info = {"kind": conclusion}
        if which:
            info["which"] = which
        info.update(details)
        self.steps.append(TraceStep("conclusion", _digest(conclusion, which or ""), "pass" if conclusion == "forcedAbelian" else "fail", info))
        return ProofTrace(self.name, self.steps, conclusion, which, defect)


# proof chain -------------------------------------------------------------------


def proof_chain(A: ComplexNilAlgebra, g: HermitianMetric, g2: HermitianMetric) -> ProofTrace:
    """Run the argument on algebra A with balanced candidate g and SKT candidate g2."""
    if not (A.n == g.n == g2.n):
        raise ValueError(f"dimension mismatch: algebra n={A.n}, g n={g.n}, g' n={g2.n}")
    for H, label in ((g, "g"), (g2, "g'")):
        if not H.is_positive_definite():
            raise ValueError(f"metric {label} is not positive definite")
    g, g2 = g.to_exact(), g2.to_exact()
    tb = _Builder(A.name)
    canon_a = _canon_algebra(A)
    cls_g = classify(g, A)
    cls_g2 = classify(g2, A)

    # (a) two-step gate
    try:
        step = nilpotency_step(A)
    except AlgebraError:
        step = None
    ok = step is not None and step <= 2
    tb.add("twoStepCheck", _digest(canon_a), "pass" if ok else "fail", nilpotencyStep=str(step) if step else "not nilpotent")
    if not ok:
        if not cls_g2.skt:
            return tb.finish("hypothesisFailed", "skt", str(cls_g2.skt_defect), defectForm=str(cls_g2.ddbar_omega))
        return tb.finish("outsideLemmaClass", reason="not 2-step nilpotent")

    # (b) normal form
    nf = to_normal_form(A)
    if not isinstance(nf, NormalForm):
        tb.add("normalForm", _digest(canon_a), "fail", reason=nf.reason, k=str(nf.k), offending=str(list(nf.offending)))
        return tb.finish("outsideLemmaClass", reason=nf.reason)
    tb.add(
        "normalForm",
        _digest(canon_a),
        "pass",
        k=str(nf.k),
        identityChange="yes" if nf.change.is_identity() else "no",
        constants=_canon_algebra(nf.base),
    )

    # (c) unitarize with respect to g
    g_nf = g.in_coframe(nf.change) if not nf.change.is_identity() else g
    g2_nf = g2.in_coframe(nf.change) if not nf.change.is_identity() else g2
    nf_u, T = unitarize(nf, g_nf)
    g_u = g_nf.in_coframe(T)
    g2_u = g2_nf.in_coframe(T)
    identity_ok = g_u == HermitianMetric.identity(A.n)
    balanced_after = classify(HermitianMetric.identity(A.n), nf_u.base).balanced
    tb.add(
        "unitarize",
        _digest(_canon_algebra(nf.base), _canon_matrix(g_nf.a)),
        "pass" if identity_ok and T.is_lower_triangular() and balanced_after == cls_g.balanced else "fail",
        triangular=_canon_matrix(T.matrix),
        metricIsIdentity="yes" if identity_ok else "no",
        lowerTriangular="yes" if T.is_lower_triangular() else "no",
        balancedBefore="yes" if cls_g.balanced else "no",
        balancedAfter="yes" if balanced_after else "no",
        constants=_canon_algebra(nf_u.base),
    )
    if not identity_ok or balanced_after != cls_g.balanced:
        return tb.finish("inconsistent", reason="unitarization check failed")

    # (d) balanced condition in the unitary coframe
    rho = balanced_residuals(nf_u)
    residuals_zero = not any(v for v in rho.values())
    tb.add(
        "balancedResiduals",
        _digest(_canon_algebra(nf_u.base)),
        "pass" if residuals_zero else "fail",
        residuals=_fmt_map(rho),
        classifyBalanced="yes" if cls_g.balanced else "no",
    )
    if residuals_zero != cls_g.balanced:
        return tb.finish("inconsistent", reason="balanced residuals disagree with d(omega^(n-1))")
    if not cls_g.balanced:
        return tb.finish(
            "hypothesisFailed", "balanced", str(cls_g.balanced_defect), defectForm=str(cls_g.d_omega_pow)
        )

    # (e) SKT condition, component by component
    coeffs = skt_reduced_coefficients(nf_u, g2_u)
    nonzero = {k: v for k, v in coeffs.items() if v}
    tb.add(
        "coefficientIdentity",
        _digest(_canon_algebra(nf_u.base), _canon_matrix(g2_u.a)),
        "pass" if cls_g2.skt else "fail",
        coefficients=_fmt_map(coeffs),
        classifySkt="yes" if cls_g2.skt else "no",
    )
    if not cls_g2.skt:
        return tb.finish(
            "hypothesisFailed",
            "skt",
            str(cls_g2.skt_defect),
            defectForm=str(cls_g2.ddbar_omega),
            offendingCoefficients=_fmt_map(nonzero),
        )
    if nonzero:
        return tb.finish("inconsistent", reason="SKT metric with a nonzero reduced coefficient")

    # (f) sum over (r, s) using the balanced assumption
    total = QQi()
    for v in coeffs.values():
        total = total + 2 * v  # each unordered pair appears twice in the full (r, s) sum
    quad = balanced_quadratic(nf_u, g2_u)
    new = sktnew_value(nf_u, g2_u)
    identity = total == 2 * quad - new
    tb.add(
        "sktnewIdentity",
        _digest(_canon_algebra(nf_u.base), _canon_matrix(g2_u.a)),
        "pass" if identity and not new else "fail",
        coefficientSum=str(total),
        balancedQuadratic=str(quad),
        sktnew=str(new),
        identityHolds="yes" if identity else "no",
    )
    if not identity:
        return tb.finish("inconsistent", reason="coefficient sum identity failed")
    if new:
        return tb.finish("inconsistent", reason=f"sktnew value {new} is nonzero under both hypotheses")

    # (g) positivity forces every X-vector, hence every constant, to vanish
    fam = x_vectors(nf_u)
    lhs, rhs, equal = quadratic_identity(nf_u, g2_u)
    tb.add(
        "xVectors",
        _digest(_canon_algebra(nf_u.base), _canon_matrix(g2_u.a)),
        "pass" if equal and fam.is_zero() else "fail",
        lhs=str(lhs),
        rhs=str(rhs),
        equal="yes" if equal else "no",
        allVectorsZero="yes" if fam.is_zero() else "no",
    )
    if not equal or not fam.is_zero() or not nf_u.base.is_abelian():
        return tb.finish("inconsistent", reason="positivity argument did not force vanishing constants")
    return tb.finish("forcedAbelian", constantsZero="yes")


# sweep ---------------------------------------------------------------------------


@dataclass
class SweepRow:
    algebra: str
    skt_status: str
    balanced_status: str
    abelian: bool
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "sktStatus": self.skt_status,
            "balancedStatus": self.balanced_status,
            "abelian": self.abelian,
            "consistentWithTheorem": self.consistent,
        }


@dataclass
class SweepResult:
    rows: list[SweepRow]
    notes: list[str]

    @property
    def all_consistent(self) -> bool:
        return all(r.consistent for r in self.rows)

    def to_dict(self) -> dict:
        return {"rows": [r.to_dict() for r in self.rows], "notes": self.notes, "allConsistent": self.all_consistent}


def theorem_sweep(catalog: Iterable, opts: SearchOptions | None = None) -> SweepResult:
    """Search both metric types on every algebra; flag any non-abelian entry admitting both."""
    rows, notes = [], []
    for entry in catalog:
        A = getattr(entry, "algebra", entry)
        report = validate(A)
        if not report.valid:
            notes.append(f"{A.name}: rejected at validation (d^2 != 0 on generators {sorted(report.failures())})")
            continue
        both = find_both(A, opts)
        consistent = not (both.skt.status == FEASIBLE and both.balanced.status == FEASIBLE) or both.abelian
        rows.append(SweepRow(A.name, both.skt.status, both.balanced.status, both.abelian, consistent))
    return SweepResult(rows, notes)
