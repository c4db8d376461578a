"""Invariant Hermitian metrics, their fundamental forms and classifiers.

The fundamental form is stored without an ``i`` prefactor,

    omega = sum_{i,j} a_{i jbar} alpha^i ^ alpha^{j bar},

so every condition implemented here is a zero test and is insensitive to
that overall constant.  Balancedness is tested as d(omega^{n-1}) = 0.

Sign conventions for the coefficient-level SKT quantities were pinned by
matching against the full symbolic expansion of ``d d-bar omega``: the value
returned by :func:`skt_reduced_coefficients` for ``(r, s)`` is the canonical
coefficient of ``alpha^{r s rbar sbar}`` in that expansion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from . import linalg
from .algebra import CoframeChange, ComplexNilAlgebra, NormalForm, change_coframe, is_normal_form_shape
from .forms import Form, coeff_norm_sq, d_bar, d_holo, differential, wedge
from .scalars import QQi, as_exact, conj, exact_from_float, exact_sqrt, format_rational, is_exact, parse_rational

__all__ = [
    "HermitianMetric",
    "MetricClass",
    "MetricError",
    "balanced_quadratic",
    "balanced_residuals",
    "classify",
    "fundamental_form",
    "omega_power",
    "skt_reduced_coefficients",
    "sktnew_value",
    "unitarize",
]


class MetricError(ValueError):
    """Malformed, non-Hermitian or non-positive metric data."""


@dataclass(frozen=True, eq=False)
class HermitianMetric:
    """Coefficient matrix ``a[i][j]`` = a_{i jbar} of an invariant Hermitian metric."""

    n: int
    a: list

    def __post_init__(self):
        a = self.a
        if len(a) != self.n or any(len(row) != self.n for row in a):
            raise MetricError(f"metric matrix must be {self.n}x{self.n}")
        if all(is_exact(x) for row in a for x in row):
            a = [[as_exact(x) for x in row] for row in a]
        else:
            a = [[complex(x) for x in row] for row in a]
        object.__setattr__(self, "a", a)
        if not self._hermitian():
            raise MetricError("metric matrix is not Hermitian")

    def _hermitian(self) -> bool:
        a, n = self.a, self.n
        return all(a[i][j] == conj(a[j][i]) for i in range(n) for j in range(i, n))

    @property
    def exact(self) -> bool:
        return not isinstance(self.a[0][0], complex)

    @classmethod
    def identity(cls, n: int) -> "HermitianMetric":
        return cls(n, linalg.eye(n))

    @classmethod
    def diagonal(cls, values) -> "HermitianMetric":
        values = [as_exact(v) for v in values]
        n = len(values)
        return cls(n, [[values[i] if i == j else QQi() for j in range(n)] for i in range(n)])

    def to_exact(self) -> "HermitianMetric":
        """Exact copy; float entries are converted bit-exactly to rationals."""
        if self.exact:
            return self
        return HermitianMetric(self.n, [[exact_from_float(x) for x in row] for row in self.a])

    def is_positive_definite(self) -> bool:
        return linalg.is_positive_definite(self.to_exact().a)

    def pairing(self, x, y=None):
        """omega(X, Ybar) = sum a_{i jbar} x_i conj(y_j) for (1,0)-vectors with components x, y."""
        y = x if y is None else y
        total = QQi()
        for i in range(self.n):
            if not x[i]:
                continue
            for j in range(self.n):
                if y[j] and self.a[i][j]:
                    total = total + self.a[i][j] * x[i] * conj(y[j])
        return total

    def in_coframe(self, change: CoframeChange) -> "HermitianMetric":
        """Coefficients in beta = change.matrix @ alpha: Q^T a conj(Q) with Q = change.inverse."""
        Q = change.inverse
        n = self.n
        a = self.to_exact().a
        out = [[QQi() for _ in range(n)] for _ in range(n)]
        for c in range(n):
            for d in range(n):
                acc = QQi()
                for i in range(n):
                    if not Q[i][c]:
                        continue
                    for j in range(n):
                        if a[i][j] and Q[j][d]:
                            acc = acc + Q[i][c] * a[i][j] * conj(Q[j][d])
                out[c][d] = acc
        return HermitianMetric(n, out)

    def __eq__(self, other):
        if not isinstance(other, HermitianMetric):
            return NotImplemented
        return self.n == other.n and all(x == y for r1, r2 in zip(self.a, other.a) for x, y in zip(r1, r2))

    __hash__ = None

    # serialization --------------------------------------------------------
    def to_dict(self) -> dict:
        a = self.to_exact().a
        entries = []
        for i in range(self.n):
            for j in range(i + 1):
                x = a[i][j]
                if hasattr(x, "to_qqi"):
                    x = x.to_qqi()
                if x or i == j:
                    entries.append(
                        {"i": i + 1, "j": j + 1, "re": format_rational(x.re), "im": format_rational(x.im)}
                    )
        return {"n": self.n, "entries": entries}

    @classmethod
    def from_dict(cls, data: Mapping) -> "HermitianMetric":
        if not isinstance(data, Mapping) or "n" not in data:
            raise MetricError("metric file must be an object with 'n'")
        n = data["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise MetricError(f"'n' must be a positive integer, got {n!r}")
        a = [[QQi() for _ in range(n)] for _ in range(n)]
        seen = set()
        for e in data.get("entries", []):
            try:
                i, j = e["i"], e["j"]
            except (KeyError, TypeError) as exc:
                raise MetricError(f"metric entry {e!r} needs i and j") from exc
            if isinstance(i, bool) or isinstance(j, bool) or not isinstance(i, int) or not isinstance(j, int):
                raise MetricError(f"metric entry {e!r}: indices must be integers")
            if not (1 <= j <= i <= n):
                raise MetricError(f"metric entry (i={i}, j={j}) must satisfy 1 <= j <= i <= {n}")
            if (i, j) in seen:
                raise MetricError(f"duplicate metric entry (i={i}, j={j})")
            seen.add((i, j))
            try:
                z = QQi(parse_rational(e.get("re", "0")), parse_rational(e.get("im", "0")))
            except ValueError as exc:
                raise MetricError(str(exc)) from exc
            if i == j and z.im:
                raise MetricError(f"diagonal entry ({i},{i}) must be real")
            a[i - 1][j - 1] = z
            a[j - 1][i - 1] = z.conjugate()
        return cls(n, a)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "HermitianMetric":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise MetricError(f"metric file is not valid JSON: {exc}") from exc


def fundamental_form(H: HermitianMetric, check: bool = True) -> Form:
    """omega = sum a_{i jbar} alpha^i ^ alpha^{j bar}.  Rejects non-positive matrices when ``check``."""
    if check and not H.is_positive_definite():
        raise MetricError("metric is not positive definite")
    n = H.n
    terms = {}
    for i in range(n):
        for j in range(n):
            if H.a[i][j]:
                terms[(1 << i) | (1 << (n + j))] = H.a[i][j]
    return Form(n, terms, H.exact)


def omega_power(omega: Form, p: int) -> Form:
    out = Form.one(omega.n, omega.exact)
    for _ in range(p):
        out = wedge(out, omega)
    return out


@dataclass
class MetricClass:
    kahler_defect: object
    skt_defect: object
    balanced_defect: object
    kahler: bool
    skt: bool
    balanced: bool
    d_omega: Form = field(repr=False)
    ddbar_omega: Form = field(repr=False)
    d_omega_pow: Form = field(repr=False)

    def summary(self) -> dict:
        yes = {True: "yes", False: "no"}
        return {
            "kahler": yes[self.kahler],
            "skt": yes[self.skt],
            "balanced": yes[self.balanced],
            "kahlerDefect": str(self.kahler_defect),
            "sktDefect": str(self.skt_defect),
            "balancedDefect": str(self.balanced_defect),
        }


def classify(H: HermitianMetric, A: ComplexNilAlgebra) -> MetricClass:
    """Exact Kähler / SKT / balanced classification of an invariant metric."""
    if H.n != A.n:
        raise MetricError(f"dimension mismatch: metric n={H.n}, algebra n={A.n}")
    H = H.to_exact()
    omega = fundamental_form(H, check=False)
    d_om = differential(omega, A)
    ddbar = d_holo(d_bar(omega, A), A)
    if A.n == 1:
        d_pow = d_om
    else:
        d_pow = differential(omega_power(omega, A.n - 1), A)
    kd, sd, bd = coeff_norm_sq(d_om), coeff_norm_sq(ddbar), coeff_norm_sq(d_pow)
    return MetricClass(kd, sd, bd, d_om.is_zero(), ddbar.is_zero(), d_pow.is_zero(), d_om, ddbar, d_pow)


# coordinate-level conditions ---------------------------------------------------


def _require_normal_form(NF: NormalForm) -> None:
    bad = is_normal_form_shape(NF.base, NF.k)
    if bad:
        raise MetricError(f"not a normal form: offending constants {bad}")


def unitarize(NF: NormalForm, H: HermitianMetric) -> tuple[NormalForm, CoframeChange]:
    """Flag-preserving coframe change making ``H`` the identity.

    Writes a = V D V^* with V unit upper triangular and D positive diagonal
    (exact), then T = sqrt(D) V^T is lower triangular with positive diagonal
    and beta = T alpha is unitary.  Entries of T may be real radicals.
    """
    if H.n != NF.base.n:
        raise MetricError("dimension mismatch between metric and normal form")
    n = H.n
    a = [list(row) for row in H.to_exact().a]
    V = linalg.eye(n)
    D = [None] * n
    # bottom-up elimination: a = V D V^*
    for c in range(n - 1, -1, -1):
        p = a[c][c]
        if not (isinstance(p, QQi) and not p.im and p.re > 0):
            raise MetricError("metric is not positive definite (nonpositive pivot)")
        D[c] = p.re
        for i in range(c):
            V[i][c] = a[i][c] / p
        for i in range(c):
            for j in range(c):
                if V[i][c] and a[c][j]:
                    a[i][j] = a[i][j] - V[i][c] * a[c][j]
    roots = [exact_sqrt(d) for d in D]
    T = [[roots[r] * V[i][r] if i <= r else QQi() for i in range(n)] for r in range(n)]
    # Q = T^{-1} = V^{-T} D^{-1/2}; V^T is unit lower triangular
    Vt_inv = linalg.lower_triangular_inverse(linalg.transpose(V))
    Q = [[Vt_inv[b][c] * (1 / roots[c]) if Vt_inv[b][c] else QQi() for c in range(n)] for b in range(n)]
    change = CoframeChange(T, Q)
    new_base = change_coframe(NF.base, change)
    return NormalForm(new_base, NF.k, NF.change.then(change)), change


def balanced_residuals(NF: NormalForm) -> dict[int, object]:
    """sum_{r<=k} c^l_{r rbar} for every l > k."""
    A, k = NF.base, NF.k
    out = {}
    for l in range(k + 1, A.n + 1):
        acc = QQi()
        for r in range(1, k + 1):
            acc = acc + A.c11(l, r, r)
        out[l] = acc
    return out


def balanced_quadratic(NF: NormalForm, H: HermitianMetric):
    """sum_{i,j>k} a_{i jbar} rho_i conj(rho_j) for the balanced residual vector rho."""
    rho = balanced_residuals(NF)
    x = [rho.get(i, QQi()) for i in range(1, NF.base.n + 1)]
    return H.pairing(x)


def skt_reduced_coefficients(NF: NormalForm, H: HermitianMetric) -> dict[tuple[int, int], object]:
    """Component of d d-bar omega along alpha^{r s rbar sbar} for 1 <= r < s <= k, from structure constants."""
    _require_normal_form(NF)
    A, k, n = NF.base, NF.k, NF.base.n
    a = H.to_exact().a
    c11, c20 = A.c11, A.c20
    out = {}
    for r in range(1, k + 1):
        for s in range(r + 1, k + 1):
            acc = QQi()
            for i in range(k + 1, n + 1):
                for j in range(k + 1, n + 1):
                    aij = a[i - 1][j - 1]
                    if not aij:
                        continue
                    t = (
                        c11(i, r, r) * conj(c11(j, s, s))
                        - c11(i, s, r) * conj(c11(j, s, r))
                        + c11(i, s, s) * conj(c11(j, r, r))
                        - c11(i, r, s) * conj(c11(j, r, s))
                        + c20(i, r, s) * conj(c20(j, s, r))
                    )
                    if t:
                        acc = acc + aij * t
            out[(r, s)] = acc
    return out


def sktnew_value(NF: NormalForm, H: HermitianMetric):
    """sum_{i,j>k} sum_{r,s<=k} a_{i jbar} (2 c^i_{s rbar} conj(c^j_{s rbar}) + c^i_{rs} conj(c^j_{rs}))."""
    _require_normal_form(NF)
    A, k, n = NF.base, NF.k, NF.base.n
    a = H.to_exact().a
    acc = QQi()
    for i in range(k + 1, n + 1):
        for j in range(k + 1, n + 1):
            aij = a[i - 1][j - 1]
            if not aij:
                continue
            for r in range(1, k + 1):
                for s in range(1, k + 1):
                    t = 2 * (A.c11(i, s, r) * conj(A.c11(j, s, r))) + A.c20(i, r, s) * conj(A.c20(j, r, s))
                    if t:
                        acc = acc + aij * t
    return acc
