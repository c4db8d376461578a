"""Existence of SKT and balanced invariant metrics.

Both conditions reduce to "a positive-definite Hermitian matrix in an exactly
computed linear subspace":

* SKT: d d-bar omega is real-linear in the entries a_{i jbar}.
* balanced: omega^{n-1} has coefficients proportional to the minors of a,
  i.e. to the entries of P = a^{-1}; d(omega^{n-1}) = 0 is linear in P and
  a = P^{-1} is recovered exactly.

For a subspace S of Hermitian matrices exactly one of the following holds:
S meets the positive-definite cone, or the orthogonal complement of S
contains a nonzero positive-semidefinite matrix.  The search maximizes the
smallest eigenvalue over S (concave) for a witness, and over the complement
for a certificate; every float result is rationalized and re-checked exactly
before it is reported.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from gmpy2 import mpq

from . import linalg
from .algebra import ComplexNilAlgebra, NormalForm, to_normal_form, validate
from .forms import Form, d_bar, d_holo, differential
from .metrics import HermitianMetric, balanced_residuals, classify
from .scalars import QQi, format_rational

__all__ = [
    "AffineConstraintSet",
    "BothReport",
    "FeasibilityReport",
    "SearchOptions",
    "balanced_linear_system",
    "find_balanced_metric",
    "find_both",
    "find_skt_metric",
    "min_eigenvalue",
    "skt_linear_system",
]

log = logging.getLogger(__name__)

FEASIBLE = "feasible"
INFEASIBLE = "infeasibleCertified"
UNKNOWN = "unknown"

_DENOMINATORS = (1, 10, 100, 1000, 10**4, 10**5, 10**6)


@dataclass(frozen=True)
class SearchOptions:
    seeds: int = 16
    max_iter: int = 300
    tol: float = 1e-9
    seed: int = 0
    method: str = "auto"  # balanced search: "auto", "linear" or "descent"


# Hermitian parameterization ----------------------------------------------------


class HermitianParams:
    """Real coordinates of n x n Hermitian matrices.

    Order: the n diagonal entries, then (Re a_ij, Im a_ij) for i < j.
    """

    def __init__(self, n: int):
        self.n = n
        self.labels: list[tuple[str, int, int]] = [("d", i, i) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                self.labels += [("re", i, j), ("im", i, j)]
        self.size = len(self.labels)
        # coordinates scaled so that the Euclidean norm is the Frobenius norm
        self.scale = np.array([1.0 if kind == "d" else np.sqrt(2.0) for kind, _, _ in self.labels])

    def unit(self, k: int):
        """Exact Hermitian matrix of coordinate k."""
        n = self.n
        M = [[QQi() for _ in range(n)] for _ in range(n)]
        kind, i, j = self.labels[k]
        if kind == "d":
            M[i][i] = QQi(1)
        elif kind == "re":
            M[i][j] = QQi(1)
            M[j][i] = QQi(1)
        else:
            M[i][j] = QQi(0, 1)
            M[j][i] = QQi(0, -1)
        return M

    def to_matrix(self, x) -> list:
        n = self.n
        M = [[QQi() for _ in range(n)] for _ in range(n)]
        for (kind, i, j), v in zip(self.labels, x):
            v = mpq(v)
            if kind == "d":
                M[i][i] = QQi(v)
            elif kind == "re":
                M[i][j] = M[i][j] + QQi(v)
                M[j][i] = M[j][i] + QQi(v)
            else:
                M[i][j] = M[i][j] + QQi(0, v)
                M[j][i] = M[j][i] + QQi(0, -v)
        return M

    def to_matrix_float(self, x) -> np.ndarray:
        n = self.n
        M = np.zeros((n, n), dtype=complex)
        for (kind, i, j), v in zip(self.labels, x):
            if kind == "d":
                M[i, i] = v
            elif kind == "re":
                M[i, j] += v
                M[j, i] += v
            else:
                M[i, j] += 1j * v
                M[j, i] -= 1j * v
        return M

    def from_matrix_float(self, M: np.ndarray) -> np.ndarray:
        out = []
        for kind, i, j in self.labels:
            if kind == "d":
                out.append(M[i, i].real)
            elif kind == "re":
                out.append(M[i, j].real)
            else:
                out.append(M[i, j].imag)
        return np.array(out)

    def functional_matrix(self, w) -> list:
        """Hermitian Y with Re tr(Y H) = w . x(H)."""
        n = self.n
        Y = [[QQi() for _ in range(n)] for _ in range(n)]
        for (kind, i, j), v in zip(self.labels, w):
            v = mpq(v)
            if kind == "d":
                Y[i][i] = QQi(v)
            elif kind == "re":
                Y[j][i] = Y[j][i] + QQi(v / 2)
                Y[i][j] = Y[i][j] + QQi(v / 2)
            else:
                Y[j][i] = Y[j][i] + QQi(0, -v / 2)
                Y[i][j] = Y[i][j] + QQi(0, v / 2)
        return Y

    def label(self, k: int, symbol: str = "a") -> str:
        kind, i, j = self.labels[k]
        if kind == "d":
            return f"{symbol}_{{{i + 1}{j + 1}̄}}"
        part = "Re" if kind == "re" else "Im"
        return f"{part} {symbol}_{{{i + 1}{j + 1}̄}}"


def min_eigenvalue(M: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(M)[0])


# exact linear systems ----------------------------------------------------------


@dataclass
class AffineConstraintSet:
    """Homogeneous real-linear constraints on Hermitian coordinates (reduced row echelon form)."""

    n: int
    target: str
    rows: list  # exact mpq rows
    pivots: list[int]
    symbol: str = "a"

    @property
    def params(self) -> HermitianParams:
        return HermitianParams(self.n)

    def is_empty(self) -> bool:
        return not self.rows

    def satisfied_by(self, x) -> bool:
        return all(not sum((r * mpq(v) for r, v in zip(row, x)), mpq(0)) for row in self.rows)

    def solution_basis(self) -> list[list]:
        P = self.params
        return linalg.nullspace(self.rows, P.size, zero=mpq(0), one=mpq(1))

    def describe(self) -> list[str]:
        P = self.params
        out = []
        for row in self.rows:
            terms = []
            for k, c in enumerate(row):
                if not c:
                    continue
                lab = P.label(k, self.symbol)
                if c == 1:
                    terms.append(lab)
                elif c == -1:
                    terms.append(f"-{lab}")
                else:
                    terms.append(f"{format_rational(c)}*{lab}")
            out.append(" + ".join(terms).replace("+ -", "- ") + " = 0")
        return out


def _system_from_images(n: int, images: list[Form], target: str, symbol: str) -> AffineConstraintSet:
    masks = sorted({m for f in images for m in f.terms})
    rows = []
    for m in masks:
        re_row, im_row = [], []
        for f in images:
            c = f.terms.get(m, QQi())
            re_row.append(c.re)
            im_row.append(c.im)
        for row in (re_row, im_row):
            if any(row):
                rows.append(row)
    R, pivots = linalg.rref(rows) if rows else ([], [])
    return AffineConstraintSet(n, target, R, pivots, symbol)


def _omega_of(M: list) -> Form:
    n = len(M)
    return Form(n, {(1 << i) | (1 << (n + j)): M[i][j] for i in range(n) for j in range(n) if M[i][j]})


def skt_linear_system(A: ComplexNilAlgebra) -> AffineConstraintSet:
    """Linear equations on a_{i jbar} equivalent to d d-bar omega = 0."""
    P = HermitianParams(A.n)
    images = [d_holo(d_bar(_omega_of(P.unit(k)), A), A) for k in range(P.size)]
    return _system_from_images(A.n, images, "skt", "a")


def theta_form(M: list) -> Form:
    """sum_{p,q} (-1)^{p+q} M[q][p] alpha^{all but p} ^ alpha^{(all but q) bar}.

    With M = a^{-1} this is omega^{n-1} / ((n-1)! (-1)^{(n-1)(n-2)/2} det a).
    """
    n = len(M)
    full = (1 << n) - 1
    terms = {}
    for p in range(n):
        for q in range(n):
            if M[q][p]:
                c = M[q][p]
                terms[(full ^ (1 << p)) | ((full ^ (1 << q)) << n)] = c if (p + q) % 2 == 0 else -c
    return Form(n, terms)


def balanced_linear_system(A: ComplexNilAlgebra) -> AffineConstraintSet:
    """Linear equations on P = a^{-1} equivalent to d(omega^{n-1}) = 0.

    For n = 1 balanced coincides with Kähler and the system is d omega = 0 on a.
    """
    P = HermitianParams(A.n)
    if A.n == 1:
        images = [differential(_omega_of(P.unit(k)), A) for k in range(P.size)]
        return _system_from_images(A.n, images, "balanced", "a")
    images = [differential(theta_form(P.unit(k)), A) for k in range(P.size)]
    return _system_from_images(A.n, images, "balanced", "p")


# reports -----------------------------------------------------------------------


@dataclass
class FeasibilityReport:
    target: str
    status: str
    witness: HermitianMetric | None = None
    certificate: dict | None = None
    defect: float = 0.0
    seeds_tried: int = 0

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "status": self.status,
            "witness": self.witness.to_dict() if self.witness is not None else None,
            "certificate": self.certificate,
            "defect": self.defect,
            "seedsTried": self.seeds_tried,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FeasibilityReport":
        w = data.get("witness")
        return cls(
            target=data["target"],
            status=data["status"],
            witness=HermitianMetric.from_dict(w) if w is not None else None,
            certificate=data.get("certificate"),
            defect=float(data.get("defect", 0.0)),
            seeds_tried=int(data.get("seedsTried", 0)),
        )

    def __eq__(self, other):
        if not isinstance(other, FeasibilityReport):
            return NotImplemented
        return self.to_dict() == other.to_dict()


@dataclass
class BothReport:
    algebra: str
    skt: FeasibilityReport
    balanced: FeasibilityReport
    abelian: bool
    theorem_violation: bool = field(default=False)

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "skt": self.skt.to_dict(),
            "balanced": self.balanced.to_dict(),
            "abelian": self.abelian,
            "theoremViolation": self.theorem_violation,
        }


# PD-cone feasibility on a subspace ------------------------------------------------


def _orthonormal_float_basis(vectors: list, params: HermitianParams) -> np.ndarray:
    Z = np.array([[float(v) for v in vec] for vec in vectors]).T * params.scale[:, None]
    Q, R = np.linalg.qr(Z)
    keep = np.abs(np.diag(R)) > 1e-12
    return Q[:, keep]


def _maximize_min_eig(O: np.ndarray, params: HermitianParams, starts: list[np.ndarray], max_iter: int):
    """Projected supergradient ascent of lambda_min over {H in span(O) : tr H = 1}.

    Returns (best value, best matrix, number of starts used) per start, in order.
    """
    mats = [params.to_matrix_float(O[:, k] / params.scale) for k in range(O.shape[1])]
    traces = np.array([np.trace(M).real for M in mats])
    tnorm2 = float(traces @ traces)
    results = []
    for H0 in starts:
        u = np.array([np.vdot(M, H0).real for M in mats])  # Frobenius projection
        tu = traces @ u
        if tu > 1e-12:
            u = u / tu
        else:
            u = u + (1.0 - tu) * traces / tnorm2
        best_val, best_u = -np.inf, u.copy()
        step0 = 0.5 / max(1.0, np.sqrt(params.n))
        for it in range(max_iter):
            H = sum(c * M for c, M in zip(u, mats))
            w, V = np.linalg.eigh(H)
            if w[0] > best_val:
                best_val, best_u = float(w[0]), u.copy()
            v = V[:, 0]
            g = np.array([np.real(np.vdot(v, M @ v)) for M in mats])
            g = g - (g @ traces) * traces / tnorm2
            gn = np.linalg.norm(g)
            if gn < 1e-15:
                break
            u = u + (step0 / np.sqrt(it + 1.0)) * g / gn
        H = sum(c * M for c, M in zip(best_u, mats))
        results.append((best_val, H))
    return results


def _seed_matrices(n: int, count: int, seed: int) -> list[np.ndarray]:
    out = [np.eye(n, dtype=complex)]
    for idx in range(1, count):
        rng = np.random.default_rng([seed, idx])
        T = np.triu(rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n)), 1)
        T = T + np.diag(rng.uniform(0.5, 1.5, n))
        out.append(T.conj().T @ T)
    return out


def _rationalize_in_basis(H: np.ndarray, basis: list, params: HermitianParams, accept: Callable[[list], bool]):
    """Express H in the exact basis, round coordinates with growing denominators, return the first accepted vector."""
    Z = np.array([[float(v) for v in vec] for vec in basis]).T
    x = params.from_matrix_float(H)
    coeffs, *_ = np.linalg.lstsq(Z, x, rcond=None)
    for den in _DENOMINATORS:
        w = [mpq(Fraction(float(c)).limit_denominator(den)) for c in coeffs]
        vec = [sum((wk * vk[i] for wk, vk in zip(w, basis)), mpq(0)) for i in range(params.size)]
        if any(vec) and accept(vec):
            return vec
    return None


def _psd_row_certificate(system: AffineConstraintSet) -> dict | None:
    P = system.params
    for row, text in zip(system.rows, system.describe()):
        Y = P.functional_matrix(row)
        for sign, M in ((1, Y), (-1, [[-x for x in r] for r in Y])):
            if linalg.is_positive_semidefinite(M):
                support = [k for k, c in enumerate(row) if c]
                if len(support) == 1 and P.labels[support[0]][0] == "d":
                    lab = P.label(support[0], system.symbol)
                    msg = f"linear system forces {lab} = 0, contradicts positive-definiteness"
                    if system.symbol == "p":
                        msg += " (p is the inverse metric matrix)"
                else:
                    msg = f"constraint '{text}' pairs a semidefinite matrix with every solution"
                return {"kind": "semidefiniteRow", "text": msg, "row": text}
    return None


def _pd_feasibility(system: AffineConstraintSet, opts: SearchOptions) -> tuple[str, list | None, dict | None, int, float]:
    """Decide whether the solution subspace meets the positive-definite cone.

    Returns (status, exact PD matrix or None, certificate or None, starts used, best lambda_min).
    """
    params = system.params
    n = system.n
    ident = [mpq(1) if kind == "d" else mpq(0) for kind, _, _ in params.labels]
    if system.satisfied_by(ident):
        return FEASIBLE, params.to_matrix(ident), None, 0, 1.0 / n
    cert = _psd_row_certificate(system)
    if cert:
        return INFEASIBLE, None, cert, 0, float("nan")
    basis = system.solution_basis()
    if not basis:
        return INFEASIBLE, None, {"kind": "trivialSubspace", "text": "only the zero matrix satisfies the linear system"}, 0, float("nan")
    if all(not sum((v for (kind, _, _), v in zip(params.labels, vec) if kind == "d"), mpq(0)) for vec in basis):
        return INFEASIBLE, None, {"kind": "traceless", "text": "every solution of the linear system is traceless"}, 0, float("nan")

    O = _orthonormal_float_basis(basis, params)
    starts = _seed_matrices(n, opts.seeds, opts.seed)
    best = -np.inf
    for used, (val, H) in enumerate(_maximize_min_eig(O, params, starts, opts.max_iter), start=1):
        best = max(best, val)
        if val > opts.tol:
            vec = _rationalize_in_basis(H, basis, params, lambda v: linalg.is_positive_definite(params.to_matrix(v)))
            if vec is not None:
                return FEASIBLE, params.to_matrix(vec), None, used, val

    dual = _dual_certificate(system, opts)
    if dual:
        return INFEASIBLE, None, dual, opts.seeds, best
    return UNKNOWN, None, None, opts.seeds, best


def _dual_certificate(system: AffineConstraintSet, opts: SearchOptions) -> dict | None:
    """Look for a nonzero PSD matrix in the span of the constraint functionals."""
    P = system.params
    rows = system.rows
    if not rows:
        return None
    # functional w <-> Hermitian Y; in matrix coordinates y(Y) = w with off-diagonal halved
    ycoords = []
    for row in rows:
        Y = P.functional_matrix(row)
        ycoords.append(_exact_coords(Y, P))
    if all(not sum((v for (kind, _, _), v in zip(P.labels, y) if kind == "d"), mpq(0)) for y in ycoords):
        return None
    O = _orthonormal_float_basis(ycoords, P)
    starts = _seed_matrices(P.n, max(2, opts.seeds // 4), opts.seed + 7919)
    for val, Y in _maximize_min_eig(O, P, starts, opts.max_iter):
        if val < -1e-6:
            continue
        vec = _rationalize_in_basis(Y, ycoords, P, lambda v: linalg.is_positive_semidefinite(P.to_matrix(v)))
        if vec is not None:
            Ym = P.to_matrix(vec)
            text = "; ".join(" ".join(str(x) for x in r) for r in Ym)
            return {
                "kind": "semidefiniteCombination",
                "text": f"a nonzero positive-semidefinite combination of the constraints exists: Y = [{text}]",
            }
    return None


def _exact_coords(Y: list, P: HermitianParams) -> list:
    out = []
    for kind, i, j in P.labels:
        if kind == "d":
            out.append(Y[i][i].re)
        elif kind == "re":
            out.append(Y[i][j].re)
        else:
            out.append(Y[i][j].im)
    return out


# public searches -----------------------------------------------------------------


def _defect(value) -> float:
    return complex(value).real


def find_skt_metric(A: ComplexNilAlgebra, opts: SearchOptions | None = None) -> FeasibilityReport:
    opts = opts or SearchOptions()
    if not validate(A).valid:
        raise ValueError(f"{A.name}: algebra fails d^2 = 0")
    system = skt_linear_system(A)
    status, M, cert, used, best = _pd_feasibility(system, opts)
    if status == FEASIBLE:
        H = HermitianMetric(A.n, M)
        cls = classify(H, A)
        if not cls.skt:  # exact re-check failed; never report float-only success
            return FeasibilityReport("skt", UNKNOWN, None, None, _defect(cls.skt_defect), used)
        return FeasibilityReport("skt", FEASIBLE, H, None, 0.0, used)
    base = classify(HermitianMetric.identity(A.n), A)
    if status == UNKNOWN:
        cert = None
        log.info("%s: SKT search inconclusive, best smallest eigenvalue %.3g", A.name, best)
    return FeasibilityReport("skt", status, None, cert, _defect(base.skt_defect), used)


def k1_obstruction(A: ComplexNilAlgebra, nf: NormalForm | None = None) -> dict | None:
    """Balanced obstruction when the closed (1,0)-forms are one-dimensional.

    With k = 1 the only constants are c^l_{1 1bar}; a flag-preserving change
    maps that vector by an invertible matrix times a positive factor, so the
    balanced residual of a unitary coframe never vanishes unless it is zero.
    """
    nf = nf if nf is not None else to_normal_form(A)
    if not isinstance(nf, NormalForm) or nf.k != 1:
        return None
    res = balanced_residuals(nf)
    nonzero = {l: v for l, v in res.items() if v}
    if not nonzero:
        return None
    vec = ", ".join(f"c^{l}_{{11̄}}={v}" for l, v in sorted(nonzero.items()))
    return {
        "kind": "k1Obstruction",
        "text": f"k=1: residual vector ({vec}) is nonzero and every triangular change rescales it by an invertible map",
    }


def _balanced_descent(A: ComplexNilAlgebra, opts: SearchOptions) -> tuple[HermitianMetric | None, int, float]:
    """Multistart descent on ||d(omega^{n-1})||^2 / ||omega^{n-1}||^2 with H = T^* T, T upper triangular."""
    n = A.n
    if n == 1:
        return None, 0, float("nan")
    # linear map from Theta coefficients (indexed p, q) to d Theta components
    cols = []
    keys = set()
    for p in range(n):
        for q in range(n):
            M = [[QQi() for _ in range(n)] for _ in range(n)]
            M[q][p] = QQi(1)
            f = differential(theta_form(M), A)
            cols.append(f)
            keys |= set(f.terms)
    keys = sorted(keys)
    D = np.array([[complex(f.terms.get(k, 0)) for f in cols] for k in keys]) if keys else np.zeros((0, n * n))
    signs = np.array([(-1.0) ** (p + q) for p in range(n) for q in range(n)])

    iu = np.triu_indices(n, 1)
    nparam = n + 2 * len(iu[0])

    def unpack(z):
        T = np.zeros((n, n), dtype=complex)
        T[np.diag_indices(n)] = z[:n]
        m = len(iu[0])
        T[iu] = z[n : n + m] + 1j * z[n + m :]
        return T

    def objective(z):
        T = unpack(z)
        H = T.conj().T @ T
        try:
            Pm = np.linalg.inv(H)
        except np.linalg.LinAlgError:
            return np.inf
        theta = np.array([Pm[q, p] for p in range(n) for q in range(n)]) * signs
        nt = float(np.vdot(theta, theta).real)
        if nt == 0:
            return np.inf
        r = D @ theta
        return float(np.vdot(r, r).real) / nt

    best_val, best_H, used = np.inf, None, 0
    for idx in range(opts.seeds):
        used = idx + 1
        rng = np.random.default_rng([opts.seed, idx, 1])
        if idx == 0:
            z = np.concatenate([np.ones(n), np.zeros(nparam - n)])
        else:
            z = np.concatenate([rng.uniform(0.5, 1.5, n), rng.uniform(-1, 1, nparam - n)])
        f = objective(z)
        step = 0.1
        for _ in range(opts.max_iter):
            h = 1e-6
            g = np.array([(objective(z + h * e) - objective(z - h * e)) / (2 * h) for e in np.eye(nparam)])
            gn = np.linalg.norm(g)
            if gn < 1e-14 or f < 1e-24:
                break
            while step > 1e-12:
                z_new = z - step * g / gn
                f_new = objective(z_new)
                if f_new < f:
                    z, f = z_new, f_new
                    step *= 1.5
                    break
                step *= 0.5
            else:
                break
        T = unpack(z)
        H = T.conj().T @ T
        if f < best_val:
            best_val, best_H = f, H
        if f < opts.tol:
            H = H / H[0, 0].real
            for den in _DENOMINATORS:
                Hq = [[QQi(Fraction(H[i, j].real).limit_denominator(den), Fraction(H[i, j].imag).limit_denominator(den)) for j in range(n)] for i in range(n)]
                for i in range(n):
                    Hq[i][i] = QQi(Hq[i][i].re)
                    for j in range(i):
                        Hq[j][i] = Hq[i][j].conjugate()
                cand = HermitianMetric(n, Hq)
                if cand.is_positive_definite() and classify(cand, A).balanced:
                    return cand, used, f
    return None, used, best_val


def find_balanced_metric(A: ComplexNilAlgebra, opts: SearchOptions | None = None) -> FeasibilityReport:
    opts = opts or SearchOptions()
    if not validate(A).valid:
        raise ValueError(f"{A.name}: algebra fails d^2 = 0")
    ident = HermitianMetric.identity(A.n)
    base = classify(ident, A)
    if base.balanced:
        return FeasibilityReport("balanced", FEASIBLE, ident, None, 0.0, 0)
    cert = k1_obstruction(A)
    if cert:
        return FeasibilityReport("balanced", INFEASIBLE, None, cert, _defect(base.balanced_defect), 0)

    status, used = UNKNOWN, 0
    if opts.method in ("auto", "linear"):
        system = balanced_linear_system(A)
        status, M, cert, used, best = _pd_feasibility(system, opts)
        if status == FEASIBLE:
            Hm = M if A.n == 1 else linalg.inverse(M)
            H = HermitianMetric(A.n, _normalize(Hm))
            if classify(H, A).balanced:
                return FeasibilityReport("balanced", FEASIBLE, H, None, 0.0, used)
            status = UNKNOWN
        if status == INFEASIBLE:
            return FeasibilityReport("balanced", INFEASIBLE, None, cert, _defect(base.balanced_defect), used)
    if opts.method in ("auto", "descent"):
        H, used2, best = _balanced_descent(A, opts)
        used += used2
        if H is not None:
            return FeasibilityReport("balanced", FEASIBLE, H, None, 0.0, used)
    if opts.method not in ("auto", "linear", "descent"):
        raise ValueError(f"unknown balanced search method {opts.method!r}")
    return FeasibilityReport("balanced", UNKNOWN, None, None, _defect(base.balanced_defect), used)


def _normalize(M: list) -> list:
    """Scale a positive-definite matrix so that its first diagonal entry is 1."""
    s = M[0][0]
    return [[x / s for x in row] for row in M]


def find_both(A: ComplexNilAlgebra, opts: SearchOptions | None = None) -> BothReport:
    skt = find_skt_metric(A, opts)
    bal = find_balanced_metric(A, opts)
    abelian = A.is_abelian()
    violation = skt.status == FEASIBLE and bal.status == FEASIBLE and not abelian
    if violation:
        log.error("%s: SKT and balanced metrics both found on a non-abelian algebra", A.name)
    return BothReport(A.name, skt, bal, abelian, violation)
