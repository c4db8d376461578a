"""Complex nilpotent Lie algebras given by structure constants on a (1,0)-coframe.

The differential of a generator is

    d alpha^j = sum_{r<s} A^j_{rs} alpha^r ^ alpha^s + sum_{r,s} B^j_{rs} alpha^r ^ alpha^{s bar}

with the convention ``d phi(X, Y) = -phi([X, Y])``.  There is no (0,2)-part,
so the complex structure is integrable by construction.  Only r<s is stored
for the (2,0)-part; the antisymmetric extension is implicit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from . import linalg
from .forms import Form, conjugate, differential
from .kernels import get_kernels
from .scalars import QQi, Radical, as_exact, conj, format_rational, parse_rational

__all__ = [
    "AlgebraError",
    "CoframeChange",
    "ComplexNilAlgebra",
    "NormalForm",
    "NormalFormFailure",
    "ValidationReport",
    "change_coframe",
    "is_normal_form_shape",
    "nilpotency_step",
    "substitute",
    "to_normal_form",
    "validate",
]


class AlgebraError(ValueError):
    """Malformed algebra input, or an algebra that is not nilpotent."""


Key = tuple[int, int, int]


@dataclass(frozen=True, eq=False)
class ComplexNilAlgebra:
    n: int
    name: str = "unnamed"
    two_zero: Mapping[Key, object] = field(default_factory=dict)
    one_one: Mapping[Key, object] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise AlgebraError(f"complex dimension must be a positive integer, got {self.n!r}")
        tz, oo = {}, {}
        for (j, r, s), c in self.two_zero.items():
            self._check_index(j, r, s)
            if not r < s:
                raise AlgebraError(f"twoZero entry (j={j}, r={r}, s={s}) needs r<s")
            c = as_exact(c)
            if c:
                tz[(j, r, s)] = c
        for (j, r, s), c in self.one_one.items():
            self._check_index(j, r, s)
            c = as_exact(c)
            if c:
                oo[(j, r, s)] = c
        object.__setattr__(self, "two_zero", tz)
        object.__setattr__(self, "one_one", oo)
        object.__setattr__(self, "_gen_cache", {})

    def _check_index(self, *idx):
        for i in idx:
            if not isinstance(i, int) or not 1 <= i <= self.n:
                raise AlgebraError(f"index {i!r} out of range 1..{self.n}")

    # structure constants --------------------------------------------------
    def c20(self, j: int, r: int, s: int):
        """Antisymmetric (2,0) constant c^j_{rs}."""
        if r == s:
            return QQi()
        if r < s:
            return self.two_zero.get((j, r, s), QQi())
        return -self.two_zero.get((j, s, r), QQi())

    def c11(self, j: int, r: int, s: int):
        """(1,1) constant c^j_{r sbar}."""
        return self.one_one.get((j, r, s), QQi())

    def is_abelian(self) -> bool:
        return not self.two_zero and not self.one_one

    def d_alpha(self, j: int, exact: bool = True) -> Form:
        """d alpha^j as a form."""
        n = self.n
        terms = {}
        for (jj, r, s), c in self.two_zero.items():
            if jj == j:
                terms[(1 << (r - 1)) | (1 << (s - 1))] = c
        for (jj, r, s), c in self.one_one.items():
            if jj == j:
                terms[(1 << (r - 1)) | (1 << (n + s - 1))] = c
        f = Form(n, terms, True)
        return f if exact else f.to_float()

    def generator_differentials(self, exact: bool = True) -> list[dict]:
        """Term dicts of d(e_b) for every coframe bit b (holomorphic then conjugate)."""
        cache = self._gen_cache
        if exact not in cache:
            holo = [self.d_alpha(j, exact) for j in range(1, self.n + 1)]
            anti = [conjugate(f) for f in holo]
            cache[exact] = [f.terms for f in holo + anti]
        return cache[exact]

    def closed_indices(self) -> list[int]:
        return [j for j in range(1, self.n + 1) if not self.d_alpha(j)]

    def constants_equal(self, other: "ComplexNilAlgebra") -> bool:
        if self.n != other.n or set(self.two_zero) != set(other.two_zero) or set(self.one_one) != set(other.one_one):
            return False
        return all(self.two_zero[k] == other.two_zero[k] for k in self.two_zero) and all(
            self.one_one[k] == other.one_one[k] for k in self.one_one
        )

    def __eq__(self, other):
        if not isinstance(other, ComplexNilAlgebra):
            return NotImplemented
        return self.name == other.name and self.constants_equal(other)

    __hash__ = None

    def renamed(self, name: str) -> "ComplexNilAlgebra":
        return ComplexNilAlgebra(self.n, name, self.two_zero, self.one_one)

    # serialization --------------------------------------------------------
    def to_dict(self) -> dict:
        def entries(table):
            out = []
            for (j, r, s) in sorted(table):
                c = table[(j, r, s)]
                if isinstance(c, Radical):
                    c = c.to_qqi()
                out.append({"j": j, "r": r, "s": s, "re": format_rational(c.re), "im": format_rational(c.im)})
            return out

        return {"name": self.name, "n": self.n, "twoZero": entries(self.two_zero), "oneOne": entries(self.one_one)}

    @classmethod
    def from_dict(cls, data: Mapping) -> "ComplexNilAlgebra":
        if not isinstance(data, Mapping):
            raise AlgebraError("algebra file must hold an object")
        try:
            n = data["n"]
        except KeyError as exc:
            raise AlgebraError("algebra file is missing 'n'") from exc
        if isinstance(n, bool) or not isinstance(n, int):
            raise AlgebraError(f"'n' must be an integer, got {n!r}")

        def table(key):
            out = {}
            for e in data.get(key, []):
                try:
                    j, r, s = e["j"], e["r"], e["s"]
                except (KeyError, TypeError) as exc:
                    raise AlgebraError(f"{key} entry {e!r} needs j, r, s") from exc
                for i in (j, r, s):
                    if isinstance(i, bool) or not isinstance(i, int):
                        raise AlgebraError(f"{key} entry {e!r}: indices must be integers")
                if (j, r, s) in out:
                    raise AlgebraError(f"duplicate {key} entry (j={j}, r={r}, s={s})")
                try:
                    out[(j, r, s)] = QQi(parse_rational(e.get("re", "0")), parse_rational(e.get("im", "0")))
                except ValueError as exc:
                    raise AlgebraError(str(exc)) from exc
            return out

        return cls(n, str(data.get("name", "unnamed")), table("twoZero"), table("oneOne"))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "ComplexNilAlgebra":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise AlgebraError(f"algebra file is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


# validation -----------------------------------------------------------------


@dataclass
class ValidationReport:
    algebra: str
    d_squared: dict[int, Form]

    @property
    def valid(self) -> bool:
        return all(f.is_zero() for f in self.d_squared.values())

    def failures(self) -> dict[int, Form]:
        return {j: f for j, f in self.d_squared.items() if not f.is_zero()}


def validate(A: ComplexNilAlgebra) -> ValidationReport:
    """Compute d(d alpha^j) for every generator; the algebra is valid iff all vanish."""
    out = {}
    for j in range(1, A.n + 1):
        out[j] = differential(A.d_alpha(j), A)
    return ValidationReport(A.name, out)


# nilpotency -----------------------------------------------------------------


def _two_form_matrices(A: ComplexNilAlgebra) -> list[list[list]]:
    """Antisymmetric matrix of d(e_a) for each complex 1-form basis element e_a."""
    size = 2 * A.n
    zero = QQi()
    mats = []
    for terms in A.generator_differentials(True):
        M = [[zero] * size for _ in range(size)]
        for mask, c in terms.items():
            x = (mask & -mask).bit_length() - 1
            y = mask.bit_length() - 1
            M[x][y] = M[x][y] + c
            M[y][x] = M[y][x] - c
        mats.append(M)
    return mats


def nilpotency_step(A: ComplexNilAlgebra) -> int:
    """Length of the filtration V_{i+1} = {phi : d phi in Lambda^2 V_i} of 1-forms.

    Returns 1 for abelian algebras.  Raises :class:`AlgebraError` when the
    filtration stalls before exhausting all 1-forms.
    """
    size = 2 * A.n
    mats = _two_form_matrices(A)
    V: list[list] = []
    step = 0
    while True:
        if V:
            annihilator = linalg.nullspace(V, size)
        else:
            annihilator = [[QQi(1) if b == a else QQi() for b in range(size)] for a in range(size)]
        rows = []
        for x in annihilator:
            support = [b for b in range(size) if x[b]]
            for c in range(size):
                row = []
                for M in mats:
                    acc = QQi()
                    for b in support:
                        if M[b][c]:
                            acc = acc + x[b] * M[b][c]
                    row.append(acc)
                if any(row):
                    rows.append(row)
        V_next = linalg.nullspace(rows, size) if rows else linalg.eye(size)
        step += 1
        if len(V_next) == size:
            return step
        if len(V_next) <= len(V):
            raise AlgebraError(f"{A.name}: not nilpotent")
        V = V_next


# coframe changes ------------------------------------------------------------


@dataclass(frozen=True)
class CoframeChange:
    """New coframe beta^a = sum_b matrix[a][b] alpha^b; ``inverse`` expresses alpha in beta."""

    matrix: list
    inverse: list

    @classmethod
    def identity(cls, n: int) -> "CoframeChange":
        return cls(linalg.eye(n), linalg.eye(n))

    @classmethod
    def from_matrix(cls, P) -> "CoframeChange":
        return cls(P, linalg.inverse(P))

    def is_identity(self) -> bool:
        n = len(self.matrix)
        return all(self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    def is_lower_triangular(self) -> bool:
        n = len(self.matrix)
        return all(not self.matrix[i][j] for i in range(n) for j in range(i + 1, n))

    def then(self, other: "CoframeChange") -> "CoframeChange":
        """Apply ``self`` first, then ``other``."""
        return CoframeChange(linalg.matmul(other.matrix, self.matrix), linalg.matmul(self.inverse, other.inverse))


def substitute(phi: Form, Q) -> Form:
    """Rewrite a form given in the alpha-coframe in terms of beta, where alpha^b = sum_c Q[b][c] beta^c."""
    n = phi.n
    kern = get_kernels(2 * n)
    images = []
    for b in range(n):
        images.append({1 << c: Q[b][c] for c in range(n) if Q[b][c]})
    for b in range(n):
        images.append({1 << (n + c): conj(Q[b][c]) for c in range(n) if Q[b][c]})
    out: dict = {}
    for mask, coeff in phi.terms.items():
        acc = {0: coeff}
        bits = mask
        while bits:
            low = bits & -bits
            acc = kern.wedge_terms(acc, images[low.bit_length() - 1])
            bits ^= low
        for m, v in acc.items():
            out[m] = out[m] + v if m in out else v
    return Form(n, {m: v for m, v in out.items() if v}, phi.exact)


def change_coframe(A: ComplexNilAlgebra, change: CoframeChange, name: str | None = None) -> ComplexNilAlgebra:
    """Structure constants of A in the coframe beta = change.matrix @ alpha."""
    n = A.n
    P = change.matrix
    tz, oo = {}, {}
    for a in range(n):
        F = Form.zero(n)
        for b in range(n):
            if P[a][b]:
                F = F + A.d_alpha(b + 1).scale(P[a][b])
        G = substitute(F, change.inverse)
        for mask, c in G.terms.items():
            h, anti = G.split(mask)
            if len(h) == 2 and not anti:
                tz[(a + 1, h[0], h[1])] = c
            elif len(h) == 1 and len(anti) == 1:
                oo[(a + 1, h[0], anti[0])] = c
            else:
                raise AlgebraError("coframe change produced a (0,2)-component")
    return ComplexNilAlgebra(n, name or A.name, tz, oo)


# normal form ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class NormalForm:
    base: ComplexNilAlgebra
    k: int
    change: CoframeChange


@dataclass(frozen=True)
class NormalFormFailure:
    """The algebra has no coframe of the required shape adapted to its closed (1,0)-forms."""

    algebra: str
    k: int
    offending: tuple
    reason: str = "no adapted coframe: a non-closed index appears in some d alpha^j"

    def __bool__(self):
        return False


def is_normal_form_shape(A: ComplexNilAlgebra, k: int) -> list[tuple]:
    """Constants violating the shape (closed alpha^1..alpha^k, the rest built from them); empty if none."""
    bad = []
    for table, part in ((A.two_zero, "twoZero"), (A.one_one, "oneOne")):
        for (j, r, s) in sorted(table):
            if j <= k or r > k or s > k:
                bad.append((part, j, r, s))
    return bad


def to_normal_form(A: ComplexNilAlgebra) -> NormalForm | NormalFormFailure:
    """Coframe whose first k members span the closed (1,0)-forms.

    Succeeds iff every remaining d alpha^j is built from closed indices only.
    Abelian input yields k = n with the identity change.
    """
    n = A.n
    if A.is_abelian():
        return NormalForm(A, n, CoframeChange.identity(n))
    masks = sorted({m for j in range(1, n + 1) for m in A.d_alpha(j).terms})
    cols = [A.d_alpha(j).terms for j in range(1, n + 1)]
    rows = [[col.get(m, QQi()) for col in cols] for m in masks]
    kernel = linalg.nullspace(rows, n)
    K, pivots = linalg.rref(kernel, n) if kernel else ([], [])
    k = len(K)
    P = [list(row) for row in K]
    for j in range(n):
        if j not in pivots:
            P.append([QQi(1) if c == j else QQi() for c in range(n)])
    change = CoframeChange.identity(n) if P == linalg.eye(n) else CoframeChange.from_matrix(P)
    B = change_coframe(A, change) if not change.is_identity() else A
    bad = is_normal_form_shape(B, k)
    if bad:
        return NormalFormFailure(A.name, k, tuple(bad))
    return NormalForm(B, k, change)
