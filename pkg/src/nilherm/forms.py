"""Sparse exterior calculus on the complexified dual of a Lie algebra.

A :class:`Form` stores a map from bitmask keys to scalar coefficients.  For
complex dimension ``n`` the holomorphic coframe element ``alpha^i`` occupies
bit ``i-1`` and its conjugate ``alpha^{i bar}`` occupies bit ``n+i-1``; ascending
bit order is the canonical term order (holomorphic indices first, each part
ascending), and the reordering sign is folded into the coefficient.
"""

from __future__ import annotations

from contextlib import contextmanager
from typing import TYPE_CHECKING, Iterable, Iterator

from .kernels import get_kernels
from .scalars import ModeError, as_exact, conj, is_exact

if TYPE_CHECKING:
    from .algebra import ComplexNilAlgebra

__all__ = [
    "Form",
    "coeff_norm_sq",
    "conjugate",
    "d_bar",
    "d_holo",
    "differential",
    "permutation_sign",
    "project",
    "use_backend",
    "wedge",
]

_backend: str | None = None


@contextmanager
def use_backend(name: str):
    """Temporarily force a kernel backend ("python" or "cython")."""
    global _backend
    prev, _backend = _backend, name
    try:
        yield
    finally:
        _backend = prev


def _kernels(n: int):
    return get_kernels(2 * n, _backend)


def permutation_sign(seq) -> int:
    """Sign of the permutation sorting ``seq``; 0 if an entry repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _bits(m: int) -> Iterator[int]:
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


class Form:
    """Element of the complexified exterior algebra, possibly inhomogeneous."""

    __slots__ = ("n", "terms", "exact")

    def __init__(self, n: int, terms: dict | None = None, exact: bool = True):
        self.n = n
        self.exact = exact
        cast = as_exact if exact else complex
        clean = {}
        if terms:
            for m, c in terms.items():
                if m >> (2 * n):
                    raise ValueError(f"mask {m:#x} out of range for n={n}")
                if not exact and is_exact(c):
                    c = complex(c)
                c = cast(c)
                if c:
                    clean[m] = c
        self.terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict, exact: bool) -> "Form":
        f = object.__new__(cls)
        f.n, f.terms, f.exact = n, terms, exact
        return f

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, n: int, exact: bool = True) -> "Form":
        return cls._raw(n, {}, exact)

    @classmethod
    def one(cls, n: int, exact: bool = True) -> "Form":
        return cls(n, {0: 1}, exact)

    @classmethod
    def basis(cls, n: int, holo: Iterable[int] = (), anti: Iterable[int] = (), coeff=1, exact: bool = True) -> "Form":
        """``coeff * alpha^{holo...} wedge alpha^{anti... bar}`` with the given factor order."""
        positions = [i - 1 for i in holo] + [n + j - 1 for j in anti]
        for p in positions:
            if not 0 <= p < 2 * n:
                raise ValueError(f"coframe index out of range for n={n}")
        sign = permutation_sign(positions)
        if sign == 0:
            return cls.zero(n, exact)
        mask = 0
        for p in positions:
            mask |= 1 << p
        c = as_exact(coeff) if exact else complex(coeff)
        return cls(n, {mask: c if sign > 0 else -c}, exact)

    @classmethod
    def alpha(cls, n: int, i: int, exact: bool = True) -> "Form":
        return cls.basis(n, (i,), (), 1, exact)

    @classmethod
    def alpha_bar(cls, n: int, i: int, exact: bool = True) -> "Form":
        return cls.basis(n, (), (i,), 1, exact)

    # mask helpers ---------------------------------------------------------
    def split(self, mask: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Holomorphic and antiholomorphic index tuples (1-based) of a mask."""
        low = (1 << self.n) - 1
        holo = tuple(b + 1 for b in _bits(mask & low))
        anti = tuple(b + 1 for b in _bits(mask >> self.n))
        return holo, anti

    def bidegree_of(self, mask: int) -> tuple[int, int]:
        low = (1 << self.n) - 1
        return (mask & low).bit_count(), (mask >> self.n).bit_count()

    def bidegrees(self) -> set[tuple[int, int]]:
        return {self.bidegree_of(m) for m in self.terms}

    def items(self) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], object]]:
        for m in sorted(self.terms):
            h, a = self.split(m)
            yield h, a, self.terms[m]

    def coefficient(self, holo: Iterable[int] = (), anti: Iterable[int] = ()):
        """Coefficient along ``alpha^{holo} wedge alpha^{anti bar}`` in the given factor order."""
        unit = Form.basis(self.n, holo, anti, 1, True)
        if not unit.terms:
            raise ValueError("repeated index in basis element")
        ((mask, sign),) = unit.terms.items()
        c = self.terms.get(mask)
        if c is None:
            return as_exact(0) if self.exact else 0j
        return c if sign == 1 else -c

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # linear structure -----------------------------------------------------
    def _check(self, other: "Form") -> None:
        if not isinstance(other, Form):
            raise TypeError(f"expected Form, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: n={self.n} vs n={other.n}")
        if other.exact != self.exact:
            raise ModeError("cannot mix exact and float forms")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out[m] + c if m in out else c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Form._raw(self.n, out, self.exact)

    def __neg__(self) -> "Form":
        return Form._raw(self.n, {m: -c for m, c in self.terms.items()}, self.exact)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, s) -> "Form":
        if isinstance(s, Form):
            raise TypeError("use wedge() for products of forms")
        if self.exact:
            if isinstance(s, (float, complex)):
                raise ModeError("cannot scale an exact form by a float")
            s = as_exact(s)
        else:
            s = complex(s)
        if not s:
            return Form.zero(self.n, self.exact)
        out = {}
        for m, c in self.terms.items():
            v = c * s
            if v:
                out[m] = v
        return Form._raw(self.n, out, self.exact)

    def __mul__(self, s) -> "Form":
        return self.scale(s)

    __rmul__ = __mul__

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if other.n != self.n or other.exact != self.exact:
            return False
        return not (self - other).terms

    __hash__ = None

    def to_float(self) -> "Form":
        return Form(self.n, {m: complex(c) for m, c in self.terms.items()}, exact=False)

    def __repr__(self):
        return f"Form(n={self.n}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        sep = "," if self.n >= 10 else ""
        parts = []
        for h, a, c in self.items():
            label = sep.join(map(str, h)) + "|" + sep.join(map(str, a))
            parts.append(f"{c}*a{{{label}}}" if (h or a) else f"{c}")
        return " + ".join(parts)


# operations ---------------------------------------------------------------


def wedge(phi: Form, psi: Form) -> Form:
    """Exterior product in canonical normalization."""
    phi._check(psi)
    return Form._raw(phi.n, _kernels(phi.n).wedge_terms(phi.terms, psi.terms), phi.exact)


def differential(phi: Form, A: "ComplexNilAlgebra") -> Form:
    """Chevalley-Eilenberg differential, extended from generators by the graded Leibniz rule."""
    if phi.n != A.n:
        raise ValueError(f"dimension mismatch: form n={phi.n}, algebra n={A.n}")
    gens = A.generator_differentials(phi.exact)
    return Form._raw(phi.n, _kernels(phi.n).differential_terms(phi.terms, gens), phi.exact)


def project(phi: Form, p: int, q: int) -> Form:
    """The (p,q)-component of ``phi``."""
    n = phi.n
    low = (1 << n) - 1
    out = {m: c for m, c in phi.terms.items() if (m & low).bit_count() == p and (m >> n).bit_count() == q}
    return Form._raw(n, out, phi.exact)


def _homogeneous_parts(phi: Form) -> dict[tuple[int, int], Form]:
    parts: dict[tuple[int, int], dict] = {}
    for m, c in phi.terms.items():
        parts.setdefault(phi.bidegree_of(m), {})[m] = c
    return {k: Form._raw(phi.n, v, phi.exact) for k, v in parts.items()}


def d_holo(phi: Form, A: "ComplexNilAlgebra") -> Form:
    """``partial``: raises the holomorphic degree by one on each bidegree component."""
    out = Form.zero(phi.n, phi.exact)
    for (p, q), part in _homogeneous_parts(phi).items():
        out = out + project(differential(part, A), p + 1, q)
    return out


def d_bar(phi: Form, A: "ComplexNilAlgebra") -> Form:
    """``partial bar``: raises the antiholomorphic degree by one on each bidegree component."""
    out = Form.zero(phi.n, phi.exact)
    for (p, q), part in _homogeneous_parts(phi).items():
        out = out + project(differential(part, A), p, q + 1)
    return out


def conjugate(phi: Form) -> Form:
    """Antilinear involution exchanging alpha^i and alpha^{i bar}."""
    n = phi.n
    low = (1 << n) - 1
    out = {}
    for m, c in phi.terms.items():
        h, a = m & low, m >> n
        v = conj(c)
        if (h.bit_count() * a.bit_count()) & 1:
            v = -v
        out[a | (h << n)] = v
    return Form._raw(n, out, phi.exact)


def coeff_norm_sq(phi: Form):
    """Sum of squared moduli of the canonical coefficients."""
    if not phi.exact:
        return sum((abs(c) ** 2 for c in phi.terms.values()), 0.0)
    total = as_exact(0)
    for c in phi.terms.values():
        total = total + c * conj(c)
    return total
