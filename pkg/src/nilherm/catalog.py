"""Built-in test algebras with their expected metric properties."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import ComplexNilAlgebra
from .scalars import QQi

__all__ = ["CatalogEntry", "CATALOG", "builtin", "names"]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: ComplexNilAlgebra
    provenance: str
    skt_feasible: bool
    balanced_feasible: bool
    abelian: bool

    def expected(self) -> dict:
        return {"sktFeasible": self.skt_feasible, "balancedFeasible": self.balanced_feasible, "abelian": self.abelian}


def _alg(name, n, two_zero=None, one_one=None):
    tz = {k: QQi(v) for k, v in (two_zero or {}).items()}
    oo = {k: QQi(v) for k, v in (one_one or {}).items()}
    return ComplexNilAlgebra(n=n, name=name, two_zero=tz, one_one=oo)


CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry(
        "torus",
        _alg("torus", 3),
        "abelian, every structure constant zero",
        True,
        True,
        True,
    ),
    CatalogEntry(
        "kodaira-thurston",
        _alg("kodaira-thurston", 2, one_one={(2, 1, 1): 1}),
        "h3 + R with d a2 = a1 ^ a1bar; k = 1",
        True,
        False,
        False,
    ),
    CatalogEntry(
        "iwasawa",
        _alg("iwasawa", 3, two_zero={(3, 1, 2): 1}),
        "complex Heisenberg group, d a3 = a1 ^ a2; k = 2",
        False,
        True,
        False,
    ),
    CatalogEntry(
        "h3-r3",
        _alg("h3-r3", 3, one_one={(3, 1, 1): 1}),
        "h3 + R^3 with d a3 = a1 ^ a1bar; k = 2, only the first index enters",
        True,
        False,
        False,
    ),
    CatalogEntry(
        "balanced-not-skt-6d",
        _alg("balanced-not-skt-6d", 3, one_one={(3, 1, 1): 1, (3, 2, 2): -1}),
        "d a3 = a11bar - a22bar; residual cancels, (1,2) SKT coefficient -2",
        False,
        True,
        False,
    ),
    CatalogEntry(
        "skt-not-balanced-6d",
        _alg("skt-not-balanced-6d", 3, one_one={(3, 1, 1): 1, (3, 1, 2): 1, (3, 2, 1): 1, (3, 2, 2): 1}),
        "d a3 = a11bar + a12bar + a21bar + a22bar; SKT coefficient vanishes",
        True,
        False,
        False,
    ),
)

_BY_NAME = {e.name: e for e in CATALOG}
_ALIASES = {"kt": "kodaira-thurston", "h3+r3": "h3-r3", "h3xr3": "h3-r3"}


def names() -> list[str]:
    return [e.name for e in CATALOG]


def builtin(name: str) -> CatalogEntry:
    key = _ALIASES.get(name.lower(), name.lower())
    try:
        return _BY_NAME[key]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(names())}") from None
