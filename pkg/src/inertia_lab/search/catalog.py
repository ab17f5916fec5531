"""Known inertia sets ``N_{m,n}`` of partial transposes of NPT states."""
from dataclasses import dataclass, field
from typing import FrozenSet, List, Tuple

from ..ptrans import BipartiteDims, Inertia


def _set(*triples) -> FrozenSet[Inertia]:
    return frozenset(Inertia(*t) for t in triples)


N23 = _set((1, 2, 3), (1, 1, 4), (1, 0, 5), (2, 0, 4))

N33 = _set(
    (1, 0, 8), (1, 1, 7), (1, 2, 6), (1, 3, 5), (1, 4, 4), (1, 5, 3), (2, 0, 7),
    (2, 1, 6), (2, 2, 5), (2, 3, 4), (3, 0, 6), (3, 1, 5), (4, 0, 5),
)
N33_EXCLUDED = _set((4, 1, 4), (3, 2, 4))

N34_EXCLUDED = _set(
    (7, 0, 5), (7, 1, 4), (7, 2, 3), (8, 0, 4), (8, 1, 3), (9, 0, 3),
    (6, 2, 4), (6, 3, 3), (5, 4, 3),
)


def three_by_n_family(n: int) -> List[Inertia]:
    """The arrays ``(k, 3n-2-2k-j, j+k+2)``, ``1 <= k <= n-1``, ``0 <= j <= 3n-2-2k``.

    There are ``(n-1)(2n-1)`` of them, all realized in ``N_{3,n}``.
    """
    if n < 2:
        return []
    return [
        Inertia(k, 3 * n - 2 - 2 * k - j, j + k + 2)
        for k in range(1, n)
        for j in range(3 * n - 1 - 2 * k)
    ]


@dataclass(frozen=True)
class CatalogEntry:
    """Curated knowledge about ``N_{m,n}``.

    For a complete entry every NPT triple outside ``known_members`` is
    impossible, whether or not it is listed in ``known_excluded``.
    """

    dims: BipartiteDims
    known_members: FrozenSet[Inertia]
    known_excluded: FrozenSet[Inertia]
    complete: bool
    family: Tuple[Inertia, ...] = field(default=())

    def __post_init__(self):
        if self.known_members & self.known_excluded:
            raise ValueError("members and exclusions overlap")

    def status(self, inn: Inertia) -> str:
        """One of ``ppt``, ``member``, ``excluded``, ``impossible`` or ``new``."""
        if inn.order != self.dims.order:
            raise ValueError(f"inertia {inn} does not match dims {self.dims}")
        if inn.neg == 0:
            return "ppt"
        if inn in self.known_members:
            return "member"
        if inn in self.known_excluded:
            return "excluded"
        return "impossible" if self.complete else "new"

    def flagged(self, inn: Inertia) -> bool:
        """True when observing ``inn`` would contradict the catalog."""
        return self.status(inn) in ("excluded", "impossible")


def known_catalog(dims: BipartiteDims) -> CatalogEntry:
    m, n = dims.m, dims.n
    family = tuple(three_by_n_family(n)) if m == 3 else ()
    if (m, n) == (2, 3):
        return CatalogEntry(dims, N23, frozenset(), True, family)
    if (m, n) == (3, 3):
        return CatalogEntry(dims, N33, N33_EXCLUDED, True, family)
    if (m, n) == (3, 4):
        return CatalogEntry(dims, frozenset(family), N34_EXCLUDED, False, family)
    return CatalogEntry(dims, frozenset(family), frozenset(), False, family)
