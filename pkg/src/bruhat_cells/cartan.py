"""Cartan matrices of finite type and their positive root systems.

Node numbering is fixed once and for all (tests depend on it):

* ``A_r``   chain ``1 - 2 - ... - r``.
* ``B_r``   chain with the double bond at the far end: ``a[r-1][r] = -2``,
  ``a[r][r-1] = -1``.  For ``B_2`` this is the labeling ``a_12 = -2``,
  ``a_21 = -1`` used by the rank-2 orbit examples (node 1 plays the
  letter "i", node 2 the letter "j").
* ``C_r``   mirror of ``B_r``: ``a[r-1][r] = -1``, ``a[r][r-1] = -2``.
* ``D_r``   chain ``2 - 3 - ... - r`` with the extra node 1 attached to 3,
  so 3 is the branching vertex (for ``D_4`` this is the star on 3).
* ``E_6,7,8`` chain ``1 - 2 - ... - (r-1)`` with node r attached to 3.
* ``F_4``   chain with ``a[2][3] = -2``, ``a[3][2] = -1``.
* ``G_2``   ``a[1][2] = -3``, ``a[2][1] = -1`` (node 1 = "i", node 2 = "j").

Roots live in the simple-root integer basis throughout; there are no real
coordinates anywhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "CartanError",
    "CartanMatrix",
    "RootSystem",
    "cartan_matrix",
    "d_exponents",
    "positive_roots",
    "parse_type",
    "RANK2_LETTERS",
]

# Letter aliases for the rank-2 presets: words like "j,i,j,i" map onto nodes.
RANK2_LETTERS = {"i": 1, "j": 2}

# Maximum closure size / coefficient before we declare the type non-finite.
_ROOT_COUNT_BOUND = 240
_ROOT_COEFF_BOUND = 30


class CartanError(ValueError):
    """Invalid Cartan data or unsupported (family, rank) request."""


@dataclass(frozen=True)
class CartanMatrix:
    """Integer Cartan matrix ``a[i][j]`` with 1-based node indices.

    Instances are immutable and hashable; ``entry(i, j)`` uses the 1-based
    node labels of the docstring above.
    """

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        if n == 0 or any(len(row) != n for row in self.entries):
            raise CartanError("Cartan matrix must be square and non-empty")
        for i in range(n):
            if self.entries[i][i] != 2:
                raise CartanError(f"diagonal entry a[{i + 1}][{i + 1}] must be 2")
            for j in range(n):
                if i == j:
                    continue
                aij, aji = self.entries[i][j], self.entries[j][i]
                if aij > 0:
                    raise CartanError(f"off-diagonal a[{i + 1}][{j + 1}] must be <= 0")
                if (aij == 0) != (aji == 0):
                    raise CartanError(
                        f"a[{i + 1}][{j + 1}] and a[{j + 1}][{i + 1}] must vanish together"
                    )
                if aij * aji not in (0, 1, 2, 3):
                    raise CartanError(
                        f"a[{i + 1}][{j + 1}]*a[{j + 1}][{i + 1}] = {aij * aji} "
                        "is outside the finite-type range {0,1,2,3}"
                    )

    @property
    def rank(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> int:
        """a[i][j] with 1-based node labels."""
        return self.entries[i - 1][j - 1]

    def nodes(self) -> range:
        return range(1, self.rank + 1)

    def adjacent(self, i: int, j: int) -> bool:
        """Whether {i, j} is an edge of the Dynkin graph."""
        return i != j and self.entry(i, j) != 0

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def __repr__(self) -> str:  # pragma: no cover
        return f"CartanMatrix({self.as_lists()!r})"


@dataclass(frozen=True)
class RootSystem:
    """All positive roots of a finite-type Cartan matrix, simple-root basis.

    ``positive_roots`` is sorted by (height, coordinates) so the listing is
    deterministic.  Simple root ``alpha_i`` is the i-th unit vector.
    """

    cartan: CartanMatrix
    positive_roots: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.positive_roots)

    def contains(self, vec: tuple[int, ...]) -> bool:
        return vec in set(self.positive_roots)


def _pair_entries(family: str, rank: int) -> list[list[int]]:
    """Adjacency table described in the module docstring."""
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def bond(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji

    if family == "A":
        for k in range(1, rank):
            bond(k, k + 1)
    elif family in ("B", "C"):
        for k in range(1, rank - 1):
            bond(k, k + 1)
        if family == "B":
            bond(rank - 1, rank, -2, -1)
        else:
            bond(rank - 1, rank, -1, -2)
    elif family == "D":
        for k in range(2, rank):
            bond(k, k + 1)
        bond(1, 3)
    elif family == "E":
        for k in range(1, rank - 1):
            bond(k, k + 1)
        bond(3, rank)
    elif family == "F":
        bond(1, 2)
        bond(2, 3, -2, -1)
        bond(3, 4)
    elif family == "G":
        bond(1, 2, -3, -1)
    return a


_VALID_RANKS = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 4,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


def cartan_matrix(family: str, rank: int) -> CartanMatrix:
    """Standard Cartan matrix of the requested finite type.

    Raises CartanError on an invalid (family, rank) pair.
    """
    family = family.upper()
    if family not in _VALID_RANKS:
        raise CartanError(f"unknown family {family!r}; expected one of A-G")
    if not _VALID_RANKS[family](rank):
        raise CartanError(f"{family}{rank} is not a supported finite type")
    entries = tuple(tuple(row) for row in _pair_entries(family, rank))
    return CartanMatrix(entries)


def parse_type(label: str) -> CartanMatrix:
    """Parse a type string like "B2" or "a5" (case-insensitive)."""
    label = label.strip()
    if len(label) < 2 or not label[1:].isdigit():
        raise CartanError(f"cannot parse type string {label!r}")
    return cartan_matrix(label[0], int(label[1:]))


_D_BY_PRODUCT = {0: 2, 1: 3, 2: 4, 3: 6}


def d_exponents(cartan: CartanMatrix) -> tuple[tuple[int, ...], ...]:
    """Coxeter orders d[i][j] with (s_i s_j)^d = e; the diagonal is marked 1."""
    r = cartan.rank
    return tuple(
        tuple(
            1 if i == j else _D_BY_PRODUCT[cartan.entry(i, j) * cartan.entry(j, i)]
            for j in cartan.nodes()
        )
        for i in cartan.nodes()
    )


def reflect_root(cartan: CartanMatrix, i: int, vec: tuple[int, ...]) -> tuple[int, ...]:
    """Apply the simple reflection s_i to a root written in the alpha basis.

    Only coordinate i changes: c_i -> c_i - sum_j a[i][j] c_j.
    """
    pairing = sum(cartan.entry(i, j + 1) * c for j, c in enumerate(vec))
    out = list(vec)
    out[i - 1] -= pairing
    return tuple(out)


@lru_cache(maxsize=None)
def positive_roots(cartan: CartanMatrix) -> RootSystem:
    """All positive roots via reflection closure from the simple roots.

    Rejects (via CartanError) input whose closure escapes the finite-type
    bounds; the entry-level invariants alone do not exclude e.g. affine
    rank-3 data.
    """
    r = cartan.rank
    simples = [tuple(1 if k == j else 0 for k in range(r)) for j in range(r)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for vec in frontier:
            for i in cartan.nodes():
                img = reflect_root(cartan, i, vec)
                if img in seen or any(c < 0 for c in img):
                    continue
                if max(img) > _ROOT_COEFF_BOUND or len(seen) >= _ROOT_COUNT_BOUND:
                    raise CartanError("root closure does not terminate: non-finite type")
                seen.add(img)
                nxt.append(img)
        frontier = nxt
    ordered = sorted(seen, key=lambda v: (sum(v), v))
    return RootSystem(cartan, tuple(ordered))
