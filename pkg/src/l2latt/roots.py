"""Reduced root systems of types A-G in simple-root coordinates.

Roots are stored as integer coefficient vectors over the simple basis
(Bourbaki numbering), so all downstream arithmetic stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache


class InvalidRootSystem(ValueError):
    pass


VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

# Closed-form positive root counts used as an exhaustive cross-check.
POSITIVE_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


def cartan_matrix(cartan_type: str, rank: int) -> list[list[int]]:
    """Cartan matrix with entry [i][j] = <alpha_i, alpha_j-coroot>."""
    if cartan_type not in VALID_RANKS or not VALID_RANKS[cartan_type](rank):
        raise InvalidRootSystem(f"invalid Cartan type {cartan_type}_{rank}")
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if cartan_type in ("A", "B", "C"):
        for i in range(n - 1):
            bond(i, i + 1)
        if cartan_type == "B" and n >= 2:
            # alpha_n short: <alpha_{n-1}, alpha_n-coroot> = -2
            bond(n - 2, n - 1, aij=-2, aji=-1)
        if cartan_type == "C" and n >= 2:
            bond(n - 2, n - 1, aij=-1, aji=-2)
    elif cartan_type == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        if n >= 3:
            bond(n - 3, n - 1)
    elif cartan_type == "E":
        # Bourbaki: node 2 hangs off node 4; chain 1-3-4-5-...-n.
        chain = [0] + list(range(2, n))
        for i, j in zip(chain, chain[1:]):
            bond(i, j)
        bond(1, 3)
    elif cartan_type == "F":
        bond(0, 1)
        bond(1, 2, aij=-2, aji=-1)
        bond(2, 3)
    elif cartan_type == "G":
        # alpha_1 short, alpha_2 long; highest root 3a1 + 2a2.
        bond(0, 1, aij=-1, aji=-3)
    return a


@dataclass(frozen=True)
class RootSystem:
    """Absolute reduced root system with positive roots as coefficient vectors."""

    cartan_type: str
    rank: int
    positive_roots: tuple[tuple[int, ...], ...]
    cartan: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def simple_roots(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        return tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))

    @property
    def adjacency(self) -> list[tuple[int, int, int]]:
        """Dynkin edges as (i, j, bond multiplicity), 1-indexed, i < j."""
        edges = []
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                if self.cartan[i][j] != 0:
                    edges.append((i + 1, j + 1, self.cartan[i][j] * self.cartan[j][i]))
        return edges

    def pairing(self, root: tuple[int, ...], i: int) -> int:
        """Cartan integer <root, alpha_i-coroot> (i zero-based)."""
        return sum(c * self.cartan[j][i] for j, c in enumerate(root))

    def is_root(self, vec: tuple[int, ...]) -> bool:
        return vec in self._root_set()

    @lru_cache(maxsize=None)
    def _root_set(self) -> frozenset:
        return frozenset(self.positive_roots)

    def to_json(self) -> dict:
        return {
            "type": self.cartan_type,
            "rank": self.rank,
            "positive_roots": [list(r) for r in self.positive_roots],
        }


def root_height(root: tuple[int, ...]) -> int:
    """Sum of simple-root coefficients."""
    return sum(root)


def _generate_positive_roots(cartan: list[list[int]], rank: int) -> list[tuple[int, ...]]:
    """Grow positive roots height by height via root strings."""
    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(rank):
                # downward string length p: max k with beta - k*alpha_i a root
                p = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if tuple(probe) not in roots:
                        break
                    p += 1
                pairing = sum(c * cartan[j][i] for j, c in enumerate(beta))
                if p - pairing > 0:
                    up = tuple(c + (1 if j == i else 0) for j, c in enumerate(beta))
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        frontier = nxt
    return sorted(roots, key=lambda r: (root_height(r), r))


@lru_cache(maxsize=None)
def build_root_system(cartan_type: str, rank: int) -> RootSystem:
    """Construct the root system; rejects invalid (type, rank) pairs."""
    cartan = cartan_matrix(cartan_type, rank)
    positive = _generate_positive_roots(cartan, rank)
    rs = RootSystem(
        cartan_type=cartan_type,
        rank=rank,
        positive_roots=tuple(positive),
        cartan=tuple(tuple(row) for row in cartan),
    )
    expected = POSITIVE_ROOT_COUNT[cartan_type](rank)
    if len(positive) != expected:
        raise InvalidRootSystem(
            f"{cartan_type}_{rank}: generated {len(positive)} positive roots, "
            f"expected {expected}"
        )
    return rs


def diagram_automorphisms(rs: RootSystem) -> list[tuple[int, ...]]:
    """All permutations of simple roots preserving the Cartan matrix.

    Returned as zero-based images; found by backtracking (the groups are
    tiny: trivial, Z/2, or S_3 for D_4).
    """
    n = rs.rank
    cartan = rs.cartan
    rows = [tuple(sorted(cartan[i])) for i in range(n)]
    result = []

    def extend(partial: list[int], used: set[int]):
        i = len(partial)
        if i == n:
            result.append(tuple(partial))
            return
        for img in range(n):
            if img in used or rows[img] != rows[i]:
                continue
            ok = all(
                cartan[i][j] == cartan[img][pj] and cartan[j][i] == cartan[pj][img]
                for j, pj in enumerate(partial)
            )
            if ok:
                partial.append(img)
                used.add(img)
                extend(partial, used)
                used.remove(img)
                partial.pop()

    extend([], set())
    return result
