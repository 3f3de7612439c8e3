"""Tits indices and restricted root systems with multiplicities.

A rational form is modeled combinatorially: the absolute Dynkin diagram,
a partition of its nodes into Galois orbits, and the circled
(distinguished) orbits.  Restriction maps an absolute positive root
sum(c_i alpha_i) to the vector whose entry at a distinguished orbit O is
sum of c_i over i in O; zero vectors are discarded and equal vectors are
grouped into multiplicities.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .roots import RootSystem, build_root_system, diagram_automorphisms


class InvalidTitsIndex(ValueError):
    pass


@dataclass(frozen=True)
class RestrictedRootSystem:
    """Positive restricted roots with multiplicities over the simple set.

    Coefficient vectors are indexed by the distinguished orbits in a
    fixed order (ascending minimal member).
    """

    simple_restricted: tuple[tuple[int, ...], ...]  # distinguished orbits, 1-indexed
    positive_restricted: tuple[tuple[tuple[int, ...], int], ...]  # (vector, mult)
    q_rank: int

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.positive_restricted)

    def multiplicity(self, vec: tuple[int, ...]) -> int:
        for v, m in self.positive_restricted:
            if v == vec:
                return m
        return 0

    @property
    def is_reduced(self) -> bool:
        roots = {v for v, _ in self.positive_restricted}
        return not any(tuple(2 * c for c in v) in roots for v in roots)

    def type_label(self) -> str:
        """Best-effort label from the ratio structure; informational only."""
        l = self.q_rank
        if l == 0:
            return "empty"
        n = len(self.positive_restricted)
        if not self.is_reduced:
            return f"BC{l}"
        if n == l * (l + 1) // 2:
            return f"A{l}"
        if n == l * l:
            return f"B{l}/C{l}" if l > 2 else ("B2" if l == 2 else f"B{l}")
        if n == l * (l - 1):
            return f"D{l}"
        if l == 2 and n == 6:
            return "G2"
        if l == 4 and n == 24:
            return "F4"
        return f"rank-{l} ({n} positive roots)"

    def to_json(self) -> dict:
        return {
            "simple_restricted": [list(o) for o in self.simple_restricted],
            "positive_restricted": [
                {"root": list(v), "multiplicity": m} for v, m in self.positive_restricted
            ],
            "q_rank": self.q_rank,
            "type": self.type_label(),
        }


@dataclass(frozen=True)
class TitsIndex:
    base: RootSystem
    orbits: tuple[tuple[int, ...], ...]  # partition of 1..rank
    distinguished: tuple[tuple[int, ...], ...]  # subset of orbits
    label: str = ""

    def __post_init__(self):
        n = self.base.rank
        seen = sorted(i for o in self.orbits for i in o)
        if seen != list(range(1, n + 1)):
            raise InvalidTitsIndex("orbits must partition the simple-root indices")
        orbit_set = {tuple(sorted(o)) for o in self.orbits}
        for o in self.distinguished:
            if tuple(sorted(o)) not in orbit_set:
                raise InvalidTitsIndex(f"distinguished set {o} is not an orbit")
        if not _partition_from_automorphism(self.base, self.orbits):
            raise InvalidTitsIndex(
                "orbit partition is not induced by a diagram automorphism"
            )

    @property
    def distinguished_ordered(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted((tuple(sorted(o)) for o in self.distinguished), key=min))

    @property
    def non_distinguished_indices(self) -> tuple[int, ...]:
        dist = {i for o in self.distinguished for i in o}
        return tuple(i for o in self.orbits for i in o if i not in dist)

    @classmethod
    def from_json(cls, data: dict) -> "TitsIndex":
        base = build_root_system(data["base"]["type"], data["base"]["rank"])
        return cls(
            base=base,
            orbits=tuple(tuple(o) for o in data["orbits"]),
            distinguished=tuple(tuple(o) for o in data["distinguished"]),
            label=data.get("label", ""),
        )

    @classmethod
    def from_file(cls, path: str) -> "TitsIndex":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        return {
            "base": {"type": self.base.cartan_type, "rank": self.base.rank},
            "orbits": [list(o) for o in self.orbits],
            "distinguished": [list(o) for o in self.distinguished],
            "label": self.label,
        }


def _partition_from_automorphism(rs: RootSystem, orbits) -> bool:
    """True iff some diagram automorphism has exactly this cycle partition."""
    target = {tuple(sorted(o)) for o in orbits}
    for sigma in diagram_automorphisms(rs):
        cycles = set()
        seen = set()
        for i in range(rs.rank):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = sigma[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = sigma[j]
            cycles.add(tuple(sorted(k + 1 for k in cyc)))
        if cycles == target:
            return True
    return False


def restrict_root(root: tuple[int, ...], orbits: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Coefficient-sum restriction of one absolute root over the given orbits."""
    return tuple(sum(root[i - 1] for i in orbit) for orbit in orbits)


def restrict(index: TitsIndex) -> RestrictedRootSystem:
    """Restricted root system with multiplicities of a Tits index.

    An empty distinguished set yields the empty q-rank-0 system
    (anisotropic form), not an error.
    """
    dist = index.distinguished_ordered
    counts = Counter()
    for root in index.base.positive_roots:
        vec = restrict_root(root, dist)
        if any(vec):
            counts[vec] += 1
    positive = tuple(sorted(counts.items(), key=lambda kv: (sum(kv[0]), kv[0])))
    return RestrictedRootSystem(
        simple_restricted=dist,
        positive_restricted=positive,
        q_rank=len(dist),
    )


@dataclass(frozen=True)
class DiagramFragment:
    """Sub-Dynkin-diagram on a set of simple-root indices, by components."""

    components: tuple[tuple[str, tuple[int, ...]], ...]  # (type label, 1-indexed nodes)

    @property
    def is_empty(self) -> bool:
        return not self.components

    def positive_root_count(self) -> int:
        from .roots import POSITIVE_ROOT_COUNT

        total = 0
        for label, nodes in self.components:
            ctype, crank = label[0], int(label[1:])
            total += POSITIVE_ROOT_COUNT[ctype](crank)
        return total

    def to_json(self) -> list:
        return [{"type": t, "nodes": list(ns)} for t, ns in self.components]


def _classify_component(rs: RootSystem, nodes: list[int]) -> str:
    """Type of the sub-diagram on the given zero-based nodes."""
    from .roots import VALID_RANKS, cartan_matrix

    k = len(nodes)
    sub = [[rs.cartan[i][j] for j in nodes] for i in nodes]
    for ctype, valid in VALID_RANKS.items():
        if not valid(k):
            continue
        cand = cartan_matrix(ctype, k)
        if _cartan_equivalent(sub, cand):
            return f"{ctype}{k}"
    raise InvalidTitsIndex(f"unclassifiable sub-diagram on nodes {nodes}")


def _cartan_equivalent(a: list[list[int]], b: list[list[int]]) -> bool:
    """Permutation equivalence of two small Cartan matrices, by backtracking."""
    n = len(a)
    rows_b = [tuple(sorted(r)) for r in b]
    rows_a = [tuple(sorted(r)) for r in a]

    def extend(partial: list[int], used: set[int]) -> bool:
        i = len(partial)
        if i == n:
            return True
        for img in range(n):
            if img in used or rows_b[img] != rows_a[i]:
                continue
            if all(
                b[img][pj] == a[i][j] and b[pj][img] == a[j][i]
                for j, pj in enumerate(partial)
            ):
                partial.append(img)
                used.add(img)
                if extend(partial, used):
                    return True
                used.remove(img)
                partial.pop()
        return False

    return extend([], set())


def anisotropic_kernel(index: TitsIndex) -> DiagramFragment:
    """Sub-diagram on the non-distinguished simple roots, by typed components."""
    keep = sorted(i - 1 for i in index.non_distinguished_indices)
    keep_set = set(keep)
    unvisited = set(keep)
    components = []
    while unvisited:
        start = min(unvisited)
        comp = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in keep_set:
                if j not in comp and index.base.cartan[i][j] != 0:
                    comp.add(j)
                    stack.append(j)
        unvisited -= comp
        nodes = sorted(comp)
        components.append((_classify_component(index.base, nodes), tuple(n + 1 for n in nodes)))
    components.sort(key=lambda c: c[1])
    return DiagramFragment(components=tuple(components))


def split_index(cartan_type: str, rank: int, label: str = "") -> TitsIndex:
    """Split form: trivial orbits, all distinguished."""
    rs = build_root_system(cartan_type, rank)
    orbits = tuple((i,) for i in range(1, rank + 1))
    return TitsIndex(base=rs, orbits=orbits, distinguished=orbits, label=label)
