"""Standard rational parabolic subgroups as subsets of the simple restricted roots.

For a restricted root system of rank l each subset I of the simple set
determines a standard parabolic: its unipotent part collects the
positive restricted roots outside the span of I, graded by the level
sum(c_beta, beta not in I), with growth degree sum(m_alpha * level).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .realforms import RealFormData
from .tits import RestrictedRootSystem


class AnnotationRequired(ValueError):
    pass


@dataclass(frozen=True)
class StandardParabolic:
    rrs: RestrictedRootSystem
    I: tuple[int, ...]  # positions into the simple restricted set, zero-based
    levi_annotation: Optional[RealFormData] = None

    @property
    def q_rank(self) -> int:
        return self.rrs.q_rank

    @property
    def split_rank(self) -> int:
        return self.q_rank - len(self.I)

    @property
    def sigma(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        """Positive restricted roots outside Phi_I, with multiplicities."""
        iset = set(self.I)
        return tuple(
            (v, m)
            for v, m in self.rrs.positive_restricted
            if any(c for j, c in enumerate(v) if j not in iset)
        )

    def level(self, root: tuple[int, ...]) -> int:
        iset = set(self.I)
        return sum(c for j, c in enumerate(root) if j not in iset)

    @property
    def levels(self) -> dict[tuple[int, ...], int]:
        return {v: self.level(v) for v, _ in self.sigma}

    @property
    def dim_N(self) -> int:
        return sum(m for _, m in self.sigma)

    @property
    def growth_degree(self) -> int:
        return sum(m * self.level(v) for v, m in self.sigma)

    @property
    def grading(self) -> dict[int, int]:
        """Level k -> dimension of the graded piece."""
        out: dict[int, int] = {}
        for v, m in self.sigma:
            k = self.level(v)
            out[k] = out.get(k, 0) + m
        return out

    @property
    def levi_system(self) -> RestrictedRootSystem:
        """Restricted subsystem on I with inherited multiplicities."""
        iset = set(self.I)
        order = sorted(self.I)
        positive = tuple(
            (tuple(v[j] for j in order), m)
            for v, m in self.rrs.positive_restricted
            if all(c == 0 for j, c in enumerate(v) if j not in iset) and any(v)
        )
        return RestrictedRootSystem(
            simple_restricted=tuple(self.rrs.simple_restricted[j] for j in order),
            positive_restricted=positive,
            q_rank=len(order),
        )

    def relative(self, J: tuple[int, ...]) -> "StandardParabolic":
        """The parabolic of subset I taken inside the Levi system of J >= I."""
        if not set(self.I) <= set(J):
            raise ValueError("relative parabolic needs I <= J")
        levi_J = StandardParabolic(self.rrs, tuple(sorted(J))).levi_system
        order = sorted(J)
        rel_I = tuple(order.index(i) for i in sorted(self.I))
        return StandardParabolic(levi_J, rel_I)

    def chain_decomposition(self, J: tuple[int, ...]) -> dict:
        """Exact decomposition of d(N_I) along I <= J.

        d(N_I) = d(N_J) + d(relative) + cross, where the cross term
        reweights the roots of Sigma_J by their extra level over J \\ I.
        Dimensions decompose without correction:
        dim N_I = dim N_J + dim N_relative.
        """
        p_J = StandardParabolic(self.rrs, tuple(sorted(J)))
        rel = self.relative(J)
        jset = set(J)
        iset = set(self.I)
        cross = sum(
            m * sum(c for k, c in enumerate(v) if k in jset and k not in iset)
            for v, m in p_J.sigma
        )
        return {
            "d_I": self.growth_degree,
            "d_J": p_J.growth_degree,
            "d_relative": rel.growth_degree,
            "cross": cross,
            "dim_I": self.dim_N,
            "dim_J": p_J.dim_N,
            "dim_relative": rel.dim_N,
        }

    def annotate(self, levi: RealFormData) -> "StandardParabolic":
        return StandardParabolic(self.rrs, self.I, levi_annotation=levi)

    def levi_deficiency(self) -> int:
        if self.levi_annotation is None:
            raise AnnotationRequired(
                f"parabolic I={sorted(self.I)} has no Levi real-form annotation"
            )
        return self.levi_annotation.deficiency

    def to_json(self) -> dict:
        return {
            "I": sorted(self.I),
            "split_rank": self.split_rank,
            "dim_N": self.dim_N,
            "growth_degree": self.growth_degree,
            "grading": {str(k): v for k, v in sorted(self.grading.items())},
            "sigma": [
                {"root": list(v), "multiplicity": m, "level": self.level(v)}
                for v, m in self.sigma
            ],
            "levi_simple": [list(o) for o in self.levi_system.simple_restricted],
        }


def enumerate_parabolics(rrs: RestrictedRootSystem) -> list[StandardParabolic]:
    """All 2^l standard parabolics, ordered by subset binary code."""
    l = rrs.q_rank
    out = []
    for code in range(2 ** l):
        I = tuple(j for j in range(l) if code >> j & 1)
        out.append(StandardParabolic(rrs, I))
    return out


def minimal_parabolic(rrs: RestrictedRootSystem) -> StandardParabolic:
    return StandardParabolic(rrs, ())


def subset_pairs(l: int):
    """All pairs I <= J of subsets of range(l)."""
    items = list(range(l))
    for rj in range(l + 1):
        for J in combinations(items, rj):
            for ri in range(rj + 1):
                for I in combinations(J, ri):
                    yield I, J
