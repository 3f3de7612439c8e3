"""L2-torsion and Euler-characteristic verdicts, pushout propagation over
stratum posets, and corner-strata combinatorics.

Torsion values stay symbolic: zero, an exact rational times pi^(-n)
(hyperbolic odd case), or unknown.  No covolumes are computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .realforms import RealFormData

# Proportionality constants for SO(2n+1,1), n = 1, 2, 3: the torsion of a
# torsion-free lattice equals constant * covolume with constant
# rational / pi^n.
HYPERBOLIC_CONSTANTS: dict[int, Fraction] = {
    1: Fraction(-1, 6),
    2: Fraction(31, 45),
    3: Fraction(-221, 70),
}


@dataclass(frozen=True)
class TorsionVerdict:
    kind: str  # NotAcyclic | Zero | HyperbolicOddProportional | OddOpen
    deficiency: int
    euler_char_zero: bool
    witness_degree: Optional[int] = None  # NotAcyclic only
    pi_power: Optional[int] = None  # HyperbolicOddProportional only
    rational_constant: Optional[Fraction] = None
    citations: tuple[str, ...] = ()
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "verdict": self.kind,
            "deficiency": self.deficiency,
            "euler_char_zero": self.euler_char_zero,
            "citations": list(self.citations),
        }
        if self.witness_degree is not None:
            out["witness_degree"] = self.witness_degree
        if self.pi_power is not None:
            out["constant"] = (
                {
                    "rational": str(self.rational_constant),
                    "pi_power": -self.pi_power,
                }
                if self.rational_constant is not None
                else None
            )
        if self.note:
            out["note"] = self.note
        return out


def _is_hyperbolic_odd(g: RealFormData) -> Optional[int]:
    """n if g is SO(2n+1,1) (or SO(1,2n+1)), else None."""
    if g.family != "SO":
        return None
    p, q = g.params
    lo, hi = min(p, q), max(p, q)
    if lo == 1 and hi % 2 == 1 and hi >= 3:
        return (hi - 1) // 2
    return None


def torsion_verdict(g: RealFormData) -> TorsionVerdict:
    """Case split on the deficiency; products route through the factor
    with positive deficiency (two such factors force vanishing via the
    Euler characteristic)."""
    m = g.deficiency
    euler_zero = m > 0
    if g.is_product:
        positive = [f for f in g.factors if f.deficiency > 0]
        if len(positive) >= 2:
            return TorsionVerdict(
                kind="Zero",
                deficiency=m,
                euler_char_zero=True,
                citations=(
                    "product-rule: chi of a positive-deficiency factor vanishes",
                    "torsion-product-formula",
                ),
            )
        if len(positive) == 1:
            inner = torsion_verdict(positive[0])
            return TorsionVerdict(
                kind=inner.kind,
                deficiency=m,
                euler_char_zero=euler_zero,
                witness_degree=None,
                pi_power=inner.pi_power,
                rational_constant=inner.rational_constant,
                citations=inner.citations + ("routed through the single positive-deficiency factor",),
                note=inner.note,
            )
        # all factors have deficiency 0
        return TorsionVerdict(
            kind="NotAcyclic",
            deficiency=0,
            euler_char_zero=False,
            witness_degree=g.dim_X // 2,
            citations=("nonzero middle L2-Betti number at deficiency 0",),
        )
    if m == 0:
        return TorsionVerdict(
            kind="NotAcyclic",
            deficiency=0,
            euler_char_zero=False,
            witness_degree=g.dim_X // 2,
            citations=("nonzero middle L2-Betti number at deficiency 0",),
        )
    if m % 2 == 0:
        return TorsionVerdict(
            kind="Zero",
            deficiency=m,
            euler_char_zero=True,
            citations=("vanishing for positive even deficiency",),
        )
    n_hyp = _is_hyperbolic_odd(g)
    if n_hyp is not None:
        return TorsionVerdict(
            kind="HyperbolicOddProportional",
            deficiency=m,
            euler_char_zero=True,
            pi_power=n_hyp,
            rational_constant=HYPERBOLIC_CONSTANTS.get(n_hyp),
            citations=("Lueck-Schick hyperbolic proportionality",),
            note="" if n_hyp in HYPERBOLIC_CONSTANTS else
            "proportional to covolume; constant not tabulated for this rank",
        )
    return TorsionVerdict(
        kind="OddOpen",
        deficiency=m,
        euler_char_zero=True,
        citations=("odd deficiency >= 1 beyond rank one: no vanishing result known",),
    )


UNKNOWN = "unknown"


class LedgerError(ValueError):
    pass


@dataclass
class StratumLedger:
    """DAG of strata with symbolic torsion values and pushout edges.

    Values are exact Fractions (0 included), the string "unknown", or a
    free-form symbolic expression string.  A pushout edge determines its
    result by additivity once all three inputs are exact.
    """

    values: dict[str, object] = field(default_factory=dict)
    pushouts: list[tuple[str, str, str, str]] = field(default_factory=list)  # x0,x1,x2,result

    def assign(self, stratum: str, value) -> None:
        if isinstance(value, int):
            value = Fraction(value)
        self.values[stratum] = value

    def add_pushout(self, x0: str, x1: str, x2: str, result: str) -> None:
        self.pushouts.append((x0, x1, x2, result))

    def propagate(self) -> "StratumLedger":
        """Resolve all pushout results; order-independent and cycle-checked."""
        # cycle check on the dependency graph result <- x0, x1, x2
        deps = {r: (x0, x1, x2) for x0, x1, x2, r in self.pushouts}
        if len(deps) != len(self.pushouts):
            raise LedgerError("a stratum is the result of two pushouts")

        mark: dict[str, int] = {}  # 0 = visiting, 1 = done

        def visit(node: str, trail: tuple[str, ...]):
            if mark.get(node) == 0:
                raise LedgerError(f"cyclic pushout dependencies at stratum {node!r}")
            if mark.get(node) == 1:
                return
            mark[node] = 0
            for dep in deps.get(node, ()):
                visit(dep, trail + (node,))
            mark[node] = 1

        for r in deps:
            visit(r, ())

        resolved = dict(self.values)

        def value_of(node: str):
            if node in resolved:
                return resolved[node]
            if node not in deps:
                raise LedgerError(f"underdetermined pushout input: stratum {node!r} "
                                  "has no assigned value and no defining pushout")
            x0, x1, x2 = deps[node]
            vals = [value_of(x1), value_of(x2), value_of(x0)]
            if any(not isinstance(v, Fraction) for v in vals):
                blame = [n for n, v in zip((x1, x2, x0), vals) if not isinstance(v, Fraction)]
                resolved[node] = UNKNOWN + f" (blame: {', '.join(sorted(set(blame)))})"
                return resolved[node]
            resolved[node] = vals[0] + vals[1] - vals[2]
            return resolved[node]

        for r in deps:
            value_of(r)
        out = StratumLedger(values=resolved, pushouts=list(self.pushouts))
        return out

    def to_json(self) -> dict:
        return {
            "values": {
                k: (str(v) if isinstance(v, Fraction) else v)
                for k, v in sorted(self.values.items())
            },
            "pushouts": [list(p) for p in self.pushouts],
        }


def boundary_ledger(q_rank: int) -> StratumLedger:
    """Ledger replaying the boundary induction: split-rank layers Y_k with
    closed-component leaves assigned 0, assembled by pushouts down to the
    full boundary X_1."""
    if q_rank < 1:
        raise LedgerError("boundary induction needs q-rank >= 1")
    led = StratumLedger()
    r = q_rank
    # leaves: closures of boundary components vanish, hence each layer does
    for k in range(1, r + 1):
        led.assign(f"Y{k}_closure", 0)
        led.assign(f"Y{k}_boundary", 0)
    led.assign(f"X{r}", 0)  # disjoint union of closed minimal components
    for k in range(r - 1, 0, -1):
        led.add_pushout(f"Y{k}_boundary", f"X{k + 1}", f"Y{k}_closure", f"X{k}")
    return led


def corner_strata(l: int) -> list[dict]:
    """Strata of the half-open l-cube corner: one per subset, with the
    subset's size as dimension and (-1)^dim as compact-support Euler
    contribution."""
    if l < 0:
        raise ValueError("split rank must be >= 0")
    out = []
    for code in range(2 ** l):
        subset = [j + 1 for j in range(l) if code >> j & 1]
        dim = len(subset)
        out.append({"subset": subset, "dim": dim, "contribution": (-1) ** dim})
    return out
