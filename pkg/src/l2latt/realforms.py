"""Catalog of real reductive group data.

For each supported family the symmetric-space dimension, complex rank,
maximal-compact rank, deficiency and fundamental rank are derived from
closed-form tables.  The deficiency equals the fundamental rank of the
associated symmetric space; euclidean factors carry f_rank = dim.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
import json
import re

from .roots import POSITIVE_ROOT_COUNT, VALID_RANKS


class UnknownFamily(ValueError):
    pass


@dataclass(frozen=True)
class RealFormData:
    family: str
    params: tuple[int, ...]
    dim_X: int
    rank_C: int
    rank_K: int
    factors: tuple["RealFormData", ...] = ()

    @property
    def deficiency(self) -> int:
        return self.rank_C - self.rank_K

    @property
    def f_rank(self) -> int:
        # deficiency coincides with the fundamental rank; euclidean factors
        # are set up so that rank_C - rank_K = dim.
        return self.deficiency

    @property
    def is_product(self) -> bool:
        return self.family == "product"

    @property
    def is_compact(self) -> bool:
        return self.dim_X == 0

    def middle_dimension(self) -> int:
        return self.dim_X // 2

    def describe(self) -> str:
        if self.is_product:
            return " x ".join(f.describe() for f in self.factors)
        return f"{self.family}({','.join(str(p) for p in self.params)})"

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "params": list(self.params),
            "dim_X": self.dim_X,
            "rank_C": self.rank_C,
            "rank_K": self.rank_K,
            "deficiency": self.deficiency,
            "f_rank": self.f_rank,
        }
        if self.factors:
            out["factors"] = [f.to_json() for f in self.factors]
        return out


def _check_type_rank(ctype: str, rank: int):
    if ctype not in VALID_RANKS or not VALID_RANKS[ctype](rank):
        raise UnknownFamily(f"invalid type/rank pair {ctype}_{rank}")


def derive(family: str, *params: int) -> RealFormData:
    """Populate derived rank/dimension data for a named real form."""
    family = family.strip()
    if family == "SL":
        (n,) = params
        if n < 1:
            raise UnknownFamily("SL(n,R) needs n >= 1")
        return RealFormData(
            "SL", (n,), dim_X=(n - 1) * (n + 2) // 2, rank_C=n - 1, rank_K=n // 2
        )
    if family == "SO":
        p, q = params
        if p < 0 or q < 0:
            raise UnknownFamily("SO(p,q) needs p, q >= 0")
        return RealFormData(
            "SO", (p, q), dim_X=p * q, rank_C=(p + q) // 2, rank_K=p // 2 + q // 2
        )
    if family == "SU":
        p, q = params
        if p < 0 or q < 0:
            raise UnknownFamily("SU(p,q) needs p, q >= 0")
        return RealFormData(
            "SU", (p, q), dim_X=2 * p * q, rank_C=p + q - 1, rank_K=p + q - 1
        )
    if family == "Sp":
        (n,) = params
        if n < 1:
            raise UnknownFamily("Sp(n,R) needs n >= 1")
        return RealFormData("Sp", (n,), dim_X=n * (n + 1), rank_C=n, rank_K=n)
    if family == "SOstar":
        (two_n,) = params
        if two_n < 2 or two_n % 2:
            raise UnknownFamily("SO*(2n) needs an even parameter >= 2")
        n = two_n // 2
        return RealFormData("SOstar", (two_n,), dim_X=n * (n - 1), rank_C=n, rank_K=n)
    if family == "complex":
        ctype, rank = str(params[0]), int(params[1])
        _check_type_rank(ctype, rank)
        dim_c = 2 * POSITIVE_ROOT_COUNT[ctype](rank) + rank
        return RealFormData(
            "complex", (params[0], rank), dim_X=dim_c, rank_C=2 * rank, rank_K=rank
        )
    if family == "compact":
        ctype, rank = str(params[0]), int(params[1])
        _check_type_rank(ctype, rank)
        return RealFormData("compact", (params[0], rank), dim_X=0, rank_C=rank, rank_K=rank)
    if family == "euclidean":
        (d,) = params
        if d < 0:
            raise UnknownFamily("euclidean(d) needs d >= 0")
        # rank_C - rank_K = d so that f_rank = dim, as required for the
        # central/euclidean part of a Levi.
        return RealFormData("euclidean", (d,), dim_X=d, rank_C=d, rank_K=0)
    if family == "trivial":
        return RealFormData("trivial", (), dim_X=0, rank_C=0, rank_K=0)
    raise UnknownFamily(f"unknown family {family!r}")


def product(*factors: RealFormData) -> RealFormData:
    """Product form: dim, deficiency and f_rank are additive."""
    return RealFormData(
        "product",
        (),
        dim_X=sum(f.dim_X for f in factors),
        rank_C=sum(f.rank_C for f in factors),
        rank_K=sum(f.rank_K for f in factors),
        factors=tuple(factors),
    )


def parse_form(description: str) -> RealFormData:
    """Parse 'SO,2,2' or 'SO,2,2 x euclidean,1' style descriptions."""
    parts = [p.strip() for p in re.split(r"\s+x\s+", description.strip())]
    forms = []
    for part in parts:
        toks = [t.strip() for t in part.split(",") if t.strip()]
        family = toks[0]
        if family in ("complex", "compact"):
            args = (toks[1], int(toks[2]))
        else:
            args = tuple(int(t) for t in toks[1:])
        forms.append(derive(family, *args))
    return forms[0] if len(forms) == 1 else product(*forms)


def load_catalog() -> list[RealFormData]:
    """Shipped catalog of real forms (versioned JSON data file)."""
    with resources.files("l2latt").joinpath("data/realform_catalog.json").open() as fh:
        data = json.load(fh)
    out = []
    for rec in data["forms"]:
        args = rec["params"]
        if rec["family"] in ("complex", "compact"):
            args = (args[0], int(args[1]))
        out.append(derive(rec["family"], *args))
    return out
