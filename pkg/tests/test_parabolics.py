import pytest

from l2latt.parabolics import (
    AnnotationRequired,
    StandardParabolic,
    enumerate_parabolics,
    minimal_parabolic,
    subset_pairs,
)
from l2latt.realforms import derive
from l2latt.roots import build_root_system
from l2latt.tits import TitsIndex, restrict, split_index


def restricted(ctype, rank):
    return restrict(split_index(ctype, rank))


def gp_restricted():
    rs = build_root_system("A", 3)
    idx = TitsIndex(base=rs, orbits=((1,), (2,), (3,)), distinguished=((2,),))
    return restrict(idx)


def test_enumeration_count_and_extremes():
    for ctype, rank in (("A", 2), ("B", 3), ("C", 4), ("G", 2)):
        rrs = restricted(ctype, rank)
        ps = enumerate_parabolics(rrs)
        assert len(ps) == 2 ** rank
        full = [p for p in ps if len(p.I) == rank][0]
        assert full.dim_N == 0 and full.growth_degree == 0
        # split form: all multiplicities 1, so dim N of the minimal
        # parabolic is the number of positive roots
        assert minimal_parabolic(rrs).dim_N == len(rrs.positive_restricted)


def test_split_a2_minimal_is_heisenberg():
    rrs = restricted("A", 2)
    p = minimal_parabolic(rrs)
    assert p.dim_N == 3
    assert p.grading == {1: 2, 2: 1}
    assert p.growth_degree == 4


def test_gp_minimal():
    p = minimal_parabolic(gp_restricted())
    assert p.dim_N == 4
    assert p.growth_degree == 4
    assert p.grading == {1: 4}


def test_chain_decomposition_exact_law():
    """d(N_I) = d(N_J) + d(relative) + cross holds exactly; the naive
    additivity without the cross term fails already for split A_2."""
    rrs = restricted("A", 2)
    p = StandardParabolic(rrs, ())
    dec = p.chain_decomposition((0,))
    assert dec == {
        "d_I": 4, "d_J": 2, "d_relative": 1, "cross": 1,
        "dim_I": 3, "dim_J": 2, "dim_relative": 1,
    }
    assert dec["d_I"] != dec["d_J"] + dec["d_relative"]  # naive law is false


@pytest.mark.parametrize("ctype,rank", [("A", 2), ("A", 3), ("A", 4),
                                        ("B", 2), ("B", 3), ("B", 4),
                                        ("C", 3), ("C", 4), ("D", 4),
                                        ("F", 4), ("G", 2)])
def test_chain_law_exhaustive(ctype, rank):
    rrs = restricted(ctype, rank)
    for I, J in subset_pairs(rank):
        p = StandardParabolic(rrs, I)
        dec = p.chain_decomposition(J)
        assert dec["d_I"] == dec["d_J"] + dec["d_relative"] + dec["cross"]
        assert dec["dim_I"] == dec["dim_J"] + dec["dim_relative"]


def test_chain_law_nonsplit():
    rrs = gp_restricted()
    for I, J in subset_pairs(rrs.q_rank):
        dec = StandardParabolic(rrs, I).chain_decomposition(J)
        assert dec["d_I"] == dec["d_J"] + dec["d_relative"] + dec["cross"]
        assert dec["dim_I"] == dec["dim_J"] + dec["dim_relative"]


def test_levi_system():
    rrs = restricted("A", 3)
    p = StandardParabolic(rrs, (0, 2))
    levi = p.levi_system
    assert levi.q_rank == 2
    assert dict(levi.positive_restricted) == {(1, 0): 1, (0, 1): 1}


def test_annotation_required():
    p = minimal_parabolic(restricted("A", 2))
    with pytest.raises(AnnotationRequired):
        p.levi_deficiency()
    assert p.annotate(derive("SO", 2, 2)).levi_deficiency() == 0


def test_relative_requires_containment():
    rrs = restricted("A", 3)
    with pytest.raises(ValueError):
        StandardParabolic(rrs, (0,)).relative((1, 2))
