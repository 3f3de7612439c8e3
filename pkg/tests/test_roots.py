import pytest

from l2latt.roots import (
    InvalidRootSystem,
    build_root_system,
    diagram_automorphisms,
    root_height,
)

CLOSED_FORMS = {
    ("A", 1): 1, ("A", 2): 3, ("A", 3): 6, ("A", 5): 15,
    ("B", 2): 4, ("B", 3): 9, ("C", 3): 9, ("C", 4): 16,
    ("D", 4): 12, ("D", 5): 20,
    ("E", 6): 36, ("E", 7): 63, ("E", 8): 120,
    ("F", 4): 24, ("G", 2): 6,
}


@pytest.mark.parametrize("ctype,rank", sorted(CLOSED_FORMS))
def test_positive_root_counts(ctype, rank):
    rs = build_root_system(ctype, rank)
    assert len(rs.positive_roots) == CLOSED_FORMS[(ctype, rank)]


def test_highest_roots():
    assert max(build_root_system("G", 2).positive_roots, key=sum) == (3, 2)
    assert max(build_root_system("F", 4).positive_roots, key=sum) == (2, 3, 4, 2)
    assert max(build_root_system("A", 3).positive_roots, key=sum) == (1, 1, 1)
    assert max(build_root_system("E", 8).positive_roots, key=sum) == (
        2, 3, 4, 6, 5, 4, 3, 2,
    )


def test_root_membership_and_closure():
    rs = build_root_system("B", 3)
    roots = set(rs.positive_roots)
    for a in roots:
        assert rs.is_root(a)
        assert not rs.is_root(tuple(2 * c for c in a)) or sum(a) == 0
    # closure under the Weyl-invariant string property: alpha + simple in
    # the system only if is_root agrees
    for a in roots:
        for i in range(3):
            b = tuple(c + (1 if j == i else 0) for j, c in enumerate(a))
            assert rs.is_root(b) == (b in roots)


def test_heights():
    rs = build_root_system("A", 3)
    assert sorted(root_height(r) for r in rs.positive_roots) == [1, 1, 1, 2, 2, 3]


def test_cartan_convention_b_and_c():
    b3 = build_root_system("B", 3)
    c3 = build_root_system("C", 3)
    # B: short last root, a_{n-2,n-1} = -2; C is the transpose convention
    assert b3.cartan[1][2] == -2 and b3.cartan[2][1] == -1
    assert c3.cartan[1][2] == -1 and c3.cartan[2][1] == -2
    assert b3.positive_roots != c3.positive_roots


def test_invalid_ranks_rejected():
    for ctype, rank in (("A", 0), ("B", 1), ("D", 2), ("E", 5), ("E", 9),
                        ("F", 3), ("G", 3), ("H", 2)):
        with pytest.raises(InvalidRootSystem):
            build_root_system(ctype, rank)


def test_diagram_automorphisms():
    assert len(diagram_automorphisms(build_root_system("A", 3))) == 2
    assert len(diagram_automorphisms(build_root_system("D", 4))) == 6
    assert len(diagram_automorphisms(build_root_system("E", 6))) == 2
    assert len(diagram_automorphisms(build_root_system("B", 3))) == 1
    assert len(diagram_automorphisms(build_root_system("G", 2))) == 1


def test_pairing_is_cartan_on_simples():
    rs = build_root_system("F", 4)
    for i, a in enumerate(rs.simple_roots):
        for j in range(4):
            assert rs.pairing(a, j) == rs.cartan[i][j]
