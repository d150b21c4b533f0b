import itertools

import pytest

import oracles
from regcomplex.catalog import get, k33_system, universal_polytope
from regcomplex.complex import (adjacent_flags, are_isomorphic, axiom_report, check_diamond,
                                check_flag_connected, check_I1, check_I2, check_I4,
                                check_strongly_connected, check_strongly_flag_connected,
                                f_vector, flag_graph_dot, flag_graph_edges, flags, from_covers,
                                hasse_dot, is_isomorphism, is_lattice, middle_face_counts,
                                section, verify_group_action)
from regcomplex.construction import build_complex
from regcomplex.errors import InvalidAction, InvalidPoset, InvalidSection


def polygon(p):
    faces = [("b", -1), ("t", 1)] + [(f"v{i}", 0) for i in range(p)]
    covers = [("b", f"v{i}") for i in range(p)] + [(f"v{i}", "t") for i in range(p)]
    return from_covers(1, faces, covers)


def two_tetrahedra_sharing_vertex():
    # rank-4 poset: solids on {0,1,2,3} and {0,4,5,6}; the vertex figure at 0 is disconnected
    cells = [(0, 1, 2, 3), (0, 4, 5, 6)]
    proper = set()
    for cell in cells:
        for r in range(1, 5):
            proper.update(itertools.combinations(cell, r))
    name = lambda s: "f" + "_".join(map(str, s))  # noqa: E731
    faces = [("b", -1), ("t", 4)] + [(name(s), len(s) - 1) for s in sorted(proper)]
    covers = [("b", name(s)) for s in proper if len(s) == 1]
    covers += [(name(s), "t") for s in proper if len(s) == 4]
    covers += [(name(a), name(b)) for a in proper for b in proper
               if len(b) == len(a) + 1 and set(a) <= set(b)]
    return from_covers(4, faces, covers)


def test_rank1_polygon_style_complex():
    K = polygon(4)
    assert f_vector(K) == [4]
    assert len(flags(K)) == 4
    assert check_I4(K) and not check_diamond(K)


@pytest.mark.parametrize("name", ["{3,3}", "{4,3}", "K33", "hemi-octahedron", "C3"])
def test_order_flags_and_lattice_against_oracle(name):
    K = build_complex(get(name).system)
    leq = oracles.complex_relation(K)
    assert all(K.leq(a, b) == ((a, b) in leq) for a in range(len(K)) for b in range(len(K)))
    assert sorted(flags(K)) == sorted(oracles.poset_flags(K.ranks, leq, K.n))
    assert bool(is_lattice(K)) == oracles.is_lattice(K.ranks, leq)


def test_axioms_on_tetrahedron():
    K = build_complex(universal_polytope((3, 3)))
    rep = axiom_report(K)
    assert all(rep.values())
    assert middle_face_counts(K) == {0: [2], 1: [2], 2: [2]}


def test_strong_connectivity_failure_agrees():
    K = two_tetrahedra_sharing_vertex()
    assert check_I1(K) and check_I2(K)
    sc, sfc = check_strongly_connected(K), check_strongly_flag_connected(K)
    assert not sc and not sfc
    assert not check_flag_connected(K)
    # each solid on its own is fine
    solid = section(K, K.bottom, K.index_of_id("f0_1_2_3"))
    assert check_strongly_connected(solid) and check_strongly_flag_connected(solid)


def test_invalid_posets():
    with pytest.raises(InvalidPoset):
        from_covers(1, [("b", -1), ("b", 1)], [])
    with pytest.raises(InvalidPoset):
        from_covers(1, [("b", -1), ("t", 1), ("u", 1)], [])
    with pytest.raises(InvalidPoset):
        from_covers(1, [("b", -1), ("t", 1), ("v", 0)], [("b", "t")])
    with pytest.raises(InvalidPoset):
        from_covers(1, [("b", -1), ("t", 1), ("v", 0)], [("b", "v"), ("v", "x")])
    with pytest.raises(InvalidPoset):
        from_covers(1, [("b", -1), ("t", 1), ("v", 0), ("w", 0)],
                    [("b", "v"), ("v", "t"), ("w", "t")])
    with pytest.raises(InvalidPoset):
        from_covers(0, [("b", -1), ("t", 0), ("v", 3)], [])


def test_missing_middle_face_fails_I4():
    # a rank-1 "complex" with a single vertex violates the at-least-two condition
    K = from_covers(1, [("b", -1), ("v", 0), ("t", 1)], [("b", "v"), ("v", "t")])
    assert not check_I4(K)


def test_sections():
    K = build_complex(universal_polytope((3, 3)))
    base = K.base_flag
    tri = section(K, base[0], base[3])
    assert f_vector(tri) == [3, 3] and check_diamond(tri)
    seg = section(K, base[1], base[2])
    assert seg.n == 0 and len(seg) == 2
    with pytest.raises(InvalidSection):
        section(K, base[3], base[0])


def test_isomorphism():
    A = build_complex(universal_polytope((3, 4)))
    B = build_complex(get("{3,4}").system)
    m = are_isomorphic(A, B)
    assert m is not None and is_isomorphism(A, B, m)
    C = build_complex(universal_polytope((4, 3)))
    assert are_isomorphic(A, C) is None
    assert are_isomorphic(build_complex(get("hemi-octahedron").system),
                          build_complex(universal_polytope((3, 3)))) is None


def test_group_action():
    K = build_complex(k33_system())
    rep = verify_group_action(K, K.automorphisms)
    assert rep and not rep.simply_flag_transitive
    assert rep.group_order == 72 and rep.stabilizer_order == 4
    T = build_complex(universal_polytope((3, 3)))
    assert verify_group_action(T, T.automorphisms).simply_flag_transitive
    bad = list(range(len(T)))
    bad[1], bad[len(T) - 2] = bad[len(T) - 2], bad[1]
    assert not verify_group_action(T, [bad]).is_automorphism_set
    with pytest.raises(InvalidAction):
        verify_group_action(T, [[0, 0] + list(range(2, len(T)))])


def test_flag_adjacency_and_dot():
    K = build_complex(k33_system())
    fl = flags(K)
    assert len(fl) == 18
    for f in fl:
        assert len(adjacent_flags(K, f, 0)) == 1
        assert len(adjacent_flags(K, f, 1)) == 2
    edges = flag_graph_edges(K)
    assert len(edges) == 27 and {i for _, _, i in edges} == {0, 1}
    assert flag_graph_dot(K).count(" -- ") == 27
    assert hasse_dot(build_complex(get("C3").system)).count("->") == 6


def test_middle_counts_match_oracle(positive_entries):
    for e in positive_entries:
        if e.system.gamma.order > 200:
            continue
        K = build_complex(e.system)
        leq = oracles.complex_relation(K)
        got = {c for counts in middle_face_counts(K).values() for c in counts}
        assert got == oracles.middle_counts(K.ranks, leq)
