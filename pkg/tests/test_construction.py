import numpy as np
import pytest

import oracles
from regcomplex.catalog import get, ip_failure_system, k33_system, universal_polytope
from regcomplex.cgroup import k_vector
from regcomplex.complex import f_vector, flags, from_covers
from regcomplex.construction import (action_kernel, build_complex, check_chain_stabilizers,
                                     check_incidence_evaluators, coset_geometry,
                                     derive_system, incidence_test, section_group,
                                     verify_reconstruction, verify_base_sections)
from regcomplex.errors import InvalidAction, NotACGroup
from regcomplex.permgroup import PermGroup, from_cycles
from regcomplex.cgroup import SubgroupSystem


@pytest.mark.parametrize("name", ["{3}", "{4}", "{3,3}", "K33", "C4", "hemi-octahedron"])
def test_coset_complex_matches_brute_force(name):
    sys_ = get(name).system
    geo = coset_geometry(sys_)
    K = geo.complex
    faces, leq = oracles.coset_poset(sys_)
    assert len(K) == len(faces)
    table = sys_.table

    def coset(f):
        r = K.ranks[f]
        members = np.flatnonzero(geo.labels[r] == f - geo.offsets[r])
        return r, frozenset(tuple(table.elems[g].tolist()) for g in members)
    as_sets = [coset(f) for f in range(len(K))]
    where = {c: k for k, c in enumerate(faces)}
    assert set(as_sets) == set(faces)
    for a in range(len(K)):
        for b in range(len(K)):
            assert K.leq(a, b) == ((where[as_sets[a]], where[as_sets[b]]) in leq)


def test_refuses_non_cgroup():
    with pytest.raises(NotACGroup):
        build_complex(ip_failure_system())


def test_incidence_test_single_pairs():
    sys_ = universal_polytope((3, 3))
    g = sys_.gamma.elements()
    assert incidence_test(sys_, 0, g[0], 2, g[0])
    geo = coset_geometry(sys_)
    t = sys_.table
    for phi in g[:6]:
        for psi in g[:6]:
            a = geo.face_of_element(0, int(t.index_of(phi)[0]))
            b = geo.face_of_element(2, int(t.index_of(psi)[0]))
            assert incidence_test(sys_, 0, phi, 2, psi) == geo.complex.leq(a, b)


@pytest.mark.parametrize("name", ["{3,3}", "{4,3}", "K33", "skel1{3,3,3}", "{3,3,3}"])
def test_evaluators_and_chain_stabilizers(name):
    geo = coset_geometry(get(name).system)
    assert check_incidence_evaluators(geo)
    assert check_chain_stabilizers(geo)


@pytest.mark.parametrize("name", ["{4}", "{3,3}", "{4,3}", "K33", "skel1{3,3,3}", "C5"])
def test_reconstruction(name):
    K = build_complex(get(name).system)
    derived = derive_system(K, K.automorphisms, base_flag=K.base_flag)
    assert k_vector(derived) == k_vector(get(name).system)
    rep = verify_reconstruction(K, derived, base_flag=K.base_flag)
    assert rep and rep.data["canonical"]


def test_reconstruction_from_hand_built_square():
    faces = [("b", -1), ("t", 2)] + [(f"v{i}", 0) for i in range(4)] + \
        [(f"e{i}", 1) for i in range(4)]
    covers = [("b", f"v{i}") for i in range(4)] + [(f"e{i}", "t") for i in range(4)]
    covers += [(f"v{i}", f"e{i}") for i in range(4)] + [(f"v{(i + 1) % 4}", f"e{i}")
                                                        for i in range(4)]
    K = from_covers(2, faces, covers)
    idx = {fid: k for k, fid in enumerate(K.ids)}

    def face_map(vmap, emap):
        img = list(range(len(K)))
        for i in range(4):
            img[idx[f"v{i}"]] = idx[f"v{vmap[i]}"]
            img[idx[f"e{i}"]] = idx[f"e{emap[i]}"]
        return img
    rot = face_map([1, 2, 3, 0], [1, 2, 3, 0])
    refl = face_map([1, 0, 3, 2], [0, 3, 2, 1])
    sys_ = derive_system(K, [rot, refl])
    assert sys_.gamma.order == 8 and k_vector(sys_) == [2, 2]
    rep = verify_reconstruction(K, sys_)
    assert rep
    with pytest.raises(InvalidAction):
        derive_system(K, [rot])


@pytest.mark.parametrize("name", ["{3,3}", "{4,3}", "K33", "{3,3,3}"])
def test_base_sections(name):
    assert verify_base_sections(get(name).system)


def test_section_group_bounds():
    sys_ = universal_polytope((3, 3))
    assert section_group(sys_, -1, 3) is sys_
    assert section_group(sys_, 0, 3).gamma.order == 6
    with pytest.raises(IndexError):
        section_group(sys_, 1, 2)


def test_action_kernel_nontrivial():
    # C2 x S3 on 5 points: the C2 factor (3 4) is central and lies in R_-1
    d = 5
    z = from_cycles("(3 4)", d)
    a, b = from_cycles("(0 1)", d), from_cycles("(1 2)", d)
    bottom = PermGroup(d, [z])
    sys_ = SubgroupSystem(PermGroup(d, [a, b, z]),
                          [bottom, PermGroup(d, [a, z]), PermGroup(d, [b, z]), bottom])
    K = build_complex(sys_)
    assert f_vector(K) == [3, 3]
    assert action_kernel(sys_).order == 2
    assert len(flags(K)) == 6
