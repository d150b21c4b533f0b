import numpy as np
import pytest

import oracles
from regcomplex.catalog import (get, ip_failure_system, k33_system, polytope_system,
                                rank1_cyclic, universal_polytope)
from regcomplex.cgroup import (SubgroupSystem, check_commutation_identities,
                               check_intersection_property, check_pairwise_distinct,
                               check_section_product_identity, check_string_condition,
                               check_structure, cgroup_report, compute_k,
                               distinguished_generators, flag_stabilizer_prime_bound,
                               is_generalized_string_cgroup, is_string_cgroup, k_vector,
                               lattice_necessary_condition, new_system)
from regcomplex.errors import InvalidSystem, ResourceLimit
from regcomplex.permgroup import PermGroup, from_cycles


def test_ip_failure_witness():
    sys_ = ip_failure_system()
    assert check_structure(sys_)
    rep = check_intersection_property(sys_)
    assert not rep
    assert rep.witness == ({0, 1}, {1, 2})
    assert not is_generalized_string_cgroup(sys_)
    assert not oracles.intersection_property(sys_)


def test_catalog_matches_oracle(positive_entries):
    for e in positive_entries:
        if e.system.gamma.order > 400:
            continue
        assert bool(check_intersection_property(e.system)) == oracles.intersection_property(e.system)
        assert bool(check_string_condition(e.system)) == oracles.string_condition(e.system)


def test_k_values():
    assert k_vector(universal_polytope((3, 3))) == [2, 2, 2]
    assert k_vector(k33_system()) == [2, 3]
    assert k_vector(rank1_cyclic(3)) == [3]
    with pytest.raises(IndexError):
        compute_k(k33_system(), 2)


def test_structural_violations():
    a, b = from_cycles("(0 1)", 3), from_cycles("(1 2)", 3)
    t = PermGroup(3)
    G = PermGroup(3, [a, b])
    with pytest.raises(InvalidSystem) as exc:
        new_system(G, [t, PermGroup(3, [a]), PermGroup(3, [b]), PermGroup(3, [a])])
    assert exc.value.violation == "end-equality"
    with pytest.raises(InvalidSystem) as exc:
        new_system(G, [PermGroup(3, [a]), PermGroup(3, [a]), PermGroup(3, [a, b]),
                       PermGroup(3, [a])])
    assert exc.value.violation == "proper-containment"
    with pytest.raises(InvalidSystem) as exc:
        new_system(G, [t, PermGroup(3, [a]), PermGroup(3, [a]), t])
    assert exc.value.violation == "generation"
    H = PermGroup(4, [from_cycles("(0 1)", 4)])
    with pytest.raises(InvalidSystem):
        new_system(H, [PermGroup(4), H, PermGroup(4, [from_cycles("(2 3)", 4)]), PermGroup(4)])
    bad = SubgroupSystem(G, [t, PermGroup(3, [a]), PermGroup(3, [a]), t], validate=False)
    assert not check_structure(bad)
    assert not cgroup_report(bad)["structure"]


def test_string_condition_failure():
    # S_4 with R_0 = <(0 1)>, R_1 = <(1 2)>, R_2 = <(0 2)>: R_0 R_2 != R_2 R_0
    d = 4
    r = [PermGroup(d, [from_cycles(c, d)]) for c in ("(0 1)", "(1 2)", "(0 2)(1 3)")]
    gamma = PermGroup(d, [g for x in r for g in x.generators])
    sys_ = SubgroupSystem(gamma, [PermGroup(d), *r, PermGroup(d)], validate=False)
    assert bool(check_string_condition(sys_)) == oracles.string_condition(sys_)


def test_string_cgroup_recognition():
    assert is_string_cgroup(universal_polytope((4, 3)))
    assert not is_string_cgroup(k33_system())
    assert distinguished_generators(k33_system()) is None
    assert len(distinguished_generators(universal_polytope((3, 5)))) == 3


def test_prime_bound():
    rep = flag_stabilizer_prime_bound(k33_system())
    assert rep and rep.data["bound"] == 2
    assert k33_system().R(-1).order == 4


def test_lattice_condition_on_k33():
    assert lattice_necessary_condition(k33_system())


@pytest.mark.parametrize("name", ["{3,3}", "{4,3}", "K33", "skel1{3,3,3}", "C4", "{5}"])
def test_group_identities(name):
    sys_ = get(name).system
    assert check_commutation_identities(sys_)
    assert check_section_product_identity(sys_)


@pytest.mark.parametrize("name", ["{3,3}", "{3,3,3}", "{4,3,3}"])
def test_pairwise_distinct_for_polytopes(name):
    assert check_pairwise_distinct(get(name).system)


def test_ip_rank_cap_and_sampling(monkeypatch):
    sys_ = universal_polytope((3, 3, 3))
    monkeypatch.setenv("REGCOMPLEX_MAX_IP_RANK", "2")
    with pytest.raises(ResourceLimit):
        check_intersection_property(sys_)
    rep = check_intersection_property(sys_, sample=True, samples=200)
    assert rep and rep.sampled


def test_members_are_row_indices():
    sys_ = universal_polytope((3, 3))
    m = sys_.members(sys_.R(0))
    assert np.array_equal(m, np.sort(m)) and len(m) == 2
    assert sys_.sub([]).order == 1 and sys_.sub(range(3)).order == 24


def test_polytope_system_helper():
    rhos = [from_cycles("(0 1)", 3), from_cycles("(1 2)", 3)]
    s = polytope_system(rhos)
    assert s.gamma.order == 6 and is_string_cgroup(s)
