"""Coset complexes ``K(Gamma)`` and the round trip back to subgroup systems.

The i-faces of ``K(Gamma)`` are the right cosets of ``Gamma_i`` (the
stabilizer of the base i-face), and two faces are incident exactly when the
cosets meet. Every element ``g`` of ``Gamma`` lies in one coset of each
``Gamma_i``, so the incident pairs between ranks ``i`` and ``j`` are read off
as ``(label_i[g], label_j[g])`` over all ``g``. A second evaluator tests the
product-set membership ``phi * psi^-1 in Gamma_{i+1}^+ Gamma_{j-1}^-`` and is
kept as an independent cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _config
from .cgroup import (SubgroupSystem, cgroup_report, compute_k,
                     is_generalized_string_cgroup)
from .complex import (IncidenceComplex, are_isomorphic, flags, is_isomorphism,
                      middle_face_counts, section, verify_group_action)
from .errors import (InternalInconsistency, InvalidAction, InvalidSystem,
                     NotACGroup, ResourceLimit)
from .permgroup import PermGroup, Permutation, core
from .report import CheckReport

__all__ = [
    "CosetGeometry", "coset_geometry", "build_complex", "incidence_test",
    "check_incidence_evaluators", "check_chain_stabilizers", "derive_system",
    "verify_reconstruction", "section_group", "verify_base_sections",
    "action_kernel",
]


@dataclass(frozen=True, eq=False)
class CosetGeometry:
    """Coset tables behind ``K(Gamma)``.

    ``labels[i][g]`` is the coset of ``Gamma_i`` holding element ``g`` (row
    index into ``system.table``) and ``reps[i][c]`` the least element of
    coset ``c``. Ranks -1 and n have one coset. Face indices run bottom,
    rank 0 cosets, ..., rank n-1 cosets, top.
    """

    system: SubgroupSystem
    labels: dict
    reps: dict
    offsets: dict
    complex: IncidenceComplex = field(repr=False)

    def face(self, rank, coset):
        return self.offsets[rank] + int(coset)

    def face_of_element(self, rank, g):
        """Face ``Gamma_rank * g`` for an element row index ``g``."""
        return self.offsets[rank] + int(self.labels[rank][g])

    @cached_property
    def base_flag(self):
        return tuple(self.face(r, 0) for r in range(-1, self.system.rank + 1))

    def coset_count(self, rank):
        return len(self.reps[rank])


def _single_coset(order):
    return np.zeros(order, dtype=np.int64), np.zeros(1, dtype=np.int64)


def coset_geometry(sys, *, check=True):
    """Enumerate the cosets, incidences and induced action for ``sys``."""
    if check:
        report = cgroup_report(sys)
        if not all(report.values()):
            failed = [k for k, v in report.items() if not v]
            raise NotACGroup(f"not a generalized string C-group: {', '.join(failed)} failed")
    n = sys.rank
    table = sys.table
    order = table.order
    labels, reps = {}, {}
    labels[-1], reps[-1] = _single_coset(order)
    labels[n], reps[n] = _single_coset(order)
    for i in range(n):
        members = sys.members(sys.gamma_i(i))
        labels[i], reps[i] = table.coset_labels(members)
    total = sum(len(reps[r]) for r in range(-1, n + 1))
    if total > _config.max_faces():
        raise ResourceLimit(f"{total} faces exceed cap {_config.max_faces()}")
    offsets, start = {}, 0
    for r in range(-1, n + 1):
        offsets[r] = start
        start += len(reps[r])

    ranks = [r for r in range(-1, n + 1) for _ in range(len(reps[r]))]
    covers = []
    for i in range(-1, n):
        pairs = np.unique(np.stack([labels[i], labels[i + 1]], axis=1), axis=0)
        covers.extend((offsets[i] + int(a), offsets[i + 1] + int(b)) for a, b in pairs)
    text = [f"G_{r}*{table.perm(int(reps[r][c]))}"
            for r in range(-1, n + 1) for c in range(len(reps[r]))]

    action = []
    for s in sys.gamma.generators:
        s_idx = np.full(1, int(table.index_of(s)[0]), dtype=np.int64)
        img = []
        for r in range(-1, n + 1):
            moved = table.mul(reps[r], np.repeat(s_idx, len(reps[r])))
            img.extend(offsets[r] + labels[r][moved])
        action.append(Permutation(img))

    base = tuple(offsets[r] for r in range(-1, n + 1))
    K = IncidenceComplex(n, ranks, covers, labels=text, automorphisms=action, base_flag=base)
    return CosetGeometry(sys, labels, reps, offsets, K)


def build_complex(sys, *, check=True):
    """``K(Gamma)``; refuses systems that are not generalized string C-groups."""
    return coset_geometry(sys, check=check).complex


# -- incidence evaluators -------------------------------------------------------

def _product_mask(sys, i, j):
    """Membership mask over ``gamma`` of ``Gamma_{i+1}^+ Gamma_{j-1}^-``."""
    prod = sys.product_members(sys.members(sys.gamma_plus(i + 1)),
                               sys.members(sys.gamma_minus(j - 1)))
    mask = np.zeros(sys.table.order, dtype=bool)
    mask[prod] = True
    return mask


def incidence_test(sys, i, phi, j, psi):
    """``Gamma_i*phi <= Gamma_j*psi`` by two independent evaluators.

    (b) ``phi * psi^-1`` lies in ``Gamma_{i+1}^+ Gamma_{j-1}^-``;
    (c) the cosets ``Gamma_i*phi`` and ``Gamma_j*psi`` intersect.
    Raises ``InternalInconsistency`` if they disagree.
    """
    n = sys.rank
    if not -1 <= i <= j <= n:
        raise IndexError(f"need -1 <= i <= j <= {n}, got i={i}, j={j}")
    table = sys.table
    a, b = (int(x) for x in table.index_of([phi, psi]))
    if a < 0 or b < 0:
        raise InvalidSystem("subgroup-of-gamma", "phi and psi must lie in gamma")
    q = int(table.mul([a], [table.inverses[b]])[0])
    via_product = bool(_product_mask(sys, i, j)[q])
    left = sys.members(sys.gamma_i(i))
    shifted = table.mul(left, np.full(len(left), q, dtype=np.int64))
    via_cosets = bool(np.isin(shifted, sys.members(sys.gamma_i(j))).any())
    if via_product != via_cosets:
        raise InternalInconsistency(
            f"incidence evaluators disagree for ranks ({i}, {j}): "
            f"product={via_product}, cosets={via_cosets}")
    return via_cosets


def check_incidence_evaluators(geo):
    """Both evaluators, and the materialised order, agree on every coset pair."""
    sys = geo.system
    table = sys.table
    K = geo.complex
    n = sys.rank
    inv = table.inverses
    pairs = 0
    for i in range(-1, n + 1):
        for j in range(i, n + 1):
            ci, cj = geo.coset_count(i), geo.coset_count(j)
            by_cosets = np.zeros((ci, cj), dtype=bool)
            by_cosets[geo.labels[i], geo.labels[j]] = True
            q = table.mul_outer(geo.reps[i], inv[geo.reps[j]])
            by_product = _product_mask(sys, i, j)[q]
            pairs += ci * cj
            if not np.array_equal(by_cosets, by_product):
                x, y = np.argwhere(by_cosets != by_product)[0]
                return CheckReport("incidence-evaluators", False, witness=(i, int(x), j, int(y)),
                                   detail="coset and product evaluators disagree")
            for x in range(ci):
                fx = geo.face(i, x)
                for y in range(cj):
                    if K.leq(fx, geo.face(j, y)) != by_cosets[x, y]:
                        return CheckReport("incidence-evaluators", False,
                                           witness=(i, x, j, y),
                                           detail="order closure differs from coset incidence")
    return CheckReport("incidence-evaluators", True, data={"pairs": pairs})


def check_chain_stabilizers(geo):
    """Stabilizer of each base sub-chain under the induced action equals ``Gamma_{N - I}``."""
    sys = geo.system
    n = sys.rank
    idx = list(range(-1, n + 1))
    order = sys.table.order
    fixes = {r: geo.labels[r] == 0 for r in idx}
    for mask in range(1 << len(idx)):
        chosen = [idx[k] for k in range(len(idx)) if mask >> k & 1]
        stab = np.ones(order, dtype=bool)
        for r in chosen:
            stab &= fixes[r]
        expected = sys.sub_members([r for r in idx if r not in chosen])
        if not np.array_equal(np.flatnonzero(stab), expected):
            return CheckReport("chain-stabilizers", False, witness=set(chosen))
    return CheckReport("chain-stabilizers", True)


# -- systems from actions ---------------------------------------------------------

def derive_system(K, gens, base_flag=None):
    """Distinguished subgroups of a flag-transitive group of automorphisms.

    ``R_i`` is the stabilizer of the base flag with its i-face removed; the
    groups act on face indices of ``K``.
    """
    report = verify_group_action(K, gens)
    if not report.is_automorphism_set:
        raise InvalidAction(f"not an automorphism: {report.witness}")
    if not report.flag_transitive:
        raise InvalidAction("group is not flag-transitive")
    if base_flag is None:
        base_flag = K.base_flag if K.base_flag is not None else flags(K)[0]
    base_flag = tuple(base_flag)
    gamma = PermGroup(len(K), gens)
    bottom = gamma.pointwise_stabilizer(base_flag)
    subgroups = [bottom]
    for i in range(K.n):
        rest = base_flag[:i + 1] + base_flag[i + 2:]
        subgroups.append(gamma.pointwise_stabilizer(rest))
    subgroups.append(bottom)
    sys = SubgroupSystem(gamma, subgroups)
    if not is_generalized_string_cgroup(sys):
        raise InternalInconsistency("derived subgroups violate the generalized string C-group axioms")
    return sys


def verify_reconstruction(K, sys, base_flag=None):
    """Exhibit ``K ~= K(sys)``, trying the map ``F_i*phi -> Gamma_i*phi`` first."""
    if base_flag is None:
        base_flag = K.base_flag if K.base_flag is not None else flags(K)[0]
    geo = coset_geometry(sys)
    L = geo.complex
    table = sys.table
    mapping = None
    if table.degree == len(K):
        guess = [-1] * len(K)
        ok = True
        for r in range(-1, K.n + 1):
            images = table.elems[:, base_flag[r + 1]]
            targets = geo.offsets[r] + geo.labels[r]
            for face, tgt in zip(images.tolist(), targets.tolist()):
                if guess[face] == -1:
                    guess[face] = tgt
                elif guess[face] != tgt:
                    ok = False
                    break
            if not ok:
                break
        if ok and is_isomorphism(K, L, guess):
            mapping = guess
    if mapping is not None:
        return CheckReport("reconstruction", True, data={"canonical": True, "map": mapping})
    found = are_isomorphic(K, L)
    if found is None:
        return CheckReport("reconstruction", False, detail="K is not isomorphic to K(Gamma)")
    return CheckReport("reconstruction", True, data={"canonical": False, "map": found})


# -- sections ------------------------------------------------------------------------

def section_group(sys, i, j):
    """System of ``Gamma_{i+1..j-1}`` for the section between base faces i and j."""
    n = sys.rank
    if not -1 <= i < j - 1 <= n - 1:
        raise IndexError(f"need -1 <= i < j-1 <= {n - 1}, got i={i}, j={j}")
    if (i, j) == (-1, n):
        return sys
    middle = list(range(i + 1, j))
    gamma = sys.sub(middle)
    subgroups = [sys.R(-1)] + [sys.R(k) for k in middle] + [sys.R(n)]
    name = f"{sys.name}[{i},{j}]" if sys.name else None
    return SubgroupSystem(gamma, subgroups, name=name)


def verify_base_sections(sys):
    """Sections at base faces match ``K(Gamma_{i+1..j-1})``; middle counts equal ``k_i``."""
    geo = coset_geometry(sys)
    K = geo.complex
    n = sys.rank
    base = geo.base_flag
    mismatched = []
    for i in range(-1, n + 1):
        for j in range(i + 1, n + 1):
            S = section(K, base[i + 1], base[j + 1])
            if j == i + 1:
                if len(S) != 2:
                    mismatched.append((i, j))
                continue
            L = build_complex(section_group(sys, i, j))
            if are_isomorphic(S, L) is None:
                mismatched.append((i, j))
    counts = middle_face_counts(K)
    k_ok = all(counts.get(i) == [compute_k(sys, i)] for i in range(n))
    return CheckReport("base-sections", not mismatched and k_ok,
                       witness=mismatched[0] if mismatched else None,
                       data={"middle_counts": counts})


def action_kernel(sys):
    """Elements of ``gamma`` acting trivially on ``K(gamma)``: the core of ``R_-1``."""
    return core(sys.gamma, sys.R(-1))
