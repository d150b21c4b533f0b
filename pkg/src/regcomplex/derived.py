"""Skeletons of regular polytopes and certificates for extensions."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _config
from .cgroup import (SubgroupSystem, distinguished_generators, is_string_cgroup, k_vector)
from .complex import are_isomorphic, check_diamond, f_vector, is_lattice, section
from .construction import build_complex, coset_geometry, derive_system
from .errors import InvalidSystem, NotPolytopeComplex, ResourceLimit
from .permgroup import PermGroup, Permutation, product_sets_equal
from .report import CheckReport

__all__ = [
    "skeleton_system", "verify_skeleton_kernel", "ExtensionData",
    "verify_extension", "facet_count", "ridge_facet_counts",
]


def skeleton_system(polytope_sys, n):
    """System of ``Gamma`` acting on the ``(n-1)``-skeleton (a rank-n complex).

    ``R_-1 = R_n = <rho_n, ..., rho_{m-1}>``, ``R_i = <rho_i, R_-1>`` for
    ``i <= n-2`` and ``R_{n-1} = <rho_{n-1}, ..., rho_{m-1}>``. The action
    need not be faithful; see ``construction.action_kernel``.
    """
    m = polytope_sys.rank
    if not is_string_cgroup(polytope_sys):
        raise InvalidSystem("not-polytope", "skeletons are taken of string C-group systems")
    if not 1 <= n <= m:
        raise IndexError(f"need 1 <= n <= {m}, got {n}")
    if n == m:
        return polytope_sys
    rhos = distinguished_generators(polytope_sys)
    degree = polytope_sys.gamma.degree
    tail = rhos[n:]
    bottom = PermGroup(degree, tail)
    subgroups = [bottom]
    for i in range(n - 1):
        subgroups.append(PermGroup(degree, [rhos[i], *tail]))
    subgroups.append(PermGroup(degree, rhos[n - 1:]))
    subgroups.append(bottom)
    name = f"skel{n - 1}{polytope_sys.name}" if polytope_sys.name else None
    return SubgroupSystem(polytope_sys.gamma, subgroups, name=name)


def verify_skeleton_kernel(skel_sys, facet_sys=None):
    """Kernel of ``Gamma_{n-1}`` on the base facet is ``R_-1`` and the quotient is
    the facet's string C-group.

    ``facet_sys`` is the facet's own automorphism system for the order and
    k-parameter comparison; when omitted the derived quotient is compared
    against the facet complex's face counts only.
    """
    geo = coset_geometry(skel_sys)
    K = geo.complex
    n = skel_sys.rank
    base = geo.base_flag
    facet_cx = section(K, base[0], base[n])
    if not check_diamond(facet_cx):
        raise NotPolytopeComplex("the base facet is not an abstract polytope")
    # section() keeps faces in index order, so column k is facet face k
    inside = [f for f in range(len(K)) if K.leq(base[0], f) and K.leq(f, base[n])]
    table = skel_sys.table
    stab = skel_sys.members(skel_sys.gamma_i(n - 1))
    # face images of every stabilizer element on the facet's faces
    face_img = np.empty((len(stab), len(inside)), dtype=np.int64)
    for col, f in enumerate(inside):
        rank = K.ranks[f]
        coset = f - geo.offsets[rank]
        rep = geo.reps[rank][coset]
        moved = table.mul(np.full(len(stab), rep, dtype=np.int64), stab)
        face_img[:, col] = geo.offsets[rank] + geo.labels[rank][moved]
    trivial = np.all(face_img == np.asarray(inside)[None, :], axis=1)
    kernel = np.sort(stab[trivial])
    kernel_ok = np.array_equal(kernel, skel_sys.members(skel_sys.R(-1)))

    where = {f: k for k, f in enumerate(inside)}
    gens = []
    for s in skel_sys.gamma_i(n - 1).generators:
        row = int(np.flatnonzero(stab == int(table.index_of(s)[0]))[0])
        gens.append(Permutation([where[int(x)] for x in face_img[row]]))
    quotient = PermGroup(len(inside), gens)
    order_ok = quotient.order == len(stab) // skel_sys.R(-1).order
    derived = derive_system(facet_cx, gens)
    string_ok = is_string_cgroup(derived)
    data = {
        "kernel_order": int(len(kernel)),
        "quotient_order": quotient.order,
        "facet_f_vector": f_vector(facet_cx),
    }
    match_ok = True
    if facet_sys is not None:
        match_ok = (facet_sys.gamma.order == quotient.order
                    and k_vector(facet_sys) == k_vector(derived))
        data["facet_group_order"] = facet_sys.gamma.order
    holds = kernel_ok and order_ok and string_ok and match_ok
    return CheckReport("skeleton-kernel", holds, data=data,
                       detail="" if holds else
                       f"kernel={kernel_ok} order={order_ok} string={string_ok} match={match_ok}")


def facet_count(K):
    """Number of faces of rank ``n - 1``."""
    return len(K.by_rank[K.n - 1])


def ridge_facet_counts(K):
    """Sorted distinct numbers of facets containing an (n-2)-face."""
    counts = set()
    for r in K.by_rank[K.n - 2]:
        counts.add(len(K.up[r]))
    return sorted(counts)


@dataclass(frozen=True)
class ExtensionData:
    """Candidate extension: ``candidate`` has rank ``base.rank + 1`` and ``pi``
    maps generators of ``Lambda_{n-1}^-`` (the candidate's facet stabilizer)
    to elements of the base group, as ``(lambda_element, gamma_element)`` pairs.
    """

    base: SubgroupSystem
    candidate: SubgroupSystem
    pi: tuple


class _Hom:
    """A homomorphism given on generators, checked and tabulated exhaustively."""

    def __init__(self, pairs, source_degree, target_degree):
        self.pairs = list(pairs)
        d1, d2 = source_degree, target_degree
        joined = [Permutation(list(a.images) + [d1 + x for x in b.images])
                  for a, b in self.pairs]
        self.graph = PermGroup(d1 + d2, joined)
        self.source = PermGroup(d1, [a for a, _ in self.pairs])
        self.image = PermGroup(d2, [b for _, b in self.pairs])
        self.d1 = d1
        # well defined iff the graph projects injectively onto the source
        self.well_defined = self.graph.order == self.source.order

    def table(self):
        """Rows of source elements and their images, aligned."""
        if self.graph.order > _config.max_elements():
            raise ResourceLimit("homomorphism table exceeds element cap")
        rows = self.graph.table.elems
        return rows[:, :self.d1], rows[:, self.d1:] - self.d1


def verify_extension(data, check_lattice=False):
    """Check the extension hypotheses and, when they hold, certify the result.

    Conditions: (a) ``R'_-1 = R'_{n+1}`` properly inside ``R'_n`` and
    ``Lambda != Lambda_{n-1}^-``; (b) ``R'_i R'_j = R'_j R'_i`` for
    ``0 <= i < j-1 <= n-1``; (c) ``pi`` is a well-defined surjection with
    ``pi^-1(R_i) = R'_i`` (c1) and ``Lambda_i^+ & Lambda_{n-1}^- =
    pi^-1(Gamma_i^+)`` (c2). Optional (d) is the lattice condition, checked
    over element sets and alongside the poset test on the built complex.
    """
    base, cand = data.base, data.candidate
    n = base.rank
    checks = {}
    if cand.rank != n + 1:
        raise InvalidSystem("rank", f"candidate rank {cand.rank} should be {n + 1}")

    # (a)
    a_bottom = cand.R(-1) == cand.R(n + 1)
    a_proper = cand.R(-1).is_subgroup_of(cand.R(n)) and cand.R(-1).order < cand.R(n).order
    facet_stab = cand.gamma_minus(n - 1)
    a_ext = facet_stab.order < cand.gamma.order
    checks["a"] = CheckReport("a", a_bottom and a_proper and a_ext,
                              witness=None if a_bottom and a_proper and a_ext else
                              {"R'_-1 = R'_n+1": a_bottom, "R'_-1 < R'_n": a_proper,
                               "Lambda != Lambda_n-1^-": a_ext})
    # (b)
    bad = None
    for i in range(0, n + 1):
        for j in range(i + 2, n + 1):
            if not product_sets_equal(cand.R(i), cand.R(j)):
                bad = bad or (i, j)
    checks["b"] = CheckReport("b", bad is None, witness=bad)

    # (c)
    hom = _Hom(data.pi, cand.gamma.degree, base.gamma.degree)
    domain_ok = hom.source == facet_stab
    c_detail = {"well_defined": hom.well_defined, "domain": domain_ok}
    c1_bad = c2_bad = None
    surjective = False
    if hom.well_defined and domain_ok:
        surjective = hom.image == base.gamma
        src, img = hom.table()
        lam_index = cand.table.index_of(src)
        gam_index = base.table.index_of(img)
        c_detail["surjective"] = surjective

        def preimage(group):
            hit = np.isin(gam_index, base.members(group))
            return np.sort(lam_index[hit])

        for i in range(-1, n):
            if not np.array_equal(preimage(base.R(i)), cand.members(cand.R(i))):
                c1_bad = c1_bad if c1_bad is not None else i
        facet_members = cand.members(facet_stab)
        for i in range(-1, n + 1):
            lhs = np.intersect1d(cand.members(cand.gamma_plus(i)), facet_members)
            if not np.array_equal(lhs, preimage(base.gamma_plus(i))):
                c2_bad = c2_bad if c2_bad is not None else i
    c_ok = (hom.well_defined and domain_ok and surjective
            and c1_bad is None and c2_bad is None)
    c_detail.update({"c1_failure": c1_bad, "c2_failure": c2_bad})
    checks["c"] = CheckReport("c", c_ok, witness=None if c_ok else c_detail, data=c_detail)

    result = {"conditions": checks, "certified": False}
    if all(checks.values()):
        L = build_complex(cand)
        geo_base = build_complex(base)
        facet = section(L, L.bottom, L.base_flag[n + 1])
        iso = are_isomorphic(facet, geo_base)
        result["extension"] = L
        result["facets_isomorphic"] = iso is not None
        result["facet_count"] = facet_count(L)
        result["ridge_facet_counts"] = ridge_facet_counts(L)
        result["pi_isomorphism"] = hom.graph.order == base.gamma.order
        if result["pi_isomorphism"]:
            result["base_embeds"] = (cand.gamma.order % base.gamma.order == 0
                                     and facet_stab.is_subgroup_of(cand.gamma))
        result["certified"] = iso is not None
        if check_lattice:
            checks["d"] = lattice_condition(cand)
            result["lattice"] = bool(is_lattice(L))
    return result


def lattice_condition(cand):
    """Condition (d) as the literal set inclusion over element sets."""
    n = cand.rank - 1
    plus = {i: cand.members(cand.gamma_plus(i)) for i in range(-1, n + 3)}
    minus = {i: cand.members(cand.gamma_minus(i)) for i in range(-2, n + 2)}
    table = cand.table
    prod = cand.element_product

    def span(lo, hi):
        return cand.sub_members(range(lo, hi + 1))

    for i in range(0, n + 1):
        for j in range(i, n + 1):
            for k in range(j + 1, n + 1):
                avoid = [prod(plus[i + 1], minus[j - 1])]
                for l in range(j + 1, k):
                    avoid.append(prod(plus[i + 1], minus[l - 1], span(j + 1, k - 1)))
                avoid = np.unique(np.concatenate(avoid))
                target = prod(minus[n - 1], plus[k + 1])
                left = prod(minus[n - 1], plus[i + 1])
                for tau in minus[k - 1]:
                    if np.isin(tau, avoid):
                        continue
                    coset = np.unique(table.mul(left, np.full(len(left), tau, dtype=np.int64)))
                    inter = np.intersect1d(plus[j + 1], coset)
                    if not np.all(np.isin(inter, target)):
                        return CheckReport("d", False, witness=(i, j, k, int(tau)))
    return CheckReport("d", True)
