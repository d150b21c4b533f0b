"""Built-in example systems.

Spherical Coxeter groups are realised concretely: type A as symmetric groups
on the simplex vertices, type B as signed permutations of the coordinate
vectors ``+-e_k`` (point ``2k`` is ``+e_k``, ``2k+1`` is ``-e_k``), type H3
as reflections of the icosahedron acting on its 12 vertices, and ``{p}`` as
the dihedral group on the polygon's vertices. Every entry carries expected
invariants that ``CatalogEntry.self_test`` reproduces.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .cgroup import SubgroupSystem, is_string_cgroup, k_vector
from .errors import UnsupportedType
from .permgroup import PermGroup, Permutation, from_cycles

__all__ = [
    "CatalogEntry", "SUPPORTED_SYMBOLS", "universal_polytope",
    "polytope_system", "nonpolytope_examples", "catalog", "get",
    "rank1_cyclic", "k33_system", "ip_failure_system", "hemi_octahedron",
]

SUPPORTED_SYMBOLS = (
    *((p,) for p in range(2, 13)),
    (3, 3), (3, 4), (4, 3), (3, 5), (5, 3), (3, 3, 3), (4, 3, 3), (3, 3, 4),
)


def polytope_system(rhos, name=None):
    """String C-group style system with ``R_i = <rho_i>`` and trivial ``R_-1``."""
    degree = rhos[0].degree
    trivial = PermGroup(degree)
    gamma = PermGroup(degree, rhos)
    return SubgroupSystem(gamma, [trivial, *(PermGroup(degree, [r]) for r in rhos), trivial],
                          name=name)


def _polygon(p):
    if p == 2:
        # the digon: vertices 0, 1 and edges 2, 3
        return [from_cycles("(0 1)", 4), from_cycles("(2 3)", 4)]
    rho0 = Permutation([(1 - i) % p for i in range(p)])
    rho1 = Permutation([(-i) % p for i in range(p)])
    return [rho0, rho1]


def _simplex(m):
    return [from_cycles(f"({i} {i + 1})", m + 1) for i in range(m)]


def _sign_change(k, m):
    return from_cycles(f"({2 * k} {2 * k + 1})", 2 * m)


def _coord_swap(k, m):
    a, b = k, k + 1
    return from_cycles(f"({2 * a} {2 * b})({2 * a + 1} {2 * b + 1})", 2 * m)


def _hypercube(m):
    # {4,3,...,3}: rho_0 negates x_1, rho_k swaps x_k and x_{k+1}
    return [_sign_change(0, m)] + [_coord_swap(k, m) for k in range(m - 1)]


def _icosahedron_vertices():
    phi = (1 + 5 ** 0.5) / 2
    pts = []
    for a, b in itertools.product((1, -1), repeat=2):
        pts.extend([(0, a, b * phi), (a, b * phi, 0), (b * phi, 0, a)])
    return np.array(pts)


def _reflection_perm(normal, verts):
    normal = normal / np.linalg.norm(normal)
    moved = verts - 2 * np.outer(verts @ normal, normal)
    dist = np.linalg.norm(moved[:, None, :] - verts[None, :, :], axis=2)
    return Permutation(np.argmin(dist, axis=1).tolist())


def _icosahedron():
    """Distinguished generators of {3,5} acting on the icosahedron's vertices."""
    verts = _icosahedron_vertices()
    v = verts[0]
    edge_len = np.min([np.linalg.norm(v - w) for w in verts[1:]])
    nbrs = [k for k in range(1, 12) if abs(np.linalg.norm(v - verts[k]) - edge_len) < 1e-9]
    w = verts[nbrs[0]]
    third = next(k for k in nbrs[1:] if abs(np.linalg.norm(w - verts[k]) - edge_len) < 1e-9)
    edge_mid = (v + w) / 2
    face_mid = (v + w + verts[third]) / 3
    # rho_j fixes every base-flag element except the j-face
    rho0 = _reflection_perm(np.cross(edge_mid, face_mid), verts)
    rho1 = _reflection_perm(np.cross(v, face_mid), verts)
    rho2 = _reflection_perm(np.cross(v, edge_mid), verts)
    return [rho0, rho1, rho2]


def universal_polytope(symbol):
    """The string C-group of the universal regular polytope ``{p_1, ..., p_{n-1}}``."""
    symbol = tuple(int(p) for p in symbol)
    if symbol not in SUPPORTED_SYMBOLS:
        raise UnsupportedType(f"unsupported or non-spherical Schlafli symbol {list(symbol)}")
    name = "{" + ",".join(map(str, symbol)) + "}"
    if len(symbol) == 1:
        rhos = _polygon(symbol[0])
    elif all(p == 3 for p in symbol):
        rhos = _simplex(len(symbol) + 1)
    elif symbol in {(4, 3), (4, 3, 3)}:
        rhos = _hypercube(len(symbol) + 1)
    elif symbol in {(3, 4), (3, 3, 4)}:
        rhos = _hypercube(len(symbol) + 1)[::-1]
    elif symbol == (3, 5):
        rhos = _icosahedron()
    else:  # (5, 3)
        rhos = _icosahedron()[::-1]
    return polytope_system(rhos, name=name)


def rank1_cyclic(k):
    """Rank-1 complex on ``C_k``: k vertices, trivial flag stabilizer."""
    cycle = from_cycles("(" + " ".join(map(str, range(k))) + ")", k)
    trivial = PermGroup(k)
    gamma = PermGroup(k, [cycle])
    return SubgroupSystem(gamma, [trivial, gamma, trivial], name=f"C{k}")


def k33_system():
    """K_{3,3} as a rank-2 complex; points 0,1,2 and 3,4,5 are the two parts.

    Base flag: vertex 0 and edge {0,3}.
    """
    c = lambda s: from_cycles(s, 6)  # noqa: E731
    r_bottom = PermGroup(6, [c("(1 2)"), c("(4 5)")])
    r0 = PermGroup(6, [c("(1 2)"), c("(4 5)"), c("(0 3)(1 4)(2 5)")])
    r1 = PermGroup(6, [c("(1 2)"), c("(3 4)"), c("(4 5)")])
    gamma = PermGroup(6, [*r0.generators, *r1.generators])
    return SubgroupSystem(gamma, [r_bottom, r0, r1, r_bottom], name="K33")


def ip_failure_system():
    """``rho_0 = rho_2 = (0 1)``, ``rho_1 = (1 2)``: valid structure, no intersection property."""
    a, b = from_cycles("(0 1)", 3), from_cycles("(1 2)", 3)
    trivial = PermGroup(3)
    gamma = PermGroup(3, [a, b])
    return SubgroupSystem(gamma, [trivial, PermGroup(3, [a]), PermGroup(3, [b]),
                                  PermGroup(3, [a]), trivial], name="ip-failure")


def hemi_octahedron():
    """{3,4}_3: the octahedral group modulo the central inversion, on 4 cube diagonals."""
    cube_vertices = list(itertools.product((1, -1), repeat=3))
    diag = {}
    for v in cube_vertices:
        key = max(v, tuple(-x for x in v))
        diag.setdefault(key, len(diag))

    def act(signed):
        # signed[k] = (target coordinate, sign)
        img = [0] * 4
        for key, d in diag.items():
            w = [0, 0, 0]
            for k, (t, s) in enumerate(signed):
                w[t] = s * key[k]
            w = tuple(w)
            img[d] = diag[max(w, tuple(-x for x in w))]
        return Permutation(img)

    swap23 = act([(0, 1), (2, 1), (1, 1)])
    swap12 = act([(1, 1), (0, 1), (2, 1)])
    neg1 = act([(0, -1), (1, 1), (2, 1)])
    return polytope_system([swap23, swap12, neg1], name="hemi-octahedron")


def _skeleton_edge_graph_4simplex():
    from .derived import skeleton_system
    return skeleton_system(universal_polytope((3, 3, 3)), 2)


@dataclass
class CatalogEntry:
    name: str
    system: SubgroupSystem
    schlafli: tuple | None = None
    f_vector: tuple | None = None
    flag_count: int | None = None
    k_vector: tuple | None = None
    polytope: bool | None = None
    lattice: bool | None = None
    negative: bool = False
    notes: str = ""
    extra: dict = field(default_factory=dict)

    def self_test(self):
        """Rebuild the complex and compare against the recorded invariants.

        Returns a list of mismatch descriptions (empty when all agree).
        """
        from .cgroup import is_generalized_string_cgroup
        from .complex import check_diamond, f_vector, flags, is_lattice
        from .construction import build_complex

        problems = []
        if self.negative:
            if is_generalized_string_cgroup(self.system):
                problems.append("negative entry passes the C-group checks")
            return problems
        K = build_complex(self.system)
        got = {
            "f_vector": tuple(f_vector(K)),
            "flag_count": len(flags(K)),
            "k_vector": tuple(k_vector(self.system)),
            "polytope": bool(check_diamond(K)),
            "lattice": bool(is_lattice(K)),
        }
        for key, value in got.items():
            want = getattr(self, key)
            if want is not None and want != value:
                problems.append(f"{key}: expected {want}, got {value}")
        if self.schlafli is not None and not is_string_cgroup(self.system):
            problems.append("polytope entry is not a string C-group")
        return problems


_POLYTOPE_EXPECT = {
    (3, 3): ((4, 6, 4), 24),
    (3, 4): ((6, 12, 8), 48),
    (4, 3): ((8, 12, 6), 48),
    (3, 5): ((12, 30, 20), 120),
    (5, 3): ((20, 30, 12), 120),
    (3, 3, 3): ((5, 10, 10, 5), 120),
    (4, 3, 3): ((16, 32, 24, 8), 384),
    (3, 3, 4): ((8, 24, 32, 16), 384),
}


def _polytope_entries():
    out = []
    for p in range(2, 13):
        out.append(CatalogEntry("{%d}" % p, universal_polytope((p,)), schlafli=(p,),
                                f_vector=(p, p), flag_count=2 * p, k_vector=(2, 2),
                                polytope=True, lattice=p > 2))
    for sym, (fv, nflags) in _POLYTOPE_EXPECT.items():
        name = "{" + ",".join(map(str, sym)) + "}"
        out.append(CatalogEntry(name, universal_polytope(sym), schlafli=sym, f_vector=fv,
                                flag_count=nflags, k_vector=(2,) * (len(sym) + 1),
                                polytope=True, lattice=True))
    return out


def nonpolytope_examples():
    out = [CatalogEntry(f"C{k}", rank1_cyclic(k), f_vector=(k,), flag_count=k,
                        k_vector=(k,), polytope=k == 2, lattice=True,
                        notes="rank-1 complex with k vertices")
           for k in (3, 4, 5)]
    out.append(CatalogEntry("K33", k33_system(), f_vector=(6, 9), flag_count=18,
                            k_vector=(2, 3), polytope=False, lattice=True,
                            notes="complete bipartite graph; flag stabilizer of order 4"))
    out.append(CatalogEntry("skel1{3,3,3}", _skeleton_edge_graph_4simplex(),
                            f_vector=(5, 10), flag_count=20, k_vector=(2, 4),
                            polytope=False, lattice=True,
                            notes="edge graph of the 4-simplex"))
    out.append(CatalogEntry("hemi-octahedron", hemi_octahedron(), f_vector=(3, 6, 4),
                            flag_count=24, k_vector=(2, 2, 2), polytope=True, lattice=False,
                            notes="{3,4}_3; a polytope that is not a lattice"))
    out.append(CatalogEntry("ip-failure", ip_failure_system(), negative=True,
                            notes="rho_0 = rho_2 = (0 1), rho_1 = (1 2)"))
    return out


@lru_cache(maxsize=None)
def _entries():
    return tuple(_polytope_entries() + nonpolytope_examples())


def catalog(verify=False):
    """All entries; with ``verify`` each is self-tested and failures raise."""
    entries = list(_entries())
    if verify:
        for e in entries:
            problems = e.self_test()
            if problems:
                raise AssertionError(f"catalog entry {e.name}: {'; '.join(problems)}")
    return entries


def get(name):
    for e in _entries():
        if e.name == name:
            return e
    raise KeyError(name)
