"""Ranked posets of faces and the incidence-complex axioms.

A complex is stored through its covering relation (Hasse edges between
consecutive ranks). Faces are addressed by integer index; external ids and
labels ride along for file formats and display. The full order is the
reflexive-transitive closure of the covers, materialised per face as an
integer bitmask of the faces above and below it.

Flags are tuples of face indices ordered by rank ``-1 .. n``.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _config
from .errors import InvalidAction, InvalidPoset, InvalidSection, ResourceLimit
from .permgroup import PermGroup, Permutation
from .report import CheckReport

__all__ = [
    "Face", "IncidenceComplex", "ActionReport", "from_covers", "flags",
    "adjacent_flags", "check_I1", "check_I2", "check_I4", "check_diamond",
    "check_flag_connected", "check_strongly_flag_connected",
    "check_strongly_connected", "is_lattice", "section", "are_isomorphic",
    "f_vector", "verify_group_action", "axiom_report", "hasse_dot",
    "flag_graph_dot",
]


@dataclass(frozen=True)
class Face:
    id: object
    rank: int
    label: str | None = None


def _bits(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class IncidenceComplex:
    """A ranked poset with a unique least and greatest face.

    Build through ``from_covers``. ``automorphisms`` (face permutations) and
    ``base_flag`` are optional extras recorded by constructions that know a
    group acting on the faces.
    """

    def __init__(self, n, ranks, covers, *, ids=None, labels=None,
                 automorphisms=(), base_flag=None):
        self.n = int(n)
        self.ranks = tuple(int(r) for r in ranks)
        size = len(self.ranks)
        self.ids = tuple(ids) if ids is not None else tuple(range(size))
        self.labels = tuple(labels) if labels is not None else (None,) * size
        up = [set() for _ in range(size)]
        down = [set() for _ in range(size)]
        for a, b in covers:
            up[a].add(b)
            down[b].add(a)
        self.up = tuple(tuple(sorted(s)) for s in up)
        self.down = tuple(tuple(sorted(s)) for s in down)
        self.automorphisms = tuple(automorphisms)
        self.base_flag = tuple(base_flag) if base_flag is not None else None

    # -- basic structure ---------------------------------------------------

    def __len__(self):
        return len(self.ranks)

    def __repr__(self):
        return f"IncidenceComplex(n={self.n}, f_vector={f_vector(self)})"

    @property
    def num_faces(self):
        return len(self.ranks)

    @cached_property
    def bottom(self):
        return self.ranks.index(-1)

    @cached_property
    def top(self):
        return self.ranks.index(self.n)

    @cached_property
    def by_rank(self):
        out = {r: [] for r in range(-1, self.n + 1)}
        for f, r in enumerate(self.ranks):
            out[r].append(f)
        return out

    def faces(self):
        return [Face(self.ids[f], self.ranks[f], self.labels[f]) for f in range(len(self))]

    def covers(self):
        return [(a, b) for a in range(len(self)) for b in self.up[a]]

    @cached_property
    def _above(self):
        above = [0] * len(self)
        for r in range(self.n, -2, -1):
            for f in self.by_rank[r]:
                m = 1 << f
                for u in self.up[f]:
                    m |= above[u]
                above[f] = m
        return above

    @cached_property
    def _below(self):
        below = [0] * len(self)
        for r in range(-1, self.n + 1):
            for f in self.by_rank[r]:
                m = 1 << f
                for d in self.down[f]:
                    m |= below[d]
                below[f] = m
        return below

    def above(self, f):
        """Faces ``G`` with ``f <= G``."""
        return frozenset(_bits(self._above[f]))

    def below(self, f):
        return frozenset(_bits(self._below[f]))

    def leq(self, a, b):
        return bool(self._above[a] >> b & 1)

    def index_of_id(self, face_id):
        return self._id_index[face_id]

    @cached_property
    def _id_index(self):
        return {fid: i for i, fid in enumerate(self.ids)}


def _normalise_face(item):
    if isinstance(item, Face):
        return item.id, item.rank, item.label
    if isinstance(item, dict):
        return item["id"], item["rank"], item.get("label")
    fid, rank = item[0], item[1]
    return fid, rank, (item[2] if len(item) > 2 else None)


def from_covers(n, faces, covers, *, automorphisms=(), base_flag=None):
    """Validate and build a complex of rank ``n``.

    ``faces`` are ``Face`` objects, dicts with ``id``/``rank``/``label`` or
    ``(id, rank[, label])`` tuples. ``covers`` are ``(lower_id, upper_id)``
    pairs between consecutive ranks. Enforces a unique least and greatest
    face and that every face lies between them.
    """
    n = int(n)
    if n < -1:
        raise InvalidPoset(f"rank must be >= -1, got {n}")
    items = [_normalise_face(f) for f in faces]
    if len(items) > _config.max_faces():
        raise ResourceLimit(f"{len(items)} faces exceed cap {_config.max_faces()}")
    ids = [fid for fid, _, _ in items]
    index = {}
    for i, fid in enumerate(ids):
        if fid in index:
            raise InvalidPoset(f"duplicate face id {fid!r}")
        index[fid] = i
    ranks = [int(r) for _, r, _ in items]
    for fid, r in zip(ids, ranks):
        if not -1 <= r <= n:
            raise InvalidPoset(f"face {fid!r} has rank {r} outside -1..{n}")
    lows = [i for i, r in enumerate(ranks) if r == -1]
    highs = [i for i, r in enumerate(ranks) if r == n]
    if len(lows) != 1 or len(highs) != 1:
        raise InvalidPoset(f"need exactly one least and one greatest face, found "
                           f"{len(lows)} of rank -1 and {len(highs)} of rank {n}")
    if n == -1 and len(items) != 1:
        raise InvalidPoset("a rank -1 complex has a single face")
    pairs = set()
    for a, b in covers:
        if a not in index or b not in index:
            raise InvalidPoset(f"cover ({a!r}, {b!r}) names an unknown face")
        ia, ib = index[a], index[b]
        if ranks[ib] != ranks[ia] + 1:
            raise InvalidPoset(f"cover ({a!r}, {b!r}) joins ranks {ranks[ia]} and {ranks[ib]}")
        pairs.add((ia, ib))
    K = IncidenceComplex(n, ranks, sorted(pairs), ids=ids,
                         labels=[lab for _, _, lab in items],
                         automorphisms=automorphisms, base_flag=base_flag)
    full = (1 << len(K)) - 1
    if K._above[K.bottom] != full:
        missing = sorted(set(range(len(K))) - set(_bits(K._above[K.bottom])))
        raise InvalidPoset(f"faces {[ids[i] for i in missing]} are not above the least face")
    if K._below[K.top] != full:
        missing = sorted(set(range(len(K))) - set(_bits(K._below[K.top])))
        raise InvalidPoset(f"faces {[ids[i] for i in missing]} are not below the greatest face")
    return K


# -- flags -------------------------------------------------------------------

def _chains(K, start, stop):
    """Saturated chains from ``start`` up to ``stop`` (both included)."""
    target_rank = K.ranks[stop]
    out = []
    stack = [(start,)]
    while stack:
        chain = stack.pop()
        last = chain[-1]
        if last == stop:
            out.append(chain)
            continue
        if K.ranks[last] >= target_rank:
            continue
        for u in reversed(K.up[last]):
            if K._below[stop] >> u & 1:
                stack.append(chain + (u,))
    return out


def flags(K):
    """All flags, in lexicographic order of face indices."""
    cached = K.__dict__.get("_flags")
    if cached is None:
        cached = sorted(_chains(K, K.bottom, K.top))
        K.__dict__["_flags"] = cached
    return list(cached)


def adjacent_flags(K, flag, i):
    """Flags that differ from ``flag`` exactly in the rank-``i`` face."""
    if not 0 <= i <= K.n - 1:
        return []
    lower, upper, own = flag[i], flag[i + 2], flag[i + 1]
    out = []
    for h in K.up[lower]:
        if h != own and K._above[h] >> upper & 1:
            out.append(flag[:i + 1] + (h,) + flag[i + 2:])
    return out


def _flag_components(flag_list, n):
    """Connected components of the flag-adjacency graph (union-find)."""
    parent = list(range(len(flag_list)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for pos in range(1, n + 1):
        groups = {}
        for k, fl in enumerate(flag_list):
            key = fl[:pos] + fl[pos + 1:]
            if key in groups:
                ra, rb = find(groups[key]), find(k)
                if ra != rb:
                    parent[rb] = ra
            else:
                groups[key] = k
    return len({find(k) for k in range(len(flag_list))})


# -- axioms --------------------------------------------------------------------

def check_I1(K):
    full = (1 << len(K)) - 1
    ok = (K.ranks.count(-1) == 1 and K.ranks.count(K.n) == 1
          and K._above[K.bottom] == full and K._below[K.top] == full)
    return CheckReport("I1", ok)


def check_I2(K):
    """Every chain lies in a flag with exactly ``n + 2`` faces."""
    fl = flags(K)
    for f in fl:
        if len(f) != K.n + 2:
            return CheckReport("I2", False, witness=f)
    together = [0] * len(K)
    for f in fl:
        m = 0
        for x in f:
            m |= 1 << x
        for x in f:
            together[x] |= m
    for x in range(len(K)):
        comparable = K._above[x] | K._below[x]
        if together[x] != comparable:
            missing = _bits(comparable & ~together[x])
            return CheckReport("I2", False, witness=(x, missing[0] if missing else None))
    return CheckReport("I2", True)


def _middle_counts(K):
    """Yield ``(i, F, G, count)`` for every incident ``(i-1, i+1)`` pair."""
    for i in range(K.n):
        for F in K.by_rank[i - 1]:
            seen = set()
            for h in K.up[F]:
                for G in K.up[h]:
                    seen.add(G)
            for G in sorted(seen):
                count = sum(1 for h in K.up[F] if G in K.up[h])
                yield i, F, G, count


def check_I4(K):
    """At least two middle faces in every section of rank 1."""
    for i, F, G, c in _middle_counts(K):
        if c < 2:
            return CheckReport("I4", False, witness=(i, F, G), detail=f"{c} middle faces")
    return CheckReport("I4", True)


def check_diamond(K):
    """Exactly two middle faces in every section of rank 1."""
    for i, F, G, c in _middle_counts(K):
        if c != 2:
            return CheckReport("diamond", False, witness=(i, F, G), detail=f"{c} middle faces")
    return CheckReport("diamond", True)


def middle_face_counts(K):
    """``{i: sorted set of counts}`` over all rank-1 sections."""
    out = defaultdict(set)
    for i, _, _, c in _middle_counts(K):
        out[i].add(c)
    return {i: sorted(v) for i, v in sorted(out.items())}


def check_flag_connected(K):
    fl = flags(K)
    comps = _flag_components(fl, K.n)
    return CheckReport("flag-connected", comps <= 1, witness=None if comps <= 1 else comps,
                       detail="" if comps <= 1 else f"{comps} components")


def _section_pairs(K, min_rank):
    for F in range(len(K)):
        for G in _bits(K._above[F]):
            if K.ranks[G] - K.ranks[F] - 1 >= min_rank:
                yield F, G


def check_strongly_flag_connected(K):
    """Every section (including ``K``) has a connected flag graph."""
    for F, G in _section_pairs(K, 2):
        chains = _chains(K, F, G)
        if _flag_components(chains, len(chains[0]) - 2) > 1:
            return CheckReport("strongly-flag-connected", False, witness=(F, G))
    return CheckReport("strongly-flag-connected", True)


def check_strongly_connected(K):
    """Proper faces of every section of rank >= 2 form a connected incidence graph."""
    for F, G in _section_pairs(K, 2):
        inside = K._above[F] & K._below[G] & ~(1 << F) & ~(1 << G)
        faces = _bits(inside)
        start = faces[0]
        seen = 1 << start
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in K.up[x] + K.down[x]:
                if inside >> y & 1 and not seen >> y & 1:
                    seen |= 1 << y
                    queue.append(y)
        if seen != inside:
            return CheckReport("strongly-connected", False, witness=(F, G))
    return CheckReport("strongly-connected", True)


def is_lattice(K):
    """Every pair of faces has a unique supremum and infimum."""
    rank_masks = {r: sum(1 << f for f in fs) for r, fs in K.by_rank.items()}
    ranks = K.ranks

    def extremum(common, cone, step, start):
        r = start
        while -1 <= r <= K.n:
            level = common & rank_masks[r]
            if level:
                return any(cone[c] == common for c in _bits(level))
            r += step
        return False

    for a in range(len(K)):
        for b in range(a + 1, len(K)):
            up = K._above[a] & K._above[b]
            if not extremum(up, K._above, 1, max(ranks[a], ranks[b])):
                return CheckReport("lattice", False, witness=(a, b), detail="no unique supremum")
            low = K._below[a] & K._below[b]
            if not extremum(low, K._below, -1, min(ranks[a], ranks[b])):
                return CheckReport("lattice", False, witness=(a, b), detail="no unique infimum")
    return CheckReport("lattice", True)


def axiom_report(K):
    return {
        "I1": check_I1(K),
        "I2": check_I2(K),
        "I3": check_strongly_connected(K),
        "I3'": check_strongly_flag_connected(K),
        "I4": check_I4(K),
        "diamond": check_diamond(K),
        "flag_connected": check_flag_connected(K),
        "lattice": is_lattice(K),
    }


# -- sections and isomorphism ----------------------------------------------------

def section(K, F, G):
    """The sub-poset ``G/F`` re-ranked so that ``F`` has rank -1."""
    if not K.leq(F, G):
        raise InvalidSection(f"faces {K.ids[F]!r} and {K.ids[G]!r} are not incident as F <= G")
    keep = _bits(K._above[F] & K._below[G])
    where = {f: k for k, f in enumerate(keep)}
    shift = K.ranks[F] + 1
    ranks = [K.ranks[f] - shift for f in keep]
    covers = [(where[a], where[b]) for a in keep for b in K.up[a] if b in where]
    return IncidenceComplex(K.ranks[G] - shift, ranks, covers,
                            ids=[K.ids[f] for f in keep],
                            labels=[K.labels[f] for f in keep])


def f_vector(K):
    return [len(K.by_rank[r]) for r in range(K.n)]


def _signature(K, f):
    return K.ranks[f], len(K.up[f]), len(K.down[f])


def are_isomorphic(K, L):
    """A rank- and order-preserving bijection ``K -> L`` as a list, or ``None``.

    Backtracking over faces in breadth-first order of the Hasse diagram;
    candidates must match the (rank, up-degree, down-degree) signature and
    agree with every already-placed neighbour. Deterministic: the first
    bijection found in index order is returned.
    """
    if K.n != L.n or len(K) != len(L) or f_vector(K) != f_vector(L):
        return None
    if len(K) > _config.max_faces():
        raise ResourceLimit(f"{len(K)} faces exceed cap {_config.max_faces()}")
    sig_k = [_signature(K, f) for f in range(len(K))]
    sig_l = [_signature(L, f) for f in range(len(L))]
    if sorted(sig_k) != sorted(sig_l):
        return None
    by_sig = defaultdict(list)
    for g, s in enumerate(sig_l):
        by_sig[s].append(g)

    order = [K.bottom]
    seen = {K.bottom}
    queue = deque(order)
    while queue:
        x = queue.popleft()
        for y in K.up[x] + K.down[x]:
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)

    fwd = [-1] * len(K)
    back = [-1] * len(L)

    def candidates(f):
        for a in K.down[f]:
            if fwd[a] >= 0:
                return [g for g in L.up[fwd[a]] if back[g] < 0 and sig_l[g] == sig_k[f]]
        for a in K.up[f]:
            if fwd[a] >= 0:
                return [g for g in L.down[fwd[a]] if back[g] < 0 and sig_l[g] == sig_k[f]]
        return [g for g in by_sig[sig_k[f]] if back[g] < 0]

    def consistent(f, g):
        for nbrs_k, nbrs_l in ((K.down[f], L.down[g]), (K.up[f], L.up[g])):
            placed = {fwd[a] for a in nbrs_k if fwd[a] >= 0}
            images = {b for b in nbrs_l if back[b] >= 0}
            if placed != images:
                return False
        return True

    budget = _config.iso_nodes()
    stack = [iter(candidates(order[0]))]
    depth = 0
    while stack:
        budget -= 1
        if budget < 0:
            raise ResourceLimit("isomorphism search exceeded its node budget")
        f = order[depth]
        if fwd[f] >= 0:
            back[fwd[f]] = -1
            fwd[f] = -1
        for g in stack[-1]:
            if consistent(f, g):
                fwd[f] = g
                back[g] = f
                break
        else:
            stack.pop()
            depth -= 1
            continue
        if depth + 1 == len(order):
            return list(fwd)
        depth += 1
        stack.append(iter(candidates(order[depth])))
    return None


def is_isomorphism(K, L, mapping):
    """Check that ``mapping`` (list, K-index -> L-index) is an isomorphism."""
    if len(mapping) != len(K) or len(K) != len(L) or sorted(mapping) != list(range(len(L))):
        return False
    if any(K.ranks[f] != L.ranks[mapping[f]] for f in range(len(K))):
        return False
    mapped = {(mapping[a], mapping[b]) for a, b in K.covers()}
    return mapped == set(L.covers())


# -- group actions ------------------------------------------------------------------

@dataclass(frozen=True)
class ActionReport:
    is_automorphism_set: bool
    flag_transitive: bool
    simply_flag_transitive: bool
    group_order: int | None = None
    stabilizer_order: int | None = None
    orbit_size: int | None = None
    witness: object = None

    def __bool__(self):
        return self.is_automorphism_set and self.flag_transitive

    def to_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def _as_face_perm(K, g):
    if isinstance(g, Permutation):
        if g.degree != len(K):
            raise InvalidAction(f"map has degree {g.degree}, complex has {len(K)} faces")
        return g
    try:
        return Permutation(g)
    except Exception as exc:
        raise InvalidAction(f"face map is not a bijection: {exc}") from None


def verify_group_action(K, gens):
    """Whether ``gens`` are automorphisms and generate a flag-transitive group."""
    perms = [_as_face_perm(K, g) for g in gens]
    for p in perms:
        if len(p.images) != len(K):
            raise InvalidAction("face map does not cover every face")
    covers = set(K.covers())
    for p in perms:
        img = p.images
        if any(K.ranks[img[f]] != K.ranks[f] for f in range(len(K))):
            return ActionReport(False, False, False, witness=str(p))
        if {(img[a], img[b]) for a, b in covers} != covers:
            return ActionReport(False, False, False, witness=str(p))
    fl = flags(K)
    start = fl[0]
    orbit = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for p in perms:
            y = tuple(p.images[f] for f in x)
            if y not in orbit:
                orbit.add(y)
                queue.append(y)
    group = PermGroup(len(K), perms)
    transitive = len(orbit) == len(fl)
    return ActionReport(True, transitive, transitive and group.order == len(fl),
                        group_order=group.order,
                        stabilizer_order=group.order // len(orbit),
                        orbit_size=len(orbit))


# -- exports ------------------------------------------------------------------------

def _face_name(K, f):
    lab = K.labels[f]
    return f"{K.ranks[f]}:{lab}" if lab else f"{K.ranks[f]}:{K.ids[f]}"


def hasse_dot(K, name="hasse"):
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for r in range(-1, K.n + 1):
        members = " ".join(f"f{f};" for f in K.by_rank[r])
        lines.append(f"  {{ rank=same; {members} }}")
    for f in range(len(K)):
        lines.append(f'  f{f} [label="{_face_name(K, f)}"];')
    for a, b in K.covers():
        lines.append(f"  f{a} -> f{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def flag_graph_dot(K, name="flags"):
    """Flag-adjacency graph; each edge is labelled by its adjacency rank."""
    fl = flags(K)
    index = {f: k for k, f in enumerate(fl)}
    lines = [f"graph {name} {{"]
    for k, f in enumerate(fl):
        lines.append(f'  F{k} [label="{",".join(str(x) for x in f[1:-1])}"];')
    for k, f in enumerate(fl):
        for i in range(K.n):
            for g in adjacent_flags(K, f, i):
                m = index[g]
                if k < m:
                    lines.append(f'  F{k} -- F{m} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def flag_graph_edges(K):
    """``(k, m, i)`` for each pair of i-adjacent flags with ``k < m``."""
    fl = flags(K)
    index = {f: k for k, f in enumerate(fl)}
    out = []
    for k, f in enumerate(fl):
        for i in range(K.n):
            for g in adjacent_flags(K, f, i):
                if k < index[g]:
                    out.append((k, index[g], i))
    return out


def as_arrays(K):
    """Ranks and cover pairs as numpy arrays (for bulk consumers)."""
    cov = np.asarray(K.covers(), dtype=np.int64).reshape(-1, 2)
    return np.asarray(K.ranks, dtype=np.int64), cov
