"""Brute-force reference implementations.

Deliberately naive: groups are Python sets of image tuples built by closure,
cosets are frozensets, posets are explicit relation sets. Nothing here
touches the package's tables or kernels.
"""
import itertools
from collections import deque


def tmul(p, q):
    """Apply ``p`` then ``q``."""
    return tuple(q[x] for x in p)


def tinv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def closure(gens, degree):
    ident = tuple(range(degree))
    gens = [tuple(g.images) if hasattr(g, "images") else tuple(g) for g in gens]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = tmul(x, s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def group_set(group):
    return closure(group.generators, group.degree)


def sub_set(sys, index):
    gens = list(sys.R(-1).generators)
    for i in index:
        gens.extend(sys.R(i).generators)
    return closure(gens, sys.gamma.degree)


def product(A, B):
    return frozenset(tmul(a, b) for a in A for b in B)


def right_coset(H, g):
    return frozenset(tmul(h, g) for h in H)


def intersection_property(sys):
    n = sys.rank
    subsets = [I for r in range(n + 1) for I in itertools.combinations(range(n), r)]
    groups = {I: sub_set(sys, I) for I in subsets}
    for I, J in itertools.combinations(subsets, 2):
        meet = tuple(sorted(set(I) & set(J)))
        if groups[I] & groups[J] != groups[meet]:
            return False
    return True


def string_condition(sys):
    n = sys.rank
    for i in range(-1, n + 1):
        for j in range(i + 2, n + 1):
            A = sub_set(sys, [k for k in range(-1, n + 1) if k <= i])
            B = sub_set(sys, [k for k in range(-1, n + 1) if k >= j])
            if product(A, B) != product(B, A):
                return False
    return True


def coset_poset(sys):
    """Faces ``(rank, frozenset coset)`` and the incidence relation by intersection."""
    n = sys.rank
    gamma = group_set(sys.gamma)
    faces = []
    for i in range(-1, n + 1):
        stab = sub_set(sys, [j for j in range(-1, n + 1) if j != i])
        cosets = {right_coset(stab, g) for g in gamma}
        faces.extend((i, c) for c in sorted(cosets, key=lambda c: min(c)))
    leq = set()
    for a, (ra, ca) in enumerate(faces):
        for b, (rb, cb) in enumerate(faces):
            if ra <= rb and ca & cb:
                leq.add((a, b))
    return faces, leq


def poset_flags(ranks, leq, n):
    by_rank = {r: [f for f, x in enumerate(ranks) if x == r] for r in range(-1, n + 1)}
    out = []
    for chain in itertools.product(*(by_rank[r] for r in range(-1, n + 1))):
        if all((chain[k], chain[k + 1]) in leq for k in range(len(chain) - 1)):
            out.append(chain)
    return out


def complex_relation(K):
    """``leq`` of a package complex recomputed from covers by transitive closure."""
    size = len(K)
    leq = {(f, f) for f in range(size)}
    frontier = set(K.covers())
    leq |= frontier
    changed = True
    while changed:
        changed = False
        for a, b in list(leq):
            for c in K.up[b]:
                if (a, c) not in leq:
                    leq.add((a, c))
                    changed = True
    return leq


def is_lattice(ranks, leq):
    faces = range(len(ranks))
    for a, b in itertools.combinations(faces, 2):
        ups = [c for c in faces if (a, c) in leq and (b, c) in leq]
        joins = [c for c in ups if all((c, d) in leq for d in ups)]
        downs = [c for c in faces if (c, a) in leq and (c, b) in leq]
        meets = [c for c in downs if all((d, c) in leq for d in downs)]
        if len(joins) != 1 or len(meets) != 1:
            return False
    return True


def middle_counts(ranks, leq):
    """Number of faces strictly between each incident pair two ranks apart."""
    out = set()
    for (a, b) in leq:
        if ranks[b] == ranks[a] + 2:
            out.add(sum(1 for c in range(len(ranks))
                        if ranks[c] == ranks[a] + 1 and (a, c) in leq and (c, b) in leq))
    return out
