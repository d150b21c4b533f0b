"""Finite permutation groups.

Points are ``0 .. degree-1``. Permutations act on the right, matching the
coset conventions used throughout the package: ``p * q`` applies ``p`` first
and then ``q``, so ``(p * q)(x) == q(p(x))`` and a right coset ``H * g`` is
``{h * g for h in H}``.

Order and membership come from a deterministic Schreier-Sims stabilizer
chain. When a computation needs every element, the chain is expanded into an
``ElementTable`` (see ``_kernels``) which identifies elements by row index.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import factorial

import numpy as np

from . import _config, _kernels
from .errors import (DegreeMismatch, InvalidDegree, NotSubgroup, ParseError,
                     ResourceLimit)

__all__ = [
    "Permutation", "PermGroup", "CosetDecomposition", "ElementTable",
    "identity", "from_cycles", "compose", "inverse", "group_from_generators",
    "right_cosets", "subgroup_intersection", "product_set",
    "product_sets_equal", "core", "is_normal", "bfs_closure",
]


class Permutation:
    """An immutable permutation of ``range(degree)`` stored as its images."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images):
        img = tuple(int(x) for x in images)
        if not img:
            raise InvalidDegree("a permutation needs degree >= 1")
        if sorted(img) != list(range(len(img))):
            raise ParseError(f"not a bijection on 0..{len(img) - 1}: {img}")
        self._img = img
        self._hash = hash(img)

    @classmethod
    def _trusted(cls, img):
        p = cls.__new__(cls)
        p._img = img
        p._hash = hash(img)
        return p

    @property
    def degree(self):
        return len(self._img)

    @property
    def images(self):
        return self._img

    def __call__(self, point):
        return self._img[point]

    def __mul__(self, other):
        return compose(self, other)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = identity(self.degree)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self):
        return inverse(self)

    def is_identity(self):
        return all(i == x for i, x in enumerate(self._img))

    def order(self):
        k, p = 1, self
        while not p.is_identity():
            p = p * self
            k += 1
        return k

    def support(self):
        return [i for i, x in enumerate(self._img) if i != x]

    def cycles(self):
        seen = set()
        out = []
        for start in range(len(self._img)):
            if start in seen or self._img[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self._img[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self._img[x]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._img == other._img

    def __lt__(self, other):
        return self._img < other._img

    def __hash__(self):
        return self._hash

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({str(self)!r}, degree={self.degree})"


def identity(degree):
    if degree < 1:
        raise InvalidDegree(f"degree must be >= 1, got {degree}")
    return Permutation._trusted(tuple(range(degree)))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def from_cycles(cycles, degree):
    """Parse cycle notation such as ``"(0 1 2)(3 4)"``; fixed points implicit.

    Points may be separated by whitespace or commas. ``"()"`` and ``""``
    denote the identity.
    """
    if degree < 1:
        raise InvalidDegree(f"degree must be >= 1, got {degree}")
    text = cycles.strip()
    if _CYCLE_RE.sub("", text).strip():
        raise ParseError(f"malformed cycle notation: {cycles!r}")
    img = list(range(degree))
    used = set()
    for body in _CYCLE_RE.findall(text):
        tokens = body.replace(",", " ").split()
        try:
            pts = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-integer point in {cycles!r}") from None
        for x in pts:
            if not 0 <= x < degree:
                raise ParseError(f"point {x} out of range for degree {degree}")
            if x in used:
                raise ParseError(f"point {x} repeated in {cycles!r}")
            used.add(x)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return Permutation._trusted(tuple(img))


def compose(p, q):
    """``p`` then ``q``."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    qi = q._img
    return Permutation._trusted(tuple(qi[x] for x in p._img))


def inverse(p):
    out = [0] * p.degree
    for i, x in enumerate(p._img):
        out[x] = i
    return Permutation._trusted(tuple(out))


def conjugate(p, g):
    """``g^-1 * p * g``."""
    return compose(compose(inverse(g), p), g)


# ------------------------------------------------------------ Schreier-Sims

def _tmul(p, q):
    return tuple(q[x] for x in p)


def _tinv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _orbit_transversal(point, gens, ident):
    trans = {point: ident}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        u = trans[x]
        for s in gens:
            y = s[x]
            if y not in trans:
                trans[y] = _tmul(u, s)
                queue.append(y)
    return trans


class _Chain:
    """Base and strong generating set with one transversal per base point."""

    def __init__(self, degree, gens, prefix=()):
        ident = tuple(range(degree))
        self.ident = ident
        strong = []
        for g in gens:
            if g != ident and g not in strong:
                strong.append(g)
        base = []
        for b in prefix:
            if b not in base:
                base.append(b)
        for g in strong:
            if all(g[b] == b for b in base):
                base.append(next(i for i, x in enumerate(g) if i != x))
        self.base = base
        self.strong = strong
        self.trans = [_orbit_transversal(base[i], self._level_gens(i), ident)
                      for i in range(len(base))]
        self._complete()

    def _level_gens(self, i):
        fixed = self.base[:i]
        return [s for s in self.strong if all(s[b] == b for b in fixed)]

    def strip(self, g, start=0):
        for lvl in range(start, len(self.base)):
            beta = g[self.base[lvl]]
            u = self.trans[lvl].get(beta)
            if u is None:
                return g, lvl
            g = _tmul(g, _tinv(u))
        return g, len(self.base)

    def _complete(self):
        i = len(self.base) - 1
        while i >= 0:
            restart = False
            gens_i = self._level_gens(i)
            b = self.base[i]
            for beta, u in list(self.trans[i].items()):
                for s in gens_i:
                    us = _tmul(u, s)
                    g = _tmul(us, _tinv(self.trans[i][us[b]]))
                    h, j = self.strip(g, i + 1)
                    if j < len(self.base) or h != self.ident:
                        if j == len(self.base):
                            self.base.append(next(x for x, y in enumerate(h) if x != y))
                            self.trans.append(None)
                        self.strong.append(h)
                        for lvl in range(i + 1, j + 1):
                            self.trans[lvl] = _orbit_transversal(
                                self.base[lvl], self._level_gens(lvl), self.ident)
                        i = j
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def order(self):
        out = 1
        for t in self.trans:
            out *= len(t)
        return out

    def contains(self, g):
        h, j = self.strip(g)
        return j == len(self.base) and h == self.ident


# ------------------------------------------------------------ element tables

@dataclass(frozen=True, eq=False)
class ElementTable:
    """All elements of a group as lexicographically sorted image rows.

    Row 0 is always the identity. ``base`` are the points whose images key an
    element; ``sorted_keys``/``key_pos`` locate a row from its key.
    """

    elems: np.ndarray
    base: np.ndarray
    pows: np.ndarray
    sorted_keys: np.ndarray
    key_pos: np.ndarray
    _inv: list = field(default_factory=list, repr=False)

    @property
    def order(self):
        return self.elems.shape[0]

    @property
    def degree(self):
        return self.elems.shape[1]

    def index_of(self, items):
        """Row indices for permutations or image rows; ``-1`` for non-members."""
        if isinstance(items, Permutation):
            items = [items]
        rows = [p.images if isinstance(p, Permutation) else p for p in items]
        if not rows:
            return np.empty(0, dtype=np.int64)
        return _kernels.lookup(self, np.asarray(rows))

    def mul(self, a, b):
        return _kernels.mul(self, a, b)

    def mul_outer(self, a, b):
        """Indices of ``{x * y}`` for all x in a, y in b, shape ``(len(a), len(b))``."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        aa = np.repeat(a, len(b))
        bb = np.tile(b, len(a))
        return self.mul(aa, bb).reshape(len(a), len(b))

    @property
    def inverses(self):
        """``inverses[i]`` is the row index of the inverse of element ``i``."""
        if not self._inv:
            # argsort of an image row is the inverse permutation
            self._inv.append(self.index_of(np.argsort(self.elems, axis=1)))
        return self._inv[0]

    def perm(self, i):
        return Permutation._trusted(tuple(int(x) for x in self.elems[i]))

    def coset_labels(self, sub):
        return _kernels.coset_labels(self, sub)


def _row_dtype(degree):
    return np.int16 if degree < 2 ** 15 else np.int32


def _expand(chain, degree):
    dtype = _row_dtype(degree)
    rows = np.arange(degree, dtype=dtype)[None, :]
    for lvl in reversed(range(len(chain.base))):
        u = np.array(list(chain.trans[lvl].values()), dtype=dtype)
        # rows[a] then u[b]:  result[a, b, x] = u[b, rows[a, x]]
        prod = u[np.arange(len(u))[None, :, None], rows[:, None, :]]
        rows = prod.reshape(-1, degree)
    order = np.lexsort(rows.T[::-1])
    return np.ascontiguousarray(rows[order])


def _make_table(rows, base_points):
    degree = rows.shape[1]
    base = np.asarray(base_points, dtype=np.int64)
    if len(base) and degree ** len(base) >= 2 ** 62:
        raise ResourceLimit(f"element keys overflow for degree {degree}, base length {len(base)}")
    pows = np.asarray([degree ** t for t in range(len(base))], dtype=np.int64)
    keys = rows[:, base].astype(np.int64) @ pows if len(base) else np.zeros(len(rows), np.int64)
    key_pos = np.argsort(keys, kind="stable")
    return ElementTable(rows, base, pows, keys[key_pos], key_pos)


# ------------------------------------------------------------ groups

class PermGroup:
    """A permutation group given by generators, with exact order and membership."""

    def __init__(self, degree, generators=(), *, base_prefix=()):
        if degree < 1:
            raise InvalidDegree(f"degree must be >= 1, got {degree}")
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {degree}")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self._degree = degree
        self._gens = tuple(gens)
        self._chain = _Chain(degree, [g.images for g in gens], base_prefix)

    @property
    def degree(self):
        return self._degree

    @property
    def generators(self):
        return self._gens

    @cached_property
    def order(self):
        return self._chain.order()

    @property
    def base(self):
        return tuple(self._chain.base)

    def strong_generators(self):
        return [Permutation._trusted(s) for s in self._chain.strong]

    def __contains__(self, p):
        if p.degree != self._degree:
            return False
        return self._chain.contains(p.images)

    def is_trivial(self):
        return self.order == 1

    def is_subgroup_of(self, other):
        return other.degree == self.degree and all(g in other for g in self._gens)

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self.degree == other.degree and self.order == other.order
                and self.is_subgroup_of(other))

    def __hash__(self):
        return hash((self._degree, self.order))

    def __repr__(self):
        gens = ", ".join(str(g) for g in self._gens) or "()"
        return f"PermGroup(degree={self._degree}, order={self.order}, gens=[{gens}])"

    @cached_property
    def table(self):
        """Every element, enumerated once (bounded by ``REGCOMPLEX_MAX_ELEMENTS``)."""
        if self.order > _config.max_elements():
            raise ResourceLimit(f"group order {self.order} exceeds element cap "
                                f"{_config.max_elements()}")
        rows = _expand(self._chain, self._degree)
        keyed = [b for b, t in zip(self._chain.base, self._chain.trans) if len(t) > 1]
        return _make_table(rows, keyed)

    def elements(self):
        """All elements as ``Permutation`` objects in lexicographic order."""
        t = self.table
        return [t.perm(i) for i in range(t.order)]

    def pointwise_stabilizer(self, points):
        """Subgroup fixing every point in ``points``."""
        pts = list(dict.fromkeys(int(p) for p in points))
        chain = _Chain(self._degree, list(self._chain.strong), pts)
        fixing = [s for s in chain.strong if all(s[b] == b for b in pts)]
        return PermGroup(self._degree, [Permutation._trusted(s) for s in fixing])

    def conjugate(self, g):
        return PermGroup(self._degree, [conjugate(p, g) for p in self._gens])

    def orbit(self, point):
        return sorted(_orbit_transversal(point, [g.images for g in self._gens],
                                         tuple(range(self._degree))))


def group_from_generators(gens, degree=None):
    """``<gens>``; an empty generating set needs an explicit ``degree``."""
    gens = list(gens)
    if degree is None:
        if not gens:
            raise InvalidDegree("degree is required when there are no generators")
        degree = gens[0].degree
    group = PermGroup(degree, gens)
    if group.order > _config.max_elements():
        raise ResourceLimit(f"group order {group.order} exceeds cap {_config.max_elements()}")
    return group


def bfs_closure(gens, degree, limit=None):
    """Every element of ``<gens>`` by breadth-first closure (no stabilizer chain)."""
    limit = _config.max_elements() if limit is None else limit
    ident = tuple(range(degree))
    gens = [g.images if isinstance(g, Permutation) else tuple(g) for g in gens]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = _tmul(x, s)
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    raise ResourceLimit(f"closure exceeded {limit} elements")
                queue.append(y)
    return {Permutation._trusted(p) for p in seen}


def _from_rows(degree, rows):
    """Smallest-effort generating set for a subgroup given as all its rows."""
    rows = np.asarray(rows)
    group = PermGroup(degree)
    if len(rows) <= 1:
        return group
    gens = []
    while group.order < len(rows):
        hit = group.table.index_of(rows)
        missing = int(np.flatnonzero(hit < 0)[0])
        gens.append(Permutation._trusted(tuple(int(x) for x in rows[missing])))
        group = PermGroup(degree, gens)
    return group


@dataclass(frozen=True)
class CosetDecomposition:
    """Right cosets ``H*g`` of ``subgroup`` in ``parent``.

    ``labels[k]`` is the coset of the k-th element of ``parent.table``; the
    representative of each coset is its lexicographically least element.
    """

    parent: PermGroup
    subgroup: PermGroup
    representatives: tuple
    labels: np.ndarray = field(repr=False)

    @property
    def index(self):
        return len(self.representatives)

    def coset_of(self, g):
        i = int(self.parent.table.index_of(g)[0])
        if i < 0:
            raise NotSubgroup(f"{g} is not in the parent group")
        return int(self.labels[i])

    def representative(self, g):
        return self.representatives[self.coset_of(g)]


def right_cosets(G, H):
    if H.degree != G.degree:
        raise DegreeMismatch("groups act on different degrees")
    if not H.is_subgroup_of(G):
        raise NotSubgroup("H is not a subgroup of G")
    table = G.table
    sub = table.index_of(H.table.elems)
    labels, reps = table.coset_labels(sub)
    return CosetDecomposition(G, H, tuple(table.perm(int(r)) for r in reps), labels)


def subgroup_intersection(A, B):
    if A.degree != B.degree:
        raise DegreeMismatch("groups act on different degrees")
    small, large = (A, B) if A.order <= B.order else (B, A)
    if small.order > _config.max_elements():
        raise ResourceLimit(f"intersection search over {small.order} elements exceeds cap")
    rows = small.table.elems
    if large.order <= _config.max_elements():
        keep = large.table.index_of(rows) >= 0
    else:
        keep = np.array([large._chain.contains(tuple(int(x) for x in r)) for r in rows])
    return _from_rows(A.degree, rows[keep])


def _product_rows(A, B):
    if A.order * B.order > _config.max_product():
        raise ResourceLimit(f"product set of {A.order}*{B.order} pairs exceeds cap")
    a = A.table.elems
    b = B.table.elems
    # a[i] then b[j]
    prod = b[np.arange(len(b))[None, :, None], a[:, None, :]].reshape(-1, A.degree)
    return np.unique(prod, axis=0)


def product_set(A, B):
    """``{a*b : a in A, b in B}`` as an explicit set."""
    if A.degree != B.degree:
        raise DegreeMismatch("groups act on different degrees")
    return {Permutation._trusted(tuple(int(x) for x in r)) for r in _product_rows(A, B)}


def product_sets_equal(A, B):
    """Whether ``AB == BA`` as sets of elements."""
    if A.degree != B.degree:
        raise DegreeMismatch("groups act on different degrees")
    ab = _product_rows(A, B)
    ba = _product_rows(B, A)
    return ab.shape == ba.shape and bool(np.array_equal(ab, ba))


def is_normal(G, H):
    return H.is_subgroup_of(G) and all(conjugate(h, g) in H
                                       for g in G.generators for h in H.generators)


def core(G, H):
    """Largest normal subgroup of ``G`` contained in ``H``."""
    cosets = right_cosets(G, H)
    out = H
    for phi in cosets.representatives:
        if out.is_trivial():
            break
        out = subgroup_intersection(out, H.conjugate(phi))
    return out


def order_divides_factorial(group):
    return factorial(group.degree) % group.order == 0
