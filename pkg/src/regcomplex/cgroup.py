"""Groups with distinguished generating subgroups ``R_-1, R_0, ..., R_n``.

Index sets are subsets of ``N = {-1, 0, ..., n}``. ``Gamma_I`` is the
subgroup generated by ``R_i`` for ``i in I`` and ``Gamma_{}`` is ``R_-1``.
Element-level identities are evaluated on row indices into the element
table of ``gamma``, so every set comparison is exact.
"""
from __future__ import annotations

import itertools
import random
import threading

import numpy as np

from . import _config
from .errors import InvalidSystem, ResourceLimit
from .permgroup import PermGroup, product_sets_equal
from .report import CheckReport

__all__ = [
    "SubgroupSystem", "new_system", "distinguished_subgroup",
    "check_structure", "check_intersection_property", "check_string_condition",
    "is_generalized_string_cgroup", "cgroup_report", "is_string_cgroup",
    "compute_k", "k_vector", "lattice_necessary_condition",
    "flag_stabilizer_prime_bound", "check_commutation_identities",
    "check_pairwise_distinct", "check_section_product_identity",
    "distinguished_generators",
]


class SubgroupSystem:
    """``gamma`` with its distinguished generating subgroups.

    ``subgroups`` lists ``R_-1, R_0, ..., R_n`` (length ``n + 2``); use
    ``sys.R(i)`` for index-based access. Construct through ``new_system`` to
    get validation; ``SubgroupSystem(..., validate=False)`` is for candidates
    whose defects are to be reported rather than rejected.
    """

    def __init__(self, gamma, subgroups, *, validate=True, name=None):
        subgroups = tuple(subgroups)
        if len(subgroups) < 3:
            raise InvalidSystem("length", "need R_-1, R_0, ..., R_n with n >= 1")
        self.gamma = gamma
        self.subgroups = subgroups
        self.rank = len(subgroups) - 2
        self.name = name
        self._cache = {}
        self._members = {}
        self._lock = threading.Lock()
        if validate:
            bad = _structural_violation(gamma, subgroups)
            if bad is not None:
                raise InvalidSystem(*bad)

    @property
    def n(self):
        return self.rank

    @property
    def index_set(self):
        return tuple(range(-1, self.rank + 1))

    def R(self, i):
        if not -1 <= i <= self.rank:
            raise IndexError(f"R_{i} outside -1..{self.rank}")
        return self.subgroups[i + 1]

    def __repr__(self):
        orders = ", ".join(str(r.order) for r in self.subgroups)
        label = f"{self.name!r}, " if self.name else ""
        return f"SubgroupSystem({label}rank={self.rank}, |gamma|={self.gamma.order}, |R|=({orders}))"

    # -- distinguished subgroups -------------------------------------------

    def _key(self, index):
        key = frozenset(int(i) for i in index)
        if any(not -1 <= i <= self.rank for i in key):
            raise IndexError(f"index set {sorted(key)} not inside -1..{self.rank}")
        return key

    def sub(self, index):
        """``Gamma_I`` for an iterable of indices ``I``."""
        key = self._key(index)
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        gens = list(self.R(-1).generators)
        for i in sorted(key):
            gens.extend(self.R(i).generators)
        group = PermGroup(self.gamma.degree, gens)
        with self._lock:
            return self._cache.setdefault(key, group)

    def gamma_i(self, i):
        """Stabilizer of the base ``i``-face: ``<R_j | j != i>``."""
        return self.sub(j for j in self.index_set if j != i)

    def gamma_minus(self, i):
        return self.sub(j for j in self.index_set if j <= i)

    def gamma_plus(self, i):
        return self.sub(j for j in self.index_set if j >= i)

    @property
    def table(self):
        return self.gamma.table

    def members(self, group):
        """Sorted row indices of ``group``'s elements inside ``gamma``'s table."""
        key = id(group)
        with self._lock:
            hit = self._members.get(key)
        if hit is not None:
            return hit[1]
        idx = self.table.index_of(group.table.elems)
        if np.any(idx < 0):
            raise InvalidSystem("subgroup-of-gamma", "group is not inside gamma")
        idx = np.sort(idx)
        with self._lock:
            # keep a reference so the id stays unique while cached
            self._members[key] = (group, idx)
        return idx

    def sub_members(self, index):
        return self.members(self.sub(index))

    def product_members(self, a, b):
        """Sorted unique indices of the element-set product ``a * b``."""
        if len(a) * len(b) > _config.max_product():
            raise ResourceLimit(f"product of {len(a)}*{len(b)} elements exceeds cap")
        return np.unique(self.table.mul_outer(a, b))

    def element_product(self, *sets):
        out = sets[0]
        for s in sets[1:]:
            out = self.product_members(out, s)
        return out


def _structural_violation(gamma, subgroups):
    n = len(subgroups) - 2
    for i, r in enumerate(subgroups, start=-1):
        if r.degree != gamma.degree or not r.is_subgroup_of(gamma):
            return "subgroup-of-gamma", f"R_{i} is not a subgroup of gamma"
    bottom, top = subgroups[0], subgroups[-1]
    if bottom != top:
        return "end-equality", f"R_-1 differs from R_{n}"
    for i in range(n):
        r = subgroups[i + 1]
        if not bottom.is_subgroup_of(r) or bottom.order == r.order:
            return "proper-containment", f"R_-1 is not a proper subgroup of R_{i}"
    gens = [g for r in subgroups[1:-1] for g in r.generators]
    if PermGroup(gamma.degree, gens).order != gamma.order:
        return "generation", "R_0, ..., R_n-1 do not generate gamma"
    return None


def new_system(gamma, subgroups, name=None):
    """Validated system; raises ``InvalidSystem`` naming the first violation."""
    return SubgroupSystem(gamma, subgroups, name=name)


def distinguished_subgroup(sys, index):
    return sys.sub(index)


def check_structure(sys):
    bad = _structural_violation(sys.gamma, sys.subgroups)
    if bad is None:
        return CheckReport("structure", True)
    return CheckReport("structure", False, witness=bad[0], detail=bad[1])


def _subsets_large_first(n):
    items = list(range(n))
    out = []
    for size in range(n, -1, -1):
        out.extend(itertools.combinations(items, size))
    return out


def check_intersection_property(sys, *, sample=False, samples=4096, seed=0):
    """``Gamma_I & Gamma_J == Gamma_{I & J}`` for all ``I, J`` inside ``{0..n-1}``.

    Index sets are visited largest first, then lexicographically, and the
    first failing unordered pair is the witness. Above
    ``REGCOMPLEX_MAX_IP_RANK`` the check raises ``ResourceLimit`` unless
    ``sample`` is set, in which case random pairs are drawn and the verdict
    is flagged as sampled.
    """
    n = sys.rank
    subsets = _subsets_large_first(n)
    if n <= _config.max_ip_rank():
        pairs = ((subsets[a], subsets[b]) for a in range(len(subsets))
                 for b in range(a + 1, len(subsets)))
        sampled = False
    elif sample:
        rng = random.Random(seed)
        full = list(range(n))

        def draw():
            return tuple(sorted(rng.sample(full, rng.randint(0, n))))
        pairs = ((draw(), draw()) for _ in range(samples))
        sampled = True
    else:
        raise ResourceLimit(f"rank {n} exceeds exhaustive intersection-property cap "
                            f"{_config.max_ip_rank()}")
    for I, J in pairs:
        meet = tuple(sorted(set(I) & set(J)))
        lhs = np.intersect1d(sys.sub_members(I), sys.sub_members(J), assume_unique=True)
        rhs = sys.sub_members(meet)
        if not np.array_equal(lhs, rhs):
            return CheckReport(
                "intersection-property", False, witness=(set(I), set(J)), sampled=sampled,
                detail=f"|Gamma_I & Gamma_J| = {len(lhs)} but |Gamma_{sorted(meet)}| = {len(rhs)}")
    return CheckReport("intersection-property", True, sampled=sampled)


def check_string_condition(sys):
    """``R_i R_j == R_j R_i`` for ``-1 <= i < j-1 <= n-1``, first failure in lex order."""
    n = sys.rank
    for i in range(-1, n + 1):
        for j in range(i + 2, n + 1):
            if not product_sets_equal(sys.R(i), sys.R(j)):
                return CheckReport("string-condition", False, witness=(i, j))
    return CheckReport("string-condition", True)


def cgroup_report(sys):
    return {
        "structure": check_structure(sys),
        "intersection_property": check_intersection_property(sys),
        "string_condition": check_string_condition(sys),
    }


def is_generalized_string_cgroup(sys):
    return all(cgroup_report(sys).values())


def distinguished_generators(sys):
    """``rho_0 .. rho_{n-1}`` when every ``R_i`` has order 2, else ``None``."""
    rhos = []
    for i in range(sys.rank):
        gens = [g for g in sys.R(i).generators if not g.is_identity()]
        if sys.R(i).order != 2 or not gens:
            return None
        rhos.append(gens[0])
    return rhos


def is_string_cgroup(sys):
    """Involutory generators, trivial ``R_-1``, string relations, intersection property."""
    if not (sys.R(-1).is_trivial() and sys.R(sys.rank).is_trivial()):
        return False
    rhos = distinguished_generators(sys)
    if rhos is None:
        return False
    for i, j in itertools.combinations(range(sys.rank), 2):
        if j > i + 1 and not ((rhos[i] * rhos[j]) ** 2).is_identity():
            return False
    return bool(check_intersection_property(sys))


def compute_k(sys, i):
    """``|R_i : R_-1|``, the number of i-faces in a rank-2 section."""
    if not 0 <= i <= sys.rank - 1:
        raise IndexError(f"k_{i} is defined for 0 <= i <= {sys.rank - 1}")
    return sys.R(i).order // sys.R(-1).order


def k_vector(sys):
    return [compute_k(sys, i) for i in range(sys.rank)]


def lattice_necessary_condition(sys):
    """``R_i R_{i+1} & R_{i+1} R_i == R_i | R_{i+1}`` for ``i = 0..n-2``.

    Necessary for the complex to be a lattice; a pass proves nothing.
    """
    for i in range(sys.rank - 1):
        a = sys.members(sys.R(i))
        b = sys.members(sys.R(i + 1))
        both = np.intersect1d(sys.product_members(a, b), sys.product_members(b, a))
        if not np.array_equal(both, np.union1d(a, b)):
            return CheckReport("lattice-group-condition", False, witness=i,
                               detail=f"|intersection| = {len(both)}, "
                                      f"|union| = {len(np.union1d(a, b))}")
    return CheckReport("lattice-group-condition", True)


def _prime_factors(m):
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def flag_stabilizer_prime_bound(sys):
    """Every prime dividing ``|R_-1|`` is at most ``max(k_i - 1)``."""
    bound = max(k - 1 for k in k_vector(sys))
    for p in _prime_factors(sys.R(-1).order):
        if p > bound:
            return CheckReport("prime-bound", False, witness=p, data={"bound": bound})
    return CheckReport("prime-bound", True, data={"bound": bound})


# -- consequences of the axioms, exposed as checks -------------------------

def check_commutation_identities(sys):
    """``Gamma_i = Gamma_{i-1}^- Gamma_{i+1}^+ = Gamma_{i+1}^+ Gamma_{i-1}^-`` for
    every ``i``, and ``Gamma_i^- Gamma_j^+ = Gamma_j^+ Gamma_i^-`` for
    ``-1 <= i < j-1 <= n-1``."""
    n = sys.rank
    minus = {i: sys.members(sys.gamma_minus(i)) for i in range(-2, n + 1)}
    plus = {i: sys.members(sys.gamma_plus(i)) for i in range(-1, n + 2)}
    for i in range(-1, n + 1):
        target = sys.members(sys.gamma_i(i))
        lr = sys.product_members(minus[i - 1], plus[i + 1])
        rl = sys.product_members(plus[i + 1], minus[i - 1])
        if not (np.array_equal(lr, target) and np.array_equal(rl, target)):
            return CheckReport("commutation", False, witness=("gamma_i", i))
    for i in range(-1, n + 1):
        for j in range(i + 2, n + 1):
            if not np.array_equal(sys.product_members(minus[i], plus[j]),
                                  sys.product_members(plus[j], minus[i])):
                return CheckReport("commutation", False, witness=("minus-plus", i, j))
    return CheckReport("commutation", True)


def check_pairwise_distinct(sys):
    seen = {}
    for size in range(sys.rank + 1):
        for I in itertools.combinations(range(sys.rank), size):
            key = sys.sub_members(I).tobytes()
            if key in seen:
                return CheckReport("pairwise-distinct", False, witness=(set(seen[key]), set(I)))
            seen[key] = I
    return CheckReport("pairwise-distinct", True)


def _span(lo, hi):
    return tuple(range(lo, hi + 1))


def check_section_product_identity(sys, quads=None):
    """``Gamma_{k+1}^+ Gamma_{l-1}^- & Gamma_{i+1..j-1} = Gamma_{k+1..j-1} Gamma_{i+1..l-1}``
    for ``-1 <= i <= k <= l <= j <= n`` (all quadruples unless ``quads`` given)."""
    n = sys.rank
    if quads is None:
        quads = [(i, k, l, j) for i in range(-1, n + 1) for k in range(i, n + 1)
                 for l in range(k, n + 1) for j in range(l, n + 1)]
    for i, k, l, j in quads:
        lhs = np.intersect1d(
            sys.product_members(sys.members(sys.gamma_plus(k + 1)),
                                sys.members(sys.gamma_minus(l - 1))),
            sys.sub_members(_span(i + 1, j - 1)))
        rhs = sys.product_members(sys.sub_members(_span(k + 1, j - 1)),
                                  sys.sub_members(_span(i + 1, l - 1)))
        if not np.array_equal(lhs, rhs):
            return CheckReport("section-product", False, witness=(i, k, l, j))
    return CheckReport("section-product", True)
