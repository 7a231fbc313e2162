"""Finite groups given by explicit multiplication tables.

Element 0 is always the identity.  Tables are validated on load
(associativity, identity, inverses) and capped at order 128; subgroup
search is exhaustive, which the cap keeps feasible.
"""

from __future__ import annotations

from functools import lru_cache
from math import lcm

import numpy as np

from . import _kernels
from .errors import GroupError

ORDER_CAP = 128


class FiniteGroup:
    """Immutable finite group: full multiplication table, index 0 = identity."""

    def __init__(self, table, labels=None):
        tbl = np.asarray(table, dtype=np.int64)
        n = tbl.shape[0]
        if tbl.shape != (n, n):
            raise GroupError("multiplication table must be square")
        if n == 0 or n > ORDER_CAP:
            raise GroupError(f"group order must be in 1..{ORDER_CAP}, got {n}")
        if tbl.min() < 0 or tbl.max() >= n:
            raise GroupError("table entries out of range")
        if not (np.array_equal(tbl[0], np.arange(n)) and np.array_equal(tbl[:, 0], np.arange(n))):
            raise GroupError("index 0 is not a two-sided identity")
        # inverses: each row must be a permutation containing 0
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.flatnonzero(tbl[a] == 0)
            if len(hits) != 1:
                raise GroupError(f"element {a} has no unique inverse")
            inv[a] = hits[0]
        if not np.array_equal(tbl[inv, np.arange(n)], np.zeros(n, dtype=np.int64)):
            raise GroupError("left and right inverses disagree")
        # associativity, vectorized: (ab)c == a(bc)
        left = tbl[tbl]              # [a,b,c] -> tbl[tbl[a,b], c]
        right = np.take(tbl, tbl, axis=1)  # [a,b,c] -> tbl[a, tbl[b,c]]
        if not np.array_equal(left, right):
            raise GroupError("multiplication table is not associative")
        self.table = tbl
        self.table.setflags(write=False)
        self.inv = inv
        self.inv.setflags(write=False)
        self.order = n
        self.labels = list(labels) if labels else [f"g{i}" for i in range(n)]
        self._subgroups = None

    # -- construction ----------------------------------------------------

    @staticmethod
    def from_permutations(gens: list[list[int]]) -> "FiniteGroup":
        """Build the group generated by permutations (lists of images)."""
        if not gens:
            raise GroupError("need at least one permutation generator")
        deg = len(gens[0])
        for g in gens:
            if sorted(g) != list(range(deg)):
                raise GroupError(f"not a permutation of 0..{deg - 1}: {g}")
        ident = tuple(range(deg))
        elems = [ident]
        index = {ident: 0}
        queue = [ident]
        gens_t = [tuple(g) for g in gens]
        while queue:
            a = queue.pop()
            for g in gens_t:
                p = tuple(a[g[i]] for i in range(deg))
                if p not in index:
                    if len(elems) >= ORDER_CAP + 1:
                        raise GroupError(f"generated group exceeds order cap {ORDER_CAP}")
                    index[p] = len(elems)
                    elems.append(p)
                    queue.append(p)
        n = len(elems)
        tbl = np.zeros((n, n), dtype=np.int64)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                tbl[i, j] = index[tuple(a[b[k]] for k in range(deg))]
        return FiniteGroup(tbl)

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        idx = np.arange(n)
        return FiniteGroup((idx[:, None] + idx[None, :]) % n)

    @staticmethod
    def direct_product(a: "FiniteGroup", b: "FiniteGroup") -> "FiniteGroup":
        """Product group with element (x, y) at index x * |b| + y."""
        na, nb = a.order, b.order
        tbl = np.zeros((na * nb, na * nb), dtype=np.int64)
        for x1 in range(na):
            for y1 in range(nb):
                i = x1 * nb + y1
                tbl[i] = (a.table[x1][:, None] * nb + b.table[y1][None, :]).reshape(-1)
        return FiniteGroup(tbl)

    # -- basic operations -------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def exponent(self) -> int:
        return lcm(*(self.element_order(a) for a in range(self.order)))

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        """Classes in canonical order (sorted by minimal element, identity first)."""
        ids = _kernels.conjugacy_class_ids(self.table, self.inv)
        classes: list[list[int]] = [[] for _ in range(ids.max() + 1)]
        for g, c in enumerate(ids):
            classes[c].append(g)
        return [tuple(c) for c in classes]

    def class_index(self) -> list[int]:
        return list(_kernels.conjugacy_class_ids(self.table, self.inv))

    def subgroup_closure(self, gens) -> tuple[int, ...]:
        mask = _kernels.closure_mask(self.table, gens)
        return tuple(int(i) for i in np.flatnonzero(mask))

    def is_subgroup(self, elems) -> bool:
        s = set(elems)
        if 0 not in s:
            return False
        return all(self.mul(a, b) in s for a in s for b in s)

    def is_normal(self, elems) -> bool:
        s = set(elems)
        return all(
            self.mul(self.mul(g, h), self.inv[g]) in s for g in range(self.order) for h in s
        )

    def is_abelian_subset(self, elems) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for a in elems for b in elems)

    def is_abelian(self) -> bool:
        return np.array_equal(self.table, self.table.T)

    def center(self) -> tuple[int, ...]:
        return tuple(
            g for g in range(self.order)
            if np.array_equal(self.table[g], self.table[:, g])
        )

    def commutator_subgroup(self, elems=None) -> tuple[int, ...]:
        elems = list(range(self.order)) if elems is None else list(elems)
        comms = {
            self.mul(self.mul(a, b), self.mul(self.inv[a], self.inv[b]))
            for a in elems
            for b in elems
        }
        return self.subgroup_closure(comms)

    def normal_closure(self, elems) -> tuple[int, ...]:
        conj = {
            self.mul(self.mul(g, h), self.inv[g])
            for g in range(self.order)
            for h in elems
        }
        return self.subgroup_closure(conj)

    def all_subgroups(self) -> list[tuple[int, ...]]:
        """Every subgroup, sorted by decreasing order then lexicographically."""
        if self._subgroups is None:
            found = {(0,)}
            frontier = {(0,)}
            cyclic = {self.subgroup_closure([g]) for g in range(self.order)}
            found |= cyclic
            frontier |= cyclic
            while frontier:
                nxt = set()
                for sub in frontier:
                    inside = set(sub)
                    for g in range(1, self.order):
                        if g not in inside:
                            ext = self.subgroup_closure(set(sub) | {g})
                            if ext not in found:
                                found.add(ext)
                                nxt.add(ext)
                frontier = nxt
            self._subgroups = sorted(found, key=lambda s: (-len(s), s))
        return list(self._subgroups)

    # -- quotients and subgroup-as-group -----------------------------------

    def subgroup_as_group(self, elems) -> tuple["FiniteGroup", dict[int, int]]:
        """Standalone group on the subgroup, plus map subgroup-index -> parent element."""
        elems = sorted(set(elems))
        if elems[0] != 0 or not self.is_subgroup(elems):
            raise GroupError(f"{elems} is not a subgroup")
        pos = {g: i for i, g in enumerate(elems)}
        n = len(elems)
        tbl = np.zeros((n, n), dtype=np.int64)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                tbl[i, j] = pos[self.mul(a, b)]
        return FiniteGroup(tbl, labels=[self.labels[g] for g in elems]), dict(enumerate(elems))

    def quotient(self, normal_elems) -> tuple["FiniteGroup", list[int]]:
        """Quotient by a normal subgroup; returns (G/N, projection element -> coset index)."""
        ns = sorted(set(normal_elems))
        if not self.is_subgroup(ns) or not self.is_normal(ns):
            raise GroupError("quotient requires a normal subgroup")
        coset_of = [-1] * self.order
        reps = []
        for g in range(self.order):
            if coset_of[g] == -1:
                idx = len(reps)
                reps.append(g)
                for h in ns:
                    coset_of[self.mul(g, h)] = idx
        n = len(reps)
        tbl = np.zeros((n, n), dtype=np.int64)
        for i, a in enumerate(reps):
            for j, b in enumerate(reps):
                tbl[i, j] = coset_of[self.mul(a, b)]
        return FiniteGroup(tbl), coset_of

    def coset_reps(self, elems) -> list[int]:
        """Left coset representatives of a subgroup, minimal element first."""
        seen = [False] * self.order
        reps = []
        s = sorted(set(elems))
        for g in range(self.order):
            if not seen[g]:
                reps.append(g)
                for h in s:
                    seen[self.mul(g, h)] = True
        return reps

    def double_cosets(self, left_elems, right_elems) -> list[tuple[int, ...]]:
        """Partition of G into (left, right) double cosets, sorted by minimal element."""
        left = sorted(set(left_elems))
        right = sorted(set(right_elems))
        assigned = [-1] * self.order
        out = []
        for g in range(self.order):
            if assigned[g] == -1:
                idx = len(out)
                members = sorted({self.mul(self.mul(a, g), b) for a in left for b in right})
                for m in members:
                    assigned[m] = idx
                out.append(tuple(members))
        return out


def detect_direct_product(group: FiniteGroup):
    """Internal direct-product decomposition G = H x C with C abelian maximal.

    Returns (H_elems, C_elems) maximizing |C|, or None when only C = {1}
    works (callers then use the trivial C).
    """
    subs = group.all_subgroups()
    normal = [s for s in subs if group.is_normal(s)]
    best = None
    for c in normal:
        if not group.is_abelian_subset(c):
            continue
        for h in normal:
            if len(h) * len(c) != group.order:
                continue
            if set(h) & set(c) != {0}:
                continue
            if not all(group.mul(a, b) == group.mul(b, a) for a in h for b in c):
                continue
            cand = (h, c)
            if best is None or (len(c), c, h) > (len(best[1]), best[1], best[0]):
                best = cand
    if best is None or len(best[1]) == 1:
        return None
    return best


def subgroup_h_r(group: FiniteGroup, involutions, r: int) -> tuple[int, ...]:
    """Subgroup cutting out the reduction step at r: pair products for even r,
    the involutions themselves for odd r.  Result must be normal."""
    invs = sorted(set(involutions))
    for j in invs:
        if group.mul(j, j) != 0:
            raise GroupError(f"element {j} is not an involution")
    if r > 0:
        raise GroupError("r must be a non-positive integer")
    if r % 2 == 0:
        gens = {group.mul(a, b) for a in invs for b in invs}
    else:
        gens = set(invs)
    sub = group.subgroup_closure(gens) if gens else (0,)
    if not group.is_normal(sub):
        raise GroupError("generated subgroup is not normal (inconsistent fixture)")
    return sub


@lru_cache(maxsize=None)
def _named_tables():
    tables = {}
    tables["C1"] = FiniteGroup([[0]])
    tables["C2"] = FiniteGroup.cyclic(2)
    tables["C3"] = FiniteGroup.cyclic(3)
    tables["C6"] = FiniteGroup.cyclic(6)
    tables["S3"] = FiniteGroup.from_permutations([[1, 2, 0], [1, 0, 2]])
    tables["D4"] = FiniteGroup.from_permutations([[1, 2, 3, 0], [0, 3, 2, 1]])
    # Q8 on {1,i,j,k,-1,-i,-j,-k} via left regular action of i and j
    i_perm = [1, 4, 7, 2, 5, 0, 3, 6]
    j_perm = [2, 3, 4, 5, 6, 7, 0, 1]
    tables["Q8"] = FiniteGroup.from_permutations([i_perm, j_perm])
    tables["S3xC2"] = FiniteGroup.direct_product(tables["S3"], tables["C2"])
    return tables


def named_group(name: str) -> FiniteGroup:
    """Small standard groups used by tests and benchmarks."""
    tables = _named_tables()
    if name not in tables:
        raise GroupError(f"unknown named group {name!r}")
    return tables[name]
