"""Permutation groups on {0, ..., n-1}.

Permutations are tuples acting on the right: ``p[i]`` is the image of i and
``mul(a, b)`` applies a first.  Stabiliser chains are built with a
deterministic Schreier-Sims: base points are taken in increasing order as
they are needed and every Schreier generator is sifted, so orders and
strong generators are reproducible.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations, permutations
from typing import Callable, Hashable, Iterable, Iterator, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(a: Perm, b: Perm) -> Perm:
    return tuple([b[x] for x in a])


def inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def is_identity(a: Perm) -> bool:
    return all(i == x for i, x in enumerate(a))


def check_perm(p: Sequence[int], n: int | None = None) -> Perm:
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(len(p))) or (n is not None and len(p) != n):
        raise ValueError(f"not a permutation of {n if n is not None else len(p)} points: {p}")
    return p


def perm_order(p: Perm) -> int:
    from math import lcm

    seen, out = set(), 1
    for i in range(len(p)):
        if i in seen:
            continue
        j, ln = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            ln += 1
        out = lcm(out, ln)
    return out


def power(p: Perm, k: int) -> Perm:
    out = identity(len(p))
    for _ in range(k):
        out = mul(out, p)
    return out


class StabChain:
    """Base, strong generators and explicit transversals of a group."""

    def __init__(self, degree: int, gens: Iterable[Perm] = (), base: Sequence[int] = ()):
        self.degree = degree
        self.base: list[int] = []
        self.trans: list[dict[int, tuple[Perm, Perm]]] = []
        self._tested: list[set] = []
        self.strong: list[tuple[Perm, int]] = []  # (generator, first base level it may move)
        for b in base:
            self._new_level(b)
        for g in gens:
            self.add(g)

    def _new_level(self, b: int):
        e = identity(self.degree)
        self.base.append(b)
        self.trans.append({b: (e, e)})
        self._tested.append(set())

    def _gens_at(self, level: int):
        return [(k, g) for k, (g, lv) in enumerate(self.strong) if lv >= level]

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        for lv in range(start, len(self.base)):
            t = self.trans[lv].get(g[self.base[lv]])
            if t is None:
                return g, lv
            g = mul(g, t[1])
        return g, len(self.base)

    def __contains__(self, g: Perm) -> bool:
        r, _ = self.sift(tuple(g))
        return is_identity(r)

    def add(self, g: Perm) -> bool:
        """Add g to the group; returns False when g was already a member."""
        r, lv = self.sift(tuple(g))
        if is_identity(r):
            return False
        self._insert(r, lv, stop=-1)
        return True

    def _insert(self, r: Perm, lv: int, stop: int):
        # r fixes base[:lv]; it joins every level <= lv
        if lv == len(self.base):
            b = next(i for i, x in enumerate(r) if i != x and i not in self.base)
            self._new_level(b)
        self.strong.append((r, lv))
        for t in range(lv, stop, -1):
            self._close(t)

    def _close(self, level: int):
        trans, tested = self.trans[level], self._tested[level]
        while True:
            gens = self._gens_at(level)
            frontier = list(trans)
            while frontier:
                nxt = []
                for p in frontier:
                    u = trans[p][0]
                    for _, g in gens:
                        q = g[p]
                        if q not in trans:
                            w = mul(u, g)
                            trans[q] = (w, inv(w))
                            nxt.append(q)
                frontier = nxt
            grew = False
            for p in list(trans):
                u = trans[p][0]
                for k, g in gens:
                    if (p, k) in tested:
                        continue
                    tested.add((p, k))
                    s = mul(mul(u, g), trans[g[p]][1])
                    if is_identity(s):
                        continue
                    r, lv = self.sift(s, level + 1)
                    if not is_identity(r):
                        self._insert(r, lv, stop=level)
                        grew = True
                        break
                if grew:
                    break
            if not grew:
                return

    @property
    def order(self) -> int:
        out = 1
        for t in self.trans:
            out *= len(t)
        return out

    @property
    def orbit_lengths(self) -> list[int]:
        return [len(t) for t in self.trans]

    @property
    def generators(self) -> list[Perm]:
        return [g for g, _ in self.strong]

    def elements(self) -> Iterator[Perm]:
        """Every group element once (products of transversal elements)."""
        levels = [[u for u, _ in t.values()] for t in self.trans]

        def rec(lv, acc):
            if lv < 0:
                yield acc
                return
            for u in levels[lv]:
                yield from rec(lv - 1, mul(u, acc))

        yield from rec(len(levels) - 1, identity(self.degree))


def orbit_transversal(gens: Sequence[Perm], point: Hashable, act: Callable, degree: int):
    """Orbit of point under act with a transversal element for each image."""
    e = identity(degree)
    trans = {point: e}
    order = [point]
    for p in order:
        u = trans[p]
        for g in gens:
            q = act(g, p)
            if q not in trans:
                trans[q] = mul(u, g)
                order.append(q)
    return order, trans


def stabilizer_chain(gens: Sequence[Perm], group_order: int, point: Hashable, act: Callable, degree: int) -> tuple[StabChain, list]:
    """Chain of the stabiliser of point, built from Schreier generators.

    Stops once the chain reaches |G| / |orbit|, which is exact by the
    orbit-stabiliser theorem.
    """
    orbit, trans = orbit_transversal(gens, point, act, degree)
    if group_order % len(orbit):
        raise ArithmeticError("orbit length does not divide the group order")
    target = group_order // len(orbit)
    chain = StabChain(degree)
    if target == 1:
        return chain, orbit
    for p in orbit:
        u = trans[p]
        for g in gens:
            q = act(g, p)
            s = mul(mul(u, g), inv(trans[q]))
            chain.add(s)
            if chain.order == target:
                return chain, orbit
    raise AssertionError("Schreier generators did not reach the stabiliser order")


class NotInvariant(ValueError):
    """A point set is not closed under the group; carries a violating pair."""

    def __init__(self, msg, generator_index=None, point=None):
        super().__init__(msg)
        self.generator_index = generator_index
        self.point = point


class PermGroup:
    """A permutation group given by generators, with a lazily built chain."""

    def __init__(self, degree: int, gens: Iterable[Sequence[int]] = (), chain: StabChain | None = None):
        self.degree = degree
        seen, out = set(), []
        for g in gens:
            g = check_perm(g, degree)
            if not is_identity(g) and g not in seen:
                seen.add(g)
                out.append(g)
        self.gens: tuple[Perm, ...] = tuple(out)
        if chain is not None:
            self.__dict__["chain"] = chain

    @cached_property
    def chain(self) -> StabChain:
        return StabChain(self.degree, self.gens)

    @property
    def order(self) -> int:
        return self.chain.order

    def __contains__(self, g) -> bool:
        return tuple(g) in self.chain

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"

    def elements(self) -> Iterator[Perm]:
        return self.chain.elements()

    def orbit(self, point: int) -> list[int]:
        return orbit_transversal(self.gens, point, lambda g, p: g[p], self.degree)[0]

    def orbits(self) -> list[list[int]]:
        seen, out = set(), []
        for p in range(self.degree):
            if p not in seen:
                orb = sorted(self.orbit(p))
                seen.update(orb)
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree if self.degree else True

    def stabilizer(self, point, act: Callable | None = None) -> "PermGroup":
        act = act or (lambda g, p: g[p])
        chain, _ = stabilizer_chain(self.gens, self.order, point, act, self.degree)
        return PermGroup(self.degree, chain.generators, chain=chain)

    def pointwise_stabilizer(self, points: Iterable[int]) -> "PermGroup":
        g = self
        for p in points:
            g = g.stabilizer(p)
        return g

    def setwise_stabilizer(self, points: Iterable[int]) -> "PermGroup":
        return self.stabilizer(frozenset(points), lambda g, s: frozenset(g[p] for p in s))


def induced(gens: Sequence[Perm], points: Sequence[Hashable], act: Callable) -> PermGroup:
    """The group induced on an invariant point list (indexed by position)."""
    pos = {p: k for k, p in enumerate(points)}
    out = []
    for gi, g in enumerate(gens):
        img = []
        for p in points:
            q = act(g, p)
            k = pos.get(q)
            if k is None:
                raise NotInvariant(f"generator {gi} maps {p!r} outside the set", gi, p)
            img.append(k)
        out.append(tuple(img))
    return PermGroup(len(points), out)


# ---------------------------------------------------------------------------
# actions on tuples, subsets and block systems


def _union_find_orbits(gens: Sequence[Perm], items: list, act: Callable) -> int:
    index = {it: k for k, it in enumerate(items)}
    parent = list(range(len(items)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = len(items)
    for g in gens:
        for k, it in enumerate(items):
            a, b = find(k), find(index[act(g, it)])
            if a != b:
                parent[a] = b
                count -= 1
    return count


def transitivity_profile(group: PermGroup, k: int, budget: int = 10**6) -> tuple[int, int]:
    """Orbit counts on ordered k-tuples of distinct points and on k-subsets."""
    n = group.degree
    if not 0 < k <= n:
        raise ValueError(f"k={k} outside 1..{n}")
    from math import perm

    if perm(n, k) > budget:
        from .hamming import BudgetExceeded

        raise BudgetExceeded(f"{perm(n, k)} ordered {k}-tuples exceed budget {budget}")
    tuples = list(permutations(range(n), k))
    subsets = [frozenset(c) for c in combinations(range(n), k)]
    t = _union_find_orbits(group.gens, tuples, lambda g, tp: tuple(g[x] for x in tp))
    s = _union_find_orbits(group.gens, subsets, lambda g, st: frozenset(g[x] for x in st))
    return t, s


def is_k_transitive(group: PermGroup, k: int) -> bool:
    return transitivity_profile(group, k)[0] == 1


def minimal_block(group: PermGroup, a: int, b: int) -> list[int]:
    """Smallest block of imprimitivity containing a and b."""
    if not group.is_transitive():
        raise ValueError("minimal block needs a transitive group")
    parent = list(range(group.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = []

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
            queue.append((x, y))

    union(a, b)
    while queue:
        x, y = queue.pop()
        for g in group.gens:
            union(g[x], g[y])
    root = find(a)
    return [p for p in range(group.degree) if find(p) == root]


def normal_closure(group: PermGroup, elems: Sequence[Perm]) -> PermGroup:
    chain = StabChain(group.degree)
    todo = [tuple(e) for e in elems]
    for e in todo:
        chain.add(e)
    gens = list(chain.generators)
    frontier = list(gens)
    while frontier:
        nxt = []
        for h in frontier:
            for g in group.gens:
                c = mul(mul(inv(g), h), g)
                if chain.add(c):
                    nxt.append(c)
        frontier = nxt
    return PermGroup(group.degree, chain.generators, chain=chain)


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup(n)
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return PermGroup(n, gens)


def cyclic_group(n: int) -> PermGroup:
    return PermGroup(n, [tuple(list(range(1, n)) + [0])] if n > 1 else [])
