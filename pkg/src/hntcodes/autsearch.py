"""Automorphism groups and equivalences of codes by backtracking.

The search walks a fixed base of cells ``(i, a)`` (entry i in a static
order, symbols 0..q-2) and chooses an image cell per level, so each leaf is
an element of Aut(Gamma).  A branch survives only while the multiset of
projections of the source code onto the entries mapped so far, relabelled by
the partial map, equals the multiset of projections of the target code onto
the image entries.  That test is exact at full depth and never rejects a
true isomorphism.  Codeword labels from their distance profiles and entry
labels from symbol frequencies are mixed in as extra (equally safe) filters.

For automorphism groups the found elements are kept in a stabiliser chain
on the same base; along the identity path an image cell already in the
known orbit of the base point is skipped, which makes the group order the
product of the final orbit lengths.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial

import numpy as np

from .codes import Code
from .groups import AutElement, AutGroup, vertex_images
from .hamming import HammingScheme, SchemeMismatch
from .perm import StabChain, orbit_transversal


@dataclass
class SearchConfig:
    max_m: int = 12
    max_q: int = 4
    invariant_depth: int = 2  # 0: projections only, 1: + entry labels, 2: + codeword labels
    budget_ms: int | None = None

    def __post_init__(self):
        if self.max_m <= 0 or self.max_q <= 0:
            raise ValueError("search bounds must be positive")
        if self.budget_ms is not None and self.budget_ms <= 0:
            raise ValueError("time budget must be positive")


class SearchExhausted(RuntimeError):
    """The time budget ran out; ``partial`` holds what was found."""

    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class _Search:
    def __init__(self, src: Code, dst: Code, cfg: SearchConfig):
        sch = src.scheme
        if dst.scheme != sch:
            raise SchemeMismatch("codes live in different Hamming graphs")
        if sch.m > cfg.max_m or sch.q > cfg.max_q:
            raise ValueError(f"H({sch.m},{sch.q}) is beyond the search bounds m<={cfg.max_m}, q<={cfg.max_q}")
        self.sch, self.cfg = sch, cfg
        self.m, self.q = sch.m, sch.q
        self.src = [w.symbols for w in src.words]
        self.dst = [w.symbols for w in dst.words]
        self.dst_set = dst.index_set
        self.nodes = 0
        self.deadline = None if cfg.budget_ms is None else time.monotonic() + cfg.budget_ms / 1000

        m, q = self.m, self.q
        einv_s = [self._entry_label(self.src, i) for i in range(m)]
        einv_d = [self._entry_label(self.dst, i) for i in range(m)]
        if cfg.invariant_depth < 1:
            einv_s = einv_d = [0] * m
        self.allowed = [[j for j in range(m) if einv_d[j] == einv_s[i]] for i in range(m)]
        sizes = Counter(einv_s)
        self.entry_order = sorted(range(m), key=lambda i: (sizes[einv_s[i]], i))
        self.base = [(i, a) for i in self.entry_order for a in range(q - 1)]

        if cfg.invariant_depth >= 2:
            ps, pd = self._profiles(src), self._profiles(dst)
            labels = {p: k for k, p in enumerate(sorted(set(ps) | set(pd)))}
            self.key0_s = [labels[p] for p in ps]
            self.key0_d = [labels[p] for p in pd]
        else:
            self.key0_s = [0] * len(self.src)
            self.key0_d = [0] * len(self.dst)
        self.feasible = sorted(self.key0_s) == sorted(self.key0_d) and all(self.allowed[i] for i in range(m))
        if Counter(map(tuple, (sorted(Counter(w[i] for w in self.src).values()) for i in range(m)))) != Counter(
            map(tuple, (sorted(Counter(w[i] for w in self.dst).values()) for i in range(m)))
        ):
            self.feasible = False

    @staticmethod
    def _entry_label(words, i):
        return tuple(sorted(Counter(w[i] for w in words).values()))

    @staticmethod
    def _profiles(code: Code):
        from .hamming import distance_matrix

        dm = distance_matrix(code.scheme, code.indices, code.indices)
        return [tuple(np.bincount(row, minlength=code.scheme.m + 1)) for row in dm]

    def _tick(self):
        self.nodes += 1
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SearchExhausted("search time budget exhausted")

    # state: (emap, used, h, ks, kd); emap[i] = target entry or -1, h[i] = partial symbol map

    def initial(self):
        m = self.m
        return ([-1] * m, frozenset(), [None] * m, tuple(self.key0_s), tuple(self.key0_d))

    def candidates(self, level, state):
        emap, used, h, _, _ = state
        i, a = self.base[level]
        q = self.q
        if a == 0:
            return [(j, s) for j in self.allowed[i] if j not in used for s in range(q)]
        j = emap[i]
        taken = set(h[i][:a])
        return [(j, s) for s in range(q) if s not in taken]

    def extend(self, level, state, image):
        """New state with base[level] -> image, or None when pruned."""
        emap, used, h, ks, kd = state
        i, a = self.base[level]
        j, s = image
        q = self.q
        if a == 0:
            emap = emap.copy()
            emap[i] = j
            used = used | {j}
            h = h.copy()
            h[i] = (s,)
        else:
            h = h.copy()
            h[i] = h[i] + (s,)
        if a < q - 2:
            return emap, used, h, ks, kd
        if q > 1 and len(h[i]) == q - 1:
            h[i] = h[i] + (next(x for x in range(q) if x not in h[i]),)
        hi = h[i]
        src, dst = self.src, self.dst
        ks = tuple(k * q + hi[w[i]] for k, w in zip(ks, src))
        kd = tuple(k * q + w[j] for k, w in zip(kd, dst))
        if sorted(ks) != sorted(kd):
            return None
        return emap, used, h, ks, kd

    def element(self, state) -> AutElement:
        emap, _, h, _, _ = state
        return AutElement(tuple(h), tuple(emap))

    def dfs(self, level, state):
        """First complete extension of state, depth first."""
        self._tick()
        if level == len(self.base):
            x = self.element(state)
            if self._maps_onto(x):
                return x
            return None
        for img in self.candidates(level, state):
            nxt = self.extend(level, state, img)
            if nxt is not None:
                x = self.dfs(level + 1, nxt)
                if x is not None:
                    return x
        return None

    def _maps_onto(self, x: AutElement) -> bool:
        idx = vertex_images(x.cells, [self.sch.index_of(w) for w in self.src], self.sch)
        return set(int(v) for v in idx) == self.dst_set


def _cell(sch: HammingScheme, c):
    return c[0] * sch.q + c[1]


def automorphism_group(code: Code, cfg: SearchConfig | None = None) -> AutGroup:
    """Aut(C), the setwise stabiliser of C in Aut(Gamma).

    The returned group carries ``exhaustive = True`` and search statistics;
    a budget overrun raises SearchExhausted with the partial group attached.
    """
    cfg = cfg or SearchConfig()
    t0 = time.monotonic()
    srch = _Search(code, code, cfg)
    sch = srch.sch
    base_cells = [_cell(sch, c) for c in srch.base]
    chain = StabChain(sch.m * sch.q, base=base_cells)

    def partial():
        return AutGroup(sch, chain.generators, chain=chain)

    # identity path states, one per level
    path = [srch.initial()]
    for lv, c in enumerate(srch.base):
        path.append(srch.extend(lv, path[-1], c))
    if path[-1] is None:
        raise AssertionError("identity failed the projection test")

    try:
        for lv in range(len(srch.base) - 1, -1, -1):
            state = path[lv]
            failed: set[int] = set()
            for img in srch.candidates(lv, state):
                cimg = _cell(sch, img)
                if cimg in chain.trans[lv] or cimg in failed:
                    continue
                nxt = srch.extend(lv, state, img)
                x = None if nxt is None else srch.dfs(lv + 1, nxt)
                if x is not None:
                    chain.add(x.cells)
                else:
                    gens = [g for _, g in chain._gens_at(lv)]
                    orb, _ = orbit_transversal(gens, cimg, lambda g, p: g[p], chain.degree)
                    failed.update(orb)
    except SearchExhausted as e:
        e.partial = partial()
        raise
    grp = partial()
    grp.exhaustive = True
    grp.search_stats = {"nodes": srch.nodes, "elapsed_ms": int((time.monotonic() - t0) * 1000)}
    return grp


def find_equivalence(a: Code, b: Code, cfg: SearchConfig | None = None) -> AutElement | None:
    """Some x in Aut(Gamma) with a^x = b, or None when no such x exists."""
    cfg = cfg or SearchConfig()
    if a.scheme != b.scheme:
        raise SchemeMismatch("codes live in different Hamming graphs")
    if len(a) != len(b) or a.distance_distribution != b.distance_distribution:
        return None
    srch = _Search(a, b, cfg)
    if not srch.feasible:
        return None
    return srch.dfs(0, srch.initial())


def brute_force_aut(code: Code, limit: int = 10**8) -> AutGroup:
    """Aut(C) by enumerating every element of Aut(Gamma) (test oracle)."""
    sch = code.scheme
    m, q = sch.m, sch.q
    total = factorial(q) ** m * factorial(m)
    if total > limit:
        raise ValueError(f"|Aut(H({m},{q}))| = {total} exceeds the brute-force limit {limit}")
    sym_q = list(permutations(range(q)))
    pv = np.array(sch.place_values, dtype=np.int64)
    words = code.array
    target = np.sort(code.indices)
    perms_arr = np.array(sym_q, dtype=np.int64)  # (q!, q)
    # rows of all base parts: choice index per entry
    choices = np.array(list(product(range(len(sym_q)), repeat=m)), dtype=np.int64).reshape(-1, m)
    chain = StabChain(m * q)
    found = 0
    for sigma in permutations(range(m)):
        img = np.zeros((len(choices), len(words)), dtype=np.int64)
        for i in range(m):
            contrib = perms_arr[:, words[:, i]] * pv[sigma[i]]  # (q!, |C|)
            img += contrib[choices[:, i]]
        ok = np.nonzero((np.sort(img, axis=1) == target[None, :]).all(axis=1))[0]
        for r in ok:
            found += 1
            h = tuple(sym_q[k] for k in choices[r])
            chain.add(AutElement(h, tuple(sigma)).cells)
    grp = AutGroup(sch, chain.generators, chain=chain)
    if grp.order != found:
        raise AssertionError(f"enumerated {found} automorphisms but the chain has order {grp.order}")
    grp.exhaustive = True
    return grp
