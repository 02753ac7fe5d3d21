"""Subgroups of Aut(H(m, q)) = B x| L.

An element x = (h, sigma) sends a vertex alpha to the vertex whose entry
sigma(i) is h_i(alpha_i).  Internally every element is also a permutation of
the m*q *cells* (i, a) -> (sigma(i), h_i(a)), cell (i, a) having index
i*q + a.  That action is faithful, so stabiliser chains live on at most 48
points for the sizes handled here, while vertex, entry and alphabet actions
are derived from it on demand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .hamming import DEFAULT_BUDGET, BudgetExceeded, HammingScheme, SchemeMismatch, Vertex
from .perm import (
    Perm,
    PermGroup,
    StabChain,
    check_perm,
    induced,
    inv,
    minimal_block as _minimal_block,
    mul,
    stabilizer_chain,
    transitivity_profile as _profile,
)

VERTEX_CHAIN_BUDGET = 2**20


@dataclass(frozen=True)
class AutElement:
    h: tuple[tuple[int, ...], ...]
    sigma: tuple[int, ...]

    def __post_init__(self):
        m = len(self.sigma)
        check_perm(self.sigma, m)
        if len(self.h) != m:
            raise ValueError(f"base part has {len(self.h)} entries, expected {m}")
        q = len(self.h[0]) if m else 0
        for hi in self.h:
            check_perm(hi, q)

    @property
    def m(self) -> int:
        return len(self.sigma)

    @property
    def q(self) -> int:
        return len(self.h[0])

    @cached_property
    def cells(self) -> Perm:
        q = self.q
        return tuple(self.sigma[i] * q + self.h[i][a] for i in range(self.m) for a in range(q))

    @classmethod
    def from_cells(cls, perm: Sequence[int], m: int, q: int) -> "AutElement":
        sigma = tuple(perm[i * q] // q for i in range(m))
        h = tuple(tuple(perm[i * q + a] % q for a in range(q)) for i in range(m))
        el = cls(h, sigma)
        if el.cells != tuple(perm):
            raise ValueError("cell permutation does not preserve the entry structure")
        return el

    @classmethod
    def identity(cls, m: int, q: int) -> "AutElement":
        return cls(tuple(tuple(range(q)) for _ in range(m)), tuple(range(m)))

    @classmethod
    def top(cls, sigma: Sequence[int], q: int) -> "AutElement":
        return cls(tuple(tuple(range(q)) for _ in sigma), tuple(sigma))

    @classmethod
    def base(cls, h: Sequence[Sequence[int]]) -> "AutElement":
        return cls(tuple(tuple(x) for x in h), tuple(range(len(h))))

    @classmethod
    def translation(cls, v: Vertex) -> "AutElement":
        sch = v.scheme
        return cls.base([[sch.symbol_add(a, b) for a in range(sch.q)] for b in v.symbols])

    @classmethod
    def diagonal(cls, g: Sequence[int], m: int) -> "AutElement":
        return cls.base([tuple(g)] * m)

    def to_json(self) -> dict:
        return {"sigma": list(self.sigma), "h": [list(x) for x in self.h]}

    @classmethod
    def from_json(cls, obj: dict, m: int, q: int) -> "AutElement":
        sigma = obj.get("sigma", list(range(m)))
        h = obj.get("h", [list(range(q))] * m)
        if len(sigma) != m:
            raise ValueError(f"sigma has length {len(sigma)}, expected {m}")
        if any(len(x) != q for x in h):
            raise ValueError(f"base part permutations must act on {q} symbols")
        return cls(tuple(tuple(x) for x in h), tuple(sigma))


def _check(x: AutElement, sch: HammingScheme):
    if x.m != sch.m or x.q != sch.q:
        raise SchemeMismatch(f"element of Aut(H({x.m},{x.q})) applied in H({sch.m},{sch.q})")


def apply(x: AutElement, v: Vertex) -> Vertex:
    _check(x, v.scheme)
    out = [0] * x.m
    for i, a in enumerate(v.symbols):
        out[x.sigma[i]] = x.h[i][a]
    return Vertex(v.scheme, tuple(out))


def compose(x: AutElement, y: AutElement) -> AutElement:
    """The element acting as x followed by y."""
    if (x.m, x.q) != (y.m, y.q):
        raise SchemeMismatch("composing elements of different Hamming graphs")
    return AutElement.from_cells(mul(x.cells, y.cells), x.m, x.q)


def invert(x: AutElement) -> AutElement:
    return AutElement.from_cells(inv(x.cells), x.m, x.q)


# ---------------------------------------------------------------------------
# vertex actions on indices


def cell_act_vertex(perm: Perm, index: int, sch: HammingScheme) -> int:
    q, m = sch.q, sch.m
    out = [0] * m
    for i in range(m - 1, -1, -1):
        index, a = divmod(index, q)
        c = perm[i * q + a]
        out[c // q] = c % q
    idx = 0
    for a in out:
        idx = idx * q + a
    return idx


def vertex_images(perm: Perm, indices, sch: HammingScheme) -> np.ndarray:
    """Images of an array of vertex indices under a cell permutation."""
    q, m = sch.q, sch.m
    dig = sch.digits(indices)
    cells = np.asarray(perm, dtype=np.int64)
    out = np.empty_like(dig)
    for i in range(m):
        c = cells[i * q + dig[:, i]]
        out[:, perm[i * q] // q] = c % q
    return sch.indices(out)


class AutGroup(PermGroup):
    """A subgroup of Aut(H(m, q)) held as a permutation group on cells."""

    def __init__(self, scheme: HammingScheme, gens: Iterable = (), chain: StabChain | None = None):
        self.scheme = scheme
        perms = []
        for g in gens:
            if isinstance(g, AutElement):
                _check(g, scheme)
                perms.append(g.cells)
            else:
                AutElement.from_cells(g, scheme.m, scheme.q)
                perms.append(tuple(g))
        super().__init__(scheme.m * scheme.q, perms, chain=chain)

    def __repr__(self):
        return f"AutGroup(H({self.scheme.m},{self.scheme.q}), order={self.order})"

    @property
    def elements_gens(self) -> list[AutElement]:
        return [AutElement.from_cells(g, self.scheme.m, self.scheme.q) for g in self.gens]

    def __contains__(self, x) -> bool:
        if isinstance(x, AutElement):
            _check(x, self.scheme)
            x = x.cells
        return tuple(x) in self.chain

    def _wrap(self, chain: StabChain) -> "AutGroup":
        return AutGroup(self.scheme, chain.generators, chain=chain)

    # -- actions -----------------------------------------------------------

    def act_vertex(self, g: Perm, index: int) -> int:
        return cell_act_vertex(g, index, self.scheme)

    def act_entry(self, g: Perm, i: int) -> int:
        return g[i * self.scheme.q] // self.scheme.q

    def on_entries(self) -> PermGroup:
        """X^M, generated by the top parts."""
        q = self.scheme.q
        return PermGroup(self.scheme.m, [tuple(g[i * q] // q for i in range(self.scheme.m)) for g in self.gens])

    def on_vertices(self, vertices: Iterable) -> tuple[PermGroup, list[int]]:
        """Induced group on an invariant vertex set, points in index order."""
        pts = sorted({v.index if isinstance(v, Vertex) else int(v) for v in vertices})
        return induced(self.gens, pts, self.act_vertex), pts

    def vertex_permutations(self, budget: int = DEFAULT_BUDGET) -> list[np.ndarray]:
        self.scheme.check_budget(self.scheme.size, budget, "vertex permutation")
        allv = np.arange(self.scheme.size, dtype=np.int64)
        return [vertex_images(g, allv, self.scheme) for g in self.gens]

    def vertex_orbit_labels(self, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        """Orbit label (least member index) of every vertex of H(m, q)."""
        n = self.scheme.size
        labels = np.arange(n, dtype=np.int64)
        perms = self.vertex_permutations(budget)
        while True:
            old = labels.copy()
            for p in perms:
                np.minimum.at(labels, p, labels)
                labels = np.minimum(labels, labels[p])
            labels = labels[labels]
            if np.array_equal(labels, old):
                return labels

    # -- stabilisers -------------------------------------------------------

    def vertex_stabilizer(self, v) -> "AutGroup":
        idx = v.index if isinstance(v, Vertex) else int(v)
        chain, _ = stabilizer_chain(self.gens, self.order, idx, self.act_vertex, self.degree)
        return self._wrap(chain)

    def entry_stabilizer(self, i: int) -> "AutGroup":
        chain, _ = stabilizer_chain(self.gens, self.order, i, self.act_entry, self.degree)
        return self._wrap(chain)

    def vertex_set_stabilizer(self, vertices: Iterable) -> "AutGroup":
        s = frozenset(v.index if isinstance(v, Vertex) else int(v) for v in vertices)
        act = lambda g, st: frozenset(self.act_vertex(g, p) for p in st)  # noqa: E731
        chain, _ = stabilizer_chain(self.gens, self.order, s, act, self.degree)
        return self._wrap(chain)

    def entry_set_stabilizer(self, entries: Iterable[int]) -> "AutGroup":
        act = lambda g, st: frozenset(self.act_entry(g, i) for i in st)  # noqa: E731
        chain, _ = stabilizer_chain(self.gens, self.order, frozenset(entries), act, self.degree)
        return self._wrap(chain)

    def kernel(self) -> "AutGroup":
        """K = X cap B, the pointwise stabiliser of all entries."""
        k = self
        for i in range(self.scheme.m):
            k = k.entry_stabilizer(i)
        return k

    def alphabet_action(self, i: int) -> PermGroup:
        """X_i^{Q_i}: symbols permuted in entry i by the stabiliser of i."""
        q = self.scheme.q
        xi = self.entry_stabilizer(i)
        return PermGroup(q, [tuple(g[i * q + a] % q for a in range(q)) for g in xi.gens])


# ---------------------------------------------------------------------------
# functional interface


def generate(gens: Sequence[AutElement], domain="cells", scheme: HammingScheme | None = None, max_degree: int = VERTEX_CHAIN_BUDGET):
    """Group generated by Aut(Gamma) elements acting on a chosen domain.

    ``domain`` is ``"cells"`` (faithful, the default), ``"vertices"`` (chain
    on all q**m vertices), ``"entries"`` (the image on M) or an explicit
    list of vertices closed under the generators.
    """
    gens = list(gens)
    if scheme is None:
        if not gens:
            raise ValueError("scheme required for an empty generator list")
        scheme = HammingScheme(gens[0].m, gens[0].q)
    grp = AutGroup(scheme, gens)
    if isinstance(domain, str):
        if domain == "cells":
            return grp
        if domain == "entries":
            return grp.on_entries()
        if domain == "vertices":
            if scheme.size > max_degree:
                raise BudgetExceeded(f"vertex chain of degree {scheme.size} exceeds {max_degree}")
            return PermGroup(scheme.size, [tuple(int(x) for x in p) for p in grp.vertex_permutations()])
        raise ValueError(f"unknown domain {domain!r}")
    pts = list(domain)
    if len(pts) > max_degree:
        raise BudgetExceeded(f"domain of {len(pts)} points exceeds {max_degree}")
    return grp.on_vertices(pts)[0]


def orbits(group, points=None):
    """Orbits of a group on an invariant point set.

    For an AutGroup ``points`` is a collection of vertices and the orbits
    come back as lists of Vertex; for a PermGroup it defaults to all points.
    """
    if isinstance(group, AutGroup):
        ind, idx = group.on_vertices(points)
        sch = group.scheme
        return [[sch.from_index(idx[k]) for k in orb] for orb in ind.orbits()]
    if points is None:
        return group.orbits()
    pts = list(points)
    ind = induced(group.gens, pts, lambda g, p: g[p])
    return [[pts[k] for k in orb] for orb in ind.orbits()]


def transitivity_profile(group: PermGroup, k: int, points: Sequence[int] | None = None) -> tuple[int, int]:
    if points is not None:
        group = induced(group.gens, list(points), lambda g, p: g[p])
    return _profile(group, k)


def minimal_block(group: AutGroup, vertices, pair) -> list[Vertex]:
    """Smallest block of the action on an invariant vertex set through a pair."""
    ind, idx = group.on_vertices(vertices)
    pos = {p: k for k, p in enumerate(idx)}
    a, b = (v.index if isinstance(v, Vertex) else int(v) for v in pair)
    blk = _minimal_block(ind, pos[a], pos[b])
    return [group.scheme.from_index(idx[k]) for k in blk]


@dataclass(frozen=True)
class EntryAction:
    image: PermGroup  # X^M
    kernel: AutGroup  # K
    kernel_order: int


def entry_action(group: AutGroup) -> EntryAction:
    img = group.on_entries()
    ker = group.kernel()
    if ker.order * img.order != group.order:
        raise ArithmeticError("kernel and image orders do not multiply to |X|")
    return EntryAction(img, ker, ker.order)


def point_stabilizer(group: AutGroup, obj, mode: str = "setwise") -> AutGroup:
    """Stabiliser of a vertex, an entry, or a set of either.

    Integers are entries and Vertex objects are vertices; collections are
    stabilised setwise or pointwise according to ``mode``.
    """
    if isinstance(obj, Vertex):
        return group.vertex_stabilizer(obj)
    if isinstance(obj, (int, np.integer)):
        return group.entry_stabilizer(int(obj))
    items = list(obj)
    if not items:
        return group
    vertices = isinstance(items[0], Vertex)
    if mode == "pointwise":
        g = group
        for it in items:
            g = g.vertex_stabilizer(it) if vertices else g.entry_stabilizer(it)
        return g
    if mode != "setwise":
        raise ValueError(f"mode must be 'setwise' or 'pointwise', got {mode!r}")
    return group.vertex_set_stabilizer(items) if vertices else group.entry_set_stabilizer(items)


def alphabet_action(group: AutGroup, i: int) -> PermGroup:
    return group.alphabet_action(i)


def translation_group(code) -> AutGroup:
    """T_W for an additively closed code W."""
    sch = code.scheme
    words = set(code.words)
    for a in code.words:
        for b in code.words:
            s = Vertex(sch, tuple(sch.symbol_add(x, y) for x, y in zip(a, b)))
            if s not in words:
                raise ValueError(f"code is not additively closed: {a} + {b} = {s} missing")
    grp = AutGroup(sch)
    for w in code.words:
        grp.chain.add(AutElement.translation(w).cells)
    return AutGroup(sch, grp.chain.generators, chain=grp.chain)


def diag_group(gens: Iterable[Sequence[int]], m: int) -> AutGroup:
    """Diag_m(H): each generator of H applied identically in every entry."""
    gens = [tuple(g) for g in gens]
    q = len(gens[0]) if gens else 2
    return AutGroup(HammingScheme(m, q), [AutElement.diagonal(g, m) for g in gens])


def top_group(gens: Iterable[Sequence[int]], q: int) -> AutGroup:
    gens = [tuple(g) for g in gens]
    m = len(gens[0])
    return AutGroup(HammingScheme(m, q), [AutElement.top(g, q) for g in gens])


def full_group(scheme: HammingScheme) -> AutGroup:
    """Aut(Gamma) itself: Sym(q) in entry 0 plus Sym(m) on entries."""
    m, q = scheme.m, scheme.q
    gens = []
    idq = tuple(range(q))
    for g in ([1, 0] + list(range(2, q)), list(range(1, q)) + [0]):
        gens.append(AutElement.base([tuple(g)] + [idq] * (m - 1)))
    if m > 1:
        gens.append(AutElement.top([1, 0] + list(range(2, m)), q))
        gens.append(AutElement.top(list(range(1, m)) + [0], q))
    return AutGroup(scheme, gens)


# ---------------------------------------------------------------------------
# generator files


def read_generators(path, scheme: HammingScheme) -> list[AutElement]:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, list):
        raise ValueError("generator file must hold a JSON array")
    return [AutElement.from_json(obj, scheme.m, scheme.q) for obj in data]


def write_generators(gens: Iterable[AutElement], path) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(json.dumps([g.to_json() for g in gens], indent=1) + "\n")
    tmp.replace(path)
