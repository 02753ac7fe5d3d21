"""Hamming graph primitives.

Vertices of H(m, q) are m-tuples over {0, ..., q-1}.  Entries are indexed
from 0 and the symbol 0 is the distinguished alphabet element.  Each vertex
also has an integer *index*: the base-q number whose most significant digit
is entry 0, so enumeration order, index order and lexicographic order agree.
For q = 2 the index doubles as a packed bit word and distances come from a
popcount.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_BUDGET = 2**24


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured size budget."""


class SchemeMismatch(ValueError):
    pass


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"alphabet size must be at least 2, got {q}")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    d, r = 0, q
    while r % p == 0:
        r //= p
        d += 1
    if r != 1:
        raise ValueError(f"alphabet size {q} is not a prime power")
    return p, d


@dataclass(frozen=True)
class HammingScheme:
    """The Hamming graph H(m, q) with q = p**d."""

    m: int
    q: int
    p: int = field(init=False, compare=False)
    d: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"entry count must be positive, got {self.m}")
        p, d = _prime_power(self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "d", d)

    @property
    def size(self) -> int:
        return self.q**self.m

    @cached_property
    def place_values(self) -> tuple[int, ...]:
        return tuple(self.q ** (self.m - 1 - i) for i in range(self.m))

    def check_budget(self, count: int, budget: int = DEFAULT_BUDGET, what: str = "enumeration"):
        if count > budget:
            raise BudgetExceeded(f"{what} of {count} items exceeds budget {budget}")

    def vertex(self, symbols: Iterable[int]) -> "Vertex":
        return Vertex(self, tuple(symbols))

    def zero(self) -> "Vertex":
        return Vertex(self, (0,) * self.m)

    def constant(self, a: int) -> "Vertex":
        return Vertex(self, (a,) * self.m)

    def from_index(self, index: int) -> "Vertex":
        if not 0 <= index < self.size:
            raise ValueError(f"vertex index {index} out of range for H({self.m},{self.q})")
        syms = []
        for _ in range(self.m):
            index, r = divmod(index, self.q)
            syms.append(r)
        return Vertex(self, tuple(reversed(syms)))

    def index_of(self, symbols: Sequence[int]) -> int:
        idx = 0
        for a in symbols:
            idx = idx * self.q + a
        return idx

    def digits(self, indices) -> np.ndarray:
        """Symbol matrix (len(indices) x m) for an array of vertex indices."""
        idx = np.asarray(indices, dtype=np.int64)
        pv = np.array(self.place_values, dtype=np.int64)
        return (idx[:, None] // pv[None, :]) % self.q

    def indices(self, digits: np.ndarray) -> np.ndarray:
        pv = np.array(self.place_values, dtype=np.int64)
        return np.asarray(digits, dtype=np.int64) @ pv

    def symbol_add(self, a: int, b: int) -> int:
        """Addition in the additive group of F_p^d under base-p digit packing."""
        if self.d == 1:
            return (a + b) % self.p
        out, place = 0, 1
        for _ in range(self.d):
            out += ((a % self.p + b % self.p) % self.p) * place
            a //= self.p
            b //= self.p
            place *= self.p
        return out

    def symbol_neg(self, a: int) -> int:
        if self.d == 1:
            return (-a) % self.p
        out, place = 0, 1
        for _ in range(self.d):
            out += ((-(a % self.p)) % self.p) * place
            a //= self.p
            place *= self.p
        return out


@dataclass(frozen=True)
class Vertex:
    scheme: HammingScheme
    symbols: tuple[int, ...]

    def __post_init__(self):
        if len(self.symbols) != self.scheme.m:
            raise ValueError(f"vertex has {len(self.symbols)} entries, expected {self.scheme.m}")
        for a in self.symbols:
            if not 0 <= a < self.scheme.q:
                raise ValueError(f"symbol {a} outside alphabet of size {self.scheme.q}")

    @cached_property
    def index(self) -> int:
        return self.scheme.index_of(self.symbols)

    @property
    def packed(self) -> int:
        """Bit word for binary vertices (entry 0 is the most significant bit)."""
        if self.scheme.q != 2:
            raise ValueError("packed form exists only for binary vertices")
        return self.index

    @cached_property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, a in enumerate(self.symbols) if a)

    @property
    def weight(self) -> int:
        return len(self.support)

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __iter__(self):
        return iter(self.symbols)

    def __lt__(self, other: "Vertex"):
        return self.symbols < other.symbols

    def __str__(self):
        if self.scheme.q <= 10:
            return "".join(map(str, self.symbols))
        return " ".join(map(str, self.symbols))

    def __repr__(self):
        return f"Vertex({str(self)!r})"


def _check_same(a: Vertex, b: Vertex):
    if a.scheme != b.scheme:
        raise SchemeMismatch(f"vertices from H({a.scheme.m},{a.scheme.q}) and H({b.scheme.m},{b.scheme.q})")


def distance(a: Vertex, b: Vertex) -> int:
    _check_same(a, b)
    if a.scheme.q == 2:
        return (a.index ^ b.index).bit_count()
    return sum(x != y for x, y in zip(a.symbols, b.symbols))


def support_diff(a: Vertex, b: Vertex | None = None) -> frozenset[int]:
    """supp(a), or diff(a, b) when b is given."""
    if b is None:
        return a.support
    _check_same(a, b)
    return frozenset(i for i, (x, y) in enumerate(zip(a.symbols, b.symbols)) if x != y)


def sphere_size(m: int, q: int, s: int) -> int:
    return comb(m, s) * (q - 1) ** s


def sphere(center: Vertex, s: int, budget: int = DEFAULT_BUDGET) -> Iterator[Vertex]:
    """Stream Gamma_s(center), each vertex once."""
    sch = center.scheme
    if not 0 <= s <= sch.m:
        raise ValueError(f"radius {s} outside 0..{sch.m}")
    sch.check_budget(sphere_size(sch.m, sch.q, s), budget, "sphere")
    base = center.symbols
    for entries in combinations(range(sch.m), s):
        choices = [[a for a in range(sch.q) if a != base[i]] for i in entries]
        for syms in product(*choices):
            out = list(base)
            for i, a in zip(entries, syms):
                out[i] = a
            yield Vertex(sch, tuple(out))


def enumerate_vertices(scheme: HammingScheme, budget: int = DEFAULT_BUDGET) -> Iterator[Vertex]:
    scheme.check_budget(scheme.size, budget)
    for syms in product(range(scheme.q), repeat=scheme.m):
        yield Vertex(scheme, syms)


def _check_entries(scheme: HammingScheme, J: Sequence[int]) -> tuple[int, ...]:
    J = tuple(J)
    if not J:
        raise ValueError("projection needs a nonempty entry list")
    if len(set(J)) != len(J) or any(not 0 <= j < scheme.m for j in J):
        raise ValueError(f"invalid entry list {J} for m={scheme.m}")
    return J


def project_vertex(v: Vertex, J: Sequence[int]) -> Vertex:
    J = _check_entries(v.scheme, J)
    return Vertex(HammingScheme(len(J), v.scheme.q), tuple(v.symbols[j] for j in J))


def project(obj, J: Sequence[int]):
    """Projection onto the ordered entry list J of a vertex or a code."""
    if isinstance(obj, Vertex):
        return project_vertex(obj, J)
    from .codes import Code

    if isinstance(obj, Code):
        J = _check_entries(obj.scheme, J)
        sub = HammingScheme(len(J), obj.scheme.q)
        return Code(sub, [Vertex(sub, tuple(w.symbols[j] for j in J)) for w in obj])
    raise TypeError(f"cannot project {type(obj).__name__}")


def distance_matrix(scheme: HammingScheme, rows, cols) -> np.ndarray:
    """Pairwise distances between two arrays of vertex indices."""
    a = np.asarray(rows, dtype=np.int64)
    b = np.asarray(cols, dtype=np.int64)
    if scheme.q == 2:
        return np.bitwise_count(a[:, None] ^ b[None, :]).astype(np.int64)
    da, db = scheme.digits(a), scheme.digits(b)
    return (da[:, None, :] != db[None, :, :]).sum(axis=2)
