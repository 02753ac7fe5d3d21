"""Codes in Hamming graphs: generic and linear codes, the Hadamard family,
translates, the Singleton bound and the plain-text code file format."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .hamming import HammingScheme, SchemeMismatch, Vertex, distance_matrix


class Code:
    """A duplicate-free, lexicographically sorted set of vertices."""

    def __init__(self, scheme: HammingScheme, words: Iterable):
        self.scheme = scheme
        vs = set()
        for w in words:
            if isinstance(w, Vertex):
                if w.scheme != scheme:
                    raise SchemeMismatch("codeword from a different Hamming graph")
                vs.add(w)
            elif isinstance(w, (int, np.integer)):
                vs.add(scheme.from_index(int(w)))
            else:
                vs.add(Vertex(scheme, tuple(w)))
        self.words: tuple[Vertex, ...] = tuple(sorted(vs, key=lambda v: v.symbols))

    @cached_property
    def indices(self) -> np.ndarray:
        return np.array([w.index for w in self.words], dtype=np.int64)

    @cached_property
    def index_set(self) -> frozenset[int]:
        return frozenset(int(i) for i in self.indices)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array([w.symbols for w in self.words], dtype=np.int64).reshape(len(self.words), self.scheme.m)

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, v):
        if isinstance(v, Vertex):
            return v.scheme == self.scheme and v.index in self.index_set
        return self.scheme.index_of(v) in self.index_set

    def __eq__(self, other):
        return isinstance(other, Code) and self.scheme == other.scheme and self.words == other.words

    def __hash__(self):
        return hash((self.scheme, self.words))

    def __repr__(self):
        return f"{type(self).__name__}(H({self.scheme.m},{self.scheme.q}), {len(self)} words)"

    @cached_property
    def min_distance(self) -> int:
        if len(self) < 2:
            raise ValueError("minimum distance needs at least two codewords")
        if self.is_translation_closed:
            return min(w.weight for w in self.words if w.weight)
        dm = distance_matrix(self.scheme, self.indices, self.indices)
        np.fill_diagonal(dm, self.scheme.m + 1)
        return int(dm.min())

    @cached_property
    def weight_distribution(self) -> dict[int, int]:
        return dict(sorted(Counter(w.weight for w in self.words).items()))

    @cached_property
    def distance_distribution(self) -> dict[int, int]:
        """Multiset of distances over ordered pairs, an equivalence invariant."""
        dm = distance_matrix(self.scheme, self.indices, self.indices)
        vals, counts = np.unique(dm, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    @cached_property
    def is_translation_closed(self) -> bool:
        """True when C - c = C for every codeword c (e.g. linear codes)."""
        if self.scheme.zero() not in self:
            return False
        if len(self) > 4096:
            return False
        return all(self.translate(self.scheme.vertex(self.scheme.symbol_neg(a) for a in c)) == self for c in self.words)

    @cached_property
    def covering_radius(self) -> int:
        from .regularity import distance_partition

        return distance_partition(self).rho

    def translate(self, v: Vertex) -> "Code":
        if v.scheme != self.scheme:
            raise SchemeMismatch("translation vector from a different Hamming graph")
        add = self.scheme.symbol_add
        return Code(self.scheme, [tuple(add(a, b) for a, b in zip(w, v)) for w in self.words])

    def is_translation_invariant(self, v: Vertex) -> bool:
        return self.translate(v) == self


def from_words(scheme: HammingScheme, words: Iterable) -> Code:
    return Code(scheme, words)


def repetition_code(m: int, q: int = 2) -> Code:
    if m < 2:
        raise ValueError("repetition code needs m >= 2")
    sch = HammingScheme(m, q)
    return Code(sch, [sch.constant(a) for a in range(q)])


# ---------------------------------------------------------------------------
# linear codes over prime fields


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % f for f in range(2, int(p**0.5) + 1))


def rref_mod_p(rows: Sequence[Sequence[int]], p: int, ncols: int) -> list[list[int]]:
    """Reduced row echelon form over F_p with zero rows dropped."""
    mat = [[x % p for x in r] for r in rows]
    out, r = mat, 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(out)) if out[i][c]), None)
        if piv is None:
            continue
        out[r], out[piv] = out[piv], out[r]
        inv = pow(out[r][c], -1, p)
        out[r] = [(x * inv) % p for x in out[r]]
        for i in range(len(out)):
            if i != r and out[i][c]:
                f = out[i][c]
                out[i] = [(x - f * y) % p for x, y in zip(out[i], out[r])]
        r += 1
    return out[:r]


def nullspace_mod_p(rows: Sequence[Sequence[int]], p: int, ncols: int) -> list[list[int]]:
    red = rref_mod_p(rows, p, ncols)
    pivots = [next(c for c, x in enumerate(r) if x) for r in red]
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[free] = 1
        for r, pc in zip(red, pivots):
            v[pc] = (-r[free]) % p
        basis.append(v)
    return basis


def _span(basis: Sequence[Sequence[int]], p: int, n: int) -> list[tuple[int, ...]]:
    words = []
    for coeffs in product(range(p), repeat=len(basis)):
        w = [0] * n
        for c, b in zip(coeffs, basis):
            if c:
                w = [(x + c * y) % p for x, y in zip(w, b)]
        words.append(tuple(w))
    return words


class LinearCode(Code):
    """The F_p-span of a list of generators in H(m, p)."""

    def __init__(self, p: int, m: int, generators: Iterable[Sequence[int]]):
        if not _is_prime(p):
            raise ValueError(f"linear codes need a prime field, got p={p}")
        gens = [tuple(g) for g in generators]
        for g in gens:
            if len(g) != m:
                raise ValueError(f"generator {g} has length {len(g)}, expected {m}")
            if any(not 0 <= x < p for x in g):
                raise ValueError(f"generator {g} has a symbol outside F_{p}")
        self.p = p
        self.generators = gens
        self.basis = [tuple(r) for r in rref_mod_p(gens, p, m)]
        super().__init__(HammingScheme(m, p), _span(self.basis, p, m))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    is_translation_closed = True

    def inner(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(x * y for x, y in zip(a, b)) % self.p


def from_generators(p: int, m: int, generators: Iterable[Sequence[int]]) -> LinearCode:
    return LinearCode(p, m, generators)


def dual(code: Code) -> LinearCode:
    if not isinstance(code, LinearCode):
        raise TypeError("the dual code is defined here only for linear codes")
    m = code.scheme.m
    return LinearCode(code.p, m, nullspace_mod_p(code.basis, code.p, m))


# ---------------------------------------------------------------------------
# subspaces of F_p^{dm} as codes in H(m, p^d)


def subspace_embed(p: int, d: int, m: int, basis: Iterable[Sequence[int]]) -> Code:
    """Span of vectors of length d*m over F_p, read as words of H(m, p**d).

    Block (b_0, ..., b_{d-1}) of each vector becomes the symbol sum b_i p**i.
    """
    if not _is_prime(p):
        raise ValueError(f"p={p} is not prime")
    basis = [tuple(b) for b in basis]
    n = d * m
    for b in basis:
        if len(b) != n:
            raise ValueError(f"basis vector of length {len(b)}, expected d*m = {n}")
    sch = HammingScheme(m, p**d)
    words = []
    for vec in _span(rref_mod_p(basis, p, n), p, n):
        words.append(tuple(sum(vec[i * d + t] * p**t for t in range(d)) for i in range(m)))
    return Code(sch, words)


# ---------------------------------------------------------------------------
# Singleton bound


@dataclass(frozen=True)
class SingletonReport:
    size: int
    bound: int
    passed: bool
    dimension: int | None = None
    dual_distance: int | None = None

    def as_dict(self):
        out = {"size": self.size, "bound": self.bound, "pass": self.passed}
        if self.dimension is not None:
            out["dimension"] = self.dimension
            out["dual_distance"] = self.dual_distance
        return out


def singleton_bound(m: int, q: int, delta: int) -> int:
    return q ** (m - delta + 1)


def singleton_check(code: Code) -> SingletonReport:
    m, q = code.scheme.m, code.scheme.q
    delta = code.min_distance
    bound = singleton_bound(m, q, delta)
    ok = len(code) <= bound
    if isinstance(code, LinearCode):
        k = code.dimension
        du = dual(code)
        dd = du.min_distance if len(du) > 1 else None
        if dd is not None:
            ok = ok and dd - 1 <= k <= m - delta + 1
        return SingletonReport(len(code), bound, ok, k, dd)
    return SingletonReport(len(code), bound, ok)


# ---------------------------------------------------------------------------
# the Hadamard family at length 12

STAR = 11  # index of the extra point * in M = F_11 u {*}


def _squares_mod(p: int) -> set[int]:
    return {(a * a) % p for a in range(p)}


@dataclass(frozen=True)
class HadamardFamily:
    matrix: np.ndarray  # H12, a 12 x 12 sign matrix
    hadamard: Code  # 24 words in H(12, 2)
    punctured: Code  # 24 words in H(11, 2)
    even: Code  # 12 words in H(11, 2)


def paley_matrix_12() -> np.ndarray:
    """Sign matrix with rows v, its ten F_11-translates, and the all -1 row.

    Column a < 11 is the field element a, column 11 is *.  The first row is -1
    on the squares of F_11 (0 included) and +1 on non-squares and on *.
    """
    sq = _squares_mod(11)
    v = [-1 if a in sq else 1 for a in range(11)] + [1]
    rows = [[v[(a - t) % 11] for a in range(11)] + [v[STAR]] for t in range(11)]
    rows.append([-1] * 12)
    return np.array(rows, dtype=np.int64)


def _sign_rows_to_code(rows: np.ndarray) -> Code:
    sch = HammingScheme(rows.shape[1], 2)
    return Code(sch, [tuple(int(u == -1) for u in r) for r in rows])


def paley_hadamard12() -> HadamardFamily:
    mat = paley_matrix_12()
    had = _sign_rows_to_code(np.vstack([mat, -mat]))
    punct = punctured_hadamard(had)
    return HadamardFamily(mat, had, punct, even_weight_subcode(punct))


def hadamard12() -> Code:
    return paley_hadamard12().hadamard


def punctured_hadamard(had: Code | None = None) -> Code:
    """Delete the * coordinate from the length-12 Hadamard code."""
    from .hamming import project

    had = hadamard12() if had is None else had
    return project(had, [a for a in range(12) if a != STAR])


def even_weight_subcode(punct: Code | None = None) -> Code:
    punct = punctured_hadamard() if punct is None else punct
    return Code(punct.scheme, [w for w in punct if w.weight % 2 == 0])


# ---------------------------------------------------------------------------
# code files


class CodeFileError(ValueError):
    def __init__(self, msg: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


def parse_code(text: str) -> Code:
    """Parse the code file format: header ``m q`` then one word per line."""
    scheme = None
    words = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        toks, col = [], 0
        for tok in body.split():
            col = body.index(tok, col)
            toks.append((tok, col + 1))
            col += len(tok)
        vals = []
        for tok, c in toks:
            try:
                vals.append(int(tok, 10))
            except ValueError:
                raise CodeFileError(f"expected an integer, got {tok!r}", lineno, c) from None
        if scheme is None:
            if len(vals) != 2:
                raise CodeFileError("header must be 'm q'", lineno)
            try:
                scheme = HammingScheme(*vals)
            except ValueError as e:
                raise CodeFileError(str(e), lineno) from None
            continue
        if len(vals) != scheme.m:
            raise CodeFileError(f"codeword has {len(vals)} symbols, expected {scheme.m}", lineno)
        for (tok, c), a in zip(toks, vals):
            if not 0 <= a < scheme.q:
                raise CodeFileError(f"symbol {a} outside 0..{scheme.q - 1}", lineno, c)
        words.append(tuple(vals))
    if scheme is None:
        raise CodeFileError("missing header", 1)
    return Code(scheme, words)


def format_code(code: Code) -> str:
    lines = [f"{code.scheme.m} {code.scheme.q}"]
    lines += [" ".join(map(str, w.symbols)) for w in code.words]
    return "\n".join(lines) + "\n"


def read_code(path) -> Code:
    return parse_code(Path(path).read_text())


def write_code(code: Code, path) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(format_code(code))
    tmp.replace(path)
