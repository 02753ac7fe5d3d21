"""Distance partitions, s-regularity and q-ary designs."""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import prod

import numpy as np

from .codes import Code
from .hamming import DEFAULT_BUDGET, Vertex, distance_matrix

_CHUNK = 1 << 14


@dataclass(frozen=True, eq=False)
class DistancePartition:
    code: Code
    distances: np.ndarray  # d(v, C) for every vertex index
    cells: tuple[np.ndarray, ...]  # C_0 = C, C_1, ..., C_rho as sorted index arrays

    @property
    def rho(self) -> int:
        return len(self.cells) - 1

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.cells]

    def cell(self, i: int) -> list[Vertex]:
        sch = self.code.scheme
        return [sch.from_index(int(v)) for v in self.cells[i]]


def _bfs_distances(code: Code) -> np.ndarray:
    sch = code.scheme
    q = sch.q
    dist = np.full(sch.size, -1, dtype=np.int64)
    frontier = np.unique(code.indices)
    dist[frontier] = 0
    level = 0
    pv = sch.place_values
    while frontier.size:
        level += 1
        nbrs = []
        for i in range(sch.m):
            digit = (frontier // pv[i]) % q
            for delta in range(1, q):
                nbrs.append(frontier + (((digit + delta) % q) - digit) * pv[i])
        cand = np.unique(np.concatenate(nbrs))
        cand = cand[dist[cand] < 0]
        dist[cand] = level
        frontier = cand
    return dist


def exhaustive_distances(code: Code, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """d(v, C) for every vertex by scanning all codewords (cross-check path)."""
    sch = code.scheme
    sch.check_budget(sch.size, budget)
    out = np.empty(sch.size, dtype=np.int64)
    for lo in range(0, sch.size, _CHUNK):
        rows = np.arange(lo, min(lo + _CHUNK, sch.size))
        out[lo : lo + len(rows)] = distance_matrix(sch, rows, code.indices).min(axis=1)
    return out


def distance_partition(code: Code, budget: int = DEFAULT_BUDGET, cross_check: bool = False) -> DistancePartition:
    if len(code) == 0:
        raise ValueError("distance partition of an empty code")
    sch = code.scheme
    sch.check_budget(sch.size, budget, "distance partition")
    dist = _bfs_distances(code)
    if cross_check and not np.array_equal(dist, exhaustive_distances(code, budget)):
        raise AssertionError("breadth-first distances disagree with the exhaustive scan")
    rho = int(dist.max())
    cells = tuple(np.nonzero(dist == i)[0] for i in range(rho + 1))
    return DistancePartition(code, dist, cells)


# ---------------------------------------------------------------------------
# s-regularity


@dataclass
class RegularityReport:
    s_checked: int
    k_range: tuple[int, int]
    passed: bool
    table: dict[tuple[int, int], int] = field(default_factory=dict)
    violation: dict | None = None

    def as_dict(self) -> dict:
        out = {"s_checked": self.s_checked, "k_range": list(self.k_range), "pass": self.passed}
        if self.passed:
            out["intersection_numbers"] = [{"i": i, "k": k, "count": c} for (i, k), c in sorted(self.table.items())]
        else:
            out["violation"] = self.violation
        return out


def _intersection_profiles(code: Code, idx: np.ndarray) -> np.ndarray:
    """Row r holds |Gamma_k(v) cap C| for k = 0..m, v = idx[r]."""
    sch = code.scheme
    out = np.zeros((len(idx), sch.m + 1), dtype=np.int64)
    for lo in range(0, len(idx), _CHUNK):
        dm = distance_matrix(sch, idx[lo : lo + _CHUNK], code.indices)
        for k in range(sch.m + 1):
            out[lo : lo + len(dm), k] = (dm == k).sum(axis=1)
    return out


def s_regularity(code: Code, s: int, partition: DistancePartition | None = None) -> RegularityReport:
    part = partition or distance_partition(code)
    if not 0 <= s <= part.rho:
        raise ValueError(f"s={s} outside 0..rho={part.rho}")
    sch = code.scheme
    table: dict[tuple[int, int], int] = {}
    for i in range(s + 1):
        idx = part.cells[i]
        prof = _intersection_profiles(code, idx)
        bad = np.nonzero((prof != prof[0]).any(axis=1))[0]
        if bad.size:
            r = int(bad[0])
            k = int(np.nonzero(prof[r] != prof[0])[0][0])
            viol = {
                "i": i,
                "k": k,
                "nu": str(sch.from_index(int(idx[r]))),
                "count": int(prof[r, k]),
                "nu_ref": str(sch.from_index(int(idx[0]))),
                "count_ref": int(prof[0, k]),
            }
            return RegularityReport(s, (0, sch.m), False, {}, viol)
        for k, c in enumerate(prof[0]):
            if c:
                table[(i, k)] = int(c)
    return RegularityReport(s, (0, sch.m), True, table)


def completely_regular(code: Code, partition: DistancePartition | None = None) -> RegularityReport:
    part = partition or distance_partition(code)
    return s_regularity(code, part.rho, part)


# ---------------------------------------------------------------------------
# designs


def covers(alpha: Vertex, nu: Vertex) -> bool:
    """nu is covered by alpha when they agree on the support of nu."""
    return all(alpha.symbols[i] == a for i, a in enumerate(nu.symbols) if a)


@dataclass(frozen=True)
class Design:
    blocks: tuple[Vertex, ...]
    s: int
    v: int
    k: int
    lam: int
    r: int | None

    @property
    def b(self) -> int:
        return len(self.blocks)

    def as_dict(self) -> dict:
        return {"k": self.k, "s": self.s, "lambda": self.lam, "b": self.b, "r": self.r}


@dataclass(frozen=True)
class DesignFailure:
    k: int
    s: int
    nu: str
    count: int
    nu_other: str
    count_other: int

    def __bool__(self):
        return False


def _cover_counts(blocks, s: int) -> Counter:
    counts: Counter = Counter()
    for a in blocks:
        supp = sorted(a.support)
        for sub in combinations(supp, s):
            counts[(sub, tuple(a.symbols[i] for i in sub))] += 1
    return counts


def _weight_vertices(m: int, q: int, s: int):
    for sub in combinations(range(m), s):
        for syms in product(range(1, q), repeat=s):
            yield sub, syms


def _vertex_str(m, sub, syms):
    out = ["0"] * m
    for i, a in zip(sub, syms):
        out[i] = str(a)
    return "".join(out) if all(len(x) == 1 for x in out) else " ".join(out)


def weight_design(code: Code, k: int, s: int) -> Design | DesignFailure:
    """Test whether the weight-k codewords form a q-ary s-(m, k, lambda) design."""
    sch = code.scheme
    if not 0 <= s <= k <= sch.m:
        raise ValueError(f"need 0 <= s <= k <= m, got s={s}, k={k}")
    if sch.zero() not in code:
        warnings.warn("code does not contain the zero vertex; weight designs need not arise", stacklevel=2)
    blocks = tuple(w for w in code if w.weight == k)
    counts = _cover_counts(blocks, s)
    first = None
    for sub, syms in _weight_vertices(sch.m, sch.q, s):
        c = counts.get((sub, syms), 0)
        if first is None:
            first = (sub, syms, c)
        elif c != first[2]:
            return DesignFailure(k, s, _vertex_str(sch.m, sub, syms), c, _vertex_str(sch.m, first[0], first[1]), first[2])
    lam = first[2]
    r = None
    if k >= 1:
        ones = _cover_counts(blocks, 1)
        vals = {ones.get((sub, syms), 0) for sub, syms in _weight_vertices(sch.m, sch.q, 1)}
        if len(vals) == 1:
            r = vals.pop()
    return Design(blocks, s, sch.m, k, lam, r)


@dataclass(frozen=True)
class DesignIdentities:
    b: Fraction
    r: Fraction | None
    integral: bool
    checks: dict

    def as_dict(self) -> dict:
        return {"b": _exact(self.b), "r": _exact(self.r), "integral": self.integral, "checks": self.checks}


def _exact(x):
    if x is None:
        return None
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _falling(n: int, s: int) -> int:
    return prod(range(n - s + 1, n + 1)) if s > 0 else 1


def design_identities(s: int, v: int, k: int, lam: int, q: int = 2) -> DesignIdentities:
    """Block count and replication number implied by (s, v, k, lambda).

    b = v(v-1)...(v-s+1) / (k(k-1)...(k-s+1)) * lambda, times (q-1)^s for
    q-ary designs; for s = 2 also checks vr = bk and r(k-1) = lambda(v-1).
    """
    den = _falling(k, s)
    if den == 0:
        raise ZeroDivisionError(f"k={k} < s={s}: the block count formula divides by zero")
    b = Fraction(_falling(v, s) * lam * (q - 1) ** s, den)
    r = None
    checks = {}
    if s >= 1:
        den_r = _falling(k - 1, s - 1)
        r = None if den_r == 0 else Fraction(_falling(v - 1, s - 1) * lam * (q - 1) ** (s - 1), den_r)
    if r is not None:
        checks["vr=bk"] = v * r * (q - 1) == b * k
        if s == 2:
            checks["r(k-1)=lambda(v-1)"] = r * (k - 1) == lam * (v - 1) * (q - 1)
    integral = b.denominator == 1 and (r is None or r.denominator == 1)
    return DesignIdentities(b, r, integral, checks)


# ---------------------------------------------------------------------------
# analysis report


def weight_designs(code: Code, s_max: int = 2) -> list[Design]:
    """Largest-s designs formed by each proper nonzero weight class."""
    delta = code.min_distance if len(code) > 1 else code.scheme.m
    out = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for k in sorted(code.weight_distribution):
            if not 0 < k < code.scheme.m:
                continue
            for s in range(min(k, delta // 2, s_max), 0, -1):
                d = weight_design(code, k, s)
                if d:
                    out.append(d)
                    break
    return out


def regularity_report(code: Code, partition: DistancePartition | None = None) -> dict:
    part = partition or distance_partition(code)
    reg = completely_regular(code, part)
    designs = weight_designs(code)
    out = {
        "rho": part.rho,
        "cells": part.sizes,
        "s_regular_up_to": None,
        "completely_regular": reg.passed,
        "intersection_numbers": reg.as_dict().get("intersection_numbers"),
        "designs": [],
    }
    if reg.passed:
        out["s_regular_up_to"] = part.rho
    else:
        out["s_regular_up_to"] = reg.violation["i"] - 1
        out["violation"] = reg.violation
    for d in designs:
        ident = design_identities(d.s, d.v, d.k, d.lam, code.scheme.q)
        row = d.as_dict()
        row["block_count_identity"] = ident.b == d.b
        out["designs"].append(row)
    return out
