"""Slow, direct reimplementations used as independent test oracles."""

from collections import Counter
from itertools import combinations, product


def hamming(a, b):
    return sum(x != y for x, y in zip(a, b))


def all_words(m, q):
    return list(product(range(q), repeat=m))


def weight_distribution(words):
    return dict(sorted(Counter(sum(1 for x in w if x) for w in words).items()))


def min_distance(words):
    return min(hamming(a, b) for a, b in combinations(words, 2))


def distances_to_code(words, m, q):
    """d(v, C) for every vertex, in lexicographic order."""
    return [min(hamming(v, c) for c in words) for v in all_words(m, q)]


def profile(v, words, m):
    out = [0] * (m + 1)
    for c in words:
        out[hamming(v, c)] += 1
    return out


def is_s_regular(words, m, q, s):
    dist = distances_to_code(words, m, q)
    verts = all_words(m, q)
    for i in range(s + 1):
        profs = {tuple(profile(v, words, m)) for v, d in zip(verts, dist) if d == i}
        if len(profs) > 1:
            return False
    return True


def cover_count(blocks, nu):
    """Number of blocks agreeing with nu on supp(nu)."""
    return sum(all(b[i] == a for i, a in enumerate(nu) if a) for b in blocks)


def design_lambda(blocks, m, q, s):
    """lambda if the blocks form a q-ary s-design, else None."""
    counts = {cover_count(blocks, nu) for nu in all_words(m, q) if sum(1 for x in nu if x) == s}
    return counts.pop() if len(counts) == 1 else None


def apply(h, sigma, word):
    out = [0] * len(word)
    for i, a in enumerate(word):
        out[sigma[i]] = h[i][a]
    return tuple(out)


def squares_mod(p):
    """Squares of F_p as the a with a^((p-1)/2) in {0, 1}."""
    return {a for a in range(p) if pow(a, (p - 1) // 2, p) in (0, 1)}
