"""Independent brute-force oracles for the test suite.

Everything here is coded directly from the definitions over plain lists of
Fractions, on purpose ignoring the package's own implementations, so that a
shared bug would have to be written twice to go unnoticed.
"""

from fractions import Fraction
from itertools import permutations
import random


def ordered_triples(n):
    """All (i, j, k) with i != j; k unrestricted (degenerate cases included)."""
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for k in range(n):
                yield i, j, k


def brute_weak_ultra_constant(entries):
    best = Fraction(1)
    for i, j, k in ordered_triples(len(entries)):
        denom = max(entries[i][k], entries[k][j])
        candidate = Fraction(entries[i][j], 1) / denom
        if candidate > best:
            best = candidate
    return best


def brute_b_constant(entries):
    best = Fraction(1)
    for i, j, k in ordered_triples(len(entries)):
        candidate = Fraction(entries[i][j], 1) / (entries[i][k] + entries[k][j])
        if candidate > best:
            best = candidate
    return best


def brute_minimal_theta(entries):
    """Per-pair max(1, ratio) matrix, diagonal pinned at 1."""
    n = len(entries)
    theta = [[Fraction(1)] * n for _ in range(n)]
    for i, j, k in ordered_triples(n):
        candidate = Fraction(entries[i][j], 1) / (entries[i][k] + entries[k][j])
        if candidate > theta[i][j]:
            theta[i][j] = candidate
    return theta


def brute_is_metric(entries):
    n = len(entries)
    for i in range(n):
        if entries[i][i] != 0:
            return False
        for j in range(n):
            if i != j and entries[i][j] <= 0:
                return False
    for i, j, k in permutations(range(n), 3):
        if entries[i][j] > entries[i][k] + entries[k][j]:
            return False
    return True


def brute_is_ultra(entries):
    if not brute_is_metric(entries):
        return False
    n = len(entries)
    for i, j, k in permutations(range(n), 3):
        if entries[i][j] > max(entries[i][k], entries[k][j]):
            return False
    return True


def brute_triplet_constant(a, b, c):
    """Smallest s >= 1 making (a, b, c) an s-relaxed triangle triplet."""
    best = Fraction(1)
    for num, rest in ((a, b + c), (b, a + c), (c, a + b)):
        if rest == 0:
            if num > 0:
                return None  # no finite constant exists
            continue
        candidate = Fraction(num, 1) / rest
        if candidate > best:
            best = candidate
    return best


def random_positive_table(n, seed, den=4, hi=16):
    """Symmetric zero-diagonal table with entries in [1/den, hi/den].

    Off-diagonal entries are strictly positive, so the identity axiom always
    passes; no other axiom is imposed.
    """
    rng = random.Random(f"oracle-table|{n}|{seed}")
    entries = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            value = Fraction(rng.randint(1, hi), den)
            entries[i][j] = value
            entries[j][i] = value
    return entries
