"""Brute-force reference computations that share no code with the package."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def brute_syt(shape: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    """Standard tableaux of ``shape`` by filtering every permutation of 1..n."""
    n = sum(shape)
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        rows, k = [], 0
        for length in shape:
            rows.append(perm[k : k + length])
            k += length
        ok = all(all(a < b for a, b in zip(r, r[1:])) for r in rows) and all(
            rows[r - 1][c] < rows[r][c] for r in range(1, len(rows)) for c in range(len(rows[r]))
        )
        if ok:
            out.append(tuple(rows))
    return out


def brute_partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of ``n`` by sorting every composition (cut-point subsets)."""
    out = set()
    for k in range(n):
        for cuts in itertools.combinations(range(1, n), k):
            bounds = (0,) + cuts + (n,)
            out.add(tuple(sorted((b - a for a, b in zip(bounds, bounds[1:])), reverse=True)))
    return sorted(out, reverse=True)


def _ssyt_count(outer, inner, content) -> int:
    """Semistandard fillings of ``outer / inner`` with the given content (row by row)."""
    cells = [(r, c) for r in range(len(outer)) for c in range(inner[r] if r < len(inner) else 0, outer[r])]
    fill: dict = {}
    left = list(content)

    def go(k: int) -> int:
        if k == len(cells):
            return 1
        r, c = cells[k]
        lo = max(fill.get((r, c - 1), 1), fill.get((r - 1, c), 0) + 1)
        total = 0
        for v in range(lo, len(content) + 1):
            if left[v - 1]:
                left[v - 1] -= 1
                fill[(r, c)] = v
                total += go(k + 1)
                del fill[(r, c)]
                left[v - 1] += 1
        return total

    return go(0)


def lr_by_kostka(outer, inner, nu) -> int:
    """``c^outer_{inner, nu}`` from skew Kostka numbers and the unitriangular Kostka matrix."""
    n = sum(outer) - sum(inner)
    if sum(nu) != n:
        raise ValueError("size mismatch")
    if len(inner) > len(outer) or any(i > o for i, o in zip(inner, outer)):
        return 0
    parts = brute_partitions(n)  # dominance-compatible (reverse lex) order
    kostka = np.array([[_ssyt_count(a, (), b) for b in parts] for a in parts], dtype=object)
    skew = [_ssyt_count(outer, inner, b) for b in parts]
    # skew[b] = sum_a c_a K[a, b]; K is upper unitriangular in this order
    coeffs = [Fraction(0)] * len(parts)
    for j, b in enumerate(parts):
        coeffs[j] = Fraction(skew[j]) - sum(coeffs[i] * kostka[i][j] for i in range(j))
    value = coeffs[parts.index(tuple(nu))]
    assert value.denominator == 1
    return int(value)


def young_orthogonal(shape: tuple[int, ...], tableaux_rows, i: int) -> np.ndarray:
    """Young's orthogonal form of the transposition (i, i+1) on the given ordered basis."""
    pos = []
    for rows in tableaux_rows:
        p = {}
        for r, row in enumerate(rows):
            for c, e in enumerate(row):
                p[e] = (r, c)
        pos.append(p)
    index = {tuple(map(tuple, rows)): k for k, rows in enumerate(tableaux_rows)}
    n = len(tableaux_rows)
    mat = np.zeros((n, n))
    for k, p in enumerate(pos):
        (r1, c1), (r2, c2) = p[i], p[i + 1]
        d = (c2 - r2) - (c1 - r1)
        mat[k, k] = 1.0 / d
        if abs(d) > 1:
            swapped = tuple(
                tuple(i + 1 if e == i else i if e == i + 1 else e for e in row)
                for row in tableaux_rows[k]
            )
            mat[index[swapped], k] = math.sqrt(1.0 - 1.0 / d**2)
    return mat
