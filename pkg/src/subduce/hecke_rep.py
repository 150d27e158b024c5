"""Seminormal (Yamanouchi) matrices of the Hecke generators at real ``q``.

On the standard basis of ``[lam]`` the generator ``g_i`` acts by

    g_i |m> = q^d / [d]_q |m> + beta(d) |g_i(m)>,   d = d_i(m),

with ``[x]_q = (q^x - q^-x) / (q - q^-1)`` and
``beta(d) = sqrt(1 - 1 / [d]_q^2)``.  Matrices are real symmetric with at
most two nonzeros per row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .tableaux import Partition, StandardTableau, _Filling, as_partition, enumerate_syt


def _check_q(q: float) -> float:
    q = float(q)
    if not q > 0 or not math.isfinite(q):
        raise ValueError(f"q must be a positive real number, got {q}")
    return q


def quantum_number(x: float, q: float) -> float:
    """``[x]_q``, equal to ``x`` at ``q = 1`` by continuity.

    Evaluated as ``sinh(x h) / sinh(h)`` with ``h = log q``, which stays
    accurate as ``q`` approaches 1.
    """
    q = _check_q(q)
    h = math.log(q)
    if h == 0.0:
        return float(x)
    return math.sinh(x * h) / math.sinh(h)


def diagonal_weight(d: int, q: float) -> float:
    """``q^d / [d]_q``: the diagonal entry of ``g_i`` at axial distance ``d``."""
    if d == 0:
        raise ValueError("axial distance cannot be zero")
    return q**d / quantum_number(d, q)


def beta(d: int, q: float) -> float:
    """Off-diagonal weight ``sqrt(1 - 1/[d]_q^2)``; zero exactly when ``|d| = 1``."""
    if d == 0:
        raise ValueError("axial distance cannot be zero")
    if abs(d) == 1:
        return 0.0
    qn = quantum_number(abs(d), q)
    return math.sqrt(max(0.0, 1.0 - 1.0 / (qn * qn)))


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    """Matrix of ``g_index`` on ``[shape]`` in the canonical tableau order."""

    shape: Partition
    index: int
    q: float
    entries: sp.csr_matrix = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def dense(self) -> np.ndarray:
        return self.entries.toarray()

    def triplets(self) -> list[tuple[int, int, float]]:
        coo = self.entries.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return [(int(coo.row[k]), int(coo.col[k]), float(coo.data[k])) for k in order]


def generator_action(
    basis: Sequence[_Filling], index_of: dict, i: int, q: float, shift: int = 0
) -> sp.csr_matrix:
    """Matrix of ``g_{i}`` on any list of (standard or skew) fillings.

    ``shift`` offsets the generator index on the fillings, so the action of
    ``g_i`` on a skew filling whose entries start above ``shift`` can be
    expressed with the same call.
    """
    q = _check_q(q)
    rows, cols, vals = [], [], []
    for col, m in enumerate(basis):
        d = m.axial_distance(i + shift)
        rows.append(col)
        cols.append(col)
        vals.append(diagonal_weight(d, q))
        if abs(d) != 1:
            rows.append(index_of[m.apply_generator(i + shift)])
            cols.append(col)
            vals.append(beta(d, q))
    n = len(basis)
    return sp.csr_matrix((vals, (rows, cols)), shape=(n, n))


@lru_cache(maxsize=256)
def _tableau_index(shape: Partition) -> tuple[tuple[StandardTableau, ...], dict]:
    tabs = tuple(enumerate_syt(shape))
    return tabs, {t: k for k, t in enumerate(tabs)}


def generator_matrix(shape: Partition | Sequence[int], i: int, q: float) -> GeneratorMatrix:
    shape = as_partition(shape)
    q = _check_q(q)
    if not 1 <= i <= shape.size - 1:
        raise IndexError(f"generator index {i} out of range 1..{shape.size - 1}")
    tabs, index_of = _tableau_index(shape)
    return GeneratorMatrix(shape, i, q, generator_action(tabs, index_of, i, q))


def representation(shape: Partition | Sequence[int], q: float) -> list[GeneratorMatrix]:
    """All generator matrices ``g_1 .. g_{f-1}`` of ``[shape]``."""
    shape = as_partition(shape)
    return [generator_matrix(shape, i, q) for i in range(1, shape.size)]


@dataclass(frozen=True)
class HeckeRelationReport:
    shape: Partition
    q: float
    tol: float
    braid: float
    commute: float
    quadratic: float

    @property
    def passed(self) -> bool:
        return max(self.braid, self.commute, self.quadratic) < self.tol

    def as_dict(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "q": self.q,
            "tol": self.tol,
            "braid": self.braid,
            "commute": self.commute,
            "quadratic": self.quadratic,
            "pass": self.passed,
        }


def _max_abs(a: sp.spmatrix) -> float:
    a = sp.csr_matrix(a)
    return float(abs(a).max()) if a.nnz else 0.0


def verify_hecke_relations(
    shape: Partition | Sequence[int], q: float, tol: float = 1e-10
) -> HeckeRelationReport:
    """Largest entrywise residuals of the braid, commutation and quadratic relations."""
    shape = as_partition(shape)
    if not tol > 0:
        raise ValueError("tol must be positive")
    gens = [g.entries for g in representation(shape, q)]
    n = gens[0].shape[0] if gens else 1
    eye = sp.identity(n, format="csr")
    braid = commute = quadratic = 0.0
    for a, ga in enumerate(gens):
        quadratic = max(quadratic, _max_abs(ga @ ga - (q - 1.0 / q) * ga - eye))
        if a + 1 < len(gens):
            gb = gens[a + 1]
            braid = max(braid, _max_abs(ga @ gb @ ga - gb @ ga @ gb))
        for gb in gens[a + 2 :]:
            commute = max(commute, _max_abs(ga @ gb - gb @ ga))
    return HeckeRelationReport(shape, float(q), float(tol), braid, commute, quadratic)
