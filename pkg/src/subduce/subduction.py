"""Subduction systems for ``[lam] -> [lam1] x [lam2]`` and the rules that prune them.

The unknowns are the coefficients ``C(m, m1, m2)`` of the split basis
vectors in the standard basis of ``[lam]``.  Requiring that ``g_i`` acts on
the split vectors through ``[lam1]`` (``i < f1``) or ``[lam2]`` (``i > f1``)
gives, for every ``(i, m, m1, m2)``, one equation with at most three terms::

    alpha C(m, m1, m2) - beta_i(m) C(g_i m, m1, m2) + beta(m_k) C(m, .., g m_k, ..) = 0

where ``alpha`` is the difference of the diagonal weights of the subalgebra
tableau ``m_k`` and of ``m``.

Two facts shrink this system.  A coefficient vanishes unless ``m`` restricted
to ``1..f1`` equals ``m1`` (selection rule), and it is unchanged when
``g_i``, ``i < f1``, moves ``m`` and ``m1`` together (identity rule).  The
surviving coefficients are therefore indexed by a skew filling ``t`` of
``lam / lam1`` and by ``m2``, and only the generators ``i > f1`` couple them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .hecke_rep import beta, diagonal_weight
from .tableaux import (
    Partition,
    SkewFilling,
    StandardTableau,
    as_partition,
    enumerate_skew_fillings,
    enumerate_syt,
    hook_dimension,
    lr_multiplicity,
)


class Mode(str, Enum):
    FULL = "full"
    REDUCED = "reduced"


@dataclass(frozen=True)
class SubductionProblem:
    """The triple ``(lam, lam1, lam2)`` with ``|lam1| + |lam2| = |lam|``."""

    lam: Partition
    lam1: Partition
    lam2: Partition

    def __post_init__(self) -> None:
        for name in ("lam", "lam1", "lam2"):
            object.__setattr__(self, name, as_partition(getattr(self, name)))
        if self.lam1.size + self.lam2.size != self.lam.size:
            raise ValueError(
                f"sizes do not add up: |{self.lam1}| + |{self.lam2}| != |{self.lam}|"
            )
        if self.lam1.size < 1 or self.lam2.size < 1:
            raise ValueError("both subalgebra partitions must be nonempty")

    @classmethod
    def of(cls, lam, lam1, lam2) -> "SubductionProblem":
        return cls(as_partition(lam), as_partition(lam1), as_partition(lam2))

    @property
    def f(self) -> int:
        return self.lam.size

    @property
    def f1(self) -> int:
        return self.lam1.size

    @property
    def f2(self) -> int:
        return self.lam2.size

    @property
    def nested(self) -> bool:
        return self.lam.contains(self.lam1)

    def multiplicity(self) -> int:
        return lr_multiplicity(self.lam, self.lam1, self.lam2)

    def full_unknowns(self) -> int:
        return hook_dimension(self.lam) * hook_dimension(self.lam1) * hook_dimension(self.lam2)

    def skew_fillings(self) -> list[SkewFilling]:
        return enumerate_skew_fillings(self.lam, self.lam1) if self.nested else []

    def __str__(self) -> str:
        return f"[{self.lam}] -> [{self.lam1}] x [{self.lam2}]"

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "lambda1": self.lam1.to_json(),
            "lambda2": self.lam2.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SubductionProblem":
        return cls.of(data["lambda"], data["lambda1"], data["lambda2"])


# ---------------------------------------------------------------------------
# crossing and bridge pairs


class PairKind(str, Enum):
    EQUAL = "equal"
    CROSSING = "crossing"
    BRIDGE = "bridge"


@dataclass(frozen=True)
class PairClassification:
    """``index`` is the separation of a crossing pair or the cut of a bridge pair."""

    kind: PairKind
    index: int | None = None


def _moved(m: StandardTableau, i: int) -> bool:
    return abs(m.axial_distance(i)) != 1


def cut(m: StandardTableau, other: StandardTableau) -> int:
    """Smallest ``i`` with ``d_i(m) != d_i(other)``."""
    if m.shape != other.shape:
        raise ValueError(f"shape mismatch: {m.shape!r} vs {other.shape!r}")
    for i in range(1, m.size):
        if m.axial_distance(i) != other.axial_distance(i):
            return i
    raise ValueError("equal tableaux have no cut")


def classify_pair(m: StandardTableau, other: StandardTableau) -> PairClassification:
    """Classify a same-shape pair as equal, crossing (with separation) or bridge (with cut)."""
    if m.shape != other.shape:
        raise ValueError(f"shape mismatch: {m.shape!r} vs {other.shape!r}")
    if m == other:
        return PairClassification(PairKind.EQUAL)
    for i in range(1, m.size):
        if m.axial_distance(i) != other.axial_distance(i) and _moved(m, i) == _moved(other, i):
            return PairClassification(PairKind.CROSSING, i)
    return PairClassification(PairKind.BRIDGE, cut(m, other))


def bridge_path(
    m: StandardTableau, other: StandardTableau
) -> list[tuple[StandardTableau, StandardTableau]]:
    """Every pair visited by applying ``g_cut`` to both tableaux until a crossing pair.

    The first item is the input pair and the last is crossing.
    """
    if m == other:
        raise ValueError("bridge walk needs two distinct tableaux")
    path = [(m, other)]
    kind = classify_pair(m, other)
    limit = kind.index or 0
    while kind.kind is PairKind.BRIDGE:
        if len(path) > limit:
            raise RuntimeError(f"bridge walk did not terminate from {m} / {other}")
        i = kind.index
        m, other = m.apply_generator(i), other.apply_generator(i)
        path.append((m, other))
        kind = classify_pair(m, other)
    return path


def bridge_walk(
    m: StandardTableau, other: StandardTableau
) -> tuple[StandardTableau, StandardTableau]:
    return bridge_path(m, other)[-1]


def selection_admissible(m: StandardTableau, m1: StandardTableau, f1: int) -> bool:
    """True iff ``m`` restricted to ``1..f1`` is ``m1``; otherwise the coefficient vanishes."""
    if m1.size != f1 or m.size < f1:
        raise ValueError(f"size mismatch: |m|={m.size}, |m1|={m1.size}, f1={f1}")
    return m.restrict(f1) == m1


# ---------------------------------------------------------------------------
# system assembly


@dataclass(frozen=True, eq=False)
class SubductionSystem:
    """Sparse homogeneous system ``matrix @ x = 0``.

    Column labels are index tuples into the tableau lists:
    ``(m, m1, m2)`` in full mode and ``(t, m2)`` in reduced mode.  Row labels
    prepend the generator index: ``(i, m, m1, m2)`` or ``(i, t, m2)``.
    """

    problem: SubductionProblem
    q: float
    mode: Mode
    matrix: sp.csr_matrix = field(repr=False)
    columns: tuple[tuple[int, ...], ...] = field(repr=False)
    rows: tuple[tuple[int, ...], ...] = field(repr=False)
    tableaux: tuple[StandardTableau, ...] = field(repr=False, default=())
    tableaux1: tuple[StandardTableau, ...] = field(repr=False, default=())
    tableaux2: tuple[StandardTableau, ...] = field(repr=False, default=())
    skews: tuple[SkewFilling, ...] = field(repr=False, default=())

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    @cached_property
    def column_index(self) -> dict[tuple[int, ...], int]:
        return {label: k for k, label in enumerate(self.columns)}

    @cached_property
    def row_index(self) -> dict[tuple[int, ...], int]:
        return {label: k for k, label in enumerate(self.rows)}

    def column_objects(self, col: int) -> tuple:
        label = self.columns[col]
        if self.mode is Mode.FULL:
            a, b, c = label
            return self.tableaux[a], self.tableaux1[b], self.tableaux2[c]
        a, c = label
        return self.skews[a], self.tableaux2[c]

    def row_generator(self, row: int) -> int:
        return self.rows[row][0]

    def permuted_rows(self, perm: Sequence[int]) -> "SubductionSystem":
        """Same system with rows reordered; the solver must not care."""
        perm = np.asarray(perm)
        return SubductionSystem(
            self.problem,
            self.q,
            self.mode,
            self.matrix[perm],
            self.columns,
            tuple(self.rows[k] for k in perm),
            self.tableaux,
            self.tableaux1,
            self.tableaux2,
            self.skews,
        )

    def nonzero_rows(self) -> np.ndarray:
        """Indices of rows with at least one nonzero coefficient."""
        return np.flatnonzero(np.diff(self.matrix.indptr) > 0)

    def triplets(self) -> list[tuple[int, int, float]]:
        coo = self.matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return [(int(coo.row[k]), int(coo.col[k]), float(coo.data[k])) for k in order]


def equation_indices(problem: SubductionProblem, mode: Mode | str = Mode.FULL) -> list[int]:
    """Generator indices contributing equations; ``g_{f1}`` is never one."""
    mode = Mode(mode)
    upper = list(range(problem.f1 + 1, problem.f))
    if mode is Mode.REDUCED:
        return upper
    return list(range(1, problem.f1)) + upper


class _Rows:
    def __init__(self) -> None:
        self.labels: list[tuple[int, ...]] = []
        self.r: list[int] = []
        self.c: list[int] = []
        self.v: list[float] = []

    def add(self, label: tuple[int, ...], terms: list[tuple[int, float]]) -> None:
        row = len(self.labels)
        self.labels.append(label)
        for col, val in terms:
            if val != 0.0:
                self.r.append(row)
                self.c.append(col)
                self.v.append(val)

    def matrix(self, ncols: int) -> sp.csr_matrix:
        m = sp.csr_matrix((self.v, (self.r, self.c)), shape=(len(self.labels), ncols))
        m.sum_duplicates()
        return m


def _three_terms(
    d_big: int, d_small: int, q: float, col: int, col_big: int | None, col_small: int | None
) -> list[tuple[int, float]]:
    """``alpha x - beta(d_big) x[g m] + beta(d_small) x[g m_k]`` as (column, value) terms."""
    terms = []
    if d_big != d_small:
        terms.append((col, diagonal_weight(d_small, q) - diagonal_weight(d_big, q)))
    if col_big is not None:
        terms.append((col_big, -beta(d_big, q)))
    if col_small is not None:
        terms.append((col_small, beta(d_small, q)))
    return terms


def assemble_system(
    problem: SubductionProblem, q: float, mode: Mode | str = Mode.REDUCED
) -> SubductionSystem:
    """Build the full ``(m, m1, m2)`` system or the reduced ``(t, m2)`` system."""
    try:
        mode = Mode(mode)
    except ValueError:
        raise ValueError(f"invalid mode {mode!r}; expected 'full' or 'reduced'") from None
    q = float(q)
    if not q > 0:
        raise ValueError(f"q must be positive, got {q}")
    if mode is Mode.FULL:
        return _assemble_full(problem, q)
    return _assemble_reduced(problem, q)


def _assemble_reduced(problem: SubductionProblem, q: float) -> SubductionSystem:
    f1 = problem.f1
    skews = tuple(problem.skew_fillings())
    tabs2 = tuple(enumerate_syt(problem.lam2))
    t_index = {t: k for k, t in enumerate(skews)}
    m2_index = {t: k for k, t in enumerate(tabs2)}
    n2 = len(tabs2)
    columns = tuple((a, b) for a in range(len(skews)) for b in range(n2))

    def col(a: int, b: int) -> int:
        return a * n2 + b

    rows = _Rows()
    for i in equation_indices(problem, Mode.REDUCED):
        j = i - f1
        for a, t in enumerate(skews):
            d = t.axial_distance(i)
            a_moved = t_index[t.apply_generator(i)] if abs(d) != 1 else None
            for b, m2 in enumerate(tabs2):
                d2 = m2.axial_distance(j)
                b_moved = m2_index[m2.apply_generator(j)] if abs(d2) != 1 else None
                rows.add(
                    (i, a, b),
                    _three_terms(
                        d,
                        d2,
                        q,
                        col(a, b),
                        None if a_moved is None else col(a_moved, b),
                        None if b_moved is None else col(a, b_moved),
                    ),
                )
    return SubductionSystem(
        problem,
        q,
        Mode.REDUCED,
        rows.matrix(len(columns)),
        columns,
        tuple(rows.labels),
        (),
        (),
        tabs2,
        skews,
    )


def _assemble_full(problem: SubductionProblem, q: float) -> SubductionSystem:
    f1 = problem.f1
    tabs = tuple(enumerate_syt(problem.lam))
    tabs1 = tuple(enumerate_syt(problem.lam1))
    tabs2 = tuple(enumerate_syt(problem.lam2))
    idx = {t: k for k, t in enumerate(tabs)}
    idx1 = {t: k for k, t in enumerate(tabs1)}
    idx2 = {t: k for k, t in enumerate(tabs2)}
    n1, n2 = len(tabs1), len(tabs2)
    columns = tuple((a, b, c) for a in range(len(tabs)) for b in range(n1) for c in range(n2))

    def col(a: int, b: int, c: int) -> int:
        return (a * n1 + b) * n2 + c

    rows = _Rows()
    for i in equation_indices(problem, Mode.FULL):
        lower = i < f1
        for a, m in enumerate(tabs):
            d = m.axial_distance(i)
            a_moved = idx[m.apply_generator(i)] if abs(d) != 1 else None
            for b, m1 in enumerate(tabs1):
                for c, m2 in enumerate(tabs2):
                    if lower:
                        dk = m1.axial_distance(i)
                        moved = idx1[m1.apply_generator(i)] if abs(dk) != 1 else None
                        col_small = None if moved is None else col(a, moved, c)
                    else:
                        dk = m2.axial_distance(i - f1)
                        moved = idx2[m2.apply_generator(i - f1)] if abs(dk) != 1 else None
                        col_small = None if moved is None else col(a, b, moved)
                    rows.add(
                        (i, a, b, c),
                        _three_terms(
                            d,
                            dk,
                            q,
                            col(a, b, c),
                            None if a_moved is None else col(a_moved, b, c),
                            col_small,
                        ),
                    )
    return SubductionSystem(
        problem,
        q,
        Mode.FULL,
        rows.matrix(len(columns)),
        columns,
        tuple(rows.labels),
        tabs,
        tabs1,
        tabs2,
        (),
    )


def embedding_matrix(full: SubductionSystem, reduced: SubductionSystem) -> sp.csr_matrix:
    """Map reduced unknowns ``(t, m2)`` onto ``(m1 + t, m1, m2)`` for every ``m1``."""
    if full.mode is not Mode.FULL or reduced.mode is not Mode.REDUCED:
        raise ValueError("need a full and a reduced system")
    idx = {t: k for k, t in enumerate(full.tableaux)}
    rows, cols = [], []
    for rcol, (a, c) in enumerate(reduced.columns):
        t = reduced.skews[a]
        for b, m1 in enumerate(full.tableaux1):
            m = t.extend(m1)
            rows.append(full.column_index[(idx[m], b, c)])
            cols.append(rcol)
    shape = (len(full.columns), len(reduced.columns))
    return sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=shape)


# ---------------------------------------------------------------------------
# subduction graph


@dataclass(frozen=True, eq=False)
class SubductionGraph:
    """Unknowns linked when they share an equation; edges carry the generator index."""

    system: SubductionSystem = field(repr=False)
    edges: tuple[tuple[int, int, int], ...]

    @property
    def nodes(self) -> range:
        return range(len(self.system.columns))

    @cached_property
    def components(self) -> list[list[int]]:
        n = len(self.system.columns)
        if not n:
            return []
        if self.edges:
            u, v, _ = np.array(self.edges).T
        else:
            u = v = np.array([], dtype=int)
        adj = sp.csr_matrix((np.ones(len(u)), (u, v)), shape=(n, n))
        _, labels = connected_components(adj, directed=False)
        groups: dict[int, list[int]] = {}
        for node, lab in enumerate(labels):
            groups.setdefault(int(lab), []).append(node)
        return sorted(groups.values())

    def node_label(self, node: int) -> str:
        return ";".join(str(t) for t in self.system.column_objects(node))

    def to_dot(self) -> str:
        lines = ["graph subduction {", f'  label="{self.system.problem} ({self.system.mode.value})";']
        for node in self.nodes:
            lines.append(f'  n{node} [label="{self.node_label(node)}"];')
        for u, v, i in self.edges:
            lines.append(f'  n{u} -- n{v} [label="g{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_graph(system: SubductionSystem) -> SubductionGraph:
    edges = set()
    mat = system.matrix
    for row in range(mat.shape[0]):
        cols = sorted(int(c) for c in mat.indices[mat.indptr[row] : mat.indptr[row + 1]])
        i = system.row_generator(row)
        for x in range(len(cols)):
            for y in range(x + 1, len(cols)):
                edges.add((cols[x], cols[y], i))
    return SubductionGraph(system, tuple(sorted(edges)))
