"""Kernel extraction, canonical orthonormal bases and verification of SDCs.

A solution is stored in reduced form ``c[t, m2, eta]`` over skew fillings
``t`` of ``lam / lam1``; the full coefficient is
``C(m, m1, m2, eta) = c[skew part of m, m2, eta]`` when ``m`` restricts to
``m1`` and zero otherwise.  Each multiplicity copy is normalised so that
``sum_t c[t, m2, eta] c[t, m2', eta'] = delta(m2, m2') delta(eta, eta')``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from . import __version__
from .hecke_rep import generator_action, representation
from .tableaux import (
    SkewFilling,
    StandardTableau,
    enumerate_syt,
    hook_dimension,
    lr_multiplicity,
    partitions,
)
from .subduction import (
    Mode,
    SubductionProblem,
    SubductionSystem,
    assemble_system,
    equation_indices,
)

DEFAULT_TOL = 1e-10
# numeric output precision and the magnitude below which stored values print as 0
SIG_DIGITS = 12
ZERO_SNAP = 1e-13


class DependentKernelError(ValueError):
    """Kernel vectors handed to :func:`canonicalize` are numerically dependent."""


def null_space(system: SubductionSystem, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal kernel basis as the rows of a ``(k, n)`` array.

    Singular values below ``tol * sigma_max`` count as zero.  Zero rows are
    dropped and the remaining rows sorted by label first, so any row
    permutation of the same system gives bit-identical output.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    n = system.matrix.shape[1]
    keep = system.nonzero_rows()
    if n == 0:
        return np.zeros((0, 0))
    if keep.size == 0:
        return np.eye(n)
    keep = np.array(sorted(keep, key=lambda r: system.rows[r]))
    dense = system.matrix[keep].toarray()
    basis = scipy.linalg.null_space(dense, rcond=tol)
    return np.ascontiguousarray(basis.T)


def _echelon(kernel: np.ndarray, pivot_tol: float) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of a basis; depends only on the spanned space."""
    m = np.array(kernel, dtype=float, copy=True)
    k, n = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == k:
            break
        p = r + int(np.argmax(np.abs(m[r:, c])))
        if abs(m[p, c]) <= pivot_tol:
            m[r:, c] = 0.0
            continue
        m[[r, p]] = m[[p, r]]
        m[r] /= m[r, c]
        for other in range(k):
            if other != r:
                m[other] -= m[other, c] * m[r]
                m[other, c] = 0.0
        m[r, c] = 1.0
        pivots.append(c)
        r += 1
    if r < k:
        raise DependentKernelError(
            f"kernel basis has rank {r} < {k}; the rank tolerance is probably too loose"
        )
    return m, pivots


def canonical_basis(kernel: np.ndarray, pivot_tol: float = 1e-8) -> np.ndarray:
    """Deterministic orthonormal basis of the row space of ``kernel``.

    Vector ``j`` spans, together with the later vectors, every kernel vector
    vanishing before the ``j``-th echelon pivot; it is orthogonal to the later
    ones and its first nonzero entry, at that pivot, is positive.
    """
    kernel = np.atleast_2d(np.asarray(kernel, dtype=float))
    if kernel.shape[0] == 0:
        return kernel.copy()
    rref, pivots = _echelon(kernel, pivot_tol)
    out = np.zeros_like(rref)
    for j in range(len(pivots) - 1, -1, -1):
        v = rref[j].copy()
        for later in range(j + 1, len(pivots)):
            v -= (out[later] @ v) * out[later]
        v /= np.linalg.norm(v)
        if v[pivots[j]] < 0:
            v = -v
        out[j] = v
    return out


@dataclass(frozen=True, eq=False)
class SDCSolution:
    """Subduction coefficients ``values[t, m2, eta]`` of one ``(lam, lam1, lam2)`` block."""

    problem: SubductionProblem
    q: float
    values: np.ndarray = field(repr=False)
    skews: tuple[SkewFilling, ...] = field(repr=False)
    tableaux2: tuple[StandardTableau, ...] = field(repr=False)
    tol: float = DEFAULT_TOL
    mode: Mode = Mode.REDUCED

    @property
    def multiplicity(self) -> int:
        return int(self.values.shape[2]) if self.values.ndim == 3 else 0

    def vectors(self) -> np.ndarray:
        """Reduced-system vectors, one row per ``eta``, in column order ``(t, m2)``."""
        return self.values.reshape(-1, self.multiplicity).T.copy()

    def coefficient(self, m: StandardTableau, m1: StandardTableau, m2: StandardTableau, eta: int) -> float:
        """``<lam; m | lam1, lam2; m1, m2>_eta`` with ``eta`` counted from 1."""
        if m.restrict(self.problem.f1) != m1:
            return 0.0
        a = self._skew_index[m.skew_part(self.problem.f1)]
        b = self._m2_index[m2]
        return float(self.values[a, b, eta - 1])

    @cached_property
    def _skew_index(self) -> dict:
        return {t: k for k, t in enumerate(self.skews)}

    @cached_property
    def _m2_index(self) -> dict:
        return {t: k for k, t in enumerate(self.tableaux2)}

    def records(self) -> Iterable[tuple[SkewFilling, StandardTableau, int, float]]:
        for a, t in enumerate(self.skews):
            for b, m2 in enumerate(self.tableaux2):
                for e in range(self.multiplicity):
                    yield t, m2, e + 1, float(self.values[a, b, e])

    def to_dict(self) -> dict:
        return {
            "problem": self.problem.to_json(),
            "q": _fmt(self.q),
            "tol": _fmt(self.tol),
            "mode": self.mode.value,
            "multiplicity": self.multiplicity,
            "unknowns": len(self.skews) * len(self.tableaux2),
            "version": __version__,
            "coefficients": [
                {"skew": t.to_json(), "m2": m2.to_json(), "eta": e, "value": _fmt(v)}
                for t, m2, e, v in self.records()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["skew", "m2", "eta", "value"])
        for t, m2, e, v in self.records():
            writer.writerow([_compact(t.rows), _compact(m2.rows), e, repr(_fmt(v))])
        return buf.getvalue()

    @classmethod
    def from_dict(cls, data: dict) -> "SDCSolution":
        problem = SubductionProblem.from_json(data["problem"])
        skews = tuple(problem.skew_fillings())
        tabs2 = tuple(enumerate_syt(problem.lam2))
        k = int(data["multiplicity"])
        values = np.zeros((len(skews), len(tabs2), k))
        s_idx = {t: n for n, t in enumerate(skews)}
        m_idx = {t: n for n, t in enumerate(tabs2)}
        for rec in data["coefficients"]:
            t = SkewFilling.from_json(rec["skew"])
            m2 = StandardTableau.from_json(rec["m2"])
            values[s_idx[t], m_idx[m2], int(rec["eta"]) - 1] = float(rec["value"])
        return cls(
            problem,
            float(data["q"]),
            values,
            skews,
            tabs2,
            float(data.get("tol", DEFAULT_TOL)),
            Mode(data.get("mode", "reduced")),
        )

    @classmethod
    def from_json(cls, text: str) -> "SDCSolution":
        return cls.from_dict(json.loads(text))


def _fmt(x: float) -> float:
    """Round to the output precision; tiny values become an exact 0."""
    if abs(x) < ZERO_SNAP:
        return 0.0
    return float(f"{x:.{SIG_DIGITS}g}")


def _compact(rows) -> str:
    return json.dumps([list(r) for r in rows], separators=(",", ":"))


def _reduced_coordinates(system: SubductionSystem, kernel: np.ndarray) -> np.ndarray:
    """Read full-mode kernel vectors at ``m1`` = first tableau of ``lam1``."""
    problem = system.problem
    base = system.tableaux1[0]
    idx = {t: k for k, t in enumerate(system.tableaux)}
    cols = []
    for t in problem.skew_fillings():
        a = idx[t.extend(base)]
        for c in range(len(system.tableaux2)):
            cols.append(system.column_index[(a, 0, c)])
    return kernel[:, cols]


def canonicalize(
    kernel: np.ndarray,
    problem: SubductionProblem,
    q: float,
    *,
    tol: float = DEFAULT_TOL,
    mode: Mode | str = Mode.REDUCED,
    system: SubductionSystem | None = None,
) -> SDCSolution:
    """Fix the multiplicity basis, phases and normalisation of a kernel.

    ``kernel`` holds one kernel vector per row, in reduced coordinates, or
    in full coordinates when ``system`` is the full system they came from.
    """
    mode = Mode(mode)
    skews = tuple(problem.skew_fillings())
    tabs2 = tuple(enumerate_syt(problem.lam2))
    kernel = np.atleast_2d(np.asarray(kernel, dtype=float))
    if system is not None and system.mode is Mode.FULL and kernel.shape[0]:
        kernel = _reduced_coordinates(system, kernel)
    n = len(skews) * len(tabs2)
    k = kernel.shape[0] if kernel.size else 0
    if k == 0:
        values = np.zeros((len(skews), len(tabs2), 0))
    else:
        if kernel.shape[1] != n:
            raise ValueError(f"kernel has {kernel.shape[1]} columns, expected {n}")
        basis = canonical_basis(kernel) * math.sqrt(len(tabs2))
        basis[np.abs(basis) < ZERO_SNAP] = 0.0
        values = basis.T.reshape(len(skews), len(tabs2), k)
    return SDCSolution(problem, float(q), values, skews, tabs2, float(tol), mode)


def solve(
    problem: SubductionProblem,
    q: float = 1.0,
    tol: float = DEFAULT_TOL,
    mode: Mode | str = Mode.REDUCED,
) -> SDCSolution:
    """Assemble, extract the kernel and canonicalise in one call."""
    mode = Mode(mode)
    system = assemble_system(problem, q, mode)
    kernel = null_space(system, tol)
    return canonicalize(kernel, problem, q, tol=tol, mode=mode, system=system)


def expand_full(solution: SDCSolution) -> np.ndarray:
    """Dense tensor ``C[m, m1, m2, eta]`` over the canonical tableau orders."""
    problem = solution.problem
    f1 = problem.f1
    tabs = enumerate_syt(problem.lam)
    idx1 = {t: k for k, t in enumerate(enumerate_syt(problem.lam1))}
    out = np.zeros(
        (len(tabs), len(idx1), len(solution.tableaux2), solution.multiplicity)
    )
    if not solution.multiplicity:
        return out
    for a, m in enumerate(tabs):
        b = idx1.get(m.restrict(f1))
        if b is None:
            continue
        out[a, b] = solution.values[solution._skew_index[m.skew_part(f1)]]
    return out


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class VerificationReport:
    residual_system: float
    residual_ortho_row: float
    residual_ortho_col: float | None
    residual_coupling: float
    tol: float
    multiplicity: int
    expected_multiplicity: int
    expanded: bool

    @property
    def checks(self) -> dict[str, bool]:
        out = {
            "system": self.residual_system < self.tol,
            "ortho_row": self.residual_ortho_row < self.tol,
            "coupling": self.residual_coupling < self.tol,
            "multiplicity": self.multiplicity == self.expected_multiplicity,
        }
        if self.residual_ortho_col is not None:
            out["ortho_col"] = self.residual_ortho_col < self.tol
        return out

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {
            "residual_system": self.residual_system,
            "residual_ortho_row": self.residual_ortho_row,
            "residual_ortho_col": self.residual_ortho_col,
            "residual_coupling": self.residual_coupling,
            "tol": self.tol,
            "multiplicity": self.multiplicity,
            "expected_multiplicity": self.expected_multiplicity,
            "expanded": self.expanded,
            "checks": self.checks,
            "pass": self.passed,
        }


# full tensors beyond this many entries are checked in reduced form
EXPAND_LIMIT = 4_000_000


def _max(x: np.ndarray) -> float:
    return float(np.max(np.abs(x))) if x.size else 0.0


def _sibling_blocks(solution: SDCSolution) -> list[SDCSolution]:
    """Every ``lam2'`` block of the same ``(lam, lam1)``, solved on the same settings."""
    problem = solution.problem
    blocks = []
    for lam2 in partitions(problem.f2):
        if lam2 == problem.lam2:
            blocks.append(solution)
        elif lr_multiplicity(problem.lam, problem.lam1, lam2):
            other = SubductionProblem(problem.lam, problem.lam1, lam2)
            blocks.append(solve(other, solution.q, solution.tol))
    return blocks


def verify_solution(
    solution: SDCSolution,
    q: float | None = None,
    tol: float = 1e-8,
    *,
    completeness: bool = True,
    expand: bool | None = None,
) -> VerificationReport:
    """Recheck the kernel equations, both unitarity sums and the coupling identities.

    With ``completeness`` every ``lam2`` block of ``(lam, lam1)`` is solved
    so the column sum over ``(lam2, m2, eta)`` can be formed.
    """
    q = solution.q if q is None else float(q)
    problem = solution.problem
    k = solution.multiplicity
    n_skew, n2 = len(solution.skews), len(solution.tableaux2)
    if expand is None:
        expand = problem.full_unknowns() * max(k, 1) <= EXPAND_LIMIT

    system = assemble_system(problem, q, Mode.REDUCED)
    vecs = solution.vectors() if k else np.zeros((0, n_skew * n2))
    res_sys = _max(system.matrix @ vecs.T) if k else 0.0

    # row unitarity: sum_m C(m,m1,m2,e) C(m,m1,m2',e') = delta
    if expand:
        full = expand_full(solution)
        gram = np.einsum("abce,abdf->bcedf", full, full)
        target = np.einsum("cd,ef->cedf", np.eye(n2), np.eye(k))
        res_row = _max(gram - target[None]) if k else 0.0
    else:
        full = None
        gram = np.einsum("ace,adf->cedf", solution.values, solution.values)
        target = np.einsum("cd,ef->cedf", np.eye(n2), np.eye(k))
        res_row = _max(gram - target) if k else 0.0

    res_col = None
    if completeness:
        res_col = _column_unitarity(solution, _sibling_blocks(solution), expand)

    res_cpl = _coupling_residual(solution, q, full) if k else 0.0
    return VerificationReport(
        res_sys,
        res_row,
        res_col,
        res_cpl,
        float(tol),
        k,
        problem.multiplicity() if problem.nested else 0,
        bool(expand),
    )


def _column_unitarity(solution: SDCSolution, blocks: list[SDCSolution], expand: bool) -> float:
    """``sum_{lam2, m2, eta} C(m, m1, ..) C(m', m1, ..) = delta(m, m')`` over ``m, m'`` restricting to ``m1``."""
    problem = solution.problem
    n_skew = len(solution.skews)
    if not n_skew:
        return 0.0
    if not expand:
        acc = np.zeros((n_skew, n_skew))
        for blk in blocks:
            x = blk.values.reshape(n_skew, -1)
            acc += x @ x.T
        return _max(acc - np.eye(n_skew))
    tabs = enumerate_syt(problem.lam)
    tabs1 = enumerate_syt(problem.lam1)
    idx1 = {t: k for k, t in enumerate(tabs1)}
    restrict = np.array([idx1.get(m.restrict(problem.f1), -1) for m in tabs])
    fulls = [expand_full(blk) for blk in blocks]
    worst = 0.0
    for b in range(len(tabs1)):
        acc = np.zeros((len(tabs), len(tabs)))
        for full in fulls:
            x = full[:, b].reshape(len(tabs), -1)
            acc += x @ x.T
        target = np.diag((restrict == b).astype(float))
        worst = max(worst, _max(acc - target))
    return worst


def _coupling_residual(solution: SDCSolution, q: float, full: np.ndarray | None) -> float:
    """Residual of ``g_i`` acting on split vectors as ``[lam1]`` or ``[lam2]`` does."""
    problem = solution.problem
    f1 = problem.f1
    worst = 0.0
    if full is not None:
        gens = {g.index: g.entries for g in representation(problem.lam, q)}
        gens1 = {g.index: g.dense() for g in representation(problem.lam1, q)}
        gens2 = {g.index: g.dense() for g in representation(problem.lam2, q)}
        flat = full.reshape(full.shape[0], -1)
        for i in equation_indices(problem, Mode.FULL):
            lhs = (gens[i] @ flat).reshape(full.shape)
            if i < f1:
                rhs = np.einsum("atce,tb->abce", full, gens1[i])
            else:
                rhs = np.einsum("abte,tc->abce", full, gens2[i - f1])
            worst = max(worst, _max(lhs - rhs))
        return worst
    # reduced form: only i > f1 carries information
    skews = list(solution.skews)
    s_idx = {t: k for k, t in enumerate(skews)}
    m_idx = {t: k for k, t in enumerate(solution.tableaux2)}
    for i in equation_indices(problem, Mode.REDUCED):
        g = generator_action(skews, s_idx, i, q)
        g2 = generator_action(list(solution.tableaux2), m_idx, i - f1, q).toarray()
        vals = solution.values
        lhs = (g @ vals.reshape(len(skews), -1)).reshape(vals.shape)
        rhs = np.einsum("ate,tc->ace", vals, g2)
        worst = max(worst, _max(lhs - rhs))
    return worst


# ---------------------------------------------------------------------------
# full-system oracle


@dataclass(frozen=True)
class OracleReport:
    """Comparison of the brute-force full kernel with the pruned reduced solve."""

    kernel_dim_full: int
    kernel_dim_reduced: int
    selection_residual: float
    identity_residual: float
    projector_distance: float
    tol_rules: float = 1e-9
    tol_projector: float = 1e-8

    @property
    def checks(self) -> dict[str, bool]:
        return {
            "dimensions": self.kernel_dim_full == self.kernel_dim_reduced,
            "selection_rule": self.selection_residual < self.tol_rules,
            "identity_rule": self.identity_residual < self.tol_rules,
            "projector": self.projector_distance < self.tol_projector,
        }

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {
            "kernel_dim_full": self.kernel_dim_full,
            "kernel_dim_reduced": self.kernel_dim_reduced,
            "selection_residual": self.selection_residual,
            "identity_residual": self.identity_residual,
            "projector_distance": self.projector_distance,
            "checks": self.checks,
            "pass": self.passed,
        }


def full_oracle(problem: SubductionProblem, q: float, tol: float = DEFAULT_TOL) -> OracleReport:
    """Solve the unpruned system and test both rules and the projector agreement on it."""
    from .subduction import embedding_matrix

    full_sys = assemble_system(problem, q, Mode.FULL)
    red_sys = assemble_system(problem, q, Mode.REDUCED)
    kf = null_space(full_sys, tol)
    kr = null_space(red_sys, tol)
    f1 = problem.f1
    tabs, tabs1 = full_sys.tableaux, full_sys.tableaux1
    idx, idx1 = (
        {t: k for k, t in enumerate(tabs)},
        {t: k for k, t in enumerate(tabs1)},
    )

    selection = identity = 0.0
    if kf.shape[0] and kf.shape[1]:
        coeffs = kf.reshape(kf.shape[0], len(tabs), len(tabs1), len(full_sys.tableaux2))
        # selection: every column with m restricted != m1 is zero
        mask = np.array([[m.restrict(f1) != m1 for m1 in tabs1] for m in tabs])
        selection = _max(coeffs[:, mask, :])
        # identity: C(m, m1, m2) = C(g_i m, g_i m1, m2) for i < f1
        for i in range(1, f1):
            pm = [idx[m.apply_generator(i)] for m in tabs]
            pm1 = [idx1[m1.apply_generator(i)] for m1 in tabs1]
            moved = coeffs[:, pm][:, :, pm1]
            identity = max(identity, _max(coeffs - moved))

    n_full = full_sys.matrix.shape[1]
    p_full = kf.T @ kf if kf.size else np.zeros((n_full, n_full))
    if kr.size and n_full:
        emb = embedding_matrix(full_sys, red_sys).toarray() @ kr.T
        emb /= math.sqrt(len(tabs1))
        p_red = emb @ emb.T
    else:
        p_red = np.zeros((n_full, n_full))
    dist = float(np.linalg.norm(p_full - p_red, 2)) if n_full else 0.0
    return OracleReport(kf.shape[0] if kf.size else 0, kr.shape[0] if kr.size else 0, selection, identity, dist)


def kernel_dimension(problem: SubductionProblem, q: float, tol: float = DEFAULT_TOL, mode: Mode | str = Mode.REDUCED) -> int:
    system = assemble_system(problem, q, mode)
    kern = null_space(system, tol)
    return kern.shape[0] if kern.size else 0
