"""Partitions, standard and skew tableaux, and Littlewood-Richardson numbers.

Tableau entries are 1-based (``1..f``); cell coordinates are 0-based
``(row, column)`` pairs.  The content of a cell is ``column - row`` and the
axial distance of ``i`` is ``content(i + 1) - content(i)``, so ``i, i + 1``
adjacent in a row give ``+1`` and adjacent in a column give ``-1``.

Every enumeration returns tableaux in one fixed canonical order: the
sequences of positions of the entries ``f, f - 1, ...`` are compared
lexicographically by ``(row, column)`` and sorted in decreasing order, so a
tableau whose largest entry sits lower in the diagram comes first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence

Cell = tuple[int, int]


@dataclass(frozen=True, order=False)
class Partition:
    """A weakly decreasing tuple of positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the comma-separated form ``"4,3,2,1"``."""
        text = text.strip().strip("[]()")
        if not text:
            return cls(())
        try:
            parts = tuple(int(p) for p in text.split(","))
        except ValueError:
            raise ValueError(f"cannot parse partition {text!r}") from None
        return cls(parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, row: int) -> int:
        return self.parts[row] if row < len(self.parts) else 0

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))

    def __repr__(self) -> str:
        return f"Partition([{self}])"

    def cells(self) -> list[Cell]:
        return [(r, c) for r, n in enumerate(self.parts) for c in range(n)]

    def contains(self, other: "Partition") -> bool:
        """True if ``other`` fits inside this diagram cell-wise."""
        return len(other) <= len(self) and all(self[r] >= n for r, n in enumerate(other.parts))

    def corners(self) -> list[int]:
        """Rows whose last cell can be removed leaving a partition."""
        return [r for r, n in enumerate(self.parts) if n > self[r + 1]]

    def remove_from_row(self, row: int) -> "Partition":
        parts = list(self.parts)
        parts[row] -= 1
        return Partition(tuple(p for p in parts if p))

    def hooks(self) -> list[int]:
        conj = self.conjugate()
        return [(n - c) + (conj[c] - r) - 1 for r, n in enumerate(self.parts) for c in range(n)]

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for n in self.parts if n > c) for c in range(self.parts[0])))

    def to_json(self) -> list[int]:
        return list(self.parts)


def as_partition(value: Partition | Sequence[int] | str) -> Partition:
    if isinstance(value, Partition):
        return value
    if isinstance(value, str):
        return Partition.parse(value)
    return Partition(tuple(value))


def partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""

    def gen(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return [Partition(p) for p in gen(n, n)]


class _Filling:
    """Shared behaviour of standard and skew fillings.

    Subclasses provide ``rows`` (entries per row, left to right) and
    ``row_offsets`` (column of the first filled cell of each row).
    """

    rows: tuple[tuple[int, ...], ...]

    @property
    def row_offsets(self) -> tuple[int, ...]:
        raise NotImplementedError

    @cached_property
    def positions(self) -> dict[int, Cell]:
        offsets = self.row_offsets
        return {
            e: (r, offsets[r] + c) for r, row in enumerate(self.rows) for c, e in enumerate(row)
        }

    @cached_property
    def entries(self) -> tuple[int, ...]:
        return tuple(sorted(self.positions))

    def content(self, entry: int) -> int:
        r, c = self.positions[entry]
        return c - r

    def _check_index(self, i: int) -> None:
        entries = self.entries
        if not entries or i < entries[0] or i + 1 > entries[-1]:
            raise IndexError(f"generator index {i} out of range for entries {self._span()}")

    def _span(self) -> str:
        e = self.entries
        return f"{e[0]}..{e[-1]}" if e else "(empty)"

    def axial_distance(self, i: int) -> int:
        """``content(i + 1) - content(i)``; never zero for a standard filling."""
        self._check_index(i)
        return self.content(i + 1) - self.content(i)

    def _swapped_rows(self, i: int) -> tuple[tuple[int, ...], ...]:
        swap = {i: i + 1, i + 1: i}
        return tuple(tuple(swap.get(e, e) for e in row) for row in self.rows)

    def _swap_is_standard(self, i: int) -> bool:
        (r1, c1), (r2, c2) = self.positions[i], self.positions[i + 1]
        return r1 != r2 and c1 != c2

    def order_key(self) -> tuple[Cell, ...]:
        pos = self.positions
        return tuple((-pos[e][0], -pos[e][1]) for e in reversed(self.entries))

    def __str__(self) -> str:
        return "/".join(" ".join(map(str, row)) or "-" for row in self.rows)


@dataclass(frozen=True, eq=True)
class StandardTableau(_Filling):
    """A standard Young tableau, stored as its rows of entries."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(e) for e in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        shape = Partition(tuple(len(r) for r in rows))  # validates the diagram
        n = shape.size
        if sorted(e for row in rows for e in row) != list(range(1, n + 1)):
            raise ValueError(f"tableau entries must be 1..{n}: {rows}")
        for r, row in enumerate(rows):
            if any(a >= b for a, b in zip(row, row[1:])):
                raise ValueError(f"row {r} not increasing: {rows}")
            if r and any(rows[r - 1][c] >= e for c, e in enumerate(row)):
                raise ValueError(f"column not increasing below row {r - 1}: {rows}")

    @cached_property
    def shape(self) -> Partition:
        return Partition(tuple(len(r) for r in self.rows))

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    @property
    def row_offsets(self) -> tuple[int, ...]:
        return (0,) * len(self.rows)

    def apply_generator(self, i: int) -> "StandardTableau":
        """Swap ``i`` and ``i + 1`` if the result is standard, else return self."""
        self._check_index(i)
        if not self._swap_is_standard(i):
            return self
        return StandardTableau(self._swapped_rows(i))

    def restrict(self, k: int) -> "StandardTableau":
        """Keep only the entries ``1..k``."""
        if not 1 <= k <= self.size:
            raise ValueError(f"restriction size {k} out of range 1..{self.size}")
        rows = tuple(tuple(e for e in row if e <= k) for row in self.rows)
        return StandardTableau(tuple(r for r in rows if r))

    def skew_part(self, k: int) -> "SkewFilling":
        """The filling of ``shape / restrict(k).shape`` by the entries above ``k``."""
        inner = self.restrict(k).shape if k else Partition(())
        rows = tuple(tuple(e for e in row if e > k) for row in self.rows)
        return SkewFilling(self.shape, inner, rows)

    def to_json(self) -> dict:
        return {"shape": self.shape.to_json(), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "StandardTableau":
        tab = cls(tuple(tuple(r) for r in data["rows"]))
        if "shape" in data and list(tab.shape.parts) != list(data["shape"]):
            raise ValueError(f"shape {data['shape']} does not match rows {data['rows']}")
        return tab


@dataclass(frozen=True, eq=True)
class SkewFilling(_Filling):
    """A standard filling of ``outer / inner`` by the entries ``|inner|+1..|outer|``.

    ``rows[r]`` lists the entries of the skew cells of row ``r`` (possibly
    empty), left to right.
    """

    outer: Partition
    inner: Partition
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        outer, inner = as_partition(self.outer), as_partition(self.inner)
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "inner", inner)
        if not outer.contains(inner):
            raise ValueError(f"{inner!r} is not contained in {outer!r}")
        rows = tuple(tuple(int(e) for e in row) for row in self.rows)
        rows = rows + ((),) * (len(outer) - len(rows))
        object.__setattr__(self, "rows", rows)
        if len(rows) != len(outer) or any(
            len(row) != outer[r] - inner[r] for r, row in enumerate(rows)
        ):
            raise ValueError(f"rows {rows} do not fill {outer!r}/{inner!r}")
        lo = inner.size + 1
        if sorted(e for row in rows for e in row) != list(range(lo, outer.size + 1)):
            raise ValueError(f"skew entries must be {lo}..{outer.size}: {rows}")
        pos = self.positions
        for e, (r, c) in pos.items():
            for nb in ((r, c + 1), (r + 1, c)):
                other = self._at(nb)
                if other is not None and other <= e:
                    raise ValueError(f"skew filling not increasing at {nb}: {rows}")

    def _at(self, cell: Cell) -> int | None:
        r, c = cell
        if r >= len(self.rows):
            return None
        j = c - self.inner[r]
        return self.rows[r][j] if 0 <= j < len(self.rows[r]) else None

    @property
    def row_offsets(self) -> tuple[int, ...]:
        return tuple(self.inner[r] for r in range(len(self.rows)))

    def apply_generator(self, i: int) -> "SkewFilling":
        self._check_index(i)
        if not self._swap_is_standard(i):
            return self
        return SkewFilling(self.outer, self.inner, self._swapped_rows(i))

    def extend(self, base: StandardTableau) -> StandardTableau:
        """Glue a standard tableau of shape ``inner`` under this filling."""
        if base.shape != self.inner and not (base.size == 0 and self.inner.size == 0):
            raise ValueError(f"base shape {base.shape!r} differs from inner {self.inner!r}")
        rows = []
        for r in range(len(self.outer)):
            head = base.rows[r] if r < len(base.rows) else ()
            rows.append(tuple(head) + self.rows[r])
        return StandardTableau(tuple(rows))

    def to_json(self) -> dict:
        return {
            "outer": self.outer.to_json(),
            "inner": self.inner.to_json(),
            "rows": [list(r) for r in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SkewFilling":
        return cls(
            Partition(tuple(data["outer"])),
            Partition(tuple(data["inner"])),
            tuple(tuple(r) for r in data["rows"]),
        )


def _growth_chains(outer: Partition, inner: Partition) -> Iterator[list[int]]:
    """Yield row sequences ``rows[k]`` = row receiving entry ``|inner| + k + 1``.

    Built top-down: the largest entry goes into a removable corner of
    ``outer`` that stays outside ``inner``.
    """
    if outer == inner:
        yield []
        return
    for r in outer.corners():
        if outer[r] > inner[r]:
            smaller = outer.remove_from_row(r)
            for chain in _growth_chains(smaller, inner):
                yield chain + [r]


@lru_cache(maxsize=None)
def _syt_cached(shape: Partition) -> tuple[StandardTableau, ...]:
    tableaux = []
    for chain in _growth_chains(shape, Partition(())):
        rows: list[list[int]] = [[] for _ in shape.parts]
        for k, r in enumerate(chain, start=1):
            rows[r].append(k)
        tableaux.append(StandardTableau(tuple(tuple(r) for r in rows)))
    tableaux.sort(key=lambda t: t.order_key())
    return tuple(tableaux)


def enumerate_syt(shape: Partition | Sequence[int]) -> list[StandardTableau]:
    """All standard tableaux of ``shape`` in canonical order."""
    return list(_syt_cached(as_partition(shape)))


def hook_dimension(shape: Partition | Sequence[int]) -> int:
    """Number of standard tableaux, by the hook length formula."""
    shape = as_partition(shape)
    denom = 1
    for h in shape.hooks():
        denom *= h
    return factorial(shape.size) // denom


@lru_cache(maxsize=None)
def _skew_cached(outer: Partition, inner: Partition) -> tuple[SkewFilling, ...]:
    fillings = []
    base = inner.size
    for chain in _growth_chains(outer, inner):
        rows: list[list[int]] = [[] for _ in outer.parts]
        for k, r in enumerate(chain, start=base + 1):
            rows[r].append(k)
        fillings.append(SkewFilling(outer, inner, tuple(tuple(r) for r in rows)))
    fillings.sort(key=lambda t: t.order_key())
    return tuple(fillings)


def enumerate_skew_fillings(
    outer: Partition | Sequence[int], inner: Partition | Sequence[int]
) -> list[SkewFilling]:
    """All standard fillings of ``outer / inner`` in canonical order."""
    outer, inner = as_partition(outer), as_partition(inner)
    if not outer.contains(inner):
        raise ValueError(f"{inner!r} is not contained in {outer!r}")
    return list(_skew_cached(outer, inner))


@lru_cache(maxsize=None)
def count_skew_fillings(outer: Partition, inner: Partition) -> int:
    """``f^{outer/inner}`` by corner-removal recursion, without enumeration."""
    outer, inner = as_partition(outer), as_partition(inner)
    if not outer.contains(inner):
        return 0
    if outer == inner:
        return 1
    return sum(
        count_skew_fillings(outer.remove_from_row(r), inner)
        for r in outer.corners()
        if outer[r] > inner[r]
    )


def tableau_index(tableaux: Iterable[_Filling]) -> dict:
    return {t: k for k, t in enumerate(tableaux)}


def _column_reading_cells(outer: Partition, inner: Partition) -> list[Cell]:
    cells = [(r, c) for r in range(len(outer)) for c in range(inner[r], outer[r])]
    return sorted(cells, key=lambda rc: (-rc[1], rc[0]))


def lr_multiplicity(
    outer: Partition | Sequence[int],
    p1: Partition | Sequence[int],
    p2: Partition | Sequence[int],
) -> int:
    """Littlewood-Richardson coefficient ``c^{outer}_{p1, p2}``.

    Counts semistandard fillings of ``outer / p1`` with content ``p2`` whose
    column reading word (columns right to left, each read top to bottom) is
    a lattice word.
    """
    outer, p1, p2 = as_partition(outer), as_partition(p1), as_partition(p2)
    if p1.size + p2.size != outer.size:
        raise ValueError(f"sizes do not add up: |{p1}| + |{p2}| != |{outer}|")
    if not outer.contains(p1) or not outer.contains(p2):
        return 0
    cells = _column_reading_cells(outer, p1)
    content = p2.parts
    counts = [0] * len(content)
    value: dict[Cell, int] = {}

    def fill(k: int) -> int:
        if k == len(cells):
            return 1
        r, c = cells[k]
        lo = 1
        above = value.get((r - 1, c))
        if above is not None:
            lo = above + 1
        hi = len(content)
        right = value.get((r, c + 1))
        if right is not None:
            hi = min(hi, right)
        total = 0
        for v in range(lo, hi + 1):
            j = v - 1
            if counts[j] == content[j] or (j and counts[j] + 1 > counts[j - 1]):
                continue
            counts[j] += 1
            value[(r, c)] = v
            total += fill(k + 1)
            del value[(r, c)]
            counts[j] -= 1
        return total

    return fill(0)
