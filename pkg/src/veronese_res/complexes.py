"""Graded free modules, graded matrices and complexes over the ambient ring S."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Sequence

from .poly import QQ, Field, NOT_HOMOGENEOUS, Polynomial, Ring, ZERO_DEGREE


class ComplexError(ValueError):
    pass


class GradedFreeModule:
    """``sum_j S(-a_j)``; the twists are kept in summand order."""

    __slots__ = ("twists",)

    def __init__(self, twists: Sequence[int]):
        twists = tuple(int(a) for a in twists)
        if any(a < 0 for a in twists):
            raise ComplexError("twists must be non-negative")
        self.twists = twists

    @property
    def rank(self) -> int:
        return len(self.twists)

    def dim(self, n: int) -> int:
        """Dimension of the degree-``n`` piece over the 6-variable ring."""
        return sum(comb(n - a + 5, 5) for a in self.twists if n >= a)

    def __add__(self, other: "GradedFreeModule") -> "GradedFreeModule":
        return GradedFreeModule(self.twists + other.twists)

    def __eq__(self, other):
        return isinstance(other, GradedFreeModule) and self.twists == other.twists

    def __hash__(self):
        return hash(self.twists)

    def __repr__(self):
        counts = Counter(self.twists)
        parts = [f"S(-{a})^{k}" if k > 1 else f"S(-{a})" for a, k in counts.items()]
        return " + ".join(parts) if parts else "0"


class GradedMatrix:
    """Matrix of a degree-0 map ``source -> target``; ``entries[r][c]``."""

    __slots__ = ("source", "target", "entries", "field")

    def __init__(self, source: GradedFreeModule, target: GradedFreeModule, entries, check: bool = True):
        rows = tuple(tuple(row) for row in entries)
        if len(rows) != target.rank or any(len(row) != source.rank for row in rows):
            raise ComplexError(
                f"entries have shape {len(rows)}x{len(rows[0]) if rows else 0}, "
                f"expected {target.rank}x{source.rank}"
            )
        self.source = source
        self.target = target
        self.entries = rows
        self.field = rows[0][0].field if rows and rows[0] else QQ
        if check:
            self.check_degrees()

    @property
    def shape(self):
        return (self.target.rank, self.source.rank)

    def check_degrees(self):
        for r, row in enumerate(self.entries):
            for c, e in enumerate(row):
                if e.ring is not Ring.AMBIENT:
                    raise ComplexError(f"entry ({r}, {c}) is not in the ambient ring")
                deg = e.homogeneous_degree()
                if deg == ZERO_DEGREE:
                    continue
                want = self.source.twists[c] - self.target.twists[r]
                if deg is NOT_HOMOGENEOUS or deg != want:
                    raise ComplexError(
                        f"entry ({r}, {c}) = {e} has degree {deg}, expected {want}"
                    )

    def column(self, c: int) -> tuple:
        return tuple(row[c] for row in self.entries)

    def row(self, r: int) -> tuple:
        return self.entries[r]

    def block(self, rows: range, cols: range) -> tuple:
        return tuple(tuple(self.entries[r][c] for c in cols) for r in rows)

    def __matmul__(self, other: "GradedMatrix") -> tuple:
        """Symbolic product ``self * other`` as a plain tuple of rows."""
        if other.target != self.source:
            raise ComplexError("shapes do not chain")
        return matmul(self.entries, other.entries)

    def with_entry(self, r: int, c: int, value: Polynomial) -> "GradedMatrix":
        rows = [list(row) for row in self.entries]
        rows[r][c] = value
        return GradedMatrix(self.source, self.target, rows, check=False)

    def change_field(self, field: Field) -> "GradedMatrix":
        rows = [[e.change_field(field) for e in row] for row in self.entries]
        return GradedMatrix(self.source, self.target, rows, check=False)

    def nonzero_positions(self):
        return [(r, c) for r, row in enumerate(self.entries) for c, e in enumerate(row) if e]

    def __eq__(self, other):
        return (
            isinstance(other, GradedMatrix)
            and self.source == other.source
            and self.target == other.target
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"GradedMatrix({self.target!r} <- {self.source!r})"


def matmul(A, B) -> tuple:
    """Product of two matrices given as row tuples of polynomials."""
    n = len(B)
    if A and len(A[0]) != n:
        raise ComplexError("inner dimensions differ")
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        out_row = []
        for c in range(cols):
            acc = None
            for k in range(n):
                a = row[k]
                if not a:
                    continue
                b = B[k][c]
                if not b:
                    continue
                acc = a * b if acc is None else acc + a * b
            if acc is None:
                acc = Polynomial.zero(Ring.AMBIENT, row[0].field if row else QQ)
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


@dataclass(frozen=True)
class BettiTable:
    """``(i, j) -> number of S(-j) summands of E_i``."""

    entries: dict

    @classmethod
    def from_modules(cls, modules: Sequence[GradedFreeModule]) -> "BettiTable":
        table = {}
        for i, E in enumerate(modules):
            for a, k in Counter(E.twists).items():
                table[(i, a)] = table.get((i, a), 0) + k
        return cls(dict(sorted(table.items())))

    def rank(self, i: int) -> int:
        return sum(k for (ii, _), k in self.entries.items() if ii == i)

    def __eq__(self, other):
        if isinstance(other, dict):
            return self.entries == other
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __getitem__(self, key):
        return self.entries.get(key, 0)

    def format(self) -> str:
        """Macaulay2-style table: row ``j - i``, column ``i``."""
        if not self.entries:
            return "(empty)"
        n_cols = max(i for i, _ in self.entries) + 1
        shifts = sorted({j - i for i, j in self.entries})
        width = max(len(str(k)) for k in self.entries.values()) + 1
        width = max(width, len(str(n_cols - 1)) + 1)
        lines = ["      " + "".join(f"{i:>{width}}" for i in range(n_cols))]
        lines.append("total:" + "".join(f"{self.rank(i):>{width}}" for i in range(n_cols)))
        for s in shifts:
            cells = []
            for i in range(n_cols):
                k = self.entries.get((i, i + s), 0)
                cells.append(f"{k if k else '.':>{width}}")
            lines.append(f"{s:>5}:" + "".join(cells))
        return "\n".join(lines)

    def to_json(self) -> list:
        return [[i, j, k] for (i, j), k in self.entries.items()]


@dataclass
class ResolutionComplex:
    """``E_n -> ... -> E_1 -> E_0 = S`` with ``differentials[i-1]: E_i -> E_{i-1}``."""

    modules: list
    differentials: list
    field: Field = QQ
    provenance: dict = dc_field(default_factory=dict)
    warnings: list = dc_field(default_factory=list)

    def __post_init__(self):
        if len(self.differentials) != len(self.modules) - 1:
            raise ComplexError("need exactly one differential per non-zero position")
        for i, d in enumerate(self.differentials, start=1):
            if d.source != self.modules[i] or d.target != self.modules[i - 1]:
                raise ComplexError(f"d_{i} does not map E_{i} -> E_{i - 1}")

    @property
    def length(self) -> int:
        return len(self.differentials)

    def d(self, i: int) -> GradedMatrix:
        """The differential ``d_i: E_i -> E_{i-1}`` (1-based)."""
        return self.differentials[i - 1]

    def betti_table(self) -> BettiTable:
        return BettiTable.from_modules(self.modules)

    def replace_differential(self, i: int, d: GradedMatrix) -> "ResolutionComplex":
        ds = list(self.differentials)
        ds[i - 1] = d
        return ResolutionComplex(list(self.modules), ds, self.field, dict(self.provenance), list(self.warnings))

    def change_field(self, field: Field) -> "ResolutionComplex":
        if field == self.field:
            return self
        prov = dict(self.provenance)
        if "f" in prov:
            prov["f"] = prov["f"].change_field(field)
        ds = [d.change_field(field) for d in self.differentials]
        return ResolutionComplex(list(self.modules), ds, field, prov, list(self.warnings))

    @property
    def curve(self) -> Polynomial | None:
        return self.provenance.get("f")

    @property
    def degree(self) -> int | None:
        return self.provenance.get("d")


def identity_block(k: int, value: Polynomial) -> list:
    zero = Polynomial.zero(Ring.AMBIENT, value.field)
    return [[value if r == c else zero for c in range(k)] for r in range(k)]


def zero_block(rows: int, cols: int, field: Field) -> list:
    zero = Polynomial.zero(Ring.AMBIENT, field)
    return [[zero] * cols for _ in range(rows)]


def block_matrix(blocks) -> list:
    """Assemble ``[[A, B], [C, D]]``-style nested blocks into plain rows."""
    rows = []
    for block_row in blocks:
        height = len(block_row[0])
        for r in range(height):
            row = []
            for blk in block_row:
                row.extend(blk[r])
            rows.append(row)
    return rows
