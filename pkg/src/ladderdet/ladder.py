"""Staircase ladders: representation, parsing, corners, reflection and deletion moves.

Cells are 1-based ``(row, col)`` tuples, rows growing downward.  A ladder stores,
for every row, the closed column interval it occupies.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .errors import ConventionViolation, MissingCorner, NonStandardShape, NotALadder

Cell = tuple[int, int]


def satisfies_axiom(cells) -> bool:
    """True when (i,j),(p,q) in the set with i<p, j<q forces (i,q),(p,j) in it."""
    cells = set(cells)
    for (i, j), (p, q) in combinations(sorted(cells), 2):
        if i < p and j < q and ((i, q) not in cells or (p, j) not in cells):
            return False
    return True


@dataclass(frozen=True)
class Ladder:
    m: int
    n: int
    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lo", tuple(int(x) for x in self.lo))
        object.__setattr__(self, "hi", tuple(int(x) for x in self.hi))
        m, n, lo, hi = self.m, self.n, self.lo, self.hi
        if m < 1 or n < 1:
            raise ConventionViolation(f"grid must be at least 1x1, got {m}x{n}")
        if len(lo) != m or len(hi) != m:
            raise ConventionViolation("lo and hi must have one entry per row")
        for i in range(m):
            if not 1 <= lo[i] <= n or not 1 <= hi[i] <= n:
                raise ConventionViolation(f"row {i + 1} interval out of range")
            if lo[i] > hi[i]:
                raise ConventionViolation(f"row {i + 1} is empty")
        for i in range(m - 1):
            if lo[i + 1] > lo[i] or hi[i + 1] > hi[i]:
                raise NotALadder(f"rows {i + 1} and {i + 2} break staircase monotonicity")
        if hi[0] != n:
            raise ConventionViolation(f"cell (1,{n}) must belong to the ladder")
        if lo[-1] != 1:
            raise ConventionViolation(f"cell ({m},1) must belong to the ladder")
        for j in range(1, n + 1):
            if not any(lo[i] <= j <= hi[i] for i in range(m)):
                raise ConventionViolation(f"column {j} is empty")

    # construction

    @classmethod
    def from_cells(cls, cells, m=None, n=None) -> Ladder:
        cells = set(cells)
        if not cells:
            raise ConventionViolation("empty cell set")
        m = m or max(r for r, _ in cells)
        n = n or max(c for _, c in cells)
        if any(not (1 <= r <= m and 1 <= c <= n) for r, c in cells):
            raise ConventionViolation("cell outside the ambient grid")
        if not satisfies_axiom(cells):
            raise NotALadder("the rectangle-corner condition fails")
        lo, hi = [], []
        for r in range(1, m + 1):
            cols = sorted(c for rr, c in cells if rr == r)
            if not cols:
                raise ConventionViolation(f"row {r} is empty")
            if cols[-1] - cols[0] + 1 != len(cols):
                raise NonStandardShape(f"row {r} is not an interval")
            lo.append(cols[0])
            hi.append(cols[-1])
        try:
            return cls(m, n, lo, hi)
        except NotALadder as exc:
            # the axiom holds but rows are out of staircase order
            raise NonStandardShape(str(exc)) from None

    @classmethod
    def from_grid(cls, text: str) -> Ladder:
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ConventionViolation("empty grid")
        n = len(lines[0])
        if any(len(ln) != n for ln in lines):
            raise ConventionViolation("grid rows have different lengths")
        bad = {ch for ln in lines for ch in ln} - {"#", "."}
        if bad:
            raise ConventionViolation(f"unexpected grid characters: {''.join(sorted(bad))}")
        cells = {(r + 1, c + 1) for r, ln in enumerate(lines) for c, ch in enumerate(ln) if ch == "#"}
        return cls.from_cells(cells, len(lines), n)

    @classmethod
    def from_json(cls, data) -> Ladder:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(int(data["m"]), int(data["n"]), data["lo"], data["hi"])
        except (KeyError, TypeError) as exc:
            raise ConventionViolation(f"malformed ladder JSON: {exc}") from None

    @classmethod
    def rectangle(cls, m: int, n: int) -> Ladder:
        return cls(m, n, [1] * m, [n] * m)

    # views

    @cached_property
    def cells(self) -> frozenset:
        return frozenset((i + 1, j) for i in range(self.m) for j in range(self.lo[i], self.hi[i] + 1))

    def __contains__(self, cell) -> bool:
        r, c = cell
        return 1 <= r <= self.m and self.lo[r - 1] <= c <= self.hi[r - 1]

    def __len__(self):
        return len(self.cells)

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells)

    def column_range(self, j: int) -> tuple[int, int]:
        rows = [i for i in range(1, self.m + 1) if (i, j) in self]
        return rows[0], rows[-1]

    @property
    def is_rectangle(self) -> bool:
        return all(x == 1 for x in self.lo) and all(x == self.n for x in self.hi)

    def to_grid(self) -> str:
        return "\n".join(
            "".join("#" if (i, j) in self else "." for j in range(1, self.n + 1))
            for i in range(1, self.m + 1)
        )

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "lo": list(self.lo), "hi": list(self.hi)}

    def __str__(self):
        return self.to_grid()


def parse_ladder(source) -> Ladder:
    """Accept a Ladder, a JSON dict/string, an ASCII grid, or an iterable of cells."""
    if isinstance(source, Ladder):
        return source
    if isinstance(source, dict):
        return Ladder.from_json(source)
    if isinstance(source, str):
        text = source.strip()
        if text.startswith("{"):
            try:
                return Ladder.from_json(json.loads(text))
            except json.JSONDecodeError as exc:
                raise ConventionViolation(f"invalid JSON: {exc}") from None
        return Ladder.from_grid(text)
    return Ladder.from_cells(source)


# corners


@dataclass(frozen=True)
class CornerData:
    m: int
    n: int
    lower: tuple[Cell, ...]
    upper: tuple[Cell, ...]

    @property
    def h(self) -> int:
        return len(self.lower)

    @property
    def k(self) -> int:
        return len(self.upper)

    # sentinel-extended sequences, indexed 0..h+1 and 0..k+1
    @property
    def a(self):
        return (1, *(x for x, _ in self.lower), self.m)

    @property
    def b(self):
        return (self.n, *(y for _, y in self.lower), 1)

    @property
    def c(self):
        return (1, *(x for x, _ in self.upper), self.m)

    @property
    def d(self):
        return (self.n, *(y for _, y in self.upper), 1)

    def coincidental(self) -> list[Cell]:
        return sorted(set(self.lower) & set(self.upper))

    def to_json(self) -> dict:
        return {
            "lower": [list(x) for x in self.lower],
            "upper": [list(x) for x in self.upper],
            "h": self.h,
            "k": self.k,
        }


def corners(Y: Ladder) -> CornerData:
    """Inside corners read off the cell-level definitions.

    A lower corner (a,b) has (a,b), (a-1,b), (a,b-1) in Y and (a-1,b-1) outside;
    an upper corner (c,d) has (c,d), (c+1,d), (c,d+1) in Y and (c+1,d+1) outside.
    """
    lower, upper = [], []
    for a in range(2, Y.m + 1):
        b = Y.lo[a - 2]
        if Y.lo[a - 1] < b and (a, b) in Y:
            lower.append((a, b))
    for c in range(1, Y.m):
        d = Y.hi[c]
        if Y.hi[c - 1] > d and (c, d) in Y:
            upper.append((c, d))
    return CornerData(Y.m, Y.n, tuple(lower), tuple(upper))


@dataclass(frozen=True)
class EtaKappa:
    eta1: int
    eta2: int
    kappa1: int
    kappa2: int

    def as_tuple(self):
        return (self.eta1, self.eta2, self.kappa1, self.kappa2)


def eta_kappa(Y: Ladder | CornerData) -> EtaKappa:
    cd = Y if isinstance(Y, CornerData) else corners(Y)
    h, k = cd.h, cd.k
    a, b, c, d = cd.a, cd.b, cd.c, cd.d
    # with k=0 the inner corners c_1, d_k fall back to the sentinels m and n
    c1 = c[1]
    dk = d[k] if k else d[0]
    ah = a[h] if h else a[0]
    b1 = b[1]
    eta1 = min(j for j in range(h + 2) if b[j] <= dk)
    eta2 = max(i for i in range(h + 2) if a[i] <= c1)
    kappa1 = min(i for i in range(k + 2) if c[i] >= ah)
    kappa2 = max(j for j in range(k + 2) if d[j] >= b1)
    return EtaKappa(eta1, eta2, kappa1, kappa2)


# reflection and deletion


def reflect(Y: Ladder) -> Ladder:
    """Reflect along the antidiagonal: cell (p,q) goes to (n-q+1, m-p+1)."""
    lo, hi = [], []
    for i in range(1, Y.n + 1):
        top, bottom = Y.column_range(Y.n - i + 1)
        lo.append(Y.m - bottom + 1)
        hi.append(Y.m - top + 1)
    return Ladder(Y.n, Y.m, lo, hi)


def reflect_cell(Y: Ladder, cell: Cell) -> Cell:
    p, q = cell
    return (Y.n - q + 1, Y.m - p + 1)


class Move(enum.Enum):
    INVERT_A0B1 = "InvertA0B1"
    INVERT_AHBH1 = "InvertAhBh1"
    INVERT_C1D0 = "InvertC1D0"
    INVERT_CK1DK = "InvertCk1Dk"

    @classmethod
    def parse(cls, value) -> Move:
        if isinstance(value, Move):
            return value
        for mv in cls:
            if value in (mv.value, mv.name):
                return mv
        raise ValueError(f"unknown move {value!r}")


@dataclass(frozen=True)
class DeletionResult:
    ladder: Ladder
    variable: Cell  # the inverted corner variable, in original coordinates
    row_map: dict  # original row -> new row, kept rows only
    col_map: dict
    deleted_rows: tuple[int, ...]
    deleted_cols: tuple[int, ...]

    def cross_cells(self, Y: Ladder) -> list[Cell]:
        """Deleted cells sharing a row or column with the inverted variable."""
        r0, c0 = self.variable
        return sorted(
            (p, q)
            for p, q in Y.cells
            if (p == r0 or q == c0) and (p not in self.row_map or q not in self.col_map)
        )


def delete_move(Y: Ladder, move) -> DeletionResult:
    move = Move.parse(move)
    cd = corners(Y)
    h, k = cd.h, cd.k
    a, b, c, d = cd.a, cd.b, cd.c, cd.d
    m, n = Y.m, Y.n
    if move in (Move.INVERT_A0B1, Move.INVERT_AHBH1) and h == 0:
        raise MissingCorner(f"{move.value} needs a lower inside corner")
    if move in (Move.INVERT_C1D0, Move.INVERT_CK1DK) and k == 0:
        raise MissingCorner(f"{move.value} needs an upper inside corner")
    if move is Move.INVERT_A0B1:
        rows, cols, var = range(1, a[1]), range(b[1] + 1, n + 1), (a[0], b[1])
    elif move is Move.INVERT_AHBH1:
        rows, cols, var = range(a[h] + 1, m + 1), range(1, b[h]), (a[h], b[h + 1])
    elif move is Move.INVERT_C1D0:
        rows, cols, var = range(1, c[1]), range(d[1] + 1, n + 1), (c[1], d[0])
    else:
        rows, cols, var = range(c[k] + 1, m + 1), range(1, d[k]), (c[k + 1], d[k])
    rows, cols = set(rows), set(cols)
    kept_rows = [r for r in range(1, m + 1) if r not in rows]
    kept_cols = [q for q in range(1, n + 1) if q not in cols]
    row_map = {r: i + 1 for i, r in enumerate(kept_rows)}
    col_map = {q: j + 1 for j, q in enumerate(kept_cols)}
    new_cells = {(row_map[p], col_map[q]) for p, q in Y.cells if p in row_map and q in col_map}
    ladder = Ladder.from_cells(new_cells, len(kept_rows), len(kept_cols))
    return DeletionResult(ladder, var, row_map, col_map, tuple(sorted(rows)), tuple(sorted(cols)))
