"""Path components, t-connectivity and removal of cells that meet no t-minor."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import NoTMinor, OutOfScope, TooManyComponents
from .ladder import Ladder, corners, reflect, reflect_cell, satisfies_axiom

DEFAULT_COMPONENT_CAP = 20


def path_components(Y: Ladder) -> list[frozenset]:
    """Components of 4-adjacency, ordered by their first cell."""
    seen, comps = set(), []
    for start in Y.sorted_cells():
        if start in seen:
            continue
        comp, queue = {start}, deque([start])
        seen.add(start)
        while queue:
            r, c = queue.popleft()
            for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                if nb in Y and nb not in seen:
                    seen.add(nb)
                    comp.add(nb)
                    queue.append(nb)
        comps.append(frozenset(comp))
    return comps


def is_path_connected(Y: Ladder) -> bool:
    # consecutive row intervals must overlap
    return all(Y.lo[i] <= Y.hi[i + 1] for i in range(Y.m - 1))


@dataclass(frozen=True)
class Embedded:
    """A sub-region re-indexed as a standalone ladder, plus its offsets."""

    ladder: Ladder
    row_offset: int
    col_offset: int

    def to_original(self, cell):
        return (cell[0] + self.row_offset, cell[1] + self.col_offset)

    def from_original(self, cell):
        return (cell[0] - self.row_offset, cell[1] - self.col_offset)


def embed(cells) -> Embedded:
    r0 = min(r for r, _ in cells) - 1
    c0 = min(c for _, c in cells) - 1
    shifted = {(r - r0, c - c0) for r, c in cells}
    return Embedded(Ladder.from_cells(shifted), r0, c0)


def component_ladders(Y: Ladder) -> list[Embedded]:
    return [embed(comp) for comp in path_components(Y)]


def t_windows(Y: Ladder, t: int) -> list[tuple[int, int]]:
    """Top-left cells of the t x t position blocks lying entirely in Y.

    For a staircase, the block is inside Y iff its top-left and bottom-right
    cells are.
    """
    return [
        (r, c)
        for r, c in Y.sorted_cells()
        if (r + t - 1, c + t - 1) in Y
    ]


def has_t_minor(Y: Ladder, t: int) -> bool:
    return bool(t_windows(Y, t))


def window_cells(r, c, t):
    return [(r + x, c + y) for x in range(t) for y in range(t)]


def minor_components(Y: Ladder, t: int) -> list[frozenset]:
    """Classes of the relation "lie in a common t-minor"; cells in no minor are singletons."""
    parent = {cell: cell for cell in Y.cells}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r, c in t_windows(Y, t):
        root = find((r, c))
        for cell in window_cells(r, c, t):
            other = find(cell)
            if other != root:
                parent[other] = root
    groups = {}
    for cell in Y.cells:
        groups.setdefault(find(cell), set()).add(cell)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def minor_bearing_components(Y: Ladder, t: int) -> list[Embedded]:
    return [e for e in component_ladders(Y) if has_t_minor(e.ladder, t)]


@dataclass(frozen=True)
class Connectivity:
    connected: bool
    parts: tuple[frozenset, frozenset] | None = None

    def to_json(self):
        if self.connected:
            return {"connected": True}
        z1, z2 = self.parts
        return {"connected": False, "Z1": sorted(map(list, z1)), "Z2": sorted(map(list, z2))}


def t_connectivity(Y: Ladder, t: int, cap: int = DEFAULT_COMPONENT_CAP) -> Connectivity:
    if t < 1:
        raise ValueError("t must be at least 1")
    comps = minor_components(Y, t)
    if len(comps) < 2:
        return Connectivity(True)
    everything = frozenset(Y.cells)
    # A single class split off is the common case and needs no search.
    for comp in comps:
        rest = everything - comp
        if satisfies_axiom(comp) and satisfies_axiom(rest):
            return Connectivity(False, (comp, rest))
    if len(comps) > cap:
        raise TooManyComponents(f"{len(comps)} minor components exceed the cap of {cap}")
    r = len(comps)
    first = comps[0]
    for mask in range(1 << (r - 1)):
        z1 = set(first)
        for i in range(1, r):
            if mask >> (i - 1) & 1:
                z1 |= comps[i]
        if len(z1) == len(everything):
            continue
        z1 = frozenset(z1)
        z2 = everything - z1
        if satisfies_axiom(z1) and satisfies_axiom(z2):
            return Connectivity(False, (z1, z2))
    return Connectivity(True)


def is_t_connected(Y: Ladder, t: int) -> bool:
    return t_connectivity(Y, t).connected


@dataclass(frozen=True)
class Strip:
    """Result of removing the cells that meet no t-minor from a one-sided ladder."""

    kept: Embedded  # Y' re-indexed
    unused: frozenset  # Z, in original coordinates

    @property
    def ladder(self) -> Ladder:
        return self.kept.ladder

    @property
    def cells(self) -> frozenset:
        return frozenset(self.kept.to_original(x) for x in self.kept.ladder.cells)


def _strip_upper(Y: Ladder, t: int) -> Strip:
    cd = corners(Y)
    c, d = cd.c, cd.d
    idx = range(cd.k + 2)
    j1 = max(j for j in idx if c[j] < t)
    j2 = min(j for j in idx if d[j] < t)
    if j1 >= j2:
        raise NoTMinor(f"the ladder contains no {t}-minor")
    kept = {(i, j) for i, j in Y.cells if i <= c[j2] and j <= d[j1]}
    return Strip(Embedded(Ladder.from_cells(kept), 0, 0), frozenset(Y.cells) - kept)


def strip_unused(Y: Ladder, t: int) -> Strip:
    """Split a one-sided Y into Y' (t-connected) and Z (meeting no t-minor)."""
    if t < 2:
        return Strip(Embedded(Y, 0, 0), frozenset())
    if not is_path_connected(Y):
        raise OutOfScope("strip_unused needs a path-connected ladder")
    cd = corners(Y)
    if cd.h == 0:
        return _strip_upper(Y, t)
    if cd.k == 0:
        R = reflect(Y)
        inner = _strip_upper(R, t)
        # reflect the kept region back: reflect is its own inverse on cells
        kept_orig = {reflect_cell(R, x) for x in inner.cells}
        unused = frozenset(reflect_cell(R, x) for x in inner.unused)
        return Strip(embed(kept_orig), unused)
    raise OutOfScope("strip_unused needs a one-sided ladder")
