"""Shape predicates (one/two-sided, thick, thin, spine) and the spine construction."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .connectivity import is_path_connected
from .errors import NotThin, NotTwoSided
from .ladder import CornerData, Ladder, corners


def _leq(x, y):
    return x[0] <= y[0] and x[1] <= y[1]


def is_thick(cd: CornerData) -> bool:
    return all(_leq(p, q) and p != q for p in cd.lower for q in cd.upper)


def is_thin(cd: CornerData) -> bool:
    return all(not _leq(p, q) for p in cd.lower for q in cd.upper)


def _alternates(first, second, rows_up=True):
    """first[0] < second[0] < first[1] < ... on rows, reversed order on columns."""
    seq = []
    for i in range(max(len(first), len(second))):
        if i < len(first):
            seq.append(first[i])
        if i < len(second):
            seq.append(second[i])
    rows = [x[0] for x in seq]
    cols = [x[1] for x in seq]
    return all(r1 < r2 for r1, r2 in zip(rows, rows[1:])) and all(c1 > c2 for c1, c2 in zip(cols, cols[1:]))


def spine_pattern(cd: CornerData) -> str | None:
    """Which of the four alternation patterns the corners follow, if any."""
    h, k = cd.h, cd.k
    low, up = cd.lower, cd.upper
    if h == 0 or k == 0:
        return None
    if low[0][0] < up[0][0]:
        if h == k and _alternates(low, up):
            return "a1<c1, h=k"
        if h == k + 1 and _alternates(low, up):
            return "a1<c1, h=k+1"
    else:
        if k == h and _alternates(up, low):
            return "c1<a1, h=k"
        if k == h + 1 and _alternates(up, low):
            return "c1<a1, k=h+1"
    return None


@dataclass(frozen=True)
class ShapeReport:
    path_connected: bool
    one_sided: bool
    two_sided: bool
    coincidental_corners: bool
    thick: bool
    thin: bool
    is_spine: bool

    def to_json(self):
        return asdict(self)


def shape(Y: Ladder) -> ShapeReport:
    cd = corners(Y)
    pc = is_path_connected(Y)
    two = pc and cd.h > 0 and cd.k > 0
    return ShapeReport(
        path_connected=pc,
        one_sided=pc and (cd.h == 0 or cd.k == 0),
        two_sided=two,
        coincidental_corners=bool(cd.coincidental()),
        thick=is_thick(cd),
        thin=is_thin(cd),
        is_spine=two and spine_pattern(cd) is not None,
    )


def _delete(Y: Ladder, doomed) -> Ladder:
    return Ladder.from_cells(Y.cells - doomed, Y.m, Y.n)


def _merge_lower(Y: Ladder, u: int, bound: int) -> Ladder:
    # lower corners a_u < ... < a_v above the bounding upper corner collapse to (a_v, b_u)
    cd = corners(Y)
    a, b = cd.a, cd.b
    v = u
    while v + 1 <= cd.h and a[v + 1] < bound:
        v += 1
    if v == u:
        return Y
    av, bu = a[v], b[u]
    return _delete(Y, {(e, f) for e, f in Y.cells if e < av and f < bu})


def _merge_upper(Y: Ladder, u: int, bound: int) -> Ladder:
    # upper corners c_u < ... < c_v above the bounding lower corner collapse to (c_u, d_v)
    cd = corners(Y)
    c, d = cd.c, cd.d
    v = u
    while v + 1 <= cd.k and c[v + 1] < bound:
        v += 1
    if v == u:
        return Y
    cu, dv = c[u], d[v]
    return _delete(Y, {(e, f) for e, f in Y.cells if e > cu and f > dv})


def spine(Y: Ladder) -> Ladder:
    rep = shape(Y)
    if not rep.two_sided:
        raise NotTwoSided("the spine is defined for two-sided ladders")
    if not rep.thin:
        raise NotThin("the spine is defined for thin ladders")
    lower_first = corners(Y).lower[0][0] < corners(Y).upper[0][0]
    u = 1
    while True:
        cd = corners(Y)
        if lower_first:
            if u > cd.h:
                break
            Y = _merge_lower(Y, u, cd.c[min(u, cd.k + 1)])
            cd = corners(Y)
            if u > cd.k:
                break
            Y = _merge_upper(Y, u, cd.a[min(u + 1, cd.h + 1)])
        else:
            if u > cd.k:
                break
            Y = _merge_upper(Y, u, cd.a[min(u, cd.h + 1)])
            cd = corners(Y)
            if u > cd.h:
                break
            Y = _merge_lower(Y, u, cd.c[min(u + 1, cd.k + 1)])
        u += 1
    return Y
