"""Monomials and monomial ideals of R_2(Y) = k[Y]/I_2(Y).

A monomial of R is determined by its row multiset and column multiset; the
normal form pairs rows in ascending order with columns in descending order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement

from .classgroup import PrimeSpec, prime_generators, require_two_connected
from .connectivity import is_path_connected
from .errors import CellOutsideLadder, DimensionMismatch, Not2Connected, NotSupported
from .ladder import Ladder


@dataclass(frozen=True, order=True)
class Monomial:
    cells: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(sorted((int(r), int(c)) for r, c in self.cells)))

    @classmethod
    def of(cls, *cells):
        return cls(cells)

    @classmethod
    def one(cls):
        return cls(())

    @classmethod
    def from_powers(cls, powers):
        """From ``{cell: exponent}`` or ``[(cell, exponent), ...]``."""
        items = powers.items() if isinstance(powers, dict) else powers
        return cls(tuple(cell for cell, e in items for _ in range(e)))

    @property
    def degree(self) -> int:
        return len(self.cells)

    @property
    def rows(self):
        return tuple(sorted(r for r, _ in self.cells))

    @property
    def cols(self):
        return tuple(sorted(c for _, c in self.cells))

    @property
    def key(self):
        """Identifies the monomial in R."""
        return (self.rows, self.cols)

    def powers(self) -> Counter:
        return Counter(self.cells)

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(self.cells + other.cells)

    def __pow__(self, e: int) -> Monomial:
        return Monomial(self.cells * e)

    def to_json(self):
        return [[r, c, e] for (r, c), e in sorted(self.powers().items())]

    @classmethod
    def from_json(cls, data):
        return cls.from_powers([((r, c), e) for r, c, e in data])

    def __str__(self):
        if not self.cells:
            return "1"
        parts = []
        for (r, c), e in sorted(self.powers().items()):
            name = f"x{r}{c}" if r < 10 and c < 10 else f"x[{r},{c}]"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


def x(r: int, c: int, e: int = 1) -> Monomial:
    return Monomial(((r, c),) * e)


def _check_cells(Y: Ladder, m: Monomial):
    for cell in m.cells:
        if cell not in Y:
            raise CellOutsideLadder(f"cell {cell} is not in the ladder")


def _pair(Y: Ladder, rows, cols) -> Monomial:
    cells = tuple(zip(sorted(rows), sorted(cols, reverse=True)))
    for cell in cells:
        if cell not in Y:
            raise CellOutsideLadder(f"multisets do not pair into the ladder at {cell}")
    return Monomial(cells)


def normal_form(Y: Ladder, m: Monomial) -> Monomial:
    _check_cells(Y, m)
    return _pair(Y, m.rows, m.cols)


def mon_mul(Y: Ladder, a: Monomial, b: Monomial) -> Monomial:
    return normal_form(Y, a * b)


def mon_equal(a: Monomial, b: Monomial) -> bool:
    return a.key == b.key


def grading_degree(Y: Ladder, m: Monomial, J) -> int:
    """Number of cells of m lying in J (a PrimeSpec or an explicit cell collection)."""
    gens = set(prime_generators(Y, J)) if isinstance(J, PrimeSpec) else set(J)
    return sum(1 for cell in m.cells if cell in gens)


def _sub(big, small):
    """Multiset difference of sorted tuples, or None if small is not contained."""
    need = Counter(small)
    have = Counter(big)
    if any(have[v] < k for v, k in need.items()):
        return None
    have.subtract(need)
    return tuple(sorted(have.elements()))


def quotient(Y: Ladder, m: Monomial, g: Monomial) -> Monomial | None:
    """The monomial q with g*q = m in R, if it exists."""
    rows = _sub(m.rows, g.rows)
    if rows is None:
        return None
    cols = _sub(m.cols, g.cols)
    if cols is None:
        return None
    # any valid pairing exists iff the anti-sorted one does
    pairs = list(zip(rows, sorted(cols, reverse=True)))
    if all(cell in Y for cell in pairs):
        return Monomial(pairs)
    return None


def divides(Y: Ladder, g: Monomial, m: Monomial) -> bool:
    return quotient(Y, m, g) is not None


def homogeneous_cells(Y: Ladder, cells) -> bool:
    """Whether the count of cells from the set is preserved by every straightening exchange."""
    S = set(cells)
    for (i1, j1) in Y.cells:
        for (i2, j2) in Y.cells:
            if i1 < i2 and j1 < j2:
                if ((i1, j1) in S) + ((i2, j2) in S) != ((i1, j2) in S) + ((i2, j1) in S):
                    return False
    return True


@dataclass(frozen=True)
class MonomialIdeal:
    ladder: Ladder
    gens: tuple
    # (cells, e) when the ideal is known to be J^e for J generated by those cells
    power_of: tuple | None = field(default=None, compare=False)

    @property
    def is_unit(self) -> bool:
        return any(g.degree == 0 for g in self.gens)

    def __contains__(self, m: Monomial) -> bool:
        return membership(m, self)

    def __len__(self):
        return len(self.gens)

    def to_json(self):
        return [g.to_json() for g in self.gens]


def unit_ideal(Y: Ladder) -> MonomialIdeal:
    return MonomialIdeal(Y, (Monomial.one(),))


def membership(m: Monomial, I: MonomialIdeal) -> bool:
    Y = I.ladder
    _check_cells(Y, m)
    return any(divides(Y, g, m) for g in I.gens)


def minimal_generators(Y: Ladder, gens, power_of=None) -> MonomialIdeal:
    by_key = {}
    for g in gens:
        g = normal_form(Y, g)
        by_key.setdefault(g.key, g)
    cand = sorted(by_key.values(), key=lambda g: (g.degree, g.cells))
    kept = []
    for g in cand:
        if not any(divides(Y, h, g) for h in kept):
            kept.append(g)
    return MonomialIdeal(Y, tuple(sorted(kept)), power_of)


def prime_ideal(Y: Ladder, spec: PrimeSpec) -> MonomialIdeal:
    cells = prime_generators(Y, spec)
    return MonomialIdeal(Y, tuple(Monomial.of(c) for c in cells), (frozenset(cells), 1))


def ideal_power(I: MonomialIdeal, e: int) -> MonomialIdeal:
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    Y = I.ladder
    if e == 0:
        return unit_ideal(Y)
    products = (
        Monomial(tuple(c for g in combo for c in g.cells))
        for combo in combinations_with_replacement(I.gens, e)
    )
    power_of = None
    if I.power_of is not None:
        cells, e0 = I.power_of
        power_of = (cells, e0 * e)
    elif all(g.degree == 1 for g in I.gens):
        power_of = (frozenset(g.cells[0] for g in I.gens), e)
    return minimal_generators(Y, products, power_of)


def lcm(Y: Ladder, a: Monomial, b: Monomial) -> Monomial:
    """Cell-wise maximum of the two normal forms, returned in normal form."""
    pa, pb = normal_form(Y, a).powers(), normal_form(Y, b).powers()
    return normal_form(Y, Monomial.from_powers(pa | pb))


def fiber(Y: Ladder, m: Monomial) -> list[Monomial]:
    """Every cell multiset of k[Y] representing the same monomial of R."""
    rows = list(m.rows)
    out = set()

    def rec(i, cols: Counter, acc):
        if i == len(rows):
            out.add(tuple(sorted(acc)))
            return
        r = rows[i]
        # rows equal to the previous one take columns in nondecreasing order to avoid repeats
        floor = acc[-1][1] if i and rows[i - 1] == r else 0
        for c in sorted(cols):
            if cols[c] and c >= floor and (r, c) in Y:
                cols[c] -= 1
                acc.append((r, c))
                rec(i + 1, cols, acc)
                acc.pop()
                cols[c] += 1

    rec(0, Counter(m.cols), [])
    return [Monomial(cells) for cells in sorted(out)]


@lru_cache(maxsize=65536)
def _homogeneous_cached(Y: Ladder, cells: frozenset) -> bool:
    return homogeneous_cells(Y, cells)


def _intersect_with_power(A: MonomialIdeal, cells: frozenset, e: int) -> MonomialIdeal:
    # m lies in J^e iff at least e of its cells lie in J (degree is invariant),
    # so A meets J^e in the multiples a*s with s supplying the missing J-degree.
    Y = A.ladder
    S = sorted(cells)
    out = []
    for a in A.gens:
        need = max(0, e - sum(1 for c in a.cells if c in cells))
        for combo in combinations_with_replacement(S, need):
            out.append(Monomial(a.cells + combo))
    return minimal_generators(Y, out)


def _intersect_two(A: MonomialIdeal, B: MonomialIdeal) -> MonomialIdeal:
    Y = A.ladder
    if A.is_unit:
        return B
    if B.is_unit:
        return A
    for P, Q in ((A, B), (B, A)):
        if Q.power_of is not None and _homogeneous_cached(Y, Q.power_of[0]):
            return _intersect_with_power(P, *Q.power_of)
    out = []
    for a in A.gens:
        fa = fiber(Y, a)
        for b in B.gens:
            for ra in fa:
                for rb in fiber(Y, b):
                    out.append(Monomial.from_powers(ra.powers() | rb.powers()))
    return minimal_generators(Y, out)


def _require_engine_scope(Y: Ladder):
    if not is_path_connected(Y):
        raise NotSupported("monomial ideal operations need a path-connected ladder")
    try:
        require_two_connected(Y)
    except Not2Connected:
        raise NotSupported("monomial ideal intersections need a 2-connected ladder") from None


def in_prime_power(Y: Ladder, m: Monomial, spec: PrimeSpec, e: int) -> bool:
    """Whether m lies in P^e, without listing the generators of P^e when P is homogeneous."""
    if e <= 0:
        return True
    cells = frozenset(prime_generators(Y, spec))
    if _homogeneous_cached(Y, cells):
        _check_cells(Y, m)
        return grading_degree(Y, m, cells) >= e
    return membership(m, ideal_power(prime_ideal(Y, spec), e))


def ideal_intersect(ideals) -> MonomialIdeal:
    ideals = list(ideals)
    if not ideals:
        raise ValueError("need at least one ideal")
    Y = ideals[0].ladder
    _require_engine_scope(Y)
    out = ideals[0]
    for I in ideals[1:]:
        out = _intersect_two(out, I)
    return out


def class_representative(Y: Ladder, combo) -> MonomialIdeal:
    """Intersection of prime powers: a concrete ideal for the class sum of e * [prime]."""
    combo = [(PrimeSpec.parse(s) if isinstance(s, str) else s, e) for s, e in combo]
    if any(e < 0 for _, e in combo):
        raise ValueError("exponents must be nonnegative")
    parts = [ideal_power(prime_ideal(Y, s), e) for s, e in combo if e > 0]
    if not parts:
        return unit_ideal(Y)
    return ideal_intersect(parts)


# witnesses


@dataclass(frozen=True)
class CollisionWitness:
    m1: Monomial
    m2: Monomial
    m1p: Monomial
    m2p: Monomial

    def to_json(self):
        return {k: getattr(self, k).to_json() for k in ("m1", "m2", "m1p", "m2p")}

    def __str__(self):
        return f"({self.m1}, {self.m2} | {self.m1p}, {self.m2p})"


def multiplication_collision(A: MonomialIdeal, B: MonomialIdeal) -> CollisionWitness | None:
    """First pair of generator pairs, in lexicographic scan order, with equal products."""
    seen = {}
    for a in A.gens:
        for b in B.gens:
            key = (a * b).key
            if key in seen:
                a0, b0 = seen[key]
                return CollisionWitness(a0, b0, a, b)
            seen[key] = (a, b)
    return None


@dataclass(frozen=True)
class LcmReport:
    injective: bool
    image_minimal: bool
    collision: tuple | None  # two generator pairs sharing an lcm
    witness: dict | None  # first lcm lying in m*(A cap B)
    offenders: tuple = ()

    def to_json(self):
        def pair(p):
            return [p[0].to_json(), p[1].to_json()]

        out = {"injective": self.injective, "image_minimal": self.image_minimal}
        out["collision"] = None if self.collision is None else [pair(p) for p in self.collision]
        if self.witness is None:
            out["witness"] = None
        else:
            w = self.witness
            out["witness"] = {
                "pair": pair(w["pair"]),
                "lcm": w["lcm"].to_json(),
                "divisor_pair": pair(w["divisor_pair"]),
                "divisor": w["divisor"].to_json(),
                "quotient": w["quotient"].to_json(),
            }
        return out


def lcm_map_analysis(A: MonomialIdeal, B: MonomialIdeal) -> LcmReport:
    Y = A.ladder
    pairs = [(a, b) for a in A.gens for b in B.gens]
    lcms = [lcm(Y, a, b) for a, b in pairs]
    first_of = {}
    collision = None
    for p, L in zip(pairs, lcms):
        if L.key in first_of:
            if collision is None:
                collision = (first_of[L.key], p)
        else:
            first_of[L.key] = p
    distinct = {}
    for p, L in zip(pairs, lcms):
        distinct.setdefault(L.key, (p, L))
    offenders = []
    for p, L in zip(pairs, lcms):
        for key, (p2, L2) in distinct.items():
            if L2.degree < L.degree:
                q = quotient(Y, L, L2)
                if q is not None:
                    offenders.append({"pair": p, "lcm": L, "divisor_pair": p2, "divisor": L2, "quotient": q})
                    break
    return LcmReport(
        injective=collision is None,
        image_minimal=not offenders,
        collision=collision,
        witness=offenders[0] if offenders else None,
        offenders=tuple(offenders),
    )


class PolyElement:
    """Integer combination of monomials of R, keyed by normal form."""

    __slots__ = ("ladder", "terms")

    def __init__(self, ladder: Ladder, terms=None):
        self.ladder = ladder
        self.terms = {}
        for m, coef in (terms or {}).items():
            if coef:
                nf = normal_form(ladder, m)
                self.terms[nf] = self.terms.get(nf, 0) + coef
                if not self.terms[nf]:
                    del self.terms[nf]

    @classmethod
    def monomial(cls, Y, m: Monomial, coef: int = 1):
        return cls(Y, {m: coef})

    @classmethod
    def zero(cls, Y):
        return cls(Y)

    def is_zero(self):
        return not self.terms

    def single_monomial(self):
        """(monomial, coefficient) when there is exactly one term."""
        if len(self.terms) == 1:
            return next(iter(self.terms.items()))
        return None

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return PolyElement(self.ladder, out)

    def __neg__(self):
        return PolyElement(self.ladder, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = normal_form(self.ladder, m1 * m2)
                out[m] = out.get(m, 0) + c1 * c2
        return PolyElement(self.ladder, out)

    def __eq__(self, other):
        return isinstance(other, PolyElement) and self.terms == other.terms

    def to_json(self):
        return [[m.to_json(), c] for m, c in sorted(self.terms.items())]

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in sorted(self.terms.items()):
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            out.append(("-" if c < 0 else "+") + mag + str(m))
        return " ".join(out).lstrip("+")


@dataclass(frozen=True)
class SignedMonomialMatrix:
    ladder: Ladder
    rows: tuple  # tuple of tuples of PolyElement

    @classmethod
    def build(cls, Y: Ladder, entries):
        """entries: rows of (coef, Monomial) pairs or None for zero."""
        built = []
        for row in entries:
            out = []
            for e in row:
                if e is None or e == 0:
                    out.append(PolyElement.zero(Y))
                elif isinstance(e, PolyElement):
                    out.append(e)
                else:
                    coef, m = e
                    out.append(PolyElement.monomial(Y, m, coef))
            built.append(tuple(out))
        widths = {len(r) for r in built}
        if len(widths) > 1:
            raise DimensionMismatch("ragged matrix")
        return cls(Y, tuple(built))

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def apply(self, v):
        nrows, ncols = self.shape
        if len(v) != ncols:
            raise DimensionMismatch(f"vector of length {len(v)} against {ncols} columns")
        out = []
        for row in self.rows:
            acc = PolyElement.zero(self.ladder)
            for a, b in zip(row, v):
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return out

    def compose(self, other: SignedMonomialMatrix) -> SignedMonomialMatrix:
        cols = list(zip(*other.rows))
        return SignedMonomialMatrix(
            self.ladder, tuple(zip(*(tuple(self.apply(list(col))) for col in cols)))
        )

    def to_json(self):
        return [[e.to_json() for e in row] for row in self.rows]


@dataclass(frozen=True)
class KernelCheck:
    in_kernel: bool
    coordinate_minimal: bool
    minimal_coordinate: int | None = None

    def to_json(self):
        return {
            "in_kernel": self.in_kernel,
            "coordinate_minimal": self.coordinate_minimal,
            "minimal_coordinate": self.minimal_coordinate,
        }


def minimal_in(Y: Ladder, m: Monomial, I: MonomialIdeal) -> bool:
    """m lies in I but not in the maximal ideal times I."""
    divisors = [g for g in I.gens if divides(Y, g, m)]
    return bool(divisors) and all(g.degree == m.degree for g in divisors)


def check_kernel_witness(D: SignedMonomialMatrix, v, ambient: MonomialIdeal | None = None) -> KernelCheck:
    """Whether D v = 0, and whether some coordinate of v is a minimal generator.

    A coordinate qualifies when it is a single monomial with coefficient +-1 that
    lies in the ambient ideal but not in (variable) * ambient.  Without an ambient
    ideal any single-monomial coordinate qualifies.
    """
    Y = D.ladder
    image = D.apply(v)
    in_kernel = all(e.is_zero() for e in image)
    for i, e in enumerate(v):
        single = e.single_monomial()
        if single is None or abs(single[1]) != 1:
            continue
        m = single[0]
        if ambient is None or minimal_in(Y, m, ambient):
            return KernelCheck(in_kernel, True, i)
    return KernelCheck(in_kernel, False, None)
