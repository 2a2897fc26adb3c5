"""Divisor class group of R_2(Y) in the corner basis, canonical class, and localization maps.

Basis order everywhere: q_1..q_{h+1}, then p_1..p_k.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache

from . import lattice
from .connectivity import is_t_connected
from .errors import Not2Connected
from .ladder import Ladder, Move, corners, delete_move, eta_kappa


@dataclass(frozen=True)
class DivisorClass:
    q: tuple[int, ...]
    p: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "q", tuple(int(x) for x in self.q))
        object.__setattr__(self, "p", tuple(int(x) for x in self.p))

    @classmethod
    def zero(cls, h, k):
        return cls((0,) * (h + 1), (0,) * k)

    @classmethod
    def from_coeffs(cls, coeffs, h):
        coeffs = list(coeffs)
        return cls(coeffs[: h + 1], coeffs[h + 1 :])

    @classmethod
    def basis_q(cls, h, k, i):
        return cls(tuple(int(x == i) for x in range(1, h + 2)), (0,) * k)

    @classmethod
    def basis_p(cls, h, k, j):
        return cls((0,) * (h + 1), tuple(int(x == j) for x in range(1, k + 1)))

    @property
    def h(self):
        return len(self.q) - 1

    @property
    def k(self):
        return len(self.p)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.q + self.p

    def _check(self, other):
        if (self.h, self.k) != (other.h, other.k):
            raise ValueError("classes live in different class groups")

    def __add__(self, other):
        self._check(other)
        return DivisorClass.from_coeffs([x + y for x, y in zip(self.coeffs, other.coeffs)], self.h)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return DivisorClass.from_coeffs([-x for x in self.coeffs], self.h)

    def __mul__(self, n: int):
        return DivisorClass.from_coeffs([n * x for x in self.coeffs], self.h)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self):
        return {"q": list(self.q), "p": list(self.p)}

    @classmethod
    def from_json(cls, data):
        return cls(data["q"], data["p"])

    def __str__(self):
        terms = []
        for name, vals in (("q", self.q), ("p", self.p)):
            for i, x in enumerate(vals, 1):
                if x:
                    terms.append((x, f"[{name}{i}]"))
        if not terms:
            return "0"
        out = ""
        for x, label in terms:
            sign = "-" if x < 0 else "+"
            mag = "" if abs(x) == 1 else str(abs(x))
            out += f"{sign}{mag}{label}"
        return out.lstrip("+")


@dataclass(frozen=True)
class ClassGroupDescriptor:
    h: int
    k: int

    @property
    def rank(self):
        return self.h + self.k + 1

    @property
    def labels(self):
        return [f"Q{i}" for i in range(1, self.h + 2)] + [f"P{j}" for j in range(1, self.k + 1)]

    def to_json(self):
        return {"h": self.h, "k": self.k, "rank": self.rank, "basis": self.labels}


@lru_cache(maxsize=4096)
def _two_connected(Y: Ladder) -> bool:
    return is_t_connected(Y, 2)


def require_two_connected(Y: Ladder):
    if not _two_connected(Y):
        raise Not2Connected("the corner basis of the class group needs a 2-connected ladder")


def class_group(Y: Ladder) -> ClassGroupDescriptor:
    require_two_connected(Y)
    cd = corners(Y)
    return ClassGroupDescriptor(cd.h, cd.k)


@dataclass(frozen=True)
class CanonicalData:
    lambdas: tuple[int, ...]
    deltas: tuple[int, ...]
    ij: tuple[int, ...]

    def to_json(self):
        return {"lambda": list(self.lambdas), "delta": list(self.deltas), "i_j": list(self.ij)}


def canonical_data(Y: Ladder) -> CanonicalData:
    """The lambda/delta numbers; defined for any ladder, meaningful when 2-connected."""
    cd = corners(Y)
    a, b, c, d = cd.a, cd.b, cd.c, cd.d
    lambdas = tuple(a[i] + b[i] - a[i - 1] - b[i - 1] for i in range(1, cd.h + 2))
    ij, deltas = [], []
    for j in range(1, cd.k + 1):
        i = min(i for i in range(cd.h + 2) if a[i] > c[j])
        ij.append(i)
        deltas.append(a[i] + b[i] - c[j] - d[j])
    return CanonicalData(lambdas, tuple(deltas), tuple(ij))


def canonical_class(Y: Ladder) -> tuple[CanonicalData, DivisorClass]:
    require_two_connected(Y)
    data = canonical_data(Y)
    return data, DivisorClass(data.lambdas, data.deltas)


def qprime_index_set(Y: Ladder, i: int) -> list[int]:
    cd = corners(Y)
    if not 1 <= i <= cd.h + 1:
        raise IndexError(f"q' index {i} outside 1..{cd.h + 1}")
    a, b, c, d = cd.a, cd.b, cd.c, cd.d
    return [j for j in range(1, cd.k + 1) if a[i - 1] <= c[j] and b[i] <= d[j]]


def qprime_class(Y: Ladder, i: int) -> DivisorClass:
    """[q'_i] = -[q_i] - sum of [p_j] over j with a_{i-1} <= c_j and b_i <= d_j."""
    cd = corners(Y)
    out = -DivisorClass.basis_q(cd.h, cd.k, i)
    for j in qprime_index_set(Y, i):
        out = out - DivisorClass.basis_p(cd.h, cd.k, j)
    return out


class PrimeKind(enum.Enum):
    P = "P"
    Q = "Q"
    QPRIME = "Qprime"


@dataclass(frozen=True)
class PrimeSpec:
    """A height-one prime of R_2(Y) generated by variables.

    P(0) and P(k+1) are accepted and coincide with Q(1) and Qprime(h+1).
    """

    kind: PrimeKind
    index: int

    @classmethod
    def parse(cls, text: str) -> PrimeSpec:
        """Read forms like ``P2``, ``Q1``, ``Qprime3`` or ``q'3``."""
        match = re.fullmatch(r"\s*(qprime|q'|p|q)(\d+)\s*", text, re.IGNORECASE)
        if not match:
            raise ValueError(f"cannot parse prime spec {text!r}")
        tag = match.group(1).lower()
        kind = {"p": PrimeKind.P, "q": PrimeKind.Q}.get(tag, PrimeKind.QPRIME)
        return cls(kind, int(match.group(2)))

    def __str__(self):
        return f"{self.kind.value}{self.index}"


def prime_generators(Y: Ladder, spec: PrimeSpec) -> list:
    cd = corners(Y)
    a, b, c, d = cd.a, cd.b, cd.c, cd.d
    i = spec.index
    if spec.kind is PrimeKind.P:
        if not 0 <= i <= cd.k + 1:
            raise IndexError(f"P index {i} outside 0..{cd.k + 1}")
        cells = [(p, q) for p, q in Y.cells if p <= c[i] and q <= d[i]]
    elif spec.kind is PrimeKind.Q:
        if not 1 <= i <= cd.h + 1:
            raise IndexError(f"Q index {i} outside 1..{cd.h + 1}")
        cells = [(p, q) for p, q in Y.cells if p == a[i - 1]]
    else:
        if not 1 <= i <= cd.h + 1:
            raise IndexError(f"Qprime index {i} outside 1..{cd.h + 1}")
        cells = [(p, q) for p, q in Y.cells if q == b[i]]
    return sorted(cells)


def prime_class(Y: Ladder, spec: PrimeSpec) -> DivisorClass:
    cd = corners(Y)
    h, k = cd.h, cd.k
    if spec.kind is PrimeKind.Q:
        return DivisorClass.basis_q(h, k, spec.index)
    if spec.kind is PrimeKind.QPRIME:
        return qprime_class(Y, spec.index)
    if spec.index == 0:
        return DivisorClass.basis_q(h, k, 1)
    if spec.index == k + 1:
        return qprime_class(Y, h + 1)
    return DivisorClass.basis_p(h, k, spec.index)


# localization maps


@dataclass(frozen=True)
class ClassGroupMap:
    move: Move
    domain: ClassGroupDescriptor
    codomain: ClassGroupDescriptor
    codomain_ladder: Ladder
    images: tuple[DivisorClass, ...]
    kernel_basis: tuple[DivisorClass, ...]

    @property
    def matrix(self):
        return [list(x.coeffs) for x in self.images]

    def __call__(self, x: DivisorClass) -> DivisorClass:
        vec = lattice.apply(self.matrix, list(x.coeffs)) if self.images else []
        return DivisorClass.from_coeffs(vec, self.codomain.h)

    def is_surjective(self) -> bool:
        return lattice.is_surjective(self.matrix, self.codomain.rank)

    def to_json(self):
        labels = self.domain.labels
        return {
            "move": self.move.value,
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
            "codomain_ladder": self.codomain_ladder.to_json(),
            "images": {lab: img.to_json() for lab, img in zip(labels, self.images)},
            "kernel": [v.to_json() for v in self.kernel_basis],
        }


def _image_table(Y: Ladder, move: Move, Z: Ladder):
    cd, cz = corners(Y), corners(Z)
    h, k = cd.h, cd.k
    H, K = cz.h, cz.k
    a, c = cd.a, cd.c
    ek = eta_kappa(cd)
    zero = DivisorClass.zero(H, K)

    def Q(i):
        return DivisorClass.basis_q(H, K, i)

    def P(j):
        return DivisorClass.basis_p(H, K, j)

    qs, ps = [], []
    if move is Move.INVERT_A0B1:
        qs = [zero if i == 1 else Q(i - 1) for i in range(1, h + 2)]
        ps = [zero if j <= ek.kappa2 else P(j - ek.kappa2) for j in range(1, k + 1)]
    elif move is Move.INVERT_AHBH1:
        qs = [zero if i == h + 1 else Q(i) for i in range(1, h + 2)]
        ps = [zero if j >= ek.kappa1 else P(j) for j in range(1, k + 1)]
    elif move is Move.INVERT_C1D0:
        qs = [zero if i <= ek.eta2 + 1 else Q(i - ek.eta2) for i in range(1, h + 2)]
        ps = [Q(1) if j == 1 else P(j - 1) for j in range(1, k + 1)]
    else:
        # Rows below c_k are deleted together with a cell of the inverted
        # variable's column, so their row primes die.  A surviving row under the
        # last codomain lower corner differs from q~_{eta1} by the upper corners
        # it sits below.
        e1 = ek.eta1
        for i in range(1, h + 2):
            if a[i - 1] > c[k]:
                qs.append(zero)
            elif i <= e1:
                qs.append(Q(i))
            else:
                img = Q(e1)
                for j in range(1, k):
                    if a[e1 - 1] <= c[j] < a[i - 1]:
                        img = img + P(j)
                qs.append(img)
        ps = [P(j) for j in range(1, k)] + [qprime_class(Z, H + 1)]
    return tuple(qs + ps)


def localization_map(Y: Ladder, move) -> ClassGroupMap:
    """Map on class groups induced by inverting a corner variable and deleting rows/columns."""
    move = Move.parse(move)
    deleted = delete_move(Y, move)
    require_two_connected(Y)
    Z = deleted.ladder
    cd, cz = corners(Y), corners(Z)
    images = _image_table(Y, move, Z)
    matrix = [list(x.coeffs) for x in images]
    kernel = lattice.left_kernel(matrix, cz.h + cz.k + 1)
    kernel = lattice.hermite_normal(kernel, len(matrix)) if kernel else []
    return ClassGroupMap(
        move,
        ClassGroupDescriptor(cd.h, cd.k),
        ClassGroupDescriptor(cz.h, cz.k),
        Z,
        images,
        tuple(DivisorClass.from_coeffs(v, cd.h) for v in kernel),
    )


@dataclass(frozen=True)
class AffineLattice:
    particular: DivisorClass
    kernel: tuple[DivisorClass, ...]

    def contains(self, x: DivisorClass) -> bool:
        diff = list((x - self.particular).coeffs)
        if not self.kernel:
            return not any(diff)
        return lattice.solve_left([list(v.coeffs) for v in self.kernel], len(diff), diff) is not None

    def to_json(self):
        return {"particular": self.particular.to_json(), "kernel": [v.to_json() for v in self.kernel]}


def preimage(phi: ClassGroupMap, target: DivisorClass) -> AffineLattice | None:
    x = lattice.solve_left(phi.matrix, phi.codomain.rank, list(target.coeffs))
    if x is None:
        return None
    return AffineLattice(DivisorClass.from_coeffs(x, phi.domain.h), phi.kernel_basis)
