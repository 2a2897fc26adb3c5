"""Concrete obstructions that rule out the nontrivial candidate classes.

Each builder instantiates a transcribed certificate on a given ladder and checks
it with the monomial engine: a pair of tensors with equal products (the
multiplication map is not injective), an lcm that is not a minimal generator,
or a kernel element of a tensored differential that is a minimal generator.
Builders return None when their pattern does not apply.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .classgroup import PrimeSpec, canonical_data, prime_generators, require_two_connected
from .ladder import Ladder, corners, reflect
from .monomial import (
    Monomial,
    MonomialIdeal,
    PolyElement,
    SignedMonomialMatrix,
    check_kernel_witness,
    ideal_power,
    lcm,
    lcm_map_analysis,
    in_prime_power,
    minimal_generators,
    mon_equal,
    mon_mul,
    multiplication_collision,
    normal_form,
    quotient,
)
from .shape import is_thick, is_thin, spine

# largest generator sets (and generator pairs) the searches will build
GENERATOR_BUDGET = 1500
PAIR_BUDGET = 4000

COLLISION_SCOPE = (
    "two distinct generator tensors with equal products; that the multiplication map "
    "on the tensor product is not injective follows from this, and is not computed"
)


def _count(n_vars: int, e: int) -> int:
    return comb(n_vars + e - 1, e)


@dataclass(frozen=True)
class WitnessOutcome:
    pattern: str
    kind: str  # "collision", "lcm", or "kernel"
    verified: bool | None  # None when the check was too large to run
    data: dict = field(default_factory=dict)
    note: str = ""

    def to_json(self):
        out = {"pattern": self.pattern, "kind": self.kind, "verified": self.verified, "data": self.data}
        if self.kind == "collision":
            out["certifies"] = COLLISION_SCOPE
        if self.note:
            out["note"] = self.note
        return out


def _mono(powers) -> Monomial:
    return Monomial.from_powers({c: e for c, e in powers if e > 0})


def _power(Y: Ladder, cells, e: int) -> MonomialIdeal | None:
    """(cells)^e, or None when it would exceed the generator budget."""
    if _count(len(cells), e) > GENERATOR_BUDGET:
        return None
    base = minimal_generators(Y, [Monomial.of(c) for c in cells])
    return ideal_power(base, e)


def _prime_power(Y: Ladder, spec: PrimeSpec, e: int) -> MonomialIdeal | None:
    return _power(Y, prime_generators(Y, spec), e)


SKIPPED = "skipped: generator sets exceed the search budget"


def _in_all(Y, m: Monomial, factors) -> bool:
    # membership in an intersection is membership in every factor
    return all(in_prime_power(Y, m, s, e) for s, e in factors)


def _factor_json(factors):
    return [[str(s), e] for s, e in factors if e > 0]


def _check_pairs(Y: Ladder, A, B, first, second) -> dict:
    """Both tensors lie in A x B, are different, and have the same product in R."""
    (u1, w1), (u2, w2) = first, second
    same = mon_equal(mon_mul(Y, u1, w1), mon_mul(Y, u2, w2))
    distinct = not (mon_equal(normal_form(Y, u1), normal_form(Y, u2)))
    members = [_in_all(Y, u1, A), _in_all(Y, w1, B), _in_all(Y, u2, A), _in_all(Y, w2, B)]
    return {
        "first": [str(u1), str(w1)],
        "second": [str(u2), str(w2)],
        "product": str(mon_mul(Y, u1, w1)),
        "equal_products": same,
        "distinct": distinct,
        "membership": members,
        "ok": same and distinct and all(members),
    }


# ladders with no lower inside corner


def _one_sided_frame(Y: Ladder):
    """Y itself when h = 0, its reflection when only k = 0, else None."""
    cd = corners(Y)
    if cd.h == 0 and cd.k > 0:
        return Y
    if cd.k == 0 and cd.h > 0:
        return reflect(Y)
    return None


def one_sided_parameters(Y: Ladder):
    """(zeta, delta) for a one-sided ladder whose inside corners share an antidiagonal."""
    Z = _one_sided_frame(Y)
    if Z is None:
        return None
    data = canonical_data(Z)
    if len(set(data.deltas)) != 1:
        return None
    delta0 = Z.m - Z.n
    return delta0 - data.deltas[0], data.deltas[0]


def one_sided_witness(Y: Ladder) -> WitnessOutcome | None:
    Z = _one_sided_frame(Y)
    params = one_sided_parameters(Y)
    if Z is None or params is None:
        return None
    require_two_connected(Z)
    zeta, delta = params
    if zeta * delta == 0:
        return None
    cd = corners(Z)
    k, c1, dk = cd.k, cd.c[1], cd.d[cd.k]
    info = {"zeta": zeta, "delta": delta, "reflected": Z is not Y}
    P = lambda j: PrimeSpec.parse(f"P{j}")  # noqa: E731
    if zeta > 0 and delta > 0:
        A = [(P(0), zeta)]
        B = [(P(j), delta) for j in range(0, k + 1)]
        first = (_mono([((1, 1), zeta)]), _mono([((1, 1), delta - 1), ((1, 2), 1)]))
        second = (_mono([((1, 1), zeta - 1), ((1, 2), 1)]), _mono([((1, 1), delta)]))
        check = _check_pairs(Z, A, B, first, second)
        row = _power(Z, [(1, j) for j in range(1, Z.n + 1)], zeta)
        head = _power(Z, [(1, j) for j in range(1, dk + 1)], delta)
        return _collision_outcome("one-sided, zeta>0, delta>0", row, head, A, B, check, info)
    if zeta < 0 and delta < 0:
        A = [(P(j), -zeta) for j in range(1, k + 2)]
        B = [(P(k + 1), -delta)]
        first = (_mono([((1, 1), -zeta)]), _mono([((1, 1), -delta - 1), ((2, 1), 1)]))
        second = (_mono([((1, 1), -zeta - 1), ((2, 1), 1)]), _mono([((1, 1), -delta)]))
        check = _check_pairs(Z, A, B, first, second)
        col_head = _power(Z, [(r, 1) for r in range(1, c1 + 1)], -zeta)
        col = _power(Z, [(r, 1) for r in range(1, Z.m + 1)], -delta)
        return _collision_outcome("one-sided, zeta<0, delta<0", col_head, col, A, B, check, info)
    if zeta > 0 and delta < 0:
        return _lcm_witness(Z, zeta, -delta, info)
    return _one_sided_kernel(Z, -zeta, delta, info)


def _collision_outcome(pattern, I, J, A, B, check, info) -> WitnessOutcome:
    info.update(M1=_factor_json(A), M2=_factor_json(B), displayed=check)
    if I is None or J is None:
        return WitnessOutcome(pattern, "collision", check["ok"], info, "generator search skipped")
    found = multiplication_collision(I, J)
    info["search"] = None if found is None else found.to_json()
    return WitnessOutcome(pattern, "collision", check["ok"] and found is not None, info)


def _lcm_witness(Z: Ladder, e1: int, e2: int, info: dict) -> WitnessOutcome:
    A = _prime_power(Z, PrimeSpec.parse("P0"), e1)
    B = _prime_power(Z, PrimeSpec.parse(f"P{corners(Z).k + 1}"), e2)
    top = max(e1, e2)
    # lcm(x11^(e1-1) x12, x11^(e2-1) x21) = x11^top * x22
    pair = (_mono([((1, 1), e1 - 1), ((1, 2), 1)]), _mono([((1, 1), e2 - 1), ((2, 1), 1)]))
    L = lcm(Z, *pair)
    base = _mono([((1, 1), top)])
    q = quotient(Z, L, base)
    displayed = {
        "pair": [str(pair[0]), str(pair[1])],
        "lcm": str(L),
        "divisor": str(base),
        "quotient": None if q is None else str(q),
        "ok": q is not None and q.degree == 1,
    }
    info.update(M1=[["P0", e1]], M2=[[f"P{corners(Z).k + 1}", e2]], displayed=displayed)
    if A is None or B is None or len(A) * len(B) > PAIR_BUDGET:
        return WitnessOutcome("one-sided, zeta>0, delta<0", "lcm", displayed["ok"], info, "generator search skipped")
    report = lcm_map_analysis(A, B)
    info["analysis"] = {"injective": report.injective, "image_minimal": report.image_minimal}
    offending = {o["lcm"].key for o in report.offenders}
    displayed["among_offenders"] = L.key in offending
    verified = displayed["ok"] and not report.image_minimal and displayed["among_offenders"]
    return WitnessOutcome("one-sided, zeta>0, delta<0", "lcm", verified, info)


def _one_sided_kernel(Z: Ladder, z: int, delta: int, info: dict) -> WitnessOutcome:
    cd = corners(Z)
    c1, dk = cd.c[1], cd.d[cd.k]
    M1 = _power(Z, [(r, 1) for r in range(1, c1 + 1)], z)
    M2 = _power(Z, [(1, j) for j in range(1, dk + 1)], delta)
    if M1 is None or M2 is None:
        return WitnessOutcome("one-sided, zeta<0, delta>0", "kernel", None, info, SKIPPED)
    if delta < z:
        info["note"] = "delta < |zeta|: the transcribed resolution assumes delta >= |zeta|"
    # generators of M2 ordered as x11^delta, x11^(delta-1) x12, ...
    gens0 = sorted(M2.gens, key=lambda g: [-g.powers()[(1, j)] for j in range(1, dk + 1)])
    d0 = SignedMonomialMatrix.build(Z, [[(1, g) for g in gens0]])
    syz_rows = [r for r in range(1, Z.m + 1) if (r, 2) in Z]
    entries = [[None] * len(syz_rows) for _ in gens0]
    for col, r in enumerate(syz_rows):
        entries[0][col] = (1, Monomial.of((r, 2)))
        entries[1][col] = (-1, Monomial.of((r, 1)))
    d1 = SignedMonomialMatrix.build(Z, entries)
    # (x11^(z-1) x21, -x11^z, 0, ..., 0)
    vec = [PolyElement.zero(Z) for _ in syz_rows]
    vec[0] = PolyElement.monomial(Z, _mono([((1, 1), z - 1), ((2, 1), 1)]), 1)
    vec[1] = PolyElement.monomial(Z, _mono([((1, 1), z)]), -1)
    composite = d0.compose(d1)
    complex_ok = all(e.is_zero() for row in composite.rows for e in row)
    check = check_kernel_witness(d1, vec, ambient=M1)
    info.update(
        M1=f"(x[1..{c1},1])^{z}",
        M2=f"(x[1,1..{dk}])^{delta}",
        vector=[str(p) for p in vec[:2]],
        differential_composes_to_zero=complex_ok,
        check=check.to_json(),
    )
    verified = complex_ok and check.in_kernel and check.coordinate_minimal
    return WitnessOutcome("one-sided, zeta<0, delta>0", "kernel", verified, info)


# two-sided ladders


def _cells_sum(cell):
    return cell[0] + cell[1]


def thick_witness(Y: Ladder, _reflected: bool = False) -> WitnessOutcome | None:
    """Collision certificates against the candidates of a thick ladder."""
    require_two_connected(Y)
    cd = corners(Y)
    if cd.h == 0 or cd.k == 0 or not is_thick(cd):
        return None
    data = canonical_data(Y)
    lam, dl = data.lambdas, data.deltas
    h, k = cd.h, cd.k
    a, b = cd.a, cd.b
    info = {"lambda": list(lam), "delta": list(dl), "reflected": _reflected}
    Q = lambda i: PrimeSpec.parse(f"Q{i}")  # noqa: E731
    Qp = lambda i: PrimeSpec.parse(f"Qprime{i}")  # noqa: E731
    P = lambda j: PrimeSpec.parse(f"P{j}")  # noqa: E731

    m3_shape = all(x == lam[0] for x in dl) and all(x == 0 for x in lam[1:h])
    if m3_shape and lam[0] > 0:
        l1, lh = lam[0], lam[h]
        A = [(Q(1), l1)] + [(P(j), l1) for j in range(1, k + 1)]
        B = [(Q(h + 1), lh)]
        first = (
            _mono([((a[0], b[1]), l1 - 1), ((a[0], b[0]), 1), ((a[h], b[h + 1]), 1)]),
            _mono([((a[h], b[1]), lh)]),
        )
        second = (
            _mono([((a[0], b[1]), l1)]),
            _mono([((a[h], b[1]), lh - 1), ((a[h], b[0]), 1), ((a[h], b[h + 1]), 1)]),
        )
        check = _check_pairs(Y, A, B, first, second)
        info.update(M3=_factor_json(A), M4=_factor_json(B), displayed=check)
        return WitnessOutcome("thick, lambda_1>0", "collision", check["ok"], info)
    if m3_shape and lam[0] < 0 < lam[h]:
        A = _prime_power(Y, Qp(1), -lam[0])
        B = _prime_power(Y, Q(h + 1), lam[h])
        info.update(M3=[["Qprime1", -lam[0]]], M4=[[f"Q{h + 1}", lam[h]]])
        if A is None or B is None or len(A) * len(B) > PAIR_BUDGET:
            return WitnessOutcome("thick, lambda_1<0<lambda_h+1", "lcm", None, info, SKIPPED)
        report = lcm_map_analysis(A, B)
        info["analysis"] = report.to_json()
        verified = not (report.injective and report.image_minimal)
        return WitnessOutcome("thick, lambda_1<0<lambda_h+1", "lcm", verified, info)

    if sum(lam) == 0:
        apex = _cells_sum((a[h + 1], b[h + 1]))
        negatives = sum(-x for x in lam if x < 0)
        A = [(Q(i), x) for i, x in enumerate(lam, 1) if x > 0]
        A += [(Qp(i), -x) for i, x in enumerate(lam, 1) if x < 0]
        A += [(P(j), negatives) for j in range(1, k + 1)]
        ups = [_cells_sum(u) for u in cd.upper]
        if all(s <= apex for s in ups):
            r = max(dl)
            if r < 1 or lam[h] < 1:
                return None
            B = [(P(j), x) for j, x in enumerate(dl, 1) if x > 0]
            rest = [((a[i - 1], b[i]), abs(lam[i - 1])) for i in range(1, h + 1)]
            first = (_mono([((a[h], b[h + 1]), lam[h])] + rest), _mono([((a[h], b[1]), r)]))
            second = (
                _mono([((a[h], b[h + 1]), lam[h] - 1), ((a[h], b[1]), 1)] + rest),
                _mono([((a[h], b[1]), r - 1), ((a[h], b[h + 1]), 1)]),
            )
            check = _check_pairs(Y, A, B, first, second)
            info.update(M1=_factor_json(A), M2=_factor_json(B), displayed=check)
            return WitnessOutcome("thick, window sum zero, deltas >= 0", "collision", check["ok"], info)
        lows = [_cells_sum(lo) for lo in cd.lower]
        if all(s < apex for s in lows):
            j0 = min(range(k), key=lambda j: dl[j])
            e0 = -dl[j0]
            if e0 < 1 or lam[0] >= 0 or lam[h] < 1:
                return None
            B = [(Q(1), e0), (Qp(1), e0)] + [(P(j + 1), dl[j] + e0) for j in range(k) if j != j0]
            r = max([0] + [dl[j] + 1 for j in range(k) if j != j0])
            rest = [((a[i - 1], b[i]), abs(lam[i - 1])) for i in range(2, h + 1)]
            first = (
                _mono([((a[0], b[1]), -lam[0]), ((a[h], b[h + 1]), lam[h])] + rest),
                _mono([((a[0], b[1]), e0 - 1), ((a[h], b[h + 1]), r), ((a[h + 1], b[1]), 1), ((a[0], b[0]), 1)]),
            )
            second = (
                _mono([((a[0], b[1]), -lam[0] - 1), ((a[h], b[h + 1]), lam[h] - 1), ((a[h], b[1]), 1)] + rest),
                _mono([((a[0], b[1]), e0), ((a[h], b[h + 1]), r), ((a[h + 1], b[h + 1]), 1), ((a[0], b[0]), 1)]),
            )
            check = _check_pairs(Y, A, B, first, second)
            info.update(M1=_factor_json(A), M2=_factor_json(B), displayed=check)
            return WitnessOutcome("thick, window sum zero, some delta < 0", "collision", check["ok"], info)
    if not _reflected:
        return thick_witness(reflect(Y), True)
    return None


def thin_witness(Y: Ladder, _reflected: bool = False) -> WitnessOutcome | None:
    """Kernel element of the tensored differential for lambda_1, lambda_h+1 < 0."""
    require_two_connected(Y)
    cd = corners(Y)
    if cd.h == 0 or cd.k == 0 or not is_thin(cd):
        return None
    if cd.a[1] < cd.c[1]:
        return None if _reflected else thin_witness(reflect(Y), True)
    sums = {_cells_sum(x) for x in cd.lower + cd.upper}
    lam = canonical_data(Y).lambdas
    h = cd.h
    if len(sums) != 1 or not (lam[0] < 0 and lam[h] < 0):
        return None
    L = -lam[h]
    S = spine(Y)
    scd = corners(S)
    dt = scd.d[min(scd.h, scd.k)]
    ah = cd.a[h]
    bottom = cd.b[h + 1]
    block = [
        [(1, Monomial.of((ah, dt))), (1, Monomial.of((ah + 1, dt)))],
        [(1, Monomial.of((ah, dt - 1))), (1, Monomial.of((ah + 1, dt - 1)))],
    ]
    D = SignedMonomialMatrix.build(Y, block)
    vec = [
        PolyElement.monomial(Y, _mono([((ah + 1, bottom), L)]), 1),
        PolyElement.monomial(Y, _mono([((ah + 1, bottom), L - 1), ((ah, bottom), 1)]), -1),
    ]
    M6 = _prime_power(Y, PrimeSpec.parse(f"Qprime{h + 1}"), L)
    if M6 is None:
        return WitnessOutcome("thin, lambda_1<0, lambda_h+1<0", "kernel", None, {"lambda_h+1": lam[h]}, SKIPPED)
    check = check_kernel_witness(D, vec, ambient=M6)
    info = {
        "lambda_1": lam[0],
        "lambda_h+1": lam[h],
        "reflected": _reflected,
        "spine_column": dt,
        "M6": [[f"Qprime{h + 1}", L]],
        "vector": [str(p) for p in vec],
        "check": check.to_json(),
    }
    return WitnessOutcome("thin, lambda_1<0, lambda_h+1<0", "kernel", check.in_kernel and check.coordinate_minimal, info)


def run_witnesses(Y: Ladder) -> list[WitnessOutcome]:
    """Every transcribed certificate whose pattern applies to Y."""
    out = []
    for builder in (one_sided_witness, thick_witness, thin_witness):
        w = builder(Y)
        if w is not None:
            out.append(w)
    return out

