"""Bounds and exact answers for the semidualizing classes of R_t(Y).

The decision tree only ever returns classes among {0, [omega]}; witnesses are
optional evidence recorded in the trace and never change a verdict.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .classgroup import DivisorClass, canonical_class, canonical_data, qprime_class
from .connectivity import (
    has_t_minor,
    is_path_connected,
    is_t_connected,
    minor_bearing_components,
    strip_unused,
)
from .errors import LadderError, OutOfScope, TooManyComponents
from .ladder import Ladder, corners, eta_kappa
from .shape import is_thick, is_thin
from .witnesses import one_sided_witness, run_witnesses


class Status(enum.Enum):
    EXACT = "ExactSet"
    BOUND = "BoundOnly"
    UNKNOWN = "Unknown"


class Reason(enum.Enum):
    COINCIDENTAL = "coincidental-corners"
    SEVERAL_COMPONENTS = "several-minor-bearing-components"
    TWO_SIDED_HIGHER_T = "two-sided-t-at-least-3"
    NOT_TWO_CONNECTED = "not-2-connected"
    NOT_T_CONNECTED = "not-t-connected"
    TOO_MANY_COMPONENTS = "too-many-minor-components"


REASON_TEXT = {
    Reason.COINCIDENTAL: "a lower and an upper inside corner coincide; this case is not covered",
    Reason.SEVERAL_COMPONENTS: "several path components carry t-minors; the count needs results outside this library",
    Reason.TWO_SIDED_HIGHER_T: "two-sided ladders are only covered for t = 2",
    Reason.NOT_TWO_CONNECTED: "the ladder is not 2-connected",
    Reason.NOT_T_CONNECTED: "the stripped ladder is not t-connected",
    Reason.TOO_MANY_COMPONENTS: "too many minor components to decide t-connectivity",
}


@dataclass(frozen=True)
class Candidate:
    label: str
    origin: tuple[str, ...]
    cls: DivisorClass
    side_conditions: tuple[tuple[str, bool], ...]
    live: bool

    def to_json(self):
        return {
            "label": self.label,
            "origin": list(self.origin),
            "class": self.cls.to_json(),
            "side_conditions": [{"condition": d, "satisfied": ok} for d, ok in self.side_conditions],
            "live": self.live,
        }


def _make(label, origin, cls, conditions, omega) -> Candidate:
    conditions = tuple(conditions)
    live = all(ok for _, ok in conditions) and not cls.is_zero() and cls != omega
    return Candidate(label, origin, cls, conditions, live)


def _window_conditions(data, ek, h, k):
    lam, dl = data.lambdas, data.deltas
    e1, e2, k1, k2 = ek.as_tuple()
    return [
        ("eta1 <= eta2", e1 <= e2),
        ("kappa1 <= kappa2", k1 <= k2),
        ("lambda_i = 0 for i < eta1 or i > eta2+1",
         all(lam[i - 1] == 0 for i in range(1, h + 2) if i < e1 or i > e2 + 1)),
        ("delta_j = 0 for j < kappa1 or j > kappa2",
         all(dl[j - 1] == 0 for j in range(1, k + 1) if j < k1 or j > k2)),
        ("sum of lambda_i over eta1..eta2+1 is 0", sum(lam[e1 - 1 : e2 + 1]) == 0),
    ]


def _window_pair(Y, data, ek, omega, h, k):
    e1, e2, k1, k2 = ek.as_tuple()
    m1 = DivisorClass.zero(h, k)
    for i in range(e1, e2 + 2):
        m1 = m1 + DivisorClass.basis_q(h, k, i) * data.lambdas[i - 1]
    formula2 = DivisorClass.zero(h, k)
    for j in range(max(k1, 1), min(k2, k) + 1):
        formula2 = formula2 + DivisorClass.basis_p(h, k, j) * data.deltas[j - 1]
    conds = _window_conditions(data, ek, h, k)
    m2 = omega - m1
    return [
        _make("M1", ("N12",), m1, conds, omega),
        _make("M2", ("N7",), m2, conds + [("M2 = sum of delta_j [p_j] over kappa1..kappa2", m2 == formula2)], omega),
    ]


def _require_candidate_scope(Y: Ladder):
    if not is_path_connected(Y):
        raise OutOfScope("candidates need a path-connected ladder")
    cd = corners(Y)
    if cd.h == 0 or cd.k == 0:
        raise OutOfScope("candidates are enumerated for two-sided ladders")
    if cd.coincidental():
        raise OutOfScope("candidates need distinct inside corners")
    if not is_t_connected(Y, 2):
        raise OutOfScope("candidates need a 2-connected ladder")


def enumerate_candidates(Y: Ladder) -> list[Candidate]:
    """The possible nontrivial classes left after localizing at the four corner variables."""
    _require_candidate_scope(Y)
    cd = corners(Y)
    h, k = cd.h, cd.k
    data, omega = canonical_class(Y)
    ek = eta_kappa(cd)
    lam, dl = data.lambdas, data.deltas
    if is_thin(cd):
        sums = {x + y for x, y in cd.lower + cd.upper}
        conds = [("all inside corners lie on one antidiagonal", len(sums) == 1)]
        m5 = DivisorClass.basis_q(h, k, 1) * lam[0]
        m6 = omega - m5
        formula6 = -(qprime_class(Y, h + 1) * lam[h])
        return [
            _make("M5", ("N8",), m5, conds, omega),
            _make("M6", ("N11",), m6, conds + [("M6 = -lambda_h+1 [q'_h+1]", m6 == formula6)], omega),
        ]
    out = _window_pair(Y, data, ek, omega, h, k)
    if is_thick(cd):
        e1, e2, k1, k2 = ek.as_tuple()
        conds = [
            ("eta1 = 1 and eta2 = h", e1 == 1 and e2 == h),
            ("kappa1 = 1 and kappa2 = k", k1 == 1 and k2 == k),
            ("lambda_1 = delta_j for all j", all(x == lam[0] for x in dl)),
            ("lambda_i = 0 for 1 < i < h+1", all(x == 0 for x in lam[1:h])),
        ]
        m3 = -(qprime_class(Y, 1) * lam[0])
        m4 = omega - m3
        formula4 = DivisorClass.basis_q(h, k, h + 1) * lam[h]
        out += [
            _make("M3", ("N9",), m3, conds, omega),
            _make("M4", ("N10",), m4, conds + [("M4 = lambda_h+1 [q_h+1]", m4 == formula4)], omega),
        ]
    return out


@dataclass(frozen=True)
class TraceStep:
    anchor: str
    data: dict = field(default_factory=dict)

    def to_json(self):
        return {"anchor": self.anchor, "data": self.data}


@dataclass(frozen=True)
class ClassificationResult:
    status: Status
    classes: tuple[DivisorClass, ...] | None = None  # coordinates, when t = 2
    size: int | None = None
    bound: int | None = None
    trace: tuple[TraceStep, ...] = ()
    reason: Reason | None = None
    reason_text: str | None = None

    @property
    def labels(self):
        if self.status is not Status.EXACT:
            return None
        return ["R"] if self.size == 1 else ["R", "omega"]

    def to_json(self):
        return {
            "status": self.status.value,
            "classes": None if self.classes is None else [list(c.coeffs) for c in self.classes],
            "labels": self.labels,
            "size": self.size,
            "bound": self.bound,
            "trace": [s.to_json() for s in self.trace],
            "reason": None if self.reason is None else self.reason.value,
            "reason_text": self.reason_text,
        }


def _exact(trace, size, classes=None):
    return ClassificationResult(Status.EXACT, classes=classes, size=size, trace=tuple(trace))


def _unknown(trace, reason: Reason, detail: str | None = None):
    text = REASON_TEXT[reason] if detail is None else f"{REASON_TEXT[reason]} ({detail})"
    return ClassificationResult(Status.UNKNOWN, trace=tuple(trace), reason=reason, reason_text=text)


def _omega_pair(Y: Ladder):
    data, omega = canonical_class(Y)
    zero = DivisorClass.zero(omega.h, omega.k)
    classes = (zero,) if omega.is_zero() else (zero, omega)
    return data, omega, classes


def _rectangle(Y: Ladder, t: int, trace):
    size = 1 if Y.m == Y.n else 2
    trace.append(TraceStep("rectangle-base-case", {"m": Y.m, "n": Y.n, "gorenstein": Y.m == Y.n, "external": True}))
    classes = None
    if t == 2:
        _, _, classes = _omega_pair(Y)
    return _exact(trace, size, classes)


def classify(Y: Ladder, t: int, verify: bool = False) -> ClassificationResult:
    if t < 1:
        raise ValueError("t must be at least 1")
    trace: list[TraceStep] = []
    if t == 1:
        trace.append(TraceStep("t-equals-1", {"ring": "the base field"}))
        return _exact(trace, 1)
    if not has_t_minor(Y, t):
        trace.append(TraceStep("no-t-minor", {"ring": "polynomial ring", "t": t}))
        return _exact(trace, 1)

    if not is_path_connected(Y):
        parts = minor_bearing_components(Y, t)
        trace.append(TraceStep("path-components", {"minor_bearing": len(parts)}))
        if len(parts) > 1:
            return _unknown(trace, Reason.SEVERAL_COMPONENTS, f"{len(parts)} components")
        part = parts[0]
        trace.append(TraceStep("single-component", {
            "ladder": part.ladder.to_json(),
            "offset": [part.row_offset, part.col_offset],
        }))
        inner = classify(part.ladder, t, verify)
        return ClassificationResult(
            inner.status, inner.classes, inner.size, inner.bound,
            tuple(trace) + inner.trace, inner.reason, inner.reason_text,
        )

    if Y.is_rectangle and t <= min(Y.m, Y.n):
        return _rectangle(Y, t, trace)

    cd = corners(Y)
    if cd.h == 0 or cd.k == 0:
        return _classify_one_sided(Y, t, verify, trace)

    ek = eta_kappa(cd)
    trace.append(TraceStep("corners", {**cd.to_json(), "eta_kappa": list(ek.as_tuple())}))
    if cd.coincidental():
        return _unknown(trace, Reason.COINCIDENTAL, f"at {[list(x) for x in cd.coincidental()]}")
    if t >= 3:
        return _unknown(trace, Reason.TWO_SIDED_HIGHER_T)
    try:
        connected = is_t_connected(Y, 2)
    except TooManyComponents as exc:
        return _unknown(trace, Reason.TOO_MANY_COMPONENTS, str(exc))
    if not connected:
        return _unknown(trace, Reason.NOT_TWO_CONNECTED)
    return _classify_two_sided(Y, verify, trace)


def _classify_one_sided(Y: Ladder, t: int, verify: bool, trace):
    strip = strip_unused(Y, t)
    Yp = strip.ladder
    trace.append(TraceStep("strip-unused-cells", {
        "kept": Yp.to_json(),
        "unused": sorted(map(list, strip.unused)),
        "note": "R_t(Y) is a polynomial ring over R_t(Y') in the unused cells",
    }))
    if Yp.is_rectangle and t <= min(Yp.m, Yp.n):
        return _rectangle(Yp, t, trace)
    try:
        connected = is_t_connected(Yp, t)
    except TooManyComponents as exc:
        return _unknown(trace, Reason.TOO_MANY_COMPONENTS, str(exc))
    if not connected:
        return _unknown(trace, Reason.NOT_T_CONNECTED)
    if t >= 3:
        trace.append(TraceStep("one-sided-bound", {
            "t": t,
            "note": "class groups transfer to t-1 after deleting the first row and column; only the bound follows",
        }))
        return ClassificationResult(Status.BOUND, bound=2, trace=tuple(trace))
    data, omega, classes = _omega_pair(Yp)
    step = {
        "lambda": list(data.lambdas),
        "delta": list(data.deltas),
        "omega": omega.to_json(),
        "basis": "class group of the stripped ladder" if strip.unused else "class group of the ladder",
    }
    trace.append(TraceStep("one-sided-bound", step))
    if verify:
        w = one_sided_witness(Yp)
        trace.append(TraceStep("witness", {"outcomes": [] if w is None else [w.to_json()]}))
    return _exact(trace, len(classes), classes)


def _classify_two_sided(Y: Ladder, verify: bool, trace):
    cd = corners(Y)
    if is_thick(cd):
        anchor = "thick-ladder-bound"
    elif is_thin(cd):
        anchor = "thin-ladder-bound"
    else:
        anchor = "two-sided-induction"
    cands = enumerate_candidates(Y)
    data, omega, classes = _omega_pair(Y)
    trace.append(TraceStep("canonical-class", {**data.to_json(), "omega": omega.to_json()}))
    trace.append(TraceStep("candidates", {"candidates": [c.to_json() for c in cands]}))
    trace.append(TraceStep(anchor, {
        "h": cd.h,
        "k": cd.k,
        "live_candidates": [c.label for c in cands if c.live],
        "note": "every live candidate is ruled out, leaving the trivial classes",
    }))
    if verify:
        try:
            outcomes = [w.to_json() for w in run_witnesses(Y)]
        except LadderError as exc:
            outcomes = [{"error": exc.code, "message": str(exc)}]
        trace.append(TraceStep("witness", {"outcomes": outcomes}))
    return _exact(trace, len(classes), classes)


def gorenstein(Y: Ladder) -> bool:
    """Whether the canonical class of R_2(Y) vanishes (all lambda and delta are 0)."""
    data = canonical_data(Y)
    return not any(data.lambdas) and not any(data.deltas)
