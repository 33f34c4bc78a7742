"""Two-sided Ceva and Menelaos machinery for n-gons.

An n-gon with one cevian per vertex (or one cut point per side) can be
reduced step by step to a triangle; pseudo-concurrency of the cevians
(pseudo-collinearity of the cuts) means the triangle's three lines are
concurrent (points are collinear).  The verdict does not depend on the
order of reduction steps, and each notion has an equivalent exact ratio
product.  Vertex order is part of the data: relabeling a gon along a
different cyclic order changes the products and may change the verdict.

Step indices throughout this module are 1-based and cyclic, matching
the usual way polygon vertices are numbered.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product as _iter_product
from random import Random
from typing import Iterator, Sequence

from .core import (
    EXACT,
    Backend,
    CoincidentLines,
    CoincidentPoints,
    DegenerateInput,
    GeometryError,
    Line,
    Point,
    Scalar,
    UndefinedFoot,
    UndefinedRatio,
    _is_float,
    collinear,
    concurrent,
    dualize,
    float_backend,
    incident,
    join,
    meet,
    ratio_product,
    signed_ratio,
)

REDUCTION_SCHEMA = 1


class DegenerateStep(GeometryError):
    """A reduction step hit coincident objects and cannot proceed.

    Distinct from a False verdict: a degenerate order neither confirms
    nor refutes pseudo-concurrency.  When raised by a full reduction
    run, carries the trace prefix of the steps that did succeed.
    """

    def __init__(self, reason: str, index: int | None = None, trace=None):
        super().__init__(reason)
        self.reason = reason
        self.index = index
        self.trace = trace


class InconsistentOrders(GeometryError):
    """Two reduction orders returned different verdicts for one gon."""


class ReplayMismatch(GeometryError):
    """A replayed trace produced different objects than it recorded."""


def _gon_backend(*triples) -> Backend:
    if _is_float(*(v for t in triples for v in t)):
        return float_backend()
    return EXACT


# ---------------------------------------------------------------------------
# gon types


@dataclass(frozen=True)
class CevaGon:
    """Cyclic vertex list with one cevian line through each vertex."""

    vertices: tuple[Point, ...]
    cevians: tuple[Line, ...]

    def __post_init__(self) -> None:
        n = len(self.vertices)
        if n < 3:
            raise DegenerateInput("a gon needs at least 3 vertices")
        if len(self.cevians) != n:
            raise DegenerateInput("one cevian per vertex required")
        be = _gon_backend(
            *(p.triple for p in self.vertices),
            *(l.triple for l in self.cevians),
        )
        for i in range(n):
            if self.vertices[i] == self.vertices[(i + 1) % n]:
                raise DegenerateInput(
                    f"consecutive vertices {i + 1} and {(i + 1) % n + 1} coincide"
                )
            if not incident(self.cevians[i], self.vertices[i], be):
                raise DegenerateInput(
                    f"cevian {i + 1} does not pass through vertex {i + 1}"
                )

    @property
    def n(self) -> int:
        return len(self.vertices)

    def side(self, i: int) -> Line:
        """Side from vertex i to vertex i+1 (1-based, cyclic)."""
        v = self.vertices
        return join(v[i - 1], v[i % self.n])

    def to_json(self) -> dict:
        return {
            "kind": "ceva",
            "vertices": [p.to_json() for p in self.vertices],
            "cevians": [l.to_json() for l in self.cevians],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CevaGon":
        return cls(
            tuple(Point.from_json(p) for p in data["vertices"]),
            tuple(Line.from_json(l) for l in data["cevians"]),
        )


@dataclass(frozen=True)
class MenelaosGon:
    """Cyclic vertex list with one cut point on each side.

    side_points[i] lies on the side from vertices[i] to vertices[i+1]
    and differs from both endpoints.
    """

    vertices: tuple[Point, ...]
    side_points: tuple[Point, ...]

    def __post_init__(self) -> None:
        n = len(self.vertices)
        if n < 3:
            raise DegenerateInput("a gon needs at least 3 vertices")
        if len(self.side_points) != n:
            raise DegenerateInput("one side point per side required")
        be = _gon_backend(
            *(p.triple for p in self.vertices),
            *(p.triple for p in self.side_points),
        )
        for i in range(n):
            a, b = self.vertices[i], self.vertices[(i + 1) % n]
            if a == b:
                raise DegenerateInput(
                    f"consecutive vertices {i + 1} and {(i + 1) % n + 1} coincide"
                )
            cut = self.side_points[i]
            if not incident(join(a, b), cut, be):
                raise DegenerateInput(f"cut {i + 1} is not on side {i + 1}")
            if cut == a or cut == b:
                raise DegenerateInput(f"cut {i + 1} coincides with a vertex")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def side(self, i: int) -> Line:
        v = self.vertices
        return join(v[i - 1], v[i % self.n])

    def to_json(self) -> dict:
        return {
            "kind": "menelaos",
            "vertices": [p.to_json() for p in self.vertices],
            "side_points": [p.to_json() for p in self.side_points],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MenelaosGon":
        return cls(
            tuple(Point.from_json(p) for p in data["vertices"]),
            tuple(Point.from_json(p) for p in data["side_points"]),
        )


def gon_from_json(data: dict) -> CevaGon | MenelaosGon:
    kind = data.get("kind")
    if kind == "ceva":
        return CevaGon.from_json(data)
    if kind == "menelaos":
        return MenelaosGon.from_json(data)
    raise ValueError(f"unknown gon kind {kind!r}")


# ---------------------------------------------------------------------------
# ratio products


def diagonal_ratio_product(
    vertices: Sequence[Point], lines: Sequence[Line], backend: Backend = EXACT
) -> Scalar:
    """Exact cevian ratio product over short diagonals.

    With D_i the cut of line i on the diagonal from vertex i-1 to
    vertex i+1, the product runs over (A_i D_{i+1} / D_{i+1} A_{i+2});
    it equals 1 exactly when the lines are pseudo-concurrent for this
    vertex order.
    """
    A = tuple(vertices)
    g = tuple(lines)
    n = len(A)
    cuts = []
    for i in range(n):
        lo, hi = A[(i - 1) % n], A[(i + 1) % n]
        if lo == hi:
            raise UndefinedFoot(f"diagonal at vertex {i + 1} collapses")
        diag = join(lo, hi)
        try:
            cuts.append(meet(diag, g[i]))
        except CoincidentLines:
            raise UndefinedFoot(f"line {i + 1} lies on its diagonal")
    terms = []
    for i in range(n):
        j, k = (i + 1) % n, (i + 2) % n
        r = signed_ratio(A[i], cuts[j], A[k], backend)
        if r.is_infinite():
            raise UndefinedFoot(f"cut D{j + 1} hits vertex {k + 1}")
        terms.append(r)
    return ratio_product(terms)


def ceva_product(gon: CevaGon, backend: Backend = EXACT) -> Scalar:
    """Ratio product of a cevian gon; 1 exactly on pseudo-concurrency."""
    return diagonal_ratio_product(gon.vertices, gon.cevians, backend)


def menelaos_product(gon: MenelaosGon, backend: Backend = EXACT) -> Scalar:
    """Side ratio product of a cut gon; (-1)^n exactly on
    pseudo-collinearity."""
    A, B = gon.vertices, gon.side_points
    n = gon.n
    terms = []
    for i in range(n):
        r = signed_ratio(A[i], B[i], A[(i + 1) % n], backend)
        if r.is_infinite():
            raise UndefinedRatio(f"cut {i + 1} coincides with vertex {i + 2}")
        terms.append(r)
    return ratio_product(terms)


# ---------------------------------------------------------------------------
# reduction steps


def ceva_reduce_step(gon: CevaGon, i: int) -> CevaGon:
    """Collapse the adjacent vertex pair (i, i+1), 1-based cyclic.

    The pair is replaced by the meet of its two outer sides; the new
    cevian joins the new vertex to the crossing of the two removed
    cevians.  All other vertices and cevians carry over.
    """
    gon2, _ = _ceva_step_traced(gon, i)
    return gon2


def _ceva_step_traced(gon: CevaGon, i: int) -> tuple[CevaGon, "ReductionStep"]:
    m = gon.n
    if m < 4:
        raise ValueError("reduction steps need at least a 4-gon")
    if not 1 <= i <= m:
        raise ValueError(f"step index {i} out of range 1..{m}")
    A, g = gon.vertices, gon.cevians
    i0 = i - 1
    j0 = (i0 + 1) % m
    prev, nxt = (i0 - 1) % m, (j0 + 1) % m
    side_in = join(A[prev], A[i0])
    side_out = join(A[j0], A[nxt])
    try:
        new_vertex = meet(side_in, side_out)
    except CoincidentLines:
        raise DegenerateStep("outer sides of the chosen pair coincide", i)
    try:
        crossing = meet(g[i0], g[j0])
    except CoincidentLines:
        raise DegenerateStep("the two removed cevians coincide", i)
    try:
        new_line = join(new_vertex, crossing)
    except CoincidentPoints:
        raise DegenerateStep(
            "new vertex equals the crossing of the removed cevians", i
        )
    if j0 == 0:
        # wrapped pair (m, 1): the replacement takes slot 1
        new_vs = (new_vertex,) + A[1 : m - 1]
        new_gs = (new_line,) + g[1 : m - 1]
    else:
        new_vs = A[:i0] + (new_vertex,) + A[j0 + 1 :]
        new_gs = g[:i0] + (new_line,) + g[j0 + 1 :]
    try:
        gon2 = CevaGon(new_vs, new_gs)
    except DegenerateInput as exc:
        raise DegenerateStep(f"reduced gon is degenerate: {exc}", i)
    return gon2, ReductionStep(index=i, vertex=new_vertex, line=new_line)


def menelaos_reduce_step(gon: MenelaosGon, i: int) -> MenelaosGon:
    """Remove vertex i (1-based cyclic), merging its two sides.

    The cut on the merged side is the meet of that side with the line
    through the two removed cuts; all other vertices and cuts carry
    over with their cyclic positions.
    """
    gon2, _ = _menelaos_step_traced(gon, i)
    return gon2


def _menelaos_step_traced(
    gon: MenelaosGon, i: int
) -> tuple[MenelaosGon, "ReductionStep"]:
    m = gon.n
    if m < 4:
        raise ValueError("reduction steps need at least a 4-gon")
    if not 1 <= i <= m:
        raise ValueError(f"step index {i} out of range 1..{m}")
    A, B = gon.vertices, gon.side_points
    i0 = i - 1
    prev, nxt = (i0 - 1) % m, (i0 + 1) % m
    if A[prev] == A[nxt]:
        raise DegenerateStep("neighbors of the removed vertex coincide", i)
    merged = join(A[prev], A[nxt])
    if B[prev] == B[i0]:
        raise DegenerateStep("the two removed cuts coincide", i)
    transversal = join(B[prev], B[i0])
    if transversal == merged:
        raise DegenerateStep("cut transversal equals the merged side", i)
    new_point = meet(merged, transversal)
    if i0 == 0:
        new_vs = A[1:]
        new_bs = B[1 : m - 1] + (new_point,)
    else:
        new_vs = A[:i0] + A[i0 + 1 :]
        new_bs = B[: i0 - 1] + (new_point,) + B[i0 + 1 :]
    try:
        gon2 = MenelaosGon(new_vs, new_bs)
    except DegenerateInput as exc:
        raise DegenerateStep(f"reduced gon is degenerate: {exc}", i)
    return gon2, ReductionStep(index=i, point=new_point)


# ---------------------------------------------------------------------------
# traces


@dataclass
class ReductionStep:
    """One recorded step: the chosen index and the objects it created."""

    index: int
    vertex: Point | None = None
    line: Line | None = None
    point: Point | None = None

    def to_json(self) -> dict:
        out: dict = {"index": self.index}
        if self.vertex is not None:
            out["vertex"] = self.vertex.to_json()
        if self.line is not None:
            out["line"] = self.line.to_json()
        if self.point is not None:
            out["point"] = self.point.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ReductionStep":
        return cls(
            index=data["index"],
            vertex=Point.from_json(data["vertex"]) if "vertex" in data else None,
            line=Line.from_json(data["line"]) if "line" in data else None,
            point=Point.from_json(data["point"]) if "point" in data else None,
        )


@dataclass
class ReductionTrace:
    """Full record of a reduction run: start gon, steps, final triangle,
    verdict.  Serializes to JSON lines for bit-exact replay."""

    kind: str
    start: CevaGon | MenelaosGon
    steps: list[ReductionStep] = field(default_factory=list)
    final: CevaGon | MenelaosGon | None = None
    verdict: bool | None = None

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(s.index for s in self.steps)

    def to_json_lines(self) -> str:
        lines = [
            json.dumps(
                {
                    "schema": REDUCTION_SCHEMA,
                    "kind": self.kind,
                    "gon": self.start.to_json(),
                },
                sort_keys=True,
            )
        ]
        for step in self.steps:
            lines.append(json.dumps(step.to_json(), sort_keys=True))
        if self.final is not None:
            lines.append(
                json.dumps(
                    {"final": self.final.to_json(), "verdict": self.verdict},
                    sort_keys=True,
                )
            )
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json_lines(cls, text: str) -> "ReductionTrace":
        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
        if not rows or "kind" not in rows[0]:
            raise ValueError("trace must start with a header line")
        header = rows[0]
        trace = cls(kind=header["kind"], start=gon_from_json(header["gon"]))
        for row in rows[1:]:
            if "final" in row:
                trace.final = gon_from_json(row["final"])
                trace.verdict = row["verdict"]
            else:
                trace.steps.append(ReductionStep.from_json(row))
        return trace


# ---------------------------------------------------------------------------
# drivers


def _verdict_backend(gon, backend: Backend | None) -> Backend:
    if backend is not None:
        return backend
    triples = [p.triple for p in gon.vertices]
    if isinstance(gon, CevaGon):
        triples += [l.triple for l in gon.cevians]
    else:
        triples += [p.triple for p in gon.side_points]
    return _gon_backend(*triples)


def _run_reduction(
    gon: CevaGon | MenelaosGon,
    indices: Sequence[int],
    backend: Backend,
) -> tuple[bool, ReductionTrace]:
    is_ceva = isinstance(gon, CevaGon)
    kind = "ceva" if is_ceva else "menelaos"
    step_fn = _ceva_step_traced if is_ceva else _menelaos_step_traced
    trace = ReductionTrace(kind=kind, start=gon)
    current = gon
    if len(indices) != gon.n - 3:
        raise ValueError(
            f"a {gon.n}-gon reduces in exactly {gon.n - 3} steps, "
            f"got {len(indices)} indices"
        )
    for idx in indices:
        try:
            current, step = step_fn(current, idx)
        except DegenerateStep as exc:
            exc.trace = trace
            raise
        trace.steps.append(step)
    trace.final = current
    if is_ceva:
        verdict = concurrent(*current.cevians, backend)
    else:
        verdict = collinear(*current.side_points, backend)
    trace.verdict = verdict
    return verdict, trace


def all_reduction_orders(n: int) -> Iterator[tuple[int, ...]]:
    """Every full sequence of 1-based step choices for an n-gon."""
    ranges = [range(1, m + 1) for m in range(n, 3, -1)]
    yield from _iter_product(*ranges)


def _resolve_order(gon, order) -> Sequence[int] | None:
    steps = gon.n - 3
    if order == "first":
        return (1,) * steps
    if isinstance(order, tuple) and len(order) == 2 and order[0] == "seed":
        rng = Random(order[1])
        return tuple(rng.randint(1, m) for m in range(gon.n, 3, -1))
    if isinstance(order, (tuple, list)) and all(isinstance(i, int) for i in order):
        return tuple(order)
    if order == "exhaustive":
        return None
    raise ValueError(f"unknown reduction order {order!r}")


def _pseudo_check(gon, order, backend) -> tuple[bool, ReductionTrace]:
    be = _verdict_backend(gon, backend)
    resolved = _resolve_order(gon, order)
    if resolved is not None:
        return _run_reduction(gon, resolved, be)
    if gon.n > 6:
        raise ValueError("exhaustive order checking is limited to n <= 6")
    first: tuple[bool, ReductionTrace] | None = None
    first_degenerate: DegenerateStep | None = None
    for indices in all_reduction_orders(gon.n):
        try:
            verdict, trace = _run_reduction(gon, indices, be)
        except DegenerateStep as exc:
            if first_degenerate is None:
                first_degenerate = exc
            continue
        if first is None:
            first = (verdict, trace)
        elif verdict != first[0]:
            raise InconsistentOrders(
                f"order {trace.indices} gave {verdict}, "
                f"order {first[1].indices} gave {first[0]}"
            )
    if first is None:
        if first_degenerate is not None:
            raise first_degenerate
        raise DegenerateStep("no reduction order succeeded")
    return first


def is_pseudo_concurrent(
    gon: CevaGon, order="first", backend: Backend | None = None
) -> tuple[bool, ReductionTrace]:
    """Whether the cevians reduce to a concurrent triangle triple.

    order: "first" (always collapse the pair at index 1),
    "exhaustive" (run every order, n <= 6, and require agreement),
    ("seed", k) for a seeded random order, or an explicit tuple of
    1-based indices with one entry per step.
    """
    return _pseudo_check(gon, order, backend)


def is_pseudo_collinear(
    gon: MenelaosGon, order="first", backend: Backend | None = None
) -> tuple[bool, ReductionTrace]:
    """Whether the side cuts reduce to a collinear triangle triple.

    Accepts the same order strategies as is_pseudo_concurrent.
    """
    return _pseudo_check(gon, order, backend)


def replay_trace(trace: ReductionTrace, backend: Backend | None = None) -> ReductionTrace:
    """Re-run a recorded reduction and demand bit-identical objects.

    Raises ReplayMismatch if any recreated vertex, line, point, final
    gon, or verdict differs from the recording, comparing canonical
    serializations so the check is exact.
    """
    be = _verdict_backend(trace.start, backend)
    verdict, fresh = _run_reduction(trace.start, trace.indices, be)
    for old, new in zip(trace.steps, fresh.steps):
        if json.dumps(old.to_json(), sort_keys=True) != json.dumps(
            new.to_json(), sort_keys=True
        ):
            raise ReplayMismatch(
                f"step at index {old.index} reproduced different objects"
            )
    if trace.final is not None:
        if json.dumps(trace.final.to_json(), sort_keys=True) != json.dumps(
            fresh.final.to_json(), sort_keys=True
        ):
            raise ReplayMismatch("final gon differs from the recording")
    if trace.verdict is not None and trace.verdict != verdict:
        raise ReplayMismatch(
            f"verdict {verdict} differs from recorded {trace.verdict}"
        )
    return fresh


# ---------------------------------------------------------------------------
# duality


def duality_bridge(gon: CevaGon | MenelaosGon) -> MenelaosGon | CevaGon:
    """Swap a cut gon for its dual cevian gon and vice versa.

    For a MenelaosGon, vertex i of the dual is the dual point of side
    i and cevian i is the dual line of cut i; pseudo-collinearity of
    the cuts equals pseudo-concurrency of the dual cevians.  Applying
    the bridge twice returns the original gon (projectively).
    """
    n = gon.n
    if isinstance(gon, MenelaosGon):
        verts = tuple(dualize(gon.side(i)) for i in range(1, n + 1))
        cevs = tuple(dualize(b) for b in gon.side_points)
        return CevaGon(verts, cevs)
    duals = [dualize(v) for v in gon.vertices]
    verts = tuple(
        meet(duals[(i - 1) % n], duals[i]) for i in range(n)
    )
    cuts = tuple(dualize(g) for g in gon.cevians)
    return MenelaosGon(verts, cuts)
