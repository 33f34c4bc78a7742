"""Homogeneous-coordinate kernel for plane projective geometry.

Points and lines are coordinate triples identified up to a nonzero
scale factor.  A point (x : y : w) with w != 0 is the affine point
(x/w, y/w); points with w == 0 lie on the line at infinity.  A line
(a : b : c) consists of the points with a*x + b*y + c*w == 0.

Every construction is generic over the scalar type.  With int or
fractions.Fraction coordinates all predicates are exact; with float
coordinates they accept a tolerance-carrying backend.  Constructed
triples are reduced (integer content divided out, or floats scaled to
unit max-norm) so coordinates stay small through deep constructions,
but equality is always the proportionality test, never a canonical
form comparison.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction, float]

DEFAULT_EPS = 1e-9
EPS_ENV_VAR = "HARMONICA_EPS"


class GeometryError(Exception):
    """Base class for degenerate geometric input."""


class CoincidentPoints(GeometryError):
    """Two points that had to be distinct are equal."""


class CoincidentLines(GeometryError):
    """Two lines that had to be distinct are equal."""


class NotCollinear(GeometryError):
    """Points required to share a line do not."""


class NotConcurrent(GeometryError):
    """Lines required to share a point do not."""


class DegenerateInput(GeometryError):
    """Input degenerate in a way that leaves the result undefined."""


class TooFewDistinct(DegenerateInput):
    """A tuple collapses so the requested invariant is indeterminate."""


class PointAtInfinity(GeometryError):
    """A finite (affine) point was required."""


class UndefinedRatio(GeometryError):
    """A ratio product has an infinite or indeterminate factor."""


class UndefinedFoot(GeometryError):
    """A cevian foot or transversal cut needed by a product is undefined."""


class DegenerateConfig(GeometryError):
    """A configuration violates the nondegeneracy assumptions of a check."""


class NoSolution(GeometryError):
    """A completion problem has no admissible solution for this input."""


# ---------------------------------------------------------------------------
# scalar backends


def eps_from_env(default: float = DEFAULT_EPS) -> float:
    """Float tolerance, honoring the HARMONICA_EPS override."""
    raw = os.environ.get(EPS_ENV_VAR)
    if raw is None:
        return default
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"{EPS_ENV_VAR} must be a float, got {raw!r}")
    if not (value > 0):
        raise ValueError(f"{EPS_ENV_VAR} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class ExactBackend:
    """Predicate backend for int / Fraction coordinates."""

    kind: str = "exact"

    def zero(self, value: Scalar, scale: Scalar = 1) -> bool:
        return value == 0

    def eq(self, a: Scalar, b: Scalar) -> bool:
        return a == b


@dataclass(frozen=True)
class FloatBackend:
    """Predicate backend with relative tolerance for float coordinates.

    A residual r is considered zero at scale s when
    abs(r) <= eps * max(1, abs(s)).
    """

    eps: float = DEFAULT_EPS
    kind: str = "float"

    def zero(self, value: Scalar, scale: Scalar = 1) -> bool:
        return abs(value) <= self.eps * max(1.0, abs(scale))

    def eq(self, a: Scalar, b: Scalar) -> bool:
        return self.zero(a - b, max(abs(a), abs(b)))


Backend = Union[ExactBackend, FloatBackend]

EXACT = ExactBackend()


def float_backend(eps: float | None = None) -> FloatBackend:
    """Float backend with the given tolerance (default honors the env)."""
    return FloatBackend(eps_from_env() if eps is None else eps)


# ---------------------------------------------------------------------------
# triple helpers


def _is_float(*values: Scalar) -> bool:
    return any(isinstance(v, float) for v in values)


def exact_div(num: Scalar, den: Scalar) -> Scalar:
    """Division that never silently turns ints into floats."""
    if _is_float(num, den):
        return num / den
    return Fraction(num) / Fraction(den)


def _tidy(x: Scalar, y: Scalar, z: Scalar) -> tuple[Scalar, Scalar, Scalar]:
    # size control for constructed triples; projectively a no-op
    if _is_float(x, y, z):
        m = max(abs(x), abs(y), abs(z))
        if m == 0 or not math.isfinite(m):
            return x, y, z
        return x / m, y / m, z / m
    fx, fy, fz = Fraction(x), Fraction(y), Fraction(z)
    lcm = fx.denominator
    lcm = lcm * fy.denominator // math.gcd(lcm, fy.denominator)
    lcm = lcm * fz.denominator // math.gcd(lcm, fz.denominator)
    ix, iy, iz = (
        fx.numerator * (lcm // fx.denominator),
        fy.numerator * (lcm // fy.denominator),
        fz.numerator * (lcm // fz.denominator),
    )
    g = math.gcd(math.gcd(ix, iy), iz)
    if g > 1:
        ix, iy, iz = ix // g, iy // g, iz // g
    return ix, iy, iz


def _cross(
    p: tuple[Scalar, Scalar, Scalar], q: tuple[Scalar, Scalar, Scalar]
) -> tuple[Scalar, Scalar, Scalar]:
    p1, p2, p3 = p
    q1, q2, q3 = q
    return (p2 * q3 - p3 * q2, p3 * q1 - p1 * q3, p1 * q2 - p2 * q1)


def _det3(
    p: tuple[Scalar, Scalar, Scalar],
    q: tuple[Scalar, Scalar, Scalar],
    r: tuple[Scalar, Scalar, Scalar],
) -> Scalar:
    c = _cross(q, r)
    return p[0] * c[0] + p[1] * c[1] + p[2] * c[2]


def _det3_scale(p, q, r) -> float:
    # permanent of absolute values, the natural magnitude for det residuals
    a1, a2, a3 = abs(p[0]), abs(p[1]), abs(p[2])
    b1, b2, b3 = abs(q[0]), abs(q[1]), abs(q[2])
    c1, c2, c3 = abs(r[0]), abs(r[1]), abs(r[2])
    return (
        a1 * (b2 * c3 + b3 * c2)
        + a2 * (b1 * c3 + b3 * c1)
        + a3 * (b1 * c2 + b2 * c1)
    )


def _proportional(p, q) -> bool:
    return (
        p[0] * q[1] == p[1] * q[0]
        and p[0] * q[2] == p[2] * q[0]
        and p[1] * q[2] == p[2] * q[1]
    )


def _scalar_to_str(v: Scalar) -> str:
    if isinstance(v, float):
        return repr(v)
    f = Fraction(v)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _scalar_from_str(s: str) -> Scalar:
    if any(ch in s for ch in ".eE") and "/" not in s:
        return float(s)
    return Fraction(s)


def format_scalar(v: Scalar) -> str:
    """Serialize a scalar losslessly (exact p/q or float repr)."""
    return _scalar_to_str(v)


def parse_scalar(s: str) -> Scalar:
    """Inverse of format_scalar."""
    return _scalar_from_str(s)


# ---------------------------------------------------------------------------
# points and lines


@dataclass(frozen=True, eq=False)
class Point:
    """Projective point (x : y : w)."""

    x: Scalar
    y: Scalar
    w: Scalar

    def __post_init__(self) -> None:
        if self.x == 0 and self.y == 0 and self.w == 0:
            raise DegenerateInput("(0 : 0 : 0) is not a point")

    @classmethod
    def affine(cls, x: Scalar, y: Scalar) -> "Point":
        return cls(x, y, 1)

    @property
    def triple(self) -> tuple[Scalar, Scalar, Scalar]:
        return (self.x, self.y, self.w)

    def is_infinite(self) -> bool:
        return self.w == 0

    def to_affine(self) -> tuple[Scalar, Scalar]:
        if self.w == 0:
            raise PointAtInfinity(f"{self} has no affine coordinates")
        return (exact_div(self.x, self.w), exact_div(self.y, self.w))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        return _proportional(self.triple, other.triple)

    def __repr__(self) -> str:
        return "Point(%s : %s : %s)" % tuple(map(_scalar_to_str, self.triple))

    def to_json(self) -> dict:
        return {
            "x": _scalar_to_str(self.x),
            "y": _scalar_to_str(self.y),
            "w": _scalar_to_str(self.w),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Point":
        return cls(*(_scalar_from_str(obj[k]) for k in ("x", "y", "w")))


@dataclass(frozen=True, eq=False)
class Line:
    """Projective line (a : b : c), the locus of a*x + b*y + c*w == 0."""

    a: Scalar
    b: Scalar
    c: Scalar

    def __post_init__(self) -> None:
        if self.a == 0 and self.b == 0 and self.c == 0:
            raise DegenerateInput("(0 : 0 : 0) is not a line")

    @property
    def triple(self) -> tuple[Scalar, Scalar, Scalar]:
        return (self.a, self.b, self.c)

    def is_infinite(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Line):
            return NotImplemented
        return _proportional(self.triple, other.triple)

    def __repr__(self) -> str:
        return "Line(%s : %s : %s)" % tuple(map(_scalar_to_str, self.triple))

    def to_json(self) -> dict:
        return {
            "a": _scalar_to_str(self.a),
            "b": _scalar_to_str(self.b),
            "c": _scalar_to_str(self.c),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Line":
        return cls(*(_scalar_from_str(obj[k]) for k in ("a", "b", "c")))


LINE_AT_INFINITY = Line(0, 0, 1)


def dualize(obj: Union[Point, Line]) -> Union[Point, Line]:
    """Swap point and line roles, keeping the coordinate triple.

    Incidence is symmetric in the two triples, so dualize maps joins
    to meets, collinear triples to concurrent ones, and conversely.
    """
    if isinstance(obj, Point):
        return Line(obj.x, obj.y, obj.w)
    if isinstance(obj, Line):
        return Point(obj.a, obj.b, obj.c)
    raise TypeError(f"cannot dualize {type(obj).__name__}")


# ---------------------------------------------------------------------------
# incidence constructions


def join(p: Point, q: Point) -> Line:
    """Line through two distinct points."""
    t = _cross(p.triple, q.triple)
    if t[0] == 0 and t[1] == 0 and t[2] == 0:
        raise CoincidentPoints(f"join of equal points {p}")
    return Line(*_tidy(*t))


def meet(l: Line, m: Line) -> Point:
    """Common point of two distinct lines."""
    t = _cross(l.triple, m.triple)
    if t[0] == 0 and t[1] == 0 and t[2] == 0:
        raise CoincidentLines(f"meet of equal lines {l}")
    return Point(*_tidy(*t))


def incidence_residual(l: Line, p: Point) -> tuple[Scalar, Scalar]:
    """Raw incidence value a*x + b*y + c*w and its magnitude scale."""
    value = l.a * p.x + l.b * p.y + l.c * p.w
    scale = abs(l.a * p.x) + abs(l.b * p.y) + abs(l.c * p.w)
    return value, scale


def incident(l: Line, p: Point, backend: Backend = EXACT) -> bool:
    value, scale = incidence_residual(l, p)
    return backend.zero(value, scale)


def collinearity_residual(
    p: Point, q: Point, r: Point
) -> tuple[Scalar, Scalar]:
    """Determinant of the three triples and its magnitude scale."""
    return (
        _det3(p.triple, q.triple, r.triple),
        _det3_scale(p.triple, q.triple, r.triple),
    )


def collinear(p: Point, q: Point, r: Point, backend: Backend = EXACT) -> bool:
    """Whether three points lie on one line.

    A triple with two equal points counts as collinear.
    """
    value, scale = collinearity_residual(p, q, r)
    return backend.zero(value, scale)


def concurrency_residual(l: Line, m: Line, n: Line) -> tuple[Scalar, Scalar]:
    return (
        _det3(l.triple, m.triple, n.triple),
        _det3_scale(l.triple, m.triple, n.triple),
    )


def concurrent(l: Line, m: Line, n: Line, backend: Backend = EXACT) -> bool:
    """Whether three lines pass through one point (two equal lines count)."""
    value, scale = concurrency_residual(l, m, n)
    return backend.zero(value, scale)


def all_collinear(points: Sequence[Point], backend: Backend = EXACT) -> bool:
    """Whether every point of the sequence lies on one common line."""
    base = None
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if points[i] != points[j]:
                base = (points[i], points[j])
                break
        if base:
            break
    if base is None:
        return True
    p, q = base
    return all(collinear(p, q, r, backend) for r in points)


def all_concurrent(lines: Sequence[Line], backend: Backend = EXACT) -> bool:
    """Whether every line of the sequence passes through one common point."""
    base = None
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            if lines[i] != lines[j]:
                base = (lines[i], lines[j])
                break
        if base:
            break
    if base is None:
        return True
    l, m = base
    return all(concurrent(l, m, n, backend) for n in lines)


# ---------------------------------------------------------------------------
# charts on a pencil

# Dropping coordinate k of the points of a line (or of the lines through
# a point) is injective exactly when the k-th coordinate of the carrier
# triple is nonzero; the carrier is the cross product of any two members.
# All one-dimensional computations below reduce to 2x2 brackets in such
# a chart, which makes points and lines at infinity ordinary members.


def _chart_index(carrier: tuple[Scalar, Scalar, Scalar]) -> int:
    k = 0
    best = abs(carrier[0])
    for i in (1, 2):
        a = abs(carrier[i])
        if a > best:
            k, best = i, a
    if best == 0:
        raise DegenerateInput("carrier triple is zero")
    return k


def _project(triple: tuple[Scalar, Scalar, Scalar], k: int) -> tuple[Scalar, Scalar]:
    if k == 0:
        return (triple[1], triple[2])
    if k == 1:
        return (triple[0], triple[2])
    return (triple[0], triple[1])


def _bracket(u: tuple[Scalar, Scalar], v: tuple[Scalar, Scalar]) -> Scalar:
    return u[0] * v[1] - u[1] * v[0]


def _cross_ratio_brackets(
    triples: Sequence[tuple[Scalar, Scalar, Scalar]], k: int
) -> Scalar:
    a, b, c, d = (_project(t, k) for t in triples)
    num = _bracket(a, c) * _bracket(b, d)
    den = _bracket(c, b) * _bracket(d, a)
    if den == 0:
        if num == 0:
            raise TooFewDistinct("cross-ratio is indeterminate (0/0)")
        raise TooFewDistinct("cross-ratio is infinite for this quadruple")
    return exact_div(num, den)


def cross_ratio_points(
    a: Point, b: Point, c: Point, d: Point, backend: Backend = EXACT
) -> Scalar:
    """Cross-ratio (a, b; c, d) of four collinear points.

    Defined as (ac / cb) * (bd / da) in any affine chart of the carrier
    line; computed homogeneously, so members at infinity need no
    special casing.  The value is invariant under projective maps and
    under swapping the pairs: (a, b; c, d) == (c, d; a, b).
    """
    carrier = _cross(a.triple, b.triple)
    if carrier == (0, 0, 0):
        raise CoincidentPoints("cross-ratio needs a != b")
    for p in (c, d):
        value = carrier[0] * p.x + carrier[1] * p.y + carrier[2] * p.w
        scale = (
            abs(carrier[0] * p.x) + abs(carrier[1] * p.y) + abs(carrier[2] * p.w)
        )
        if not backend.zero(value, scale):
            raise NotCollinear(f"{p} is not on the carrier line")
    k = _chart_index(carrier)
    return _cross_ratio_brackets([a.triple, b.triple, c.triple, d.triple], k)


def cross_ratio_lines(
    vertex: Point,
    g1: Line,
    g2: Line,
    g3: Line,
    g4: Line,
    backend: Backend = EXACT,
) -> Scalar:
    """Cross-ratio of four lines of the pencil through a common vertex.

    Equals cross_ratio_points of the four intersections with any
    transversal line avoiding the vertex.
    """
    for g in (g1, g2, g3, g4):
        if not incident(g, vertex, backend):
            raise NotConcurrent(f"{g} does not pass through {vertex}")
    if g1 == g2:
        raise CoincidentLines("cross-ratio needs g1 != g2")
    k = _chart_index(vertex.triple)
    return _cross_ratio_brackets(
        [g1.triple, g2.triple, g3.triple, g4.triple], k
    )


def is_harmonic_points(
    a: Point, b: Point, c: Point, d: Point, backend: Backend = EXACT
) -> bool:
    """Whether (a, b; c, d) is a harmonic quadruple (cross-ratio -1)."""
    return backend.eq(cross_ratio_points(a, b, c, d, backend), -1)


def is_harmonic_pencil(
    vertex: Point,
    a1: Line,
    a2: Line,
    g: Line,
    h: Line,
    backend: Backend = EXACT,
) -> bool:
    """Whether (a1, a2; g, h) is a harmonic pencil at the vertex."""
    return backend.eq(cross_ratio_lines(vertex, a1, a2, g, h, backend), -1)


# ---------------------------------------------------------------------------
# signed ratios and areas


@dataclass(frozen=True)
class SegmentRatio:
    """Oriented ratio ad/db of collinear points, possibly infinite.

    value is None exactly when the divider coincides with the second
    endpoint, the limit of ad/db as d approaches b.
    """

    value: Scalar | None

    def is_infinite(self) -> bool:
        return self.value is None

    def __repr__(self) -> str:
        if self.value is None:
            return "SegmentRatio(inf)"
        return f"SegmentRatio({_scalar_to_str(self.value)})"


def signed_ratio(
    a: Point, d: Point, b: Point, backend: Backend = EXACT
) -> SegmentRatio:
    """Oriented ratio ad/db for collinear points a, d, b with a != b.

    Computed homogeneously with the standard affine normalization, so
    a divider at infinity yields exactly -1 and the result does not
    depend on which admissible coordinate chart is used.
    """
    carrier = _cross(a.triple, b.triple)
    if carrier == (0, 0, 0):
        raise CoincidentPoints("signed ratio needs a != b")
    value, scale = incidence_residual(Line(*carrier), d)
    if not backend.zero(value, scale):
        raise NotCollinear(f"{d} is not on the line through the endpoints")
    ca, cb, cc = carrier
    if ca == 0 and cb == 0:
        # carrier is the line at infinity; use y as the normalizer
        t, u = 0, 1
    elif abs(cb) >= abs(ca):
        t, u = 0, 2
    else:
        t, u = 1, 2
    at, au = a.triple[t], a.triple[u]
    dt, du = d.triple[t], d.triple[u]
    bt, bu = b.triple[t], b.triple[u]
    num = (dt * au - du * at) * bu
    den = (bt * du - bu * dt) * au
    if den == 0:
        if num == 0:
            raise TooFewDistinct("signed ratio is indeterminate (0/0)")
        return SegmentRatio(None)
    return SegmentRatio(exact_div(num, den))


def ratio_product(ratios: Iterable[SegmentRatio]) -> Scalar:
    """Product of oriented ratios; raises if a factor is infinite."""
    product: Scalar = 1
    for r in ratios:
        if r.is_infinite():
            raise UndefinedRatio("infinite factor in ratio product")
        product = product * r.value
    return product


def signed_area(a: Point, b: Point, c: Point) -> Scalar:
    """Signed area of the affine triangle a, b, c (positive when
    counterclockwise).  All three points must be finite."""
    ax, ay = a.to_affine()
    bx, by = b.to_affine()
    cx, cy = c.to_affine()
    return exact_div((bx - ax) * (cy - ay) - (by - ay) * (cx - ax), 2)


# ---------------------------------------------------------------------------
# harmonic constructions


def harmonic_conjugate(
    a: Point, b: Point, x: Point, backend: Backend = EXACT
) -> Point:
    """Fourth point y with cross-ratio (a, b; x, y) == -1.

    Writing x = alpha*a + beta*b on the carrier line, the conjugate is
    alpha*a - beta*b.  The construction is an involution: applying it
    to the result returns x.
    """
    carrier = _cross(a.triple, b.triple)
    if carrier == (0, 0, 0):
        raise CoincidentPoints("harmonic conjugate needs a != b")
    if not incident(Line(*carrier), x, backend):
        raise NotCollinear(f"{x} is not on the line through the base points")
    k = _chart_index(carrier)
    a2, b2, x2 = _project(a.triple, k), _project(b.triple, k), _project(x.triple, k)
    alpha = _bracket(x2, b2)
    beta = _bracket(a2, x2)
    if alpha == 0 or beta == 0:
        raise DegenerateInput("harmonic conjugate needs x distinct from a and b")
    t = tuple(alpha * ai - beta * bi for ai, bi in zip(a.triple, b.triple))
    return Point(*_tidy(*t))


def fourth_harmonic_line(
    vertex: Point, a: Line, b: Line, g: Line, backend: Backend = EXACT
) -> Line:
    """Fourth line h of the pencil at vertex with (a, b; g, h) == -1."""
    for l in (a, b, g):
        if not incident(l, vertex, backend):
            raise NotConcurrent(f"{l} does not pass through {vertex}")
    if a == b:
        raise CoincidentLines("fourth harmonic needs a != b")
    k = _chart_index(vertex.triple)
    a2, b2, g2 = _project(a.triple, k), _project(b.triple, k), _project(g.triple, k)
    alpha = _bracket(g2, b2)
    beta = _bracket(a2, g2)
    if alpha == 0 or beta == 0:
        raise DegenerateInput("fourth harmonic needs g distinct from a and b")
    t = tuple(alpha * ai - beta * bi for ai, bi in zip(a.triple, b.triple))
    return Line(*_tidy(*t))


# ---------------------------------------------------------------------------
# serialization helpers


def object_to_json(obj: Union[Point, Line]) -> dict:
    data = obj.to_json()
    data["kind"] = "point" if isinstance(obj, Point) else "line"
    return data


def object_from_json(data: dict) -> Union[Point, Line]:
    kind = data.get("kind")
    if kind == "point":
        return Point.from_json(data)
    if kind == "line":
        return Line.from_json(data)
    raise ValueError(f"unknown geometric object kind {kind!r}")
