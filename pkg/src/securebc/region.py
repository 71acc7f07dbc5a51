"""Achievable rate-region evaluation, corner geometry and frontier search.

Four region kinds are evaluated on a fixed joint distribution over
(W,U,V1,V2,Y1,Y2):

``secure``
    confidentiality and transmitter side-information both active:
    R1 <= I(V1;Y1|U) - max(I(V1;Y2|U,V2), I(W;V1|U)), symmetrically for R2,
    and R1+R2 <= I(V1;Y1|U) + I(V2;Y2|U) - I(V1;Y2|U,V2) - I(V2;Y1|U,V1)
    - I(V1;V2|U) - I(V1,V2;W|U).
``steinberg``
    side-information only: R1 <= I(V1;Y1) - I(W;V1), symmetrically, and
    R1+R2 <= I(V1;Y1) + I(V2;Y2) - I(V1;V2) - I(V1,V2;W).
``marton``
    neither constraint: R1 <= I(V1;Y1), R2 <= I(V2;Y2),
    R1+R2 <= I(V1;Y1) + I(V2;Y2) - I(V1;V2).
``liu``
    confidentiality only: R1 <= I(V1;Y1|U) - I(V1;Y2|U) - I(V1;V2|U),
    symmetrically for R2.  The cross-observation penalty here is
    deliberately not conditioned on the opposite auxiliary, and no
    separate sum constraint exists, so the region is the rectangle of
    its two per-user bounds.

Every right-hand side is clamped at 0: a rate region lives in the
nonnegative quadrant and a negative bound just means the point shrinks
to the axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelSpec, CodingScheme, induced_joint
from .errors import DomainError
from .probcore import JointDistribution

# Collinearity tolerance for hull construction.
HULL_TOL = 1e-12

_REQUIRED = {
    "secure": ("W", "U", "V1", "V2", "Y1", "Y2"),
    "steinberg": ("W", "V1", "V2", "Y1", "Y2"),
    "marton": ("V1", "V2", "Y1", "Y2"),
    "liu": ("U", "V1", "V2", "Y1", "Y2"),
}


@dataclass(frozen=True)
class RateBounds:
    """Right-hand sides of the per-user and sum-rate inequalities, in bits."""

    r1_max: float
    r2_max: float
    sum_max: float

    def __post_init__(self):
        for field in ("r1_max", "r2_max", "sum_max"):
            value = getattr(self, field)
            if not (value >= 0.0 and math.isfinite(value)):
                raise DomainError(f"RateBounds.{field} must be finite and >= 0, got {value}")


@dataclass(frozen=True)
class RateRegion:
    """A convex polygon of achievable (R1,R2) pairs, counterclockwise from the origin."""

    vertices: tuple[tuple[float, float], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        vertices = tuple((float(x), float(y)) for x, y in self.vertices)
        if not vertices:
            raise DomainError("a rate region needs at least one vertex")
        for x, y in vertices:
            if x < -1e-12 or y < -1e-12:
                raise DomainError(f"vertex ({x}, {y}) leaves the nonnegative quadrant")
        n = len(vertices)
        if n >= 3:
            for i in range(n):
                ox, oy = vertices[i]
                ax, ay = vertices[(i + 1) % n]
                bx, by = vertices[(i + 2) % n]
                cross = (ax - ox) * (by - ay) - (ay - oy) * (bx - ax)
                if cross < -1e-12:
                    raise DomainError(
                        f"vertices are not in convex counterclockwise order near index {i}"
                    )
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(vertices):
                raise DomainError(
                    f"{len(labels)} labels for {len(vertices)} vertices"
                )
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "vertices", vertices)


@dataclass(frozen=True)
class CornerPoints:
    """Named corner points of the secure region's pentagon geometry."""

    a1: tuple[float, float]
    b1: tuple[float, float]
    c1: tuple[float, float]
    d1: tuple[float, float]
    e1: tuple[float, float]
    f1: tuple[float, float]

    def rows(self) -> list[tuple[str, float, float]]:
        return [
            ("A1", *self.a1),
            ("B1", *self.b1),
            ("C1", *self.c1),
            ("D1", *self.d1),
            ("E1", *self.e1),
            ("F1", *self.f1),
        ]


def _require(joint: JointDistribution, kind: str) -> None:
    missing = [n for n in _REQUIRED[kind] if n not in joint.names]
    if missing:
        raise DomainError(f"joint is missing variables {missing} required for {kind!r}")


def _pos(x: float) -> float:
    return x if x > 0.0 else 0.0


def eval_secure_si(joint: JointDistribution) -> RateBounds:
    """Bounds with both confidentiality and side-information penalties."""
    _require(joint, "secure")
    mi = joint.mutual_information
    i_v1y1 = mi(("V1",), ("Y1",), ("U",))
    i_v2y2 = mi(("V2",), ("Y2",), ("U",))
    i_v1y2 = mi(("V1",), ("Y2",), ("U", "V2"))
    i_v2y1 = mi(("V2",), ("Y1",), ("U", "V1"))
    i_wv1 = mi(("W",), ("V1",), ("U",))
    i_wv2 = mi(("W",), ("V2",), ("U",))
    i_v1v2 = mi(("V1",), ("V2",), ("U",))
    i_v12w = mi(("V1", "V2"), ("W",), ("U",))
    r1 = _pos(i_v1y1 - max(i_v1y2, i_wv1))
    r2 = _pos(i_v2y2 - max(i_v2y1, i_wv2))
    s = _pos(i_v1y1 + i_v2y2 - i_v1y2 - i_v2y1 - i_v1v2 - i_v12w)
    return RateBounds(r1, r2, s)


def eval_steinberg(joint: JointDistribution) -> RateBounds:
    """Bounds with the side-information penalty only (no confidentiality)."""
    _require(joint, "steinberg")
    mi = joint.mutual_information
    i_v1y1 = mi(("V1",), ("Y1",))
    i_v2y2 = mi(("V2",), ("Y2",))
    i_wv1 = mi(("W",), ("V1",))
    i_wv2 = mi(("W",), ("V2",))
    i_v1v2 = mi(("V1",), ("V2",))
    i_v12w = mi(("V1", "V2"), ("W",))
    return RateBounds(
        _pos(i_v1y1 - i_wv1),
        _pos(i_v2y2 - i_wv2),
        _pos(i_v1y1 + i_v2y2 - i_v1v2 - i_v12w),
    )


def eval_marton(joint: JointDistribution) -> RateBounds:
    """Bounds for the plain two-user broadcast channel."""
    _require(joint, "marton")
    mi = joint.mutual_information
    i_v1y1 = mi(("V1",), ("Y1",))
    i_v2y2 = mi(("V2",), ("Y2",))
    i_v1v2 = mi(("V1",), ("V2",))
    return RateBounds(
        _pos(i_v1y1),
        _pos(i_v2y2),
        _pos(i_v1y1 + i_v2y2 - i_v1v2),
    )


def eval_liu(joint: JointDistribution) -> RateBounds:
    """Bounds with the confidentiality penalty only (no side-information)."""
    _require(joint, "liu")
    mi = joint.mutual_information
    r1 = _pos(
        mi(("V1",), ("Y1",), ("U",))
        - mi(("V1",), ("Y2",), ("U",))
        - mi(("V1",), ("V2",), ("U",))
    )
    r2 = _pos(
        mi(("V2",), ("Y2",), ("U",))
        - mi(("V2",), ("Y1",), ("U",))
        - mi(("V1",), ("V2",), ("U",))
    )
    return RateBounds(r1, r2, r1 + r2)


EVALUATORS = {
    "secure": eval_secure_si,
    "steinberg": eval_steinberg,
    "marton": eval_marton,
    "liu": eval_liu,
}


# -- geometry ---------------------------------------------------------------------


def corner_points(joint: JointDistribution) -> CornerPoints:
    """Corner points of the secure region for a fixed joint.

    A1 and C1 are the single-user maxima on the axes.  B1 (resp. D1) is the
    companion rate achievable while the other user transmits at full rate,
    placed on the opposite axis so that OA1F1B1 and OC1E1D1 are the two
    achievable rectangles.  E1 and F1 are where the sum-rate line crosses
    the boundary; when the line misses the rectangle they collapse onto
    its outer corner.
    """
    _require(joint, "secure")
    bounds = eval_secure_si(joint)
    mi = joint.mutual_information
    b1 = _pos(
        mi(("V2",), ("Y2",), ("U",))
        - mi(("V2",), ("Y1",), ("U", "V1"))
        - max(mi(("V1",), ("V2",), ("U",)), mi(("W",), ("V2",), ("U",)))
    )
    d1 = _pos(
        mi(("V1",), ("Y1",), ("U",))
        - mi(("V1",), ("Y2",), ("U", "V2"))
        - max(mi(("V1",), ("V2",), ("U",)), mi(("W",), ("V1",), ("U",)))
    )
    a, b, s = bounds.r1_max, bounds.r2_max, bounds.sum_max
    if s < a + b:
        fx = min(a, s)
        f1 = (fx, s - fx)
        ey = min(b, s)
        e1 = (s - ey, ey)
    else:
        f1 = (a, b)
        e1 = (a, b)
    return CornerPoints(
        a1=(a, 0.0),
        b1=(0.0, b1),
        c1=(0.0, b),
        d1=(d1, 0.0),
        e1=e1,
        f1=f1,
    )


def polygon(bounds: RateBounds, labels: bool = False) -> RateRegion:
    """The convex region {(R1,R2) >= 0 : R1 <= r1_max, R2 <= r2_max, R1+R2 <= sum_max}.

    Vertices run counterclockwise from the origin.  Degenerate shapes
    (rectangle, triangle, segment, single point) fall out naturally.
    """
    a, b, s = bounds.r1_max, bounds.r2_max, bounds.sum_max
    raw = [(0.0, 0.0), (min(a, s), 0.0)]
    if s < a + b:
        fx = min(a, s)
        raw.append((fx, min(b, s - fx)))
        ey = min(b, s)
        raw.append((min(a, s - ey), ey))
    else:
        raw.append((a, b))
    raw.append((0.0, min(b, s)))
    verts: list[tuple[float, float]] = []
    for p in raw:
        if not verts or abs(p[0] - verts[-1][0]) > 1e-12 or abs(p[1] - verts[-1][1]) > 1e-12:
            verts.append(p)
    while len(verts) > 1 and abs(verts[-1][0] - verts[0][0]) <= 1e-12 and abs(verts[-1][1] - verts[0][1]) <= 1e-12:
        verts.pop()
    names = None
    if labels:
        names = tuple(["O"] + [f"P{i}" for i in range(1, len(verts))])
    return RateRegion(tuple(verts), names)


def convex_hull(points) -> tuple[tuple[float, float], ...]:
    """Monotone-chain convex hull, counterclockwise, collinear points dropped."""
    pts = sorted({(float(x), float(y)) for x, y in points})
    if len(pts) <= 2:
        return tuple(pts)

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= HULL_TOL:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= HULL_TOL:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        return tuple(pts[:1])
    return tuple(hull)


def contains_point(region: RateRegion, point: tuple[float, float], tol: float = 1e-9) -> bool:
    """Whether a point lies in the region (boundary included, within tol)."""
    px, py = float(point[0]), float(point[1])
    verts = region.vertices
    n = len(verts)
    if n == 1:
        return abs(px - verts[0][0]) <= tol and abs(py - verts[0][1]) <= tol
    if n == 2:
        (ax, ay), (bx, by) = verts
        dx, dy = bx - ax, by - ay
        length2 = dx * dx + dy * dy
        if length2 == 0.0:
            return abs(px - ax) <= tol and abs(py - ay) <= tol
        t = ((px - ax) * dx + (py - ay) * dy) / length2
        t = min(1.0, max(0.0, t))
        cx, cy = ax + t * dx, ay + t * dy
        return math.hypot(px - cx, py - cy) <= tol
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
        if cross < -tol * max(1.0, math.hypot(bx - ax, by - ay)):
            return False
    return True


def contains_region(outer: RateRegion, inner: RateRegion, tol: float = 1e-9) -> bool:
    """Whether every vertex of ``inner`` lies inside ``outer`` (within tol)."""
    return all(contains_point(outer, v, tol) for v in inner.vertices)


# -- frontier search -------------------------------------------------------------


def _dirichlet(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.dirichlet(np.ones(size))


def _dirichlet_slices(rng: np.random.Generator, lead: tuple[int, ...], size: int) -> np.ndarray:
    out = np.empty(lead + (size,))
    for idx in np.ndindex(*lead):
        out[idx] = _dirichlet(rng, size)
    return out


def _deterministic_slices(rng: np.random.Generator, lead: tuple[int, ...], size: int) -> np.ndarray:
    out = np.zeros(lead + (size,))
    for idx in np.ndindex(*lead):
        out[idx + (int(rng.integers(size)),)] = 1.0
    return out


def canonical_schemes(spec: ChannelSpec) -> list[CodingScheme]:
    """Product schemes splitting the input alphabet as X = V1 x V2.

    One scheme per ordered factor pair |V1| * |V2| = |X|: the auxiliaries are
    independent and uniform, and the input is the deterministic mixed-radix
    pairing x = v1 * |V2| + v2, ignoring the state.  These are the classical
    extreme points that saturate clean product channels.
    """
    out = []
    x = spec.x_card
    for c1 in range(1, x + 1):
        if x % c1 != 0:
            continue
        c2 = x // c1
        aux = np.full((spec.w_card, 1, c1, c2), 1.0 / (c1 * c2))
        inp = np.zeros((spec.w_card, c1, c2, x))
        for a in range(c1):
            for b in range(c2):
                inp[:, a, b, a * c2 + b] = 1.0
        out.append(CodingScheme(np.array([1.0]), aux, inp))
    return out


def _random_scheme(
    spec: ChannelSpec,
    rng: np.random.Generator,
    style: int,
    u_card_max: int,
    v_card_max: int,
) -> CodingScheme:
    u_card = int(rng.integers(1, u_card_max + 1))
    v1 = int(rng.integers(2, v_card_max + 1)) if v_card_max >= 2 else 1
    v2 = int(rng.integers(2, v_card_max + 1)) if v_card_max >= 2 else 1
    w = spec.w_card
    x = spec.x_card
    u_law = _dirichlet(rng, u_card)
    if style == 0:
        aux = _dirichlet_slices(rng, (w, u_card), v1 * v2).reshape(w, u_card, v1, v2)
        inp = _dirichlet_slices(rng, (w, v1, v2), x)
    elif style == 1:
        # Independent uniform auxiliaries behind a deterministic input map.
        aux = np.full((w, u_card, v1, v2), 1.0 / (v1 * v2))
        inp = _deterministic_slices(rng, (w, v1, v2), x)
    else:
        # State-matching flavor: deterministic auxiliaries, soft input.
        aux = _deterministic_slices(rng, (w, u_card), v1 * v2).reshape(w, u_card, v1, v2)
        inp = _dirichlet_slices(rng, (w, v1, v2), x)
    return CodingScheme(u_law, aux, inp)


def search_frontier(
    spec: ChannelSpec,
    kind: str,
    budget: int,
    seed: int,
    schemes=(),
    u_card_max: int = 2,
    v_card_max: int | None = None,
) -> RateRegion:
    """Convex hull of region polygons over sampled coding schemes.

    Evaluation order is: caller-provided schemes, then the canonical product
    schemes, then random draws (Dirichlet slices alternating with
    deterministic extreme maps).  Draw ``i`` uses a generator seeded by
    ``(seed, i)``, so the sample sequence is a pure function of the seed and
    results do not depend on evaluation order; budgets that share a seed
    share a sample prefix.
    """
    if budget < 1:
        raise DomainError(f"budget must be >= 1, got {budget}")
    if kind not in EVALUATORS:
        raise DomainError(f"unknown region kind {kind!r}; choose from {sorted(EVALUATORS)}")
    if v_card_max is None:
        v_card_max = spec.x_card * spec.w_card + 1
    evaluator = EVALUATORS[kind]

    pending = list(schemes) + canonical_schemes(spec)
    points: list[tuple[float, float]] = [(0.0, 0.0)]
    used = 0
    draw = 0
    while used < budget:
        if pending:
            scheme = pending.pop(0)
        else:
            rng = np.random.default_rng([seed, draw])
            scheme = _random_scheme(spec, rng, draw % 3, u_card_max, v_card_max)
            draw += 1
        joint = induced_joint(spec, scheme)
        points.extend(polygon(evaluator(joint)).vertices)
        used += 1

    hull = convex_hull(points)
    origin = 0
    for i, v in enumerate(hull):
        if abs(v[0]) <= 1e-12 and abs(v[1]) <= 1e-12:
            origin = i
            break
    ordered = hull[origin:] + hull[:origin]
    return RateRegion(ordered)
