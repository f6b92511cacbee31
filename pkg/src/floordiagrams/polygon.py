"""Convex lattice polygons with horizontal floor structure.

An h-transverse polygon has every edge either horizontal or climbing exactly
one lattice row per unit step (primitive direction (a, +-1)), so its boundary
meets each horizontal lattice line in a left point and a right point.  These
are the Newton polygons on which floor diagrams compute curve counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class PolygonError(ValueError):
    pass


class _Degenerate:
    """Zero-area outcome of a corner cut; every invariant of it is zero."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Degenerate"


DEGENERATE = _Degenerate()


def is_degenerate(obj) -> bool:
    return obj is DEGENERATE


def _primitive(v: tuple[int, int]) -> tuple[int, int]:
    g = gcd(v[0], v[1])
    return (v[0] // g, v[1] // g)


def _lattice_length(v: tuple[int, int]) -> int:
    return gcd(v[0], v[1])


def _det(u: tuple[int, int], v: tuple[int, int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _signed_area2(pts) -> int:
    n = len(pts)
    total = 0
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        total += x0 * y1 - x1 * y0
    return total


def _clean_loop(points) -> list[tuple[int, int]]:
    """Drop repeated and collinear vertices from a cyclic vertex list."""
    pts = []
    for p in points:
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        for i in range(len(pts)):
            a = pts[i - 1]
            b = pts[i]
            c = pts[(i + 1) % len(pts)]
            if _det((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1])) == 0:
                pts.pop(i)
                changed = True
                break
    return pts


@dataclass(frozen=True)
class FloorProfile:
    """Widths of a polygon at integer heights, bottom to top."""

    widths: tuple[int, ...]

    @property
    def height(self) -> int:
        return len(self.widths) - 1

    @property
    def d_bottom(self) -> int:
        return self.widths[0]

    @property
    def d_top(self) -> int:
        return self.widths[-1]

    @property
    def divergences(self) -> tuple[int, ...]:
        # div(k) = width below floor k minus width above it, k = 1..height
        return tuple(
            self.widths[k - 1] - self.widths[k] for k in range(1, len(self.widths))
        )


class HPolygon:
    """Convex h-transverse lattice polygon in normalized position.

    Vertices are stored counterclockwise starting from the lexicographically
    smallest one, translated so the bounding box corner sits at the origin.
    Instances are immutable value objects.
    """

    __slots__ = ("_vertices",)

    def __init__(self, vertices):
        pts = [(int(x), int(y)) for x, y in vertices]
        pts = _clean_loop(pts)
        if len(pts) < 3 or _signed_area2(pts) == 0:
            raise PolygonError("polygon must have positive area")
        if _signed_area2(pts) < 0:
            pts.reverse()
        n = len(pts)
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            turn = _det((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1]))
            if turn <= 0:
                raise PolygonError("vertices do not bound a convex polygon")
        xmin = min(x for x, _ in pts)
        ymin = min(y for _, y in pts)
        pts = [(x - xmin, y - ymin) for x, y in pts]
        start = pts.index(min(pts))
        pts = pts[start:] + pts[:start]
        for i in range(n):
            dx = pts[(i + 1) % n][0] - pts[i][0]
            dy = pts[(i + 1) % n][1] - pts[i][1]
            if abs(_primitive((dx, dy))[1]) > 1:
                raise PolygonError(
                    "not h-transverse: edge direction (%d, %d)" % (dx, dy)
                )
        object.__setattr__(self, "_vertices", tuple(pts))

    def __setattr__(self, *args):
        raise AttributeError("HPolygon is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def rectangle(cls, a: int, b: int) -> "HPolygon":
        """Axis-parallel a-by-b rectangle (bidegree (a, b) classes)."""
        if a < 1 or b < 1:
            raise PolygonError("rectangle sides must be >= 1")
        return cls([(0, 0), (a, 0), (a, b), (0, b)])

    @classmethod
    def sigma2_trapezoid(cls, a: int, b: int) -> "HPolygon":
        """Trapezoid with vertices (0,0), (2a+b,0), (b,a), (0,a).

        Newton polygon of the class a*f + b*s on the second Hirzebruch
        surface, where f is the fiber and s the (-2)-section; needs a >= 1,
        b >= 0.
        """
        if a < 1 or b < 0:
            raise PolygonError("trapezoid needs a >= 1 and b >= 0")
        return cls([(0, 0), (2 * a + b, 0), (b, a), (0, a)])

    @classmethod
    def p2_triangle(cls, d: int) -> "HPolygon":
        """Triangle with legs d: degree-d plane curves."""
        if d < 1:
            raise PolygonError("degree must be >= 1")
        return cls([(0, 0), (d, 0), (0, d)])

    @classmethod
    def from_spec(cls, spec: str) -> "HPolygon":
        """Parse "rect:a,b", "sigma2:a,b" or "p2:d"."""
        kind, _, rest = spec.partition(":")
        try:
            args = [int(part) for part in rest.split(",")] if rest else []
        except ValueError:
            raise PolygonError(f"bad polygon spec {spec!r}") from None
        if kind == "rect" and len(args) == 2:
            return cls.rectangle(*args)
        if kind == "sigma2" and len(args) == 2:
            return cls.sigma2_trapezoid(*args)
        if kind == "p2" and len(args) == 1:
            return cls.p2_triangle(*args)
        raise PolygonError(f"bad polygon spec {spec!r}")

    @classmethod
    def from_json_dict(cls, data) -> "HPolygon":
        return cls(data["vertices"])

    # -- basic geometry ---------------------------------------------------

    @property
    def vertices(self) -> tuple[tuple[int, int], ...]:
        return self._vertices

    def edges(self):
        n = len(self._vertices)
        return [
            (self._vertices[i], self._vertices[(i + 1) % n]) for i in range(n)
        ]

    @property
    def height(self) -> int:
        return max(y for _, y in self._vertices)

    @property
    def area2(self) -> int:
        return _signed_area2(self._vertices)

    def boundary_lattice_count(self) -> int:
        return sum(
            _lattice_length((q[0] - p[0], q[1] - p[1])) for p, q in self.edges()
        )

    def interior_lattice_count(self) -> int:
        # Pick's theorem
        return (self.area2 - self.boundary_lattice_count() + 2) // 2

    def point_count(self, genus: int) -> int:
        """Number of point constraints pinning a genus-g curve: |boundary| - 1 + g."""
        return self.boundary_lattice_count() - 1 + genus

    def floor_profile(self) -> FloorProfile:
        h = self.height
        xmin = [None] * (h + 1)
        xmax = [None] * (h + 1)
        for p, q in self.edges():
            v = (q[0] - p[0], q[1] - p[1])
            step = _primitive(v)
            for t in range(_lattice_length(v) + 1):
                x, y = p[0] + t * step[0], p[1] + t * step[1]
                if xmin[y] is None or x < xmin[y]:
                    xmin[y] = x
                if xmax[y] is None or x > xmax[y]:
                    xmax[y] = x
        if any(lo is None for lo in xmin):
            raise PolygonError("missing lattice row")  # cannot happen when h-transverse
        return FloorProfile(tuple(xmax[y] - xmin[y] for y in range(h + 1)))

    def end_slopes(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Vertical slopes of the left and right unbounded curve ends.

        Each non-horizontal boundary edge of primitive direction (p, -1) on
        the descending chain is dual to ends of direction (-1, -p), one per
        lattice step, and each (p, +1) edge on the ascending chain to ends of
        direction (+1, -p).  Returns the sorted multisets of the vertical
        components, one entry per floor on each side.
        """
        left: list[int] = []
        right: list[int] = []
        for p, q in self.edges():
            v = (q[0] - p[0], q[1] - p[1])
            step = _primitive(v)
            if step[1] == 1:
                right.extend([-step[0]] * _lattice_length(v))
            elif step[1] == -1:
                left.extend([-step[0]] * _lattice_length(v))
        return tuple(sorted(left)), tuple(sorted(right))

    # -- symmetries and keys ----------------------------------------------

    def x_reflection(self) -> "HPolygon":
        return HPolygon([(-x, y) for x, y in self._vertices])

    def transpose(self) -> "HPolygon":
        """Swap the coordinate axes; errors if the result is not h-transverse."""
        return HPolygon([(y, x) for x, y in self._vertices])

    def canonical_key(self) -> tuple[tuple[int, int], ...]:
        """Representative of the polygon up to x-reflection, for table keys."""
        return min(self._vertices, self.x_reflection()._vertices)

    # -- corner cuts --------------------------------------------------------

    def edge_rays(self) -> tuple[tuple[int, int], ...]:
        """Primitive outward normals of the edges, in boundary order."""
        rays = []
        for p, q in self.edges():
            dx, dy = q[0] - p[0], q[1] - p[1]
            rays.append(_primitive((dy, -dx)))
        return tuple(rays)

    def negative_edges(self) -> tuple[int, ...]:
        """Indices of edges whose toric divisor has negative self-intersection.

        On a smooth patch the normals of the neighbouring edges satisfy
        prev + next = -(D.D) * ray, so a negative divisor shows up as a
        positive integer multiple.  Edges with a non-unimodular endpoint have
        no integer self-intersection and are never reported.
        """
        rays = self.edge_rays()
        n = len(rays)
        out = []
        for i in range(n):
            prv, cur, nxt = rays[i - 1], rays[i], rays[(i + 1) % n]
            if _det(prv, cur) != 1 or _det(cur, nxt) != 1:
                continue
            total = (prv[0] + nxt[0], prv[1] + nxt[1])
            coord = 0 if cur[0] else 1
            if total[coord] % cur[coord]:
                continue
            mult = total[coord] // cur[coord]
            if (mult * cur[0], mult * cur[1]) == total and mult >= 1:
                out.append(i)
        return tuple(out)

    def corner_directions(self, corner):
        """Primitive directions along both edges leaving a vertex, with lattice lengths."""
        try:
            i = self._vertices.index(tuple(corner))
        except ValueError:
            raise PolygonError(f"{corner!r} is not a vertex") from None
        n = len(self._vertices)
        v = self._vertices[i]
        nxt = self._vertices[(i + 1) % n]
        prv = self._vertices[i - 1]
        u = (nxt[0] - v[0], nxt[1] - v[1])
        w = (prv[0] - v[0], prv[1] - v[1])
        return (
            _primitive(u),
            _lattice_length(u),
            _primitive(w),
            _lattice_length(w),
        )

    def corner_cut(self, corner):
        """Chop a lattice triangle of depth 2 off one corner.

        Models replacing a curve class d on the toric surface by d - 2E after
        blowing up the fixed point at that corner, so it only applies where
        the corner is unimodular (the surface is smooth there), both edges
        have lattice length >= 2 (the cut fits), and neither adjacent divisor
        has negative self-intersection (a point on such a divisor is not in
        general position, and the count after blowing it up would differ from
        the generic one).  Returns DEGENERATE when the remainder has zero
        area; raises PolygonError when the cut does not apply or the
        remainder is not h-transverse.
        """
        u, lu, w, lw = self.corner_directions(corner)
        if lu < 2 or lw < 2:
            raise PolygonError("cut of depth 2 does not fit at this corner")
        if abs(_det(u, w)) != 1:
            raise PolygonError("corner is not unimodular")
        i = self._vertices.index(tuple(corner))
        negative = self.negative_edges()
        n = len(self._vertices)
        if i in negative or (i - 1) % n in negative:
            raise PolygonError("corner touches a divisor of negative self-intersection")
        v = self._vertices[i]
        p_prev = (v[0] + 2 * w[0], v[1] + 2 * w[1])
        p_next = (v[0] + 2 * u[0], v[1] + 2 * u[1])
        pts = list(self._vertices)
        pts[i : i + 1] = [p_prev, p_next]
        cleaned = _clean_loop(pts)
        if len(cleaned) < 3 or _signed_area2(cleaned) == 0:
            return DEGENERATE
        result = HPolygon(pts)
        assert result.area2 == self.area2 - 4
        return result

    def admissible_cut_corners(self) -> tuple[tuple[int, int], ...]:
        """Vertices where corner_cut succeeds (possibly with degenerate result)."""
        good = []
        for v in self._vertices:
            try:
                self.corner_cut(v)
            except PolygonError:
                continue
            good.append(v)
        return tuple(good)

    def has_room_for_cut(self) -> bool:
        """True when some unimodular corner has both edge lengths >= 2.

        Distinguishes the two ways admissible_cut_corners can be empty: no
        corner fits a depth-2 cut at all, or cuts would fit geometrically but
        every candidate corner touches a negative divisor.
        """
        for v in self._vertices:
            u, lu, w, lw = self.corner_directions(v)
            if lu >= 2 and lw >= 2 and abs(_det(u, w)) == 1:
                return True
        return False

    # -- toric surface shape ------------------------------------------------

    def has_small_del_pezzo_fan(self) -> bool:
        """True when the normal fan is a smooth del Pezzo surface of degree >= 7.

        Those are the plane, the quadric, and the plane blown up in one or two
        points: at most five rays, unimodular cones, and no divisor of
        self-intersection below -1.
        """
        rays = []
        for p, q in self.edges():
            dx, dy = q[0] - p[0], q[1] - p[1]
            rays.append(_primitive((dy, -dx)))
        n = len(rays)
        if n > 5:
            return False
        for i in range(n):
            if _det(rays[i], rays[(i + 1) % n]) != 1:
                return False
        for i in range(n):
            prev_plus_next = (
                rays[i - 1][0] + rays[(i + 1) % n][0],
                rays[i - 1][1] + rays[(i + 1) % n][1],
            )
            # smooth fan: prev + next is an integer multiple of the middle ray
            ray = rays[i]
            coord = 0 if ray[0] else 1
            self_int = -prev_plus_next[coord] // ray[coord]
            if self_int < -1:
                return False
        return True

    # -- serialization and plumbing ------------------------------------------

    def to_json_dict(self) -> dict:
        return {"vertices": [list(v) for v in self._vertices]}

    def __eq__(self, other) -> bool:
        if not isinstance(other, HPolygon):
            return NotImplemented
        return self._vertices == other._vertices

    def __hash__(self) -> int:
        return hash(self._vertices)

    def __repr__(self) -> str:
        return f"HPolygon({list(self._vertices)!r})"
