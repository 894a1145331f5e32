"""Two-variable linear feasibility and half-plane intersection, exact.

``feasible_point`` is Seidel's randomized incremental algorithm run against a
symbolic bounding box ``|x|, |y| <= M`` with ``M`` larger than any number in
play.  Symbolic quantities ``alpha*M + beta`` are stored as ``(alpha, beta)``
and compared lexicographically, which is exactly the order for huge ``M``.
The box never appears in an infeasibility witness: a witness mentioning a
box side is still infeasible once that side is dropped.

``intersect_sorted_halfplanes`` works on constraints already in angular
order.  It splits them into lower bounds ``y >= m x + k``, upper bounds
``y <= m x + k`` and vertical bounds, builds the two slope-sorted envelopes
with a stack, then reads the region off the interval where the envelopes
do not cross.  Every step is linear.
"""
from __future__ import annotations

import bisect
import functools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .direction_space import (
    EMPTY_REGION,
    ConvexRegion,
    HalfPlane,
    Point2,
    RegionKind,
    _canon_dir,
)
from .errors import NotSorted, StrictConstraint

BOX = None  # source tag of a bounding-box side


@dataclass(frozen=True)
class LPResult:
    point: Optional[Point2] = None
    witness: Optional[tuple[int, ...]] = None

    @property
    def feasible(self) -> bool:
        return self.point is not None


def _int_coeffs(a, b, c) -> tuple[int, int, int]:
    if type(a) is int and type(b) is int and type(c) is int:
        return a, b, c
    fa, fb, fc = Fraction(a), Fraction(b), Fraction(c)
    den = math.lcm(fa.denominator, fb.denominator, fc.denominator)
    return int(fa * den), int(fb * den), int(fc * den)


def feasible_point(constraints: Sequence[HalfPlane], seed: int = 0) -> LPResult:
    """Find a point satisfying every closed half-plane, or at most three of
    them that are already jointly infeasible."""
    coeffs = []
    for hp in constraints:
        if hp.strict:
            raise StrictConstraint("feasible_point takes closed half-planes only")
        coeffs.append(_int_coeffs(hp.a, hp.b, hp.c))
    return solve_feasibility(coeffs, seed)


def solve_feasibility(coeffs: Sequence[tuple[int, int, int]], seed: int = 0) -> LPResult:
    """:func:`feasible_point` on integer ``(a, b, c)`` triples."""
    order = []
    for idx, (a, b, c) in enumerate(coeffs):
        if a == 0 and b == 0:
            if c < 0:
                return LPResult(witness=(idx,))
            continue
        order.append(idx)
    random.Random(seed).shuffle(order)

    # current lex-min point; x = (xa*M + xb)/d, y = (ya*M + yb)/d, d > 0
    xa, xb, ya, yb, d = -1, 0, -1, 0, 1
    for pos, i in enumerate(order):
        a, b, c = coeffs[i]
        va = a * xa + b * ya
        if va > 0 or (va == 0 and a * xb + b * yb + c * d >= 0):
            continue
        res = _solve_on_line(coeffs, order, pos)
        if isinstance(res, tuple) and len(res) == 5:
            xa, xb, ya, yb, d = res
        else:
            return LPResult(witness=res)

    if xa == 0 and ya == 0:
        return LPResult(point=(Fraction(xb, d), Fraction(yb, d)))
    # unbounded in the objective direction: substitute a concrete M
    big = Fraction(1)
    for i in order:
        a, b, c = coeffs[i]
        va = a * xa + b * ya
        if va > 0:
            need = Fraction(-(a * xb + b * yb + c * d), va)
            if need > big:
                big = need
    big = Fraction(math.floor(big) + 1)
    return LPResult(point=((xa * big + xb) / d, (ya * big + yb) / d))


def _solve_on_line(coeffs, order, pos):
    """Lex-min point on the boundary line of ``order[pos]`` subject to the
    earlier constraints and the box: an integer point tuple, or a witness."""
    i = order[pos]
    ai, bi, ci = coeffs[i]
    # (alpha, beta) bounds on the line parameter t
    if bi != 0:
        # t = x, y = -(ai*t + ci)/bi
        lo, lo_src = (Fraction(-1), Fraction(0)), BOX
        hi, hi_src = (Fraction(1), Fraction(0)), BOX
        if ai != 0:
            slope = abs(Fraction(bi, ai))
            off = Fraction(-ci, ai)
            if (-slope, off) > lo:
                lo = (-slope, off)
            if (slope, off) < hi:
                hi = (slope, off)
        s = 1 if bi > 0 else -1
    else:
        lo, lo_src = (Fraction(-1), Fraction(0)), BOX
        hi, hi_src = (Fraction(1), Fraction(0)), BOX
        s = 1 if ai > 0 else -1
    for q_pos in range(pos):
        j = order[q_pos]
        aj, bj, cj = coeffs[j]
        if bi != 0:
            p = s * (aj * bi - bj * ai)
            q = s * (cj * bi - bj * ci)
        else:
            p = s * (bj * ai)
            q = s * (cj * ai - aj * ci)
        if p == 0:
            if q < 0:
                return (i, j)
            continue
        bound = (Fraction(0), Fraction(-q, p))
        if p > 0:
            if bound > lo:
                lo, lo_src = bound, j
        elif bound < hi:
            hi, hi_src = bound, j
    if lo > hi:
        return tuple(k for k in (i, lo_src, hi_src) if k is not BOX)
    ta, tb = lo
    if bi != 0:
        xa_, xb_ = ta, tb
        ya_, yb_ = -ai * ta / bi, -(ai * tb + ci) / bi
    else:
        xa_, xb_ = Fraction(0), Fraction(-ci, ai)
        ya_, yb_ = ta, tb
    vals = (Fraction(xa_), Fraction(xb_), Fraction(ya_), Fraction(yb_))
    den = math.lcm(*(v.denominator for v in vals))
    return tuple(int(v * den) for v in vals) + (den,)


# --------------------------------------------------------------------------
# half-plane intersection

def angle_key(hp: HalfPlane):
    """Exact angular key of the outward normal ``(-a, -b)``, from the +x axis."""
    a, b = hp.a, hp.b
    if b == 0:
        return (0, Fraction(0)) if a < 0 else (2, Fraction(0))
    return (1 if b < 0 else 3, Fraction(-a) / b)


def _float_key(hp: HalfPlane):
    a, b = hp.a, hp.b
    if b == 0:
        return (0, 0.0) if a < 0 else (2, 0.0)
    if type(a) is int and type(b) is int:
        return (1 if b < 0 else 3, -a / b)
    return (1 if b < 0 else 3, float(Fraction(-a) / b))


def sort_halfplanes(constraints: Sequence[HalfPlane]) -> list[int]:
    """Indices of the proper constraints in angular order."""
    idx = [i for i, hp in enumerate(constraints) if hp.kind == "Proper"]
    fk = {i: _float_key(constraints[i]) for i in idx}
    idx.sort(key=fk.__getitem__)
    # float keys are correctly rounded, hence monotone; break float ties exactly
    out: list[int] = []
    t = 0
    while t < len(idx):
        u = t + 1
        while u < len(idx) and fk[idx[u]] == fk[idx[t]]:
            u += 1
        run = idx[t:u]
        if len(run) > 1:
            run.sort(key=lambda i: angle_key(constraints[i]))
        out += run
        t = u
    return out


def intersect_halfplanes(constraints: Sequence[HalfPlane]) -> ConvexRegion:
    """Exact intersection of closed half-planes in ``O(n log n)``."""
    constraints = list(constraints)
    for hp in constraints:
        if hp.strict:
            raise StrictConstraint("intersect_halfplanes takes closed half-planes only")
        if hp.kind == "Empty":
            return EMPTY_REGION
    order = sort_halfplanes(constraints)
    return _intersect_ordered([constraints[i] for i in order])


def intersect_sorted_halfplanes(constraints: Sequence[HalfPlane]) -> ConvexRegion:
    """Linear-time intersection of half-planes given in angular order.

    The order is that of :func:`angle_key`; a cyclic rotation of it (for
    instance the edge order around a convex polygon) is accepted too.
    Parallel constraints may appear in any order among themselves.
    """
    proper = []
    for hp in constraints:
        if hp.strict:
            raise StrictConstraint("intersect_sorted_halfplanes takes closed half-planes only")
        kind = hp.kind
        if kind == "Empty":
            return EMPTY_REGION
        if kind == "Proper":
            proper.append(hp)
    m = len(proper)
    if m > 1:
        keys = [angle_key(hp) for hp in proper]
        descents = [t for t in range(m) if keys[t] > keys[(t + 1) % m]]
        if len(descents) > 1:
            raise NotSorted(f"constraints are not in angular order (breaks at {descents[:4]})")
        if descents:
            start = descents[0] + 1
            proper = proper[start:] + proper[:start]
    return _intersect_ordered(proper)


def _max_envelope(lines):
    """Upper envelope of ``y = m x + k`` lines given with increasing slope.

    Returns the surviving lines (left to right) and their breakpoints.
    """
    hull: list = []
    for line in lines:
        m, k, _ = line
        if hull and hull[-1][0] == m:
            if hull[-1][1] >= k:
                continue
            hull.pop()
        while len(hull) >= 2:
            m1, k1, _ = hull[-2]
            m2, k2, _ = hull[-1]
            if (k1 - k) * (m2 - m1) <= (k1 - k2) * (m - m1):
                hull.pop()
            else:
                break
        hull.append(line)
    bps = [(hull[t - 1][1] - hull[t][1]) / (hull[t][0] - hull[t - 1][0]) for t in range(1, len(hull))]
    return hull, bps


class _Envelope:
    def __init__(self, lines, bps):
        self.lines = lines
        self.bps = bps

    def piece(self, x) -> int:
        """Index of a line attaining the envelope at ``x`` (``None`` = far left)."""
        if x is None:
            return 0
        return bisect.bisect_left(self.bps, x)

    def at(self, x):
        m, k, _ = self.lines[self.piece(x)]
        return m * x + k


def _le(left, right) -> bool:
    """``left <= right`` where ``None`` is -inf on the left, +inf on the right."""
    return left is None or right is None or left <= right


def _max_left(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a >= b else b


def _min_right(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a <= b else b


def _feasible_interval(f: _Envelope, g: _Envelope):
    """``{x : f(x) <= g(x)}`` as ``(left, right)`` or ``None`` when empty."""
    fb, gb = f.bps, g.bps
    fi = gi = 0
    left_end = None
    lo_best = hi_best = None
    found = False
    lo_unb = hi_unb = False
    while True:
        # current piece spans [left_end, right_end]
        nf = fb[fi] if fi < len(fb) else None
        ng = gb[gi] if gi < len(gb) else None
        right_end = _min_right(nf, ng)
        mf, kf, _ = f.lines[fi]
        mg, kg, _ = g.lines[gi]
        s, t = mg - mf, kg - kf
        pl, pr = left_end, right_end
        ok = True
        if s == 0:
            ok = t >= 0
        elif s > 0:
            pl = _max_left(pl, -t / s)
        else:
            pr = _min_right(pr, -t / s)
        if ok and _le(pl, pr):
            if not found:
                found = True
                lo_best, lo_unb = pl, pl is None
            hi_best, hi_unb = pr, pr is None
        if right_end is None:
            break
        if nf is not None and nf == right_end:
            fi += 1
        if ng is not None and ng == right_end:
            gi += 1
        left_end = right_end
    if not found:
        return None
    return (None if lo_unb else lo_best), (None if hi_unb else hi_best)


def _reduce_rays(dirs) -> list[Point2]:
    """Canonical generators of ``cone(dirs)`` for a handful of 2D directions.

    A pointed cone gives its two extreme rays, a line its two directions, a
    half-plane its two boundary directions plus the inward normal, and the
    whole plane the four axis directions.
    """
    uniq: dict = {}
    for d in dirs:
        uniq.setdefault(_canon_dir(d), (Fraction(d[0]), Fraction(d[1])))
    ds = sorted(uniq.values(), key=functools.cmp_to_key(_angle_cmp))
    n = len(ds)
    if n <= 1:
        return ds
    straight = None
    for t in range(n):
        p, q = ds[t], ds[(t + 1) % n]
        cr = p[0] * q[1] - p[1] * q[0]
        if cr < 0:
            # the gap from p round to q exceeds a half-turn
            return [q, p]
        if cr == 0:
            straight = (p, q)
    if n == 2:
        return ds
    if straight is not None:
        p, q = straight
        return [q, p, (-q[1], q[0])]
    one, zero = Fraction(1), Fraction(0)
    return [(one, zero), (zero, one), (-one, zero), (zero, -one)]


def _angle_cmp(p, q) -> int:
    hp = 0 if (p[1] > 0 or (p[1] == 0 and p[0] > 0)) else 1
    hq = 0 if (q[1] > 0 or (q[1] == 0 and q[0] > 0)) else 1
    if hp != hq:
        return hp - hq
    cr = p[0] * q[1] - p[1] * q[0]
    return -1 if cr > 0 else (1 if cr < 0 else 0)


def _intersect_ordered(proper: Sequence[HalfPlane]) -> ConvexRegion:
    lower, upper = [], []
    lo = hi = None
    lo_src = hi_src = None
    for hp in proper:
        a, b, c = hp.a, hp.b, hp.c
        if b == 0:
            xv = Fraction(-c) / a
            if a > 0:
                if lo is None or xv > lo:
                    lo, lo_src = xv, hp
            elif hi is None or xv < hi:
                hi, hi_src = xv, hp
            continue
        line = (Fraction(-a) / b, Fraction(-c) / b, hp)
        (lower if b > 0 else upper).append(line)
    # angular order lists each group by increasing slope; the rotation may
    # have split a group across the two ends of the sequence
    lower = _unsplit(lower)
    upper = _unsplit(upper)

    if lo is not None and hi is not None and lo > hi:
        return EMPTY_REGION

    F = G = None
    if lower:
        F = _Envelope(*_max_envelope(lower))
    if upper:
        neg, nbps = _max_envelope([(-m, -k, hp) for (m, k, hp) in reversed(upper)])
        G = _Envelope([(-m, -k, hp) for (m, k, hp) in neg], nbps)

    if F is not None and G is not None:
        iv = _feasible_interval(F, G)
        if iv is None:
            return EMPTY_REGION
        xl, xr = iv
    else:
        xl = xr = None
    xl = _max_left(xl, lo)
    xr = _min_right(xr, hi)
    if not _le(xl, xr):
        return EMPTY_REGION
    return _build_region(proper, F, G, xl, xr, lo_src if xl is not None and xl == lo else None,
                         hi_src if xr is not None and xr == hi else None)


def _unsplit(lines):
    """Rotate a cyclically sorted slope list so slopes increase."""
    for t in range(1, len(lines)):
        if lines[t][0] < lines[t - 1][0]:
            return lines[t:] + lines[:t]
    return lines


def _build_region(proper, F, G, xl, xr, left_hp, right_hp) -> ConvexRegion:
    def fval(x):
        return F.at(x)

    def gval(x):
        return G.at(x)

    def tight_at(pts):
        return tuple(hp for hp in proper if any(hp.value(px, py) == 0 for px, py in pts))

    one = Fraction(1)
    # one-dimensional or smaller
    if xl is not None and xr is not None and xl == xr:
        x0 = xl
        ylo = fval(x0) if F else None
        yhi = gval(x0) if G else None
        if ylo is not None and yhi is not None:
            if ylo == yhi:
                pts = ((x0, ylo),)
                return ConvexRegion(RegionKind.POINT, tight_at(pts), pts, pts)
            pts = ((x0, ylo), (x0, yhi))
            return ConvexRegion(RegionKind.SEGMENT, tight_at(pts), pts, pts)
        if ylo is not None or yhi is not None:
            apex = (x0, ylo if ylo is not None else yhi)
            ray = (Fraction(0), one if ylo is not None else -one)
            return ConvexRegion(RegionKind.RAY, tight_at((apex,)), (apex,), (apex,), (ray,))
        base = (x0, Fraction(0))
        return ConvexRegion(RegionKind.LINE, tight_at((base,)), (), (base,),
                            ((Fraction(0), one), (Fraction(0), -one)))

    if F is not None and G is not None:
        if xl is not None and xr is not None:
            probe = (xl + xr) / 2
        elif xl is not None:
            probe = xl + 1
        elif xr is not None:
            probe = xr - 1
        else:
            probe = _interior_probe(F, G)
        if gval(probe) == fval(probe):
            m, k, _ = F.lines[F.piece(probe)]
            d = (one, m)
            if xl is not None and xr is not None:
                pts = ((xl, fval(xl)), (xr, fval(xr)))
                return ConvexRegion(RegionKind.SEGMENT, tight_at(pts), pts, pts)
            if xl is not None or xr is not None:
                x0 = xl if xl is not None else xr
                apex = (x0, fval(x0))
                ray = d if xl is not None else (-one, -m)
                return ConvexRegion(RegionKind.RAY, tight_at((apex,)), (apex,), (apex,), (ray,))
            base = (Fraction(0), k)
            return ConvexRegion(RegionKind.LINE, tight_at((base,)), (), (base,), (d, (-d[0], -d[1])))

    # two-dimensional
    edges = []
    supports = []
    verts: list[Point2] = []

    def inside(x):
        return (xl is None or x > xl) and (xr is None or x < xr)

    if F is not None:
        xs = [x for x in F.bps if inside(x)]
        for t, (m, k, hp) in enumerate(F.lines):
            a_ = F.bps[t - 1] if t > 0 else None
            b_ = F.bps[t] if t < len(F.bps) else None
            L = _max_left(a_, xl)
            R = _min_right(b_, xr)
            if L is not None and R is not None and L >= R:
                continue
            x_on = L if L is not None else (R - 1 if R is not None else Fraction(0))
            edges.append(((x_on, m * x_on + k), (one, m)))
            supports.append(hp)
        if xl is not None:
            verts.append((xl, fval(xl)))
        verts += [(x, fval(x)) for x in xs]
        if xr is not None:
            verts.append((xr, fval(xr)))
    if xr is not None and right_hp is not None and (F is None or G is None or gval(xr) > fval(xr)):
        edges.append(((xr, Fraction(0)), (Fraction(0), one)))
        supports.append(right_hp)
    if G is not None:
        xs = [x for x in reversed(G.bps) if inside(x)]
        nl = len(G.lines)
        for t in range(nl - 1, -1, -1):
            m, k, hp = G.lines[t]
            a_ = G.bps[t - 1] if t > 0 else None
            b_ = G.bps[t] if t < len(G.bps) else None
            L = _max_left(a_, xl)
            R = _min_right(b_, xr)
            if L is not None and R is not None and L >= R:
                continue
            x_on = R if R is not None else (L + 1 if L is not None else Fraction(0))
            edges.append(((x_on, m * x_on + k), (-one, -m)))
            supports.append(hp)
        if xr is not None:
            verts.append((xr, gval(xr)))
        verts += [(x, gval(x)) for x in xs]
        if xl is not None:
            verts.append((xl, gval(xl)))
    if xl is not None and left_hp is not None and (F is None or G is None or gval(xl) > fval(xl)):
        edges.append(((xl, Fraction(0)), (Fraction(0), -one)))
        supports.append(left_hp)

    dedup: list[Point2] = []
    for v in verts:
        if not dedup or dedup[-1] != v:
            dedup.append(v)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()

    dirs = []
    if F is None:
        dirs.append((Fraction(0), -one))
    if G is None:
        dirs.append((Fraction(0), one))
    if xr is None:
        if F is not None:
            dirs.append((one, F.lines[-1][0]))
        if G is not None:
            dirs.append((one, G.lines[-1][0]))
        if F is None and G is None:
            dirs.append((one, Fraction(0)))
    if xl is None:
        if F is not None:
            dirs.append((-one, -F.lines[0][0]))
        if G is not None:
            dirs.append((-one, -G.lines[0][0]))
        if F is None and G is None:
            dirs.append((-one, Fraction(0)))
    rays = tuple(_reduce_rays(dirs)) if dirs else ()

    if not rays:
        kind = RegionKind.BOUNDED_POLYGON
    elif not edges:
        kind = RegionKind.FULL_PLANE
    elif len(edges) == 1:
        kind = RegionKind.HALF_PLANE
    elif len(edges) == 2 and not dedup:
        kind = RegionKind.STRIP
    else:
        kind = RegionKind.UNBOUNDED_POLYGON
    if dedup:
        points = tuple(dedup)
    elif edges:
        points = tuple(e[0] for e in edges)
    else:
        points = ((Fraction(0), Fraction(0)),)
    return ConvexRegion(kind, tuple(supports), tuple(dedup), points, rays, tuple(edges))


def _interior_probe(F, G):
    xs = list(F.bps) + list(G.bps)
    return xs[len(xs) // 2] if xs else Fraction(0)
