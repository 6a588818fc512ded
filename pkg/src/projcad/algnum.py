"""Exact real algebraic machinery for the lifting phase.

Coordinates of sample points are either rationals or real roots of
lower-level polynomials pinned down by an isolating interval.  Every
decision here reduces to integer polynomial arithmetic plus exact sign
tests; interval arithmetic only ever separates quantities already known
to be nonzero, so nothing depends on floating point.

Root isolation is Descartes/bisection where the transformed polynomials
stay symbolic (integer polynomials in the lower variables) and each
coefficient sign at the fiber is decided exactly.  The zero test for a
value at an algebraic coordinate goes through a fiber-local gcd with the
coordinate's defining polynomial: the defining polynomial may well be
reducible (bases are only squarefree, not irreducible), so a shared root
is detected by a sign change of that gcd across the isolating interval
rather than by divisibility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Optional

from .polyring import MultiPoly, poly_gcd, pquo, prem

__all__ = [
    "IsolatingInterval",
    "RationalCoordinate",
    "RootOfCoordinate",
    "SamplePoint",
    "SeparabilityError",
    "fiber_degree",
    "fiber_gcd",
    "fiber_reduce",
    "fiber_squarefree_part",
    "isolate_real_roots",
    "refine",
    "roots_over_cell",
    "sign_at",
]

# bisection steps allowed while separating two supposedly distinct roots
_MAX_SEPARATION_STEPS = 512


class SeparabilityError(ValueError):
    """Polynomials that must be coprime and squarefree over a cell are not."""


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


@dataclass
class IsolatingInterval:
    """Rational interval containing exactly one root of its polynomial.

    lo == hi encodes an exactly known rational root; proper intervals
    never have a root at either endpoint.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        self.lo = Fraction(self.lo)
        self.hi = Fraction(self.hi)
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")

    def is_point(self) -> bool:
        return self.lo == self.hi

    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


@dataclass(frozen=True)
class RationalCoordinate:
    value: Fraction

    def point_value(self) -> Fraction:
        return self.value

    def box(self):
        return (self.value, self.value)


class RootOfCoordinate:
    """Coordinate pinned as the unique root of `defining` in `interval`.

    `prefix` holds the lower coordinates the defining polynomial's
    coefficients are evaluated over.  The interval shrinks in place as
    refinement happens; the defining polynomial, being squarefree over
    the fiber, changes sign exactly once inside the interval, which is
    what bisection relies on.
    """

    __slots__ = ("defining", "interval", "prefix", "_sign_lo")

    def __init__(self, defining: MultiPoly, interval: IsolatingInterval,
                 prefix=()):
        self.defining = defining
        self.interval = interval
        self.prefix = tuple(prefix)
        self._sign_lo = None

    def point_value(self) -> Optional[Fraction]:
        iv = self.interval
        return iv.lo if iv.lo == iv.hi else None

    def box(self):
        return (self.interval.lo, self.interval.hi)

    def __repr__(self):
        return "RootOf(%s, (%s, %s))" % (
            self.defining, self.interval.lo, self.interval.hi)


def _copy_coord(coord, new_prefix):
    if isinstance(coord, RationalCoordinate):
        return coord
    return RootOfCoordinate(
        coord.defining,
        IsolatingInterval(coord.interval.lo, coord.interval.hi),
        new_prefix,
    )


class SamplePoint:
    """Triangular tuple of coordinates for variables 1..k."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable = ()):
        self.coords = tuple(coords)

    def __len__(self) -> int:
        return len(self.coords)

    def prefix(self, k: int) -> "SamplePoint":
        return SamplePoint(self.coords[:k])

    def extend(self, coord) -> "SamplePoint":
        # fresh copies all the way down: no interval state is shared
        # between different sample points
        out = []
        for c in self.coords:
            out.append(_copy_coord(c, tuple(out)))
        out.append(_copy_coord(coord, tuple(out)))
        return SamplePoint(out)

    def __repr__(self):
        return "SamplePoint(%r)" % (list(self.coords),)


# ---------------------------------------------------------------------------
# exact signs at a sample point


def sign_at(q: MultiPoly, s: SamplePoint) -> int:
    """Exact sign of q at the sample point s.

    Rational (and exactly-known root) coordinates are substituted with
    denominators cleared.  For the top remaining algebraic coordinate
    the zero decision goes through a fiber gcd with its defining
    polynomial; a nonzero value is then signed by interval evaluation
    under refinement.
    """
    if q.is_constant():
        return _sgn(q.const_value())
    k = len(s)
    order = q.order
    for name in q.variables():
        if order.level(name) > k:
            raise ValueError("variable %r is not fixed by the sample point"
                             % (name,))
    r = q
    for name in sorted(r.variables(), key=order.level):
        coord = s.coords[order.level(name) - 1]
        v = coord.point_value()
        if v is not None:
            r = r.subs_rational_cleared(name, v)
            if r.is_constant():
                return _sgn(r.const_value())
    j = r.level()
    coord = s.coords[j - 1]
    var = r.mvar()
    pref = s.prefix(j - 1)
    g = fiber_gcd(r, coord.defining, var, pref)
    if g.degree(var) >= 1:
        iv = coord.interval
        slo = sign_at(g.subs_rational_cleared(var, iv.lo), pref)
        shi = sign_at(g.subs_rational_cleared(var, iv.hi), pref)
        if slo * shi < 0:
            return 0
    return _interval_sign(r, s)


def _interval_sign(r: MultiPoly, s: SamplePoint) -> int:
    # value known nonzero: shrink boxes until the evaluation excludes 0
    order = r.order
    coords = {order.level(v): s.coords[order.level(v) - 1]
              for v in r.variables()}
    while True:
        boxes = {lvl: c.box() for lvl, c in coords.items()}
        lo, hi = _box_eval(r, boxes)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        progressed = False
        for c in coords.values():
            if isinstance(c, RootOfCoordinate) and c.point_value() is None:
                _bisect_once(c)
                progressed = True
        if not progressed:
            raise ArithmeticError("exact zero reached in nonzero sign path")


def _box_eval(f: MultiPoly, boxes):
    """Interval evaluation of f over rational boxes keyed by level."""
    if f.is_constant():
        v = Fraction(f.const_value())
        return (v, v)
    x = boxes[f.level()]
    var = f.mvar()
    acc = None
    prev_e = None
    for e, c in f.coeff_terms(var):
        cv = _box_eval(c, boxes)
        if acc is None:
            acc = cv
        else:
            acc = _iadd(_imul(acc, _ipow(x, prev_e - e)), cv)
        prev_e = e
    if prev_e:
        acc = _imul(acc, _ipow(x, prev_e))
    return acc


def _iadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _imul(a, b):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(ps), max(ps))


def _ipow(x, k: int):
    acc = (Fraction(1), Fraction(1))
    for _ in range(k):
        acc = _imul(acc, x)
    return acc


def _bisect_once(coord: RootOfCoordinate):
    """One bisection step; collapses to a point on an exact hit."""
    iv = coord.interval
    if iv.lo == iv.hi:
        return
    mid = iv.midpoint()
    pref = SamplePoint(coord.prefix)
    var = coord.defining.mvar()
    sm = sign_at(coord.defining.subs_rational_cleared(var, mid), pref)
    if sm == 0:
        iv.lo = iv.hi = mid
        coord._sign_lo = 0
        return
    if coord._sign_lo is None:
        coord._sign_lo = sign_at(
            coord.defining.subs_rational_cleared(var, iv.lo), pref)
    if coord._sign_lo * sm < 0:
        iv.hi = mid
    else:
        iv.lo = mid
        coord._sign_lo = sm


def refine(coord, width):
    """Shrink a coordinate's isolating interval to the requested width.

    Rational coordinates pass through unchanged; the same object is
    returned with its interval narrowed in place.
    """
    if isinstance(coord, RationalCoordinate):
        return coord
    width = Fraction(width)
    iv = coord.interval
    while iv.hi - iv.lo > width:
        _bisect_once(coord)
        if iv.lo == iv.hi:
            break
    return coord


# ---------------------------------------------------------------------------
# fiber-local polynomial tools (coefficients tested at a sample point)


def _strip(p: MultiPoly) -> MultiPoly:
    c = p.int_content()
    if c > 1:
        p = p.div_int(c)
    return p.sign_normalized()


def fiber_reduce(f: MultiPoly, var: str, s: SamplePoint) -> MultiPoly:
    """Drop leading coefficients of f (in var) that vanish at s."""
    terms = f.coeff_terms(var)
    xv = MultiPoly.var(f.order, var)
    for idx, (e, c) in enumerate(terms):
        if sign_at(c, s) != 0:
            if idx == 0:
                return f
            acc = MultiPoly.zero(f.order)
            for e2, c2 in terms[idx:]:
                acc = acc + c2 * xv**e2
            return acc
    return MultiPoly.zero(f.order)


def fiber_degree(f: MultiPoly, var: str, s: SamplePoint) -> int:
    """Degree of f in var once evaluated at s; -1 if identically zero."""
    for e, c in f.coeff_terms(var):
        if sign_at(c, s) != 0:
            return e
    return -1


def fiber_gcd(f: MultiPoly, g: MultiPoly, var: str, s: SamplePoint) -> MultiPoly:
    """Polynomial whose evaluation at s is a gcd of f and g evaluated at s.

    Pseudo-remainder sequence where zero tests on coefficients are done
    at the fiber; the pseudo-division multipliers are fiber-nonzero, so
    the zero set over the fiber is preserved.  A constant result means
    the evaluated polynomials are coprime.
    """
    a = fiber_reduce(f, var, s)
    b = fiber_reduce(g, var, s)
    if a.is_zero():
        return _strip(b) if not b.is_zero() else b
    if b.is_zero():
        return _strip(a)
    if a.degree(var) < b.degree(var):
        a, b = b, a
    while True:
        if b.degree(var) == 0:
            return MultiPoly.one(f.order)
        r = fiber_reduce(prem(a, b, var), var, s)
        if r.is_zero():
            return _strip(b)
        r = _strip(r)
        a, b = b, r


def fiber_squarefree_part(f: MultiPoly, var: str, s: SamplePoint) -> MultiPoly:
    """Squarefree part of f over the fiber, via the pseudo-quotient by
    gcd(f, f'); exact up to a fiber-nonzero constant factor."""
    f = fiber_reduce(f, var, s)
    if f.is_zero():
        raise ValueError("polynomial vanishes identically over the fiber")
    if f.degree(var) == 0:
        return _strip(f)
    g = fiber_gcd(f, f.derivative(var), var, s)
    if g.degree(var) == 0:
        return _strip(f)
    q = fiber_reduce(pquo(f, g, var), var, s)
    return _strip(q)


def _fiber_values(s: SamplePoint, names, order):
    """Exact rational values for the named coordinates, or None if any
    of them is a proper algebraic number."""
    vals = {}
    for name in names:
        v = s.coords[order.level(name) - 1].point_value()
        if v is None:
            return None
        vals[name] = v
    return vals


# ---------------------------------------------------------------------------
# real root isolation over a fiber


def _root_bound(g: MultiPoly, var: str, s: SamplePoint) -> Fraction:
    """B with every real root of g at the fiber strictly inside (-B, B):
    1 + max |c_i| / |lc|, coefficients taken at the fiber."""
    terms = g.coeff_terms(var)
    lead = terms[0][1]
    rest = [c for _, c in terms[1:]]
    if not rest:
        return Fraction(1)
    order = g.order
    names = set()
    for c in [lead] + rest:
        names.update(c.variables())
    vals = _fiber_values(s, names, order)
    if vals is not None:
        lv = abs(lead.evaluate(vals))
        m = max(abs(c.evaluate(vals)) for c in rest)
        return 1 + m / lv
    # enclosure route: shrink until the leading coefficient's box
    # excludes zero, then bound the others by their current boxes
    coords = {order.level(v): s.coords[order.level(v) - 1] for v in names}
    while True:
        boxes = {lvl: c.box() for lvl, c in coords.items()}
        llo, lhi = _box_eval(lead, boxes)
        if llo > 0 or lhi < 0:
            lv = min(abs(llo), abs(lhi))
            m = Fraction(0)
            for c in rest:
                clo, chi = _box_eval(c, boxes)
                m = max(m, abs(clo), abs(chi))
            return 1 + m / lv
        for c in coords.values():
            if isinstance(c, RootOfCoordinate) and c.point_value() is None:
                _bisect_once(c)


def _shifted_to_unit(f: MultiPoly, var: str, a: Fraction, b: Fraction):
    """Integer polynomial equal to f(a + (b-a)v) up to a positive factor:
    roots of f in (a,b) become roots in (0,1)."""
    a, w = Fraction(a), Fraction(b) - Fraction(a)
    q = math.lcm(a.denominator, w.denominator)
    pa = a.numerator * (q // a.denominator)
    pw = w.numerator * (q // w.denominator)
    xv = MultiPoly.var(f.order, var)
    d = f.degree(var)
    acc = MultiPoly.zero(f.order)
    for e, c in f.coeff_terms(var):
        acc = acc + c * (pa + pw * xv) ** e * q ** (d - e)
    return acc


def _variations_poly(h: MultiPoly, var: str):
    """g(v) = (v+1)^d h(1/(v+1)): sign variations of g's coefficients
    bound the number of roots of h in (0,1), exactly when 0 or 1."""
    xv = MultiPoly.var(h.order, var)
    d = h.degree(var)
    acc = MultiPoly.zero(h.order)
    for e, c in h.coeff_terms(var):
        acc = acc + c * (xv + 1) ** (d - e)
    return acc


def _sign_variations(g: MultiPoly, var: str, s: SamplePoint) -> int:
    signs = []
    for _, c in g.coeff_terms(var):
        sc = sign_at(c, s)
        if sc:
            signs.append(sc)
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _nonroot_split(f, var, s, a, b) -> Fraction:
    """Deterministic split point in the middle half of (a, b) where f is
    nonzero at the fiber; keeps both parts at most 3/4 of the width."""
    w = b - a
    t = 1
    while True:
        den = 1 << t
        for num in range(1, den, 2):
            if 4 * num < den or 4 * num > 3 * den:
                continue
            m = a + w * Fraction(num, den)
            if sign_at(f.subs_rational_cleared(var, m), s) != 0:
                return m
        t += 1


def _vca(f, var, s, a, b, out):
    g = _variations_poly(_shifted_to_unit(f, var, a, b), var)
    v = _sign_variations(g, var, s)
    if v == 0:
        return
    if v == 1:
        out.append(IsolatingInterval(a, b))
        return
    m = _nonroot_split(f, var, s, a, b)
    _vca(f, var, s, a, m, out)
    _vca(f, var, s, m, b, out)


def _isolate_over_fiber(f: MultiPoly, var: str, s: SamplePoint,
                        exact_linear: bool = True):
    """Isolate the real roots of f at the fiber s.

    Returns (coordinates in increasing order, root bound B).  The
    polynomial must not vanish identically at s and must be squarefree
    there (bisection termination depends on it).
    """
    g = fiber_reduce(f, var, s)
    if g.is_zero():
        raise ValueError("polynomial vanishes identically over the fiber")
    if g.degree(var) == 0:
        return [], Fraction(1)
    g = _strip(g)
    B = _root_bound(g, var, s)
    if exact_linear and g.degree(var) == 1:
        terms = dict(g.coeff_terms(var))
        names = set(g.variables()) - {var}
        vals = _fiber_values(s, names, g.order)
        if vals is not None:
            c1 = terms[1].evaluate(vals)
            c0 = terms.get(0)
            r = -(c0.evaluate(vals) if c0 is not None else Fraction(0)) / c1
            return [RationalCoordinate(r)], B
    ivs = []
    _vca(g, var, s, -B, B, ivs)
    return [RootOfCoordinate(g, iv, s.coords) for iv in ivs], B


def isolate_real_roots(f: MultiPoly):
    """Isolating intervals for all real roots of a univariate integer
    polynomial, in increasing order; endpoints are never roots."""
    if f.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if len(f.variables()) > 1:
        raise ValueError("univariate polynomial required")
    if f.is_constant():
        return []
    var = f.mvar()
    if not poly_gcd(f, f.derivative(var)).is_constant():
        raise ValueError("squarefree polynomial required")
    coords, _ = _isolate_over_fiber(f, var, SamplePoint(()),
                                    exact_linear=False)
    return [c.interval for c in coords]


# ---------------------------------------------------------------------------
# merged roots of several polynomials over one cell


def _coord_points(c1, c2):
    return (c1.point_value() is not None) and (c2.point_value() is not None)


def _compare_coords(c1, c2) -> int:
    if c1 is c2:
        return 0
    for _ in range(_MAX_SEPARATION_STEPS):
        a1, b1 = c1.box()
        a2, b2 = c2.box()
        if b1 <= a2:
            if b1 == a2 and _coord_points(c1, c2):
                raise SeparabilityError("separability violated")
            return -1
        if b2 <= a1:
            if b2 == a1 and _coord_points(c1, c2):
                raise SeparabilityError("separability violated")
            return 1
        for c in (c1, c2):
            if isinstance(c, RootOfCoordinate) and c.point_value() is None:
                _bisect_once(c)
    raise SeparabilityError("separability violated")


def _gap_sample(c1, c2) -> Fraction:
    """Rational strictly between two ordered roots, with the smallest
    denominator the gap allows."""
    for _ in range(_MAX_SEPARATION_STEPS):
        b1 = c1.box()[1]
        a2 = c2.box()[0]
        if b1 < a2:
            return _simplest_in_open(b1, a2)
        for c in (c1, c2):
            if isinstance(c, RootOfCoordinate) and c.point_value() is None:
                _bisect_once(c)
    raise SeparabilityError("separability violated")


def _simplest_in_open(a: Fraction, b: Fraction) -> Fraction:
    """Rational with the smallest denominator in the open interval (a, b)."""
    if a < 0 < b:
        return Fraction(0)
    if a >= 0:
        return _simplest_pos(Fraction(a), Fraction(b))
    return -_simplest_pos(Fraction(-b), Fraction(-a))


def _simplest_pos(a: Fraction, b: Fraction) -> Fraction:
    # 0 <= a < b: continued-fraction descent
    fa = math.floor(a)
    if a == fa:
        if b > fa + 1:
            return Fraction(fa + 1)
        t = math.floor(1 / (b - fa)) + 1
        return fa + Fraction(1, t)
    if fa + 1 < b:
        return Fraction(fa + 1)
    ya, yb = a - fa, b - fa
    return fa + 1 / _simplest_pos(1 / yb, 1 / ya)


def roots_over_cell(polys, s: SamplePoint):
    """All real roots of the given polynomials at the fiber s, strictly
    ordered, plus rational sector samples around them.

    Returns (sections, samples): len(samples) == len(sections) + 1, the
    first sample lies below every root and the last above every root;
    with no roots at all the single sample is 0.  A polynomial that is
    not squarefree at s is replaced by its fiber squarefree part (same
    roots); two polynomials sharing a root at s are rejected as
    "separability violated".  Polynomials that degenerate to a nonzero
    constant over the fiber contribute nothing; identically vanishing
    ones are a contract violation.
    """
    ps = sorted(set(polys))
    if not ps:
        return [], [Fraction(0)]
    order = ps[0].order
    lvl = len(s) + 1
    var = order.name(lvl)
    reduced = []
    for p in ps:
        if p.order != order:
            raise ValueError("mixed variable orders")
        if p.level() != lvl:
            raise ValueError(
                "expected main variable %r, got %r" % (var, p.mvar()))
        r = fiber_reduce(p, var, s)
        if r.is_zero():
            raise ValueError(
                "polynomial vanishes identically over the cell: %s" % (p,))
        if r.degree(var) >= 1:
            # repeated roots over this fiber are harmless for the root
            # set, so flatten them here rather than reject the input
            if fiber_gcd(r, r.derivative(var), var, s).degree(var) != 0:
                r = fiber_squarefree_part(r, var, s)
            reduced.append(r)
    for i, r in enumerate(reduced):
        for r2 in reduced[i + 1:]:
            if fiber_gcd(r, r2, var, s).degree(var) != 0:
                raise SeparabilityError("separability violated")
    sections = []
    bound = Fraction(1)
    for r in reduced:
        coords, b = _isolate_over_fiber(r, var, s)
        sections.extend(coords)
        bound = max(bound, b)
    sections.sort(key=cmp_to_key(_compare_coords))
    if not sections:
        return [], [Fraction(0)]
    samples = [-bound]
    for c1, c2 in zip(sections, sections[1:]):
        samples.append(_gap_sample(c1, c2))
    samples.append(bound)
    return sections, samples
