"""Interval functions and the registry of worked example fixtures.

An IntervalFunction is a pure map from bracketed intervals to extended
reals, with declared flags (additive, bracket-independent, continuous) and
a hint map of special points where its extremal divisions concentrate.
Each fixture couples one function with a region and the values the search
is expected to reproduce; every expected value carries either a derivation
oracle name or a construction note.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .core import (
    Dyadic,
    Interval,
    Region,
    ZERO,
    floor_log2,
    is_pow2,
)
from .errors import IndeterminateForm, UnknownFixture

INF = float("inf")


def xsum(values) -> float:
    """Extended-real sum; +inf and -inf together raise IndeterminateForm."""
    pos = neg = False
    total = 0.0
    for v in values:
        if v == INF:
            pos = True
        elif v == -INF:
            neg = True
        else:
            total += v
    if pos and neg:
        raise IndeterminateForm("inf - inf in a Riemann sum")
    if pos:
        return INF
    if neg:
        return -INF
    return total


def pow2(k: int) -> Dyadic:
    """2**(-k) as an exact dyadic."""
    return Dyadic(1, k) if k >= 0 else Dyadic(1 << -k, 0)


class PointFunction:
    """A pure real function of a dyadic point, with an optional derivative."""

    def __init__(self, name: str, func: Callable[[Dyadic], float],
                 derivative: Optional[Callable[[float], float]] = None,
                 continuous: bool = True):
        self.name = name
        self._func = func
        self.derivative = derivative
        self.continuous = continuous

    def __call__(self, x: Dyadic) -> float:
        return self._func(x)


class IntervalFunction:
    """Pure evaluation contract g(Interval) -> extended real.

    special_points(region, resolution) returns dyadic hint points for
    divisions of norm below `resolution`; singular_schedule enumerates
    permanent points (with an optional locked junction convention) used to
    extend a seed list as the norm bound shrinks.
    """

    def __init__(
        self,
        name: str,
        func: Callable[[Interval], float],
        *,
        additive: bool = False,
        bracket_independent: bool = False,
        continuous: bool = False,
        special_points: Optional[Callable[[Region, Dyadic], list[Dyadic]]] = None,
        singular_schedule: Optional[
            Callable[[Region, Dyadic], list[tuple[Dyadic, Optional[tuple[bool, bool]]]]]
        ] = None,
    ):
        self.name = name
        self._func = func
        self.additive = additive
        self.bracket_independent = bracket_independent
        self.continuous = continuous
        self._special = special_points
        self._schedule = singular_schedule

    def __call__(self, interval: Interval) -> float:
        return self._func(interval)

    def special_points(self, region: Region, resolution: Dyadic) -> list[Dyadic]:
        if self._special is None:
            return []
        pts = [p for p in self._special(region, resolution)
               if region.contains_point(p)]
        return sorted(set(pts), key=Dyadic.as_fraction)

    def singular_schedule(self, region: Region, resolution: Dyadic):
        if self._schedule is None:
            return []
        return [(p, lock) for p, lock in self._schedule(region, resolution)
                if region.contains_point(p)]


def stieltjes(f: PointFunction) -> IntervalFunction:
    """The endpoint difference f(hi) - f(lo); additive, bracket-free."""
    return IntervalFunction(
        f"S({f.name})",
        lambda iv: f(iv.hi) - f(iv.lo),
        additive=True,
        bracket_independent=True,
        continuous=f.continuous,
    )


def abs_fn(g: IntervalFunction) -> IntervalFunction:
    return IntervalFunction(
        f"|{g.name}|",
        lambda iv: abs(g(iv)),
        bracket_independent=g.bracket_independent,
        continuous=g.continuous,
        special_points=g._special,
        singular_schedule=g._schedule,
    )


def scale_fn(c: float, g: IntervalFunction) -> IntervalFunction:
    return IntervalFunction(
        f"{c}*{g.name}",
        lambda iv: c * g(iv),
        additive=g.additive,
        bracket_independent=g.bracket_independent,
        continuous=g.continuous,
        special_points=g._special,
        singular_schedule=g._schedule,
    )


def add_fn(g1: IntervalFunction, g2: IntervalFunction) -> IntervalFunction:
    def union_specials(region, resolution):
        return g1.special_points(region, resolution) + g2.special_points(
            region, resolution)

    return IntervalFunction(
        f"{g1.name}+{g2.name}",
        lambda iv: g1(iv) + g2(iv),
        additive=g1.additive and g2.additive,
        bracket_independent=g1.bracket_independent and g2.bracket_independent,
        continuous=g1.continuous and g2.continuous,
        special_points=union_specials,
    )


def length_fn() -> IntervalFunction:
    return IntervalFunction(
        "mI",
        lambda iv: float(iv.length),
        additive=True,
        bracket_independent=True,
        continuous=True,
    )


def hellinger(f: PointFunction, h: PointFunction) -> IntervalFunction:
    """S(f;I)**2 / S(h;I) for strictly increasing h."""
    def ev(iv: Interval) -> float:
        d = h(iv.hi) - h(iv.lo)
        s = f(iv.hi) - f(iv.lo)
        return s * s / d

    return IntervalFunction(f"S({f.name})^2/S({h.name})", ev,
                            bracket_independent=True)


# ---------------------------------------------------------------------------
# Point functions used by fixtures and tests
# ---------------------------------------------------------------------------

def poly(name: str, coeffs: Sequence[float]) -> PointFunction:
    """Polynomial sum(c_k x^k); derivative supplied for oracle use."""
    cs = tuple(float(c) for c in coeffs)
    dcs = tuple(k * cs[k] for k in range(1, len(cs)))

    def ev(x: Dyadic) -> float:
        t = float(x)
        acc = 0.0
        for c in reversed(cs):
            acc = acc * t + c
        return acc

    def deriv(t: float) -> float:
        acc = 0.0
        for c in reversed(dcs):
            acc = acc * t + c
        return acc

    return PointFunction(name, ev, derivative=deriv)


def step(at: Dyadic, include_at: bool = True, jump: float = 1.0) -> PointFunction:
    """Unit jump at a point; include_at puts the high value at the point."""
    def ev(x: Dyadic) -> float:
        if x > at or (x == at and include_at):
            return jump
        return 0.0

    return PointFunction(f"step@{at}", ev, continuous=False)


def _ceil_log2(d: Dyadic) -> int:
    k = floor_log2(d)
    return k if is_pow2(d) else k + 1


def sawtooth_inverse_powers() -> PointFunction:
    """Continuous on [0,1): 0 at 1-2^-2n, 1 at 1-2^-2n-1, linear between."""
    from math import ldexp
    one = Dyadic(1)

    def ev(x: Dyadic) -> float:
        if x.num < 0 or x >= one:
            raise ValueError(f"argument {x} outside [0,1)")
        d = one - x                      # in (0, 1]
        m = -_ceil_log2(d)               # 2^-m-1 < d <= 2^-m
        shift = d.exp - m                # u = 2*(1 - d*2^m), exactly
        if shift <= 60:
            u = ldexp((1 << shift) - d.num, 1 - shift)
        else:
            u = 2.0 * float(1 - d.as_fraction() * (1 << m))
        return u if m % 2 == 0 else 1.0 - u

    return PointFunction("zigzag", ev)


def sawtooth_harmonic() -> PointFunction:
    """Continuous on (0,1]: 0 at 1/(2n), 1 at 1/(2n+1), linear between."""
    def ev(x: Dyadic) -> float:
        if x.num <= 0 or x > Dyadic(1):
            raise ValueError(f"argument {x} outside (0,1]")
        q, r = divmod(1 << x.exp, x.num)
        if r == 0:                       # exactly 1/m
            return float(q % 2)
        m = q                            # 1/(m+1) < x < 1/m
        left = Fraction(1, m + 1)
        u = float((x.as_fraction() - left) / (Fraction(1, m) - left))
        f_left, f_right = (m + 1) % 2, m % 2
        return f_left + u * (f_right - f_left)

    return PointFunction("harmonic-zigzag", ev)


def cantor_staircase_12() -> tuple[PointFunction, list[tuple[Dyadic, Dyadic]]]:
    """Depth-12 singular staircase with dyadic breakpoints.

    The middle-thirds construction is carried exactly in rationals and each
    depth-12 breakpoint is rounded outward to the 2^-32 grid, so the 4096
    rise intervals have exact dyadic endpoints with total measure just
    above (2/3)^12.  Returns the function and the rise intervals.
    """
    depth, grid = 12, 32
    segs = [(Fraction(0), Fraction(1))]
    for _ in range(depth):
        nxt = []
        for a, b in segs:
            w = (b - a) / 3
            nxt.append((a, a + w))
            nxt.append((b - w, b))
        segs = nxt

    def floor_to(v: Fraction) -> Dyadic:
        return Dyadic((v.numerator << grid) // v.denominator, grid)

    def ceil_to(v: Fraction) -> Dyadic:
        return Dyadic(-((-v.numerator << grid) // v.denominator), grid)

    spans = [(floor_to(a), ceil_to(b)) for a, b in segs]
    rise = Fraction(1, 1 << depth)

    def ev(x: Dyadic) -> float:
        xf = x.as_fraction()
        lo_i, hi_i = 0, len(spans) - 1
        if x <= spans[0][0]:
            return 0.0
        if x >= spans[-1][1]:
            return 1.0
        while lo_i < hi_i:              # last span with a <= x
            mid = (lo_i + hi_i + 1) // 2
            if spans[mid][0] <= x:
                lo_i = mid
            else:
                hi_i = mid - 1
        a, b = spans[lo_i]
        base = rise * lo_i
        if x >= b:
            return float(base + rise)
        frac = (xf - a.as_fraction()) / (b.as_fraction() - a.as_fraction())
        return float(base + rise * frac)

    return PointFunction("staircase12", ev), spans


# ---------------------------------------------------------------------------
# Fixture registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Expectation:
    quantity: str
    value: float
    cite: str  # oracle name or construction note


@dataclass(frozen=True)
class Fixture:
    name: str
    fn: IntervalFunction
    region: Region
    expected: tuple[Expectation, ...] = ()
    permanent: tuple[tuple[Dyadic, Optional[tuple[bool, bool]]], ...] = ()
    scan_points: tuple[Dyadic, ...] = ()
    companion_sets: dict = field(default_factory=dict)
    notes: str = ""

    def manifest(self) -> dict:
        return {
            "name": self.name,
            "region": [(lo.serialize(), hi.serialize())
                       for lo, hi in self.region.components],
            "expected": [{"quantity": e.quantity, "value": e.value,
                          "cite": e.cite} for e in self.expected],
            "special_points": [p.serialize() for p in
                               self.fn.special_points(
                                   self.region, Dyadic(1, 8))],
        }


def _resolution_index(resolution: Dyadic) -> int:
    """j with 2^-j <= resolution, clamped to a sane range."""
    j = max(1, -floor_log2(resolution))
    return min(j, 64)


def _two_piece_zigzag() -> IntervalFunction:
    """Endpoint difference of the zigzag on [0,1) plus a unit charge on the
    symmetric spans [1-2^-2n, 1+2^-2n]; zero elsewhere on [0,2].

    The upper norm-limit is 1 over [0,1] and over [0,2] but 0 over [1,2],
    and splitting any symmetric span at 1 loses exactly 1.
    """
    f = sawtooth_inverse_powers()
    one, two = Dyadic(1), Dyadic(2)

    def ev(iv: Interval) -> float:
        if ZERO <= iv.lo and iv.hi < one:
            return f(iv.hi) - f(iv.lo)
        d = iv.hi - one
        if d.num == 1 and d.exp % 2 == 0 and d == one - iv.lo:
            return 1.0
        return 0.0

    def specials(region: Region, resolution: Dyadic) -> list[Dyadic]:
        j = _resolution_index(resolution)
        n_odd = j + 1 if (j + 1) % 2 == 1 else j + 2
        pts = [one - pow2(n) for n in range(1, n_odd + 1)]
        n0 = (j + 3) // 2
        for n in (n0, n0 + 1):
            pts.append(one - pow2(2 * n))
            pts.append(one + pow2(2 * n))
        pts.extend([ZERO, two])
        return pts

    return IntervalFunction(
        "two_piece_zigzag", ev, bracket_independent=True,
        special_points=specials)


def _origin_indicator() -> IntervalFunction:
    """Additive unit charge at the origin: 1 exactly when 0 is in I."""
    def ev(iv: Interval) -> float:
        if iv.lo < ZERO < iv.hi:
            return 1.0
        if iv.lo == ZERO and iv.left_closed:
            return 1.0
        if iv.hi == ZERO and iv.right_closed:
            return 1.0
        return 0.0

    def specials(region: Region, resolution: Dyadic) -> list[Dyadic]:
        j = _resolution_index(resolution)
        return [ZERO, -pow2(j + 1), pow2(j + 1)]

    return IntervalFunction("origin_indicator", ev, additive=True,
                            special_points=specials)


def _osc_left_limit() -> IntervalFunction:
    """Zigzag difference, active only on steep-left intervals.

    g is the endpoint difference of the harmonic zigzag when the left end
    is positive and the length is below its cube, else 0.  Extremal
    divisions telescope from a dyadic zero of the zigzag upward, so the
    upper estimate over (0,x) lands on the zigzag value at x.
    """
    f = sawtooth_harmonic()

    def ev(iv: Interval) -> float:
        lo = iv.lo
        if lo.num <= 0:
            return 0.0
        cube = lo * lo * lo
        if iv.length < cube:
            return f(iv.hi) - f(iv.lo)
        return 0.0

    def specials(region: Region, resolution: Dyadic) -> list[Dyadic]:
        j = _resolution_index(resolution)
        top = region.components[-1][1]
        k = -(-j // 3) + 1                       # zero point 2^-k
        z = pow2(k)
        if not z < top:
            return []
        pts = []
        cap = pow2(j + 1)                        # stay under the norm bound
        p = z
        while p < top:                           # counted chain above z
            pts.append(p)
            cube = p * p * p
            step = pow2(-floor_log2(cube) + 1)   # half the cube, rounded
            p = p + (step if step < cap else cap)
        down = Dyadic(63, j + 6)                 # broken chain below z
        p = z - down
        while p.num > 0:
            pts.append(p)
            p = p - down
        return pts

    return IntervalFunction("osc_left_limit", ev, bracket_independent=True,
                            continuous=True, special_points=specials)


def _k_convention_jump() -> IntervalFunction:
    """Point masses 2^-r plus a unit bonus on closed spans [0, 2^-r].

    The point-mass part sums the masses of the points of I, with endpoint
    membership decided by brackets; the bonus rewards the closed interval
    from 0 to a mass point.  Geometric tails are summed in closed form so
    evaluation is exact.
    """
    def mass(iv: Interval) -> float:
        lo, hi = iv.lo, iv.hi
        if hi.num <= 0:
            return 0.0
        total = 0.0
        # smallest r >= 1 with 2^-r strictly below hi
        k = floor_log2(hi)
        r_min = max(1, -k + 1 if is_pow2(hi) else -k)
        if lo.num <= 0:
            total += float(pow2(r_min - 1))      # full tail sum
        else:
            r_max = -floor_log2(lo) - 1          # largest r with 2^-r > lo
            if r_max >= r_min:
                total += float(pow2(r_min - 1)) - float(pow2(r_max))
            if iv.left_closed and is_pow2(lo) and lo.num == 1 and lo.exp >= 1:
                total += float(lo)
        if iv.right_closed and is_pow2(hi) and hi.num == 1 and hi.exp >= 1:
            total += float(hi)
        return total

    def ev(iv: Interval) -> float:
        bonus = 0.0
        if (iv.lo == ZERO and iv.left_closed and iv.right_closed
                and iv.hi.num == 1 and iv.hi.exp >= 1):
            bonus = 1.0
        return mass(iv) + bonus

    def specials(region: Region, resolution: Dyadic) -> list[Dyadic]:
        j = _resolution_index(resolution)
        return [ZERO] + [pow2(r) for r in range(1, 2 * j + 7)]

    def schedule(region: Region, resolution: Dyadic):
        j = _resolution_index(resolution)
        lock = (False, True)                     # ")[" convention
        out = [(ZERO, lock)]
        out.extend((pow2(r), lock) for r in range(1, max(10, 2 * j) + 1))
        return out

    return IntervalFunction("k_convention_jump", ev,
                            special_points=specials,
                            singular_schedule=schedule)


K_SINGULAR_SET_NAME = "k_convention_jump"


def apply_k_convention(iv: Interval) -> Interval:
    """Rewrite brackets at ends lying in the singular set {0, 2^-r} to ")["."""
    lc, rc = iv.left_closed, iv.right_closed
    if iv.lo == ZERO or (is_pow2(iv.lo) and iv.lo.num == 1 and iv.lo.exp >= 1):
        lc = True
    if iv.hi == ZERO or (is_pow2(iv.hi) and iv.hi.num == 1 and iv.hi.exp >= 1):
        rc = False
    return iv.with_brackets(lc, rc)


def k_jump_locked_function() -> IntervalFunction:
    """The jump fixture evaluated through the locked convention: every end
    lying in the singular set is rewritten to ")[" before evaluation."""
    base = _k_convention_jump()
    return IntervalFunction(
        "k_convention_jump_locked",
        lambda iv: base(apply_k_convention(iv)),
        bracket_independent=True,
        special_points=base._special,
        singular_schedule=base._schedule,
    )


_STAIRCASE_CACHE: list = []


def cantor_staircase_function() -> tuple[IntervalFunction, list]:
    """Endpoint difference of the depth-12 singular staircase.

    The rise intervals' breakpoints are the special points, so pack
    searches can concentrate on the carrier of the variation.
    """
    if not _STAIRCASE_CACHE:
        f, spans = cantor_staircase_12()
        pts = sorted({p for s in spans for p in s}, key=Dyadic.as_fraction)

        def specials(region, resolution):
            return list(pts)

        g = IntervalFunction(
            "S(staircase12)",
            lambda iv: f(iv.hi) - f(iv.lo),
            additive=True,
            bracket_independent=True,
            continuous=True,
            special_points=specials,
        )
        _STAIRCASE_CACHE.append((g, spans))
    return _STAIRCASE_CACHE[0]


def _m_power_singularity() -> IntervalFunction:
    """Unit value on symmetric spans [-2^-i, 2^-i]; zero elsewhere.

    Splitting a charged span at the origin loses the unit, so the origin is
    an additivity singularity with defect 1 while no single shrinking
    interval at 0 carries any value.
    """
    def ev(iv: Interval) -> float:
        if iv.lo == -iv.hi and iv.hi.num == 1:
            return 1.0
        return 0.0

    def specials(region: Region, resolution: Dyadic) -> list[Dyadic]:
        j = _resolution_index(resolution)
        pts = []
        for i in range(0, j + 3):
            pts.append(pow2(i))
            pts.append(-pow2(i))
        return pts

    def schedule(region: Region, resolution: Dyadic):
        return [(ZERO, None)]                    # all conventions at 0

    return IntervalFunction("m_power_singularity", ev,
                            bracket_independent=True,
                            special_points=specials,
                            singular_schedule=schedule)


def _dyadic_blocks() -> IntervalFunction:
    """Unit value on each span [2^-n, 2^-n+1]; zero elsewhere.

    Divisions can stack arbitrarily many charged blocks near 0, so the
    variation diverges there, yet no interval containing 0 carries value.
    """
    def ev(iv: Interval) -> float:
        if (iv.lo.num == 1 and iv.hi.num == 1 and iv.lo.exp >= 1
                and iv.lo.exp == iv.hi.exp + 1):
            return 1.0
        return 0.0

    def specials(region: Region, resolution: Dyadic) -> list[Dyadic]:
        j = _resolution_index(resolution)
        n_cap = 8 << max(0, j - 3)               # doubles per level
        return [pow2(n) for n in range(0, n_cap + 1)]

    return IntervalFunction("dyadic_blocks", ev, bracket_independent=True,
                            special_points=specials)


# Left-accumulating blocks with razor-thin density gaps at the origin.
_DENSITY_BLOCK_EXPONENTS = [(13, 45), (88, 120), (163, 195)]


def _density_left_limit() -> IntervalFunction:
    """Value a=1 exactly on intervals whose span ends at 0 from the left."""
    def ev(iv: Interval) -> float:
        if iv.hi == ZERO and iv.lo < ZERO:
            return 1.0
        return 0.0

    def specials(region: Region, resolution: Dyadic) -> list[Dyadic]:
        pts = []
        for a, b in _DENSITY_BLOCK_EXPONENTS:
            pts.extend([-pow2(a), -pow2(b)])
        pts.extend([pow2(13), pow2(45)])         # bound the gap, avoid 0
        return pts

    return IntervalFunction("density_left_limit", ev,
                            bracket_independent=True,
                            special_points=specials)


def density_companion_set() -> tuple[Interval, ...]:
    """The measurable set with oscillating left density at the origin."""
    return tuple(Interval(-pow2(a), -pow2(b), True, True)
                 for a, b in _DENSITY_BLOCK_EXPONENTS)


def _builders() -> dict:
    one, two = Dyadic(1), Dyadic(2)

    def saks() -> Fixture:
        return Fixture(
            name="saks_A_counterexample",
            fn=_two_piece_zigzag(),
            region=Region.interval(ZERO, two),
            expected=(
                Expectation("upper_norm_limit[0,1]", 1.0,
                            "telescoping to the deepest zigzag peak"),
                Expectation("upper_norm_limit[1,2]", 0.0,
                            "all evaluations vanish right of 1"),
                Expectation("upper_norm_limit[0,2]", 1.0,
                            "peak route and charged-span route agree"),
                Expectation("additivity_defect@1", 1.0,
                            "splitting a charged span at 1"),
            ),
            scan_points=(one,),
        )

    def origin() -> Fixture:
        return Fixture(
            name="origin_indicator",
            fn=_origin_indicator(),
            region=Region.interval(-one, one),
            expected=(
                Expectation("lower_norm_limit", 0.0,
                            "both-open junction at 0 omits the charge"),
                Expectation("upper_norm_limit", 2.0,
                            "oracle:exhaustive-bracket-enumeration"),
            ),
            scan_points=(ZERO,),
        )

    def osc() -> Fixture:
        return Fixture(
            name="osc_left_limit",
            fn=_osc_left_limit(),
            region=Region.interval(ZERO, Dyadic(3, 2)),
            expected=(
                Expectation("upper_norm_limit[0,3/4]", 0.5,
                            "zigzag value at 3/4; chain starts at a zero"),
            ),
            scan_points=(ZERO,),
        )

    def kjump() -> Fixture:
        lock = (False, True)
        perms = tuple([(ZERO, lock)] + [(pow2(r), lock) for r in range(1, 11)])
        return Fixture(
            name="k_convention_jump",
            fn=_k_convention_jump(),
            region=Region.interval(ZERO, one),
            expected=(
                Expectation("upper_k_limit", 2.0,
                            "mass sum 1 plus the closed-span bonus"),
                Expectation("locked_k_limit", 1.0,
                            "convention kills the bonus and doubling"),
            ),
            permanent=perms,
            scan_points=(pow2(1), pow2(2)),
        )

    def mpower() -> Fixture:
        return Fixture(
            name="m_power_singularity",
            fn=_m_power_singularity(),
            region=Region.interval(-one, one),
            expected=(
                Expectation("defect_c@0", 1.0,
                            "split any charged symmetric span at 0"),
            ),
            permanent=((ZERO, None),),
            scan_points=(ZERO,),
        )

    def blocks() -> Fixture:
        return Fixture(
            name="dyadic_blocks",
            fn=_dyadic_blocks(),
            region=Region.interval(-one, one),
            expected=(
                Expectation("variation", INF, "block stacking is unbounded"),
                Expectation("j@0", INF, "blocks accumulate at 0"),
                Expectation("defect_c@0", 0.0,
                            "no interval containing 0 is charged"),
            ),
            scan_points=(ZERO,),
        )

    def density() -> Fixture:
        return Fixture(
            name="density_left_limit",
            fn=_density_left_limit(),
            region=Region.interval(-one, one),
            expected=(
                Expectation("upper_density", 1.0,
                            "left density of the block set approaches 1"),
                Expectation("lower_density", 0.0,
                            "divisions without 0 as a point see nothing"),
            ),
            companion_sets={"oscillating_blocks": density_companion_set()},
            scan_points=(ZERO,),
        )

    return {
        "saks_A_counterexample": saks,
        "origin_indicator": origin,
        "osc_left_limit": osc,
        "k_convention_jump": kjump,
        "m_power_singularity": mpower,
        "dyadic_blocks": blocks,
        "density_left_limit": density,
    }


_BUILDERS = _builders()
_CACHE: dict[str, Fixture] = {}


def fixture_names() -> list[str]:
    return sorted(_BUILDERS)


def fixture(name: str) -> Fixture:
    if name not in _BUILDERS:
        raise UnknownFixture(f"no fixture named {name!r}")
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]
