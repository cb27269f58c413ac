"""Density integration: K(I) = g(I) * m(E & I) / mI over a fundamental region.

The measurable sets are finite interval unions with exact dyadic measure
arithmetic; membership respects brackets (needed by the around-a-set
module) while measures ignore them.  The density integral of g for E is
the norm-limit of K over the fundamental region; for additive absolutely
continuous g it recovers the Lebesgue value, checked against a composite
quadrature oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .catalog import IntervalFunction
from .core import Dyadic, Interval, Region, ZERO, dmax, dmin
from .errors import NoConvergence
from .integrator import LimitReport, SearchConfig, estimate_norm_limits


class MeasurableSet:
    """A finite union of bracketed intervals, sorted and non-overlapping.

    Abutting components are kept separate so that bracket-sensitive
    membership is preserved; measure is the exact sum of span lengths.
    """

    __slots__ = ("components",)

    def __init__(self, intervals: Sequence[Interval] = ()):
        comps = sorted(intervals, key=lambda iv: iv.lo.as_fraction())
        for a, b in zip(comps, comps[1:]):
            if b.lo < a.hi:
                raise ValueError(f"components {a} and {b} overlap")
        object.__setattr__(self, "components", tuple(comps))

    def __setattr__(self, name, value):
        raise AttributeError("MeasurableSet is immutable")

    @staticmethod
    def empty() -> "MeasurableSet":
        return MeasurableSet(())

    @staticmethod
    def from_spans(spans: Sequence[tuple[Dyadic, Dyadic]]) -> "MeasurableSet":
        return MeasurableSet([Interval(lo, hi, True, True)
                              for lo, hi in spans])

    @property
    def measure(self) -> Dyadic:
        total = ZERO
        for iv in self.components:
            total = total + iv.length
        return total

    def contains_point(self, x: Dyadic) -> bool:
        return any(iv.contains_point(x) for iv in self.components)

    def endpoints(self) -> list[Dyadic]:
        out = []
        for iv in self.components:
            out.append(iv.lo)
            out.append(iv.hi)
        return out

    def meets(self, iv: Interval) -> bool:
        """True when the set intersection with iv is non-empty.

        A shared single endpoint counts only when both sides include it.
        """
        for comp in self.components:
            lo, hi = dmax(comp.lo, iv.lo), dmin(comp.hi, iv.hi)
            if lo < hi:
                return True
            if lo == hi and comp.contains_point(lo) and iv.contains_point(lo):
                return True
        return False

    def to_json_obj(self) -> list:
        return [{"lo": iv.lo.serialize(), "hi": iv.hi.serialize(),
                 "left_closed": iv.left_closed,
                 "right_closed": iv.right_closed}
                for iv in self.components]

    def __str__(self) -> str:
        return " + ".join(str(iv) for iv in self.components) or "{}"


def intersect_measure(E: MeasurableSet, iv: Interval) -> Dyadic:
    """Exact measure of E within the span of iv; brackets are irrelevant."""
    total = ZERO
    for comp in E.components:
        if iv.hi <= comp.lo:
            break                       # components are sorted
        lo, hi = dmax(comp.lo, iv.lo), dmin(comp.hi, iv.hi)
        if lo < hi:
            total = total + (hi - lo)
    return total


def density_kernel(g: IntervalFunction, E: MeasurableSet) -> IntervalFunction:
    """The interval function K(I) = g(I) * m(E & I) / mI.

    Special points inherit from g plus the endpoints of E; bracket
    dependence is inherited from g (the measure ratio ignores brackets).
    """
    edges = E.endpoints()

    def ev(iv: Interval) -> float:
        m = intersect_measure(E, iv)
        if m.num == 0:
            return 0.0
        length = iv.length
        if m.num < (1 << 52) and length.num < (1 << 52):
            # float division of exactly-represented dyadics; the common
            # aligned cases (ratio a power of two or one) stay exact
            ratio = float(m) / float(length)
        else:
            ratio = float(m.as_fraction() / length.as_fraction())
        return g(iv) * ratio

    def specials(region: Region, resolution: Dyadic) -> list[Dyadic]:
        return g.special_points(region, resolution) + [
            p for p in edges if region.contains_point(p)]

    return IntervalFunction(
        f"K({g.name};E)", ev,
        bracket_independent=g.bracket_independent,
        special_points=specials,
        singular_schedule=g._schedule,
    )


@dataclass
class DensityReport:
    report: LimitReport
    lebesgue_ref: Optional[float] = None

    @property
    def upper(self) -> float:
        return self.report.upper

    @property
    def lower(self) -> float:
        return self.report.lower

    @property
    def verdict(self):
        return self.report.verdict


def density_integral(
    g: IntervalFunction,
    E: MeasurableSet,
    fundamental: Region,
    cfg: Optional[SearchConfig] = None,
    gprime: Optional[Callable[[float], float]] = None,
    tol: Optional[float] = None,
) -> DensityReport:
    """Upper/lower density integrals of g for E over the fundamental region.

    When a derivative oracle is supplied (additive absolutely continuous
    g), the Lebesgue reference value is attached for comparison.
    """
    cfg = cfg or SearchConfig()
    kernel = density_kernel(g, E)
    report = estimate_norm_limits(kernel, fundamental, cfg, tol=tol)
    ref = None
    if gprime is not None:
        ref = lebesgue_reference(gprime, E)
    return DensityReport(report, ref)


def lebesgue_reference(
    gprime: Callable[[float], float],
    E: MeasurableSet,
    tol: float = 1e-10,
    max_doublings: int = 22,
) -> float:
    """Composite Simpson quadrature of gprime over E, doubled until two
    successive refinements agree within tol.  gprime takes a float."""
    func = gprime

    def simpson(a: float, b: float, panels: int) -> float:
        h = (b - a) / panels
        total = func(a) + func(b)
        for i in range(1, panels):
            total += (4.0 if i % 2 else 2.0) * func(a + i * h)
        return total * h / 3.0

    total = 0.0
    for comp in E.components:
        a, b = float(comp.lo), float(comp.hi)
        panels = 2
        prev = simpson(a, b, panels)
        for _ in range(max_doublings):
            panels *= 2
            cur = simpson(a, b, panels)
            if abs(cur - prev) <= tol:
                total += cur
                break
            prev = cur
        else:
            raise NoConvergence(
                f"quadrature did not stabilize on [{a}, {b}]")
    return total
