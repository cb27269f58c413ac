"""Norm-limit, k-limit and refinement-limit estimation for interval functions.

The supremum over all divisions is uncomputable, so estimates search a
finite candidate family per norm bound e: uniform dyadic grids, the
function's special points, special points with minimal midpoint fill, and
a midpoint-jittered variant.  Upper estimates are therefore lower bounds
of the true upper limit (and lower estimates upper bounds of the true
lower limit); the fixtures publish special points that make the bounds
tight.  Reported traces are suffix-tightened: a division of norm below a
fine bound is also admissible at every coarser bound.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .catalog import INF, IntervalFunction, xsum
from .core import (
    Division,
    Dyadic,
    Interval,
    Region,
    division_from_points,
    dmid,
    floor_log2,
    sort_points,
)
from .errors import BudgetExceeded, IndeterminateForm

Lock = tuple[bool, bool]  # junction convention: (left_closed, right_closed)


def _default_schedule() -> tuple[Dyadic, ...]:
    return tuple(Dyadic(1, k) for k in range(3, 15))


@dataclass(frozen=True)
class SearchConfig:
    """Knobs of the division search.

    e_schedule is strictly decreasing; grids use spacing e/grid_density.
    convention_mode "optimize" picks extremal brackets per interval,
    "fixed" applies fixed_convention at every junction, and "enumerate"
    cross-checks against the exhaustive 4**m walk on small divisions.
    """

    e_schedule: tuple[Dyadic, ...] = field(default_factory=_default_schedule)
    grid_density: int = 2
    use_special_points: bool = True
    convention_mode: str = "optimize"
    fixed_convention: Lock = (False, True)
    tol_exact: float = 1e-9
    tol_float: float = 1e-6
    divergence_threshold: float = 1e12
    max_points: int = 200_000
    parallel: bool = False

    def __post_init__(self):
        prev = None
        for e in self.e_schedule:
            if e.num <= 0 or (prev is not None and not e < prev):
                raise ValueError("e_schedule must be positive and decreasing")
            prev = e

    def finest(self) -> Dyadic:
        return self.e_schedule[-1]


def default_config(**overrides) -> SearchConfig:
    return SearchConfig(**overrides)


@dataclass(frozen=True)
class Verdict:
    kind: str                      # converged | diverging | oscillating
    value: Optional[float] = None
    upper: Optional[float] = None
    lower: Optional[float] = None
    tol: Optional[float] = None

    def __str__(self) -> str:
        if self.kind == "converged":
            return f"converged({self.value!r}, tol={self.tol})"
        if self.kind == "diverging":
            return f"diverging({self.value!r})"
        return f"oscillating(upper={self.upper!r}, lower={self.lower!r})"


@dataclass
class LevelEstimate:
    e: Dyadic
    upper: float
    lower: float
    witness_upper: Optional[Division] = None
    witness_lower: Optional[Division] = None
    # per-level values before suffix tightening; growth across levels is the
    # divergence signal, since the true d(e) could only tighten downward
    raw_upper: Optional[float] = None
    raw_lower: Optional[float] = None


@dataclass
class LimitReport:
    """Per-level upper/lower estimates with witnesses and a verdict."""

    levels: list[LevelEstimate]
    verdict: Verdict

    @property
    def upper(self) -> float:
        return self.levels[-1].upper

    @property
    def lower(self) -> float:
        return self.levels[-1].lower

    def trace(self) -> list[tuple[Dyadic, float, float]]:
        return [(lv.e, lv.upper, lv.lower) for lv in self.levels]


@dataclass
class DefectReport:
    """Additivity-defect scan result at one point."""

    point: Dyadic
    trace: list[tuple[Dyadic, float]]
    c: float
    sigma: float


# ---------------------------------------------------------------------------
# Riemann sums and the per-interval bracket optimizer
# ---------------------------------------------------------------------------

def riemann_sum(g: IntervalFunction, division: Division) -> float:
    """Sum of g over the intervals of a division (extended real)."""
    return xsum(g(iv) for iv in division)


_VARIANTS = ((False, False), (False, True), (True, False), (True, True))


def _allowed_variants(lo: Dyadic, hi: Dyadic, locks: dict) -> tuple[Lock, ...]:
    llock = locks.get(lo)
    rlock = locks.get(hi)
    out = []
    for lc, rc in _VARIANTS:
        if llock is not None and lc != llock[1]:
            continue
        if rlock is not None and rc != rlock[0]:
            continue
        out.append((lc, rc))
    return tuple(out)


class Candidate:
    """A candidate point set with its in-component consecutive spans."""

    __slots__ = ("points", "spans")

    def __init__(self, points: list[Dyadic],
                 spans: list[tuple[Dyadic, Dyadic]]):
        self.points = points
        self.spans = spans

    def key(self) -> tuple:
        return tuple((p.num, p.exp) for p in self.points)


def _extremal_spans(
    g: IntervalFunction,
    cand: Candidate,
    region: Region,
    sense: str,
    locks: Optional[dict] = None,
) -> tuple[float, Division]:
    want_max = sense == "max"
    bkfree = g.bracket_independent
    chosen: list[Interval] = []
    values: list[float] = []
    raw = Interval.raw
    if not locks:
        for a, b in cand.spans:
            if bkfree:
                best = raw(a, b, False, False)
                best_val = g(best)
            else:
                best = raw(a, b, False, False)
                best_val = g(best)
                for lc, rc in ((False, True), (True, False), (True, True)):
                    iv = raw(a, b, lc, rc)
                    v = g(iv)
                    if v > best_val if want_max else v < best_val:
                        best, best_val = iv, v
            chosen.append(best)
            values.append(best_val)
    else:
        for a, b in cand.spans:
            allowed = _allowed_variants(a, b, locks)
            if not allowed:
                raise ValueError(f"conflicting locks at {a}..{b}")
            if bkfree:
                lc, rc = allowed[0]
                best = raw(a, b, lc, rc)
                best_val = g(best)
            else:
                best = None
                best_val = 0.0
                for lc, rc in allowed:
                    iv = raw(a, b, lc, rc)
                    v = g(iv)
                    if best is None or (v > best_val if want_max
                                        else v < best_val):
                        best, best_val = iv, v
            chosen.append(best)
            values.append(best_val)
    return xsum(values), Division(region, chosen, tuple(cand.points))


def extremal_sum(
    g: IntervalFunction,
    points: Sequence[Dyadic],
    region: Region,
    sense: str = "max",
    locks: Optional[dict] = None,
) -> tuple[float, Division]:
    """Exact optimum of the Riemann sum over all bracket assignments.

    Assignments are unconstrained across intervals, so the optimum is the
    sum of per-interval optima over each span's four variants (restricted
    by any junction locks).  Ties break to the lexicographically smallest
    assignment, open before closed, left to right.
    """
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    base = division_from_points(region, points)
    cand = Candidate(list(points), [(iv.lo, iv.hi) for iv in base])
    return _extremal_spans(g, cand, region, sense, locks)


def brute_force_extremal(
    g: IntervalFunction,
    points: Sequence[Dyadic],
    region: Region,
    sense: str = "max",
) -> float:
    """Exhaustive 4**m oracle for extremal_sum (small m only)."""
    import numpy as np

    base = division_from_points(region, points)
    rows = []
    for iv in base:
        rows.append([g(Interval(iv.lo, iv.hi, lc, rc))
                     for lc, rc in _VARIANTS])
    acc = np.zeros((1,))
    for row in rows:
        acc = (acc[:, None] + np.asarray(row)[None, :]).reshape(-1)
    return float(acc.max() if sense == "max" else acc.min())


# ---------------------------------------------------------------------------
# Candidate point sets
# ---------------------------------------------------------------------------

def _grid_spacing(e: Dyadic, density: int) -> Dyadic:
    """Largest power of two not above e/density."""
    k = floor_log2(e)
    spacing = Dyadic(1, -k)
    target = e.as_fraction()
    while spacing.as_fraction() * density > target:
        spacing = spacing.half()
    return spacing


def _fill_gap(a: Dyadic, b: Dyadic, e: Dyadic, out: list, cap: int):
    """Append midpoints of (a, b), in order, until every gap is below e."""
    if b - a < e:
        return
    if len(out) > cap:
        raise BudgetExceeded(f"fill needs more than {cap} points")
    m = dmid(a, b)
    _fill_gap(a, m, e, out, cap)
    out.append(m)
    _fill_gap(m, b, e, out, cap)


def _fill(points, region: Region, e: Dyadic, max_points: int) -> Candidate:
    """Insert midpoints until every in-component gap is below e."""
    pts = sort_points(set(points) | set(region.endpoints()))
    out: list[Dyadic] = []
    spans: list[tuple[Dyadic, Dyadic]] = []
    idx = 0
    n = len(pts)
    for lo, hi in region.components:
        while idx < n and pts[idx] < lo:
            idx += 1
        run_start = len(out)
        prev = None
        while idx < n and pts[idx] <= hi:
            p = pts[idx]
            if prev is not None:
                _fill_gap(prev, p, e, out, max_points)
            out.append(p)
            prev = p
            idx += 1
        for i in range(run_start, len(out) - 1):
            spans.append((out[i], out[i + 1]))
    return Candidate(out, spans)


def _jitter(cand: Candidate) -> list[Dyadic]:
    """Points plus midpoints of every consecutive in-component gap."""
    extra = list(cand.points)
    for a, b in cand.spans:
        extra.append(dmid(a, b))
    return extra


def candidate_point_sets(
    g: IntervalFunction,
    region: Region,
    e: Dyadic,
    cfg: SearchConfig,
    extra: Sequence[Dyadic] = (),
) -> list[Candidate]:
    """The candidate family at norm bound e, all gaps strictly below e."""
    base = region.endpoints()
    spacing = _grid_spacing(e, cfg.grid_density)
    grid: list[Dyadic] = []
    for lo, hi in region.components:
        p = lo
        while p < hi:
            grid.append(p)
            p = p + spacing
        grid.append(hi)
        if len(grid) > cfg.max_points:
            raise BudgetExceeded(f"grid needs more than {cfg.max_points} points")
    specials = (g.special_points(region, e) if cfg.use_special_points else [])
    extras = [p for p in extra if region.contains_point(p)]

    # the offset grid avoids interior alignment points (e.g. the origin)
    half = spacing.half()
    offset: list[Dyadic] = []
    for lo, hi in region.components:
        p = lo + half
        while p < hi:
            offset.append(p)
            p = p + spacing

    def prep(pts: list[Dyadic]) -> Candidate:
        return _fill(pts + extras, region, e, cfg.max_points)

    cands = [prep(base + grid), prep(base + offset)]
    if specials:
        cands.append(prep(base + grid + specials))
        spec_set = prep(base + specials)
        cands.append(spec_set)
        cands.append(_fill(_jitter(spec_set) + extras, region, e,
                           cfg.max_points))
    seen = set()
    unique = []
    for c in cands:
        key = c.key()
        if key not in seen:
            seen.add(key)
            unique.append(c)
    return unique


def _map(cfg: SearchConfig, fn, items: list):
    """Order-preserving map; the parallel path is bit-identical to serial."""
    if cfg.parallel and len(items) > 1:
        with ThreadPoolExecutor(max_workers=min(4, len(items))) as ex:
            return list(ex.map(fn, items))
    return [fn(item) for item in items]


# ---------------------------------------------------------------------------
# Norm-limits
# ---------------------------------------------------------------------------

def _estimate_levels(
    g: IntervalFunction,
    region: Region,
    cfg: SearchConfig,
    extra_points: Sequence[Dyadic] = (),
    locks_for_level=None,
    mandatory_for_level=None,
) -> list[LevelEstimate]:
    levels: list[LevelEstimate] = []
    for e in cfg.e_schedule:
        locks = locks_for_level(e) if locks_for_level else {}
        mandatory = mandatory_for_level(e) if mandatory_for_level else []
        cands = candidate_point_sets(
            g, region, e, cfg, extra=list(extra_points) + list(mandatory))

        def run(cand):
            if cfg.convention_mode == "fixed":
                lk = {p: cfg.fixed_convention for p in cand.points}
                up, wit_up = _extremal_spans(g, cand, region, "max", lk)
                low, wit_low = _extremal_spans(g, cand, region, "min", lk)
            else:
                up, wit_up = _extremal_spans(g, cand, region, "max", locks)
                low, wit_low = _extremal_spans(g, cand, region, "min", locks)
            return up, low, wit_up, wit_low

        results = _map(cfg, run, cands)
        best_up, best_low = -INF, INF
        wit_up = wit_low = None
        for up, low, wu, wl in results:
            if up > best_up:
                best_up, wit_up = up, wu
            if low < best_low:
                best_low, wit_low = low, wl
        levels.append(LevelEstimate(e, best_up, best_low, wit_up, wit_low,
                                    raw_upper=best_up, raw_lower=best_low))
    # A division admissible at a fine bound is admissible at coarser ones.
    for i in range(len(levels) - 2, -1, -1):
        if levels[i + 1].upper > levels[i].upper:
            levels[i].upper = levels[i + 1].upper
            levels[i].witness_upper = levels[i + 1].witness_upper
        if levels[i + 1].lower < levels[i].lower:
            levels[i].lower = levels[i + 1].lower
            levels[i].witness_lower = levels[i + 1].witness_lower
    return levels


def _growth_diverging(values: list[float], threshold: float) -> bool:
    if values[-1] > threshold:
        return True
    tail = values[-4:]
    if len(tail) < 4:
        return False
    return all(b >= 1.5 * a and b > a + 1e-12 for a, b in zip(tail, tail[1:])
               ) and tail[0] > 0


def _verdict(levels: list[LevelEstimate], tol: float,
             threshold: float) -> Verdict:
    # divergence here is by magnitude alone; sustained-growth detection
    # belongs to the variation verdicts, where saturation cannot occur
    ups = [lv.upper for lv in levels]
    lows = [lv.lower for lv in levels]
    up, low = ups[-1], lows[-1]
    if up == INF or up > threshold:
        if low == -INF or low < -threshold:
            return Verdict("oscillating", upper=INF, lower=-INF)
        return Verdict("diverging", value=INF)
    if low == -INF or low < -threshold:
        return Verdict("diverging", value=-INF)
    stabilized = (len(levels) >= 2
                  and abs(ups[-1] - ups[-2]) <= tol
                  and abs(lows[-1] - lows[-2]) <= tol)
    if abs(up - low) <= tol and stabilized:
        return Verdict("converged", value=0.5 * (up + low), tol=tol)
    return Verdict("oscillating", upper=up, lower=low)


def estimate_norm_limits(
    g: IntervalFunction,
    region: Region,
    cfg: Optional[SearchConfig] = None,
    tol: Optional[float] = None,
    extra_points: Sequence[Dyadic] = (),
) -> LimitReport:
    """Estimate the upper and lower norm-limits of g over a region.

    For each e in the schedule the upper estimate is the largest extremal
    sum over the candidate family; the verdict compares the finest-level
    envelope against the tolerance.
    """
    cfg = cfg or SearchConfig()
    if region.is_empty:
        raise ValueError("region is empty")
    tol = cfg.tol_float if tol is None else tol
    levels = _estimate_levels(g, region, cfg, extra_points=extra_points)
    return LimitReport(levels, _verdict(levels, tol, cfg.divergence_threshold))


def estimate_k_limits(
    g: IntervalFunction,
    region: Region,
    permanent: Sequence[tuple[Dyadic, Optional[Lock]]],
    cfg: Optional[SearchConfig] = None,
    tol: Optional[float] = None,
) -> LimitReport:
    """Norm-limits over divisions holding permanent points with fixed
    conventions.

    An empty permanent list reduces exactly to estimate_norm_limits.  When
    the function publishes a singular-point enumeration, the permanent
    list is extended along it as e shrinks (the joint limit is monotone in
    both parameters, so the path does not matter); a lock of None keeps
    the point mandatory with free brackets.
    """
    cfg = cfg or SearchConfig()
    tol = cfg.tol_float if tol is None else tol
    if not permanent:
        return estimate_norm_limits(g, region, cfg, tol=tol)
    supplied = [(p, lock) for p, lock in permanent if region.contains_point(p)]

    def merged(e: Dyadic) -> list[tuple[Dyadic, Optional[Lock]]]:
        out = dict(supplied)
        for p, lock in g.singular_schedule(region, e):
            out.setdefault(p, lock)
        return list(out.items())

    def locks_for(e: Dyadic) -> dict:
        return {p: lock for p, lock in merged(e) if lock is not None}

    def mandatory_for(e: Dyadic) -> list[Dyadic]:
        return [p for p, _ in merged(e)]

    levels = _estimate_levels(g, region, cfg,
                              locks_for_level=locks_for,
                              mandatory_for_level=mandatory_for)
    return LimitReport(levels, _verdict(levels, tol, cfg.divergence_threshold))


def k_chain_reports(
    g: IntervalFunction,
    region: Region,
    permanent: Sequence[tuple[Dyadic, Optional[Lock]]],
    cfg: Optional[SearchConfig] = None,
    tol: Optional[float] = None,
) -> tuple[LimitReport, LimitReport]:
    """Norm and k reports over shared candidates.

    Both runs use identical candidate point sets (the k run's mandatory
    points are handed to the norm run as plain extra points level by
    level), so the chain lower_N <= lower_k <= upper_k <= upper_N holds at
    every level by construction: the k assignments are a subset of the
    free ones.
    """
    cfg = cfg or SearchConfig()
    tol = cfg.tol_float if tol is None else tol
    supplied = [(p, lock) for p, lock in permanent if region.contains_point(p)]

    def merged(e: Dyadic):
        out = dict(supplied)
        for p, lock in g.singular_schedule(region, e):
            out.setdefault(p, lock)
        return list(out.items())

    def locks_for(e: Dyadic) -> dict:
        return {p: lock for p, lock in merged(e) if lock is not None}

    def mandatory_for(e: Dyadic) -> list[Dyadic]:
        return [p for p, _ in merged(e)]

    k_levels = _estimate_levels(g, region, cfg,
                                locks_for_level=locks_for,
                                mandatory_for_level=mandatory_for)
    n_levels = _estimate_levels(g, region, cfg,
                                mandatory_for_level=mandatory_for)
    thr = cfg.divergence_threshold
    return (LimitReport(n_levels, _verdict(n_levels, tol, thr)),
            LimitReport(k_levels, _verdict(k_levels, tol, thr)))


def estimate_sigma_limit(
    g: IntervalFunction,
    region: Region,
    cfg: Optional[SearchConfig] = None,
    tol: Optional[float] = None,
) -> LimitReport:
    """Limit over the refinement order: divisions containing a base
    division's points.

    Builds a nested chain of point sets and takes the bracket-assignment
    envelope at each stage; the limit exists when the envelope collapses.
    """
    cfg = cfg or SearchConfig()
    tol = cfg.tol_float if tol is None else tol
    points: set[Dyadic] = set(region.endpoints())
    levels: list[LevelEstimate] = []
    for e in cfg.e_schedule:
        spacing = _grid_spacing(e, cfg.grid_density)
        for lo, hi in region.components:
            p = lo
            while p < hi:
                points.add(p)
                p = p + spacing
        if cfg.use_special_points:
            points.update(g.special_points(region, e))
        stage = _fill(points, region, e, cfg.max_points)
        points.update(stage.points)
        up, wit_up = _extremal_spans(g, stage, region, "max")
        low, wit_low = _extremal_spans(g, stage, region, "min")
        levels.append(LevelEstimate(e, up, low, wit_up, wit_low))
    return LimitReport(levels, _verdict(levels, tol, cfg.divergence_threshold))


def oscillation(report: LimitReport) -> float:
    """Upper estimate minus lower estimate at the finest level."""
    up, low = report.upper, report.lower
    if up == INF and low == -INF:
        return INF
    if up == low and (up == INF or up == -INF):
        raise IndeterminateForm("oscillation of two like-signed infinities")
    return up - low


def cauchy_existence_check(
    g: IntervalFunction,
    region: Region,
    cfg: Optional[SearchConfig] = None,
    tol: Optional[float] = None,
) -> tuple[bool, list[tuple[Dyadic, float]]]:
    """Largest pairwise sum gap over sampled division pairs per level.

    The existence verdict agrees with estimate_norm_limits convergence by
    construction, since the same candidate divisions witness the gap.
    """
    cfg = cfg or SearchConfig()
    tol = cfg.tol_float if tol is None else tol
    report = estimate_norm_limits(g, region, cfg, tol=tol)
    gaps = [(lv.e, lv.upper - lv.lower) for lv in report.levels]
    exists = report.verdict.kind == "converged"
    return exists, gaps


# ---------------------------------------------------------------------------
# Additivity defects and the singularity scan
# ---------------------------------------------------------------------------

def additivity_defect(g: IntervalFunction, x: Dyadic, y: Dyadic,
                      z: Dyadic) -> float:
    """Maximum of |g(x..z) - g(x..y) - g(y..z)| over the 64 bracket choices."""
    if not (x < y < z):
        raise ValueError("need x < y < z")
    best = 0.0
    whole = [g(v) for v in Interval(x, z).variants()]
    left = [g(v) for v in Interval(x, y).variants()]
    right = [g(v) for v in Interval(y, z).variants()]
    for w in whole:
        for a in left:
            for b in right:
                val = abs(w - a - b)
                if val > best:
                    best = val
    return best


def pair_spread(g: IntervalFunction, x: Dyadic, y: Dyadic, z: Dyadic) -> float:
    """Spread of the 16 split sums g(x..y)+g(y..z) over bracket choices."""
    sums = [a + b
            for a in (g(v) for v in Interval(x, y).variants())
            for b in (g(v) for v in Interval(y, z).variants())]
    return max(sums) - min(sums)


def point_defect(g: IntervalFunction, x: Dyadic, y: Dyadic,
                 z: Dyadic) -> float:
    """The two-sided defect: split defect or pair spread, whichever larger."""
    return max(additivity_defect(g, x, y, z), pair_spread(g, x, y, z))


def _scan_candidates(g: IntervalFunction, region: Region,
                     cfg: SearchConfig) -> list[Dyadic]:
    """Points to probe: special-point midpoints first (accumulation points
    live there), then the specials, then a coarse grid; capped at 64."""
    specials = g.special_points(region, cfg.finest())
    mids = [dmid(a, b) for a, b in zip(specials, specials[1:])]
    grid: list[Dyadic] = []
    for lo, hi in region.components:
        spacing = (hi - lo) * Dyadic(1, 4)
        p = lo
        while p <= hi:
            grid.append(p)
            p = p + spacing
    out: list[Dyadic] = []
    seen = set()
    for p in mids + specials + grid:
        if p in seen or not any(lo < p < hi for lo, hi in region.components):
            continue
        seen.add(p)
        out.append(p)
        if len(out) == 64:
            break
    return out


def _defect_at(g: IntervalFunction, region: Region, y: Dyadic,
               cfg: SearchConfig, pool: list[Dyadic]):
    from bisect import bisect_left

    keys = [p.as_fraction() for p in pool]
    idx = bisect_left(keys, y.as_fraction())
    trace = []
    sigma_trace = []
    for e in cfg.e_schedule:
        below = [p for p in pool[max(0, idx - 4):idx]
                 if p < y and y - p < e]
        above = [p for p in pool[idx:idx + 5]
                 if p > y and p - y < e][:4]
        c_best = 0.0
        s_best = 0.0
        for x in below:
            for z in above:
                c_best = max(c_best, additivity_defect(g, x, y, z))
                s_best = max(s_best, point_defect(g, x, y, z))
        trace.append((e, c_best))
        sigma_trace.append((e, s_best))
    # a triple inside a fine window is inside every coarser one
    for i in range(len(trace) - 2, -1, -1):
        trace[i] = (trace[i][0], max(trace[i][1], trace[i + 1][1]))
        sigma_trace[i] = (sigma_trace[i][0],
                          max(sigma_trace[i][1], sigma_trace[i + 1][1]))
    return DefectReport(y, trace, trace[-1][1], sigma_trace[-1][1])


def _triple_pool(g: IntervalFunction, region: Region,
                 cfg: SearchConfig) -> list[Dyadic]:
    pool = set(g.special_points(region, cfg.finest())[:1024])
    pool.update(region.endpoints())
    for lo, hi in region.components:
        spacing = (hi - lo) * Dyadic(1, 4)
        p = lo
        while p <= hi:
            pool.add(p)
            p = p + spacing
    return sorted(pool, key=Dyadic.as_fraction)


def singularity_scan(
    g: IntervalFunction,
    region: Region,
    cfg: Optional[SearchConfig] = None,
    tol: Optional[float] = None,
) -> list[DefectReport]:
    """Estimate the additivity-defect function at special and grid points.

    Returns the points whose defect estimate exceeds the tolerance; an
    additive bracket-independent function yields an empty list.
    """
    cfg = cfg or SearchConfig()
    tol = cfg.tol_float if tol is None else tol
    if g.additive and g.bracket_independent:
        return []
    scan = _scan_candidates(g, region, cfg)
    pool = _triple_pool(g, region, cfg)
    reports = [_defect_at(g, region, y, cfg, pool) for y in scan]
    return [r for r in reports if r.c > tol]


def defect_report_at(g: IntervalFunction, region: Region, y: Dyadic,
                     cfg: Optional[SearchConfig] = None) -> DefectReport:
    """Defect trace at one chosen point (y must be interior)."""
    cfg = cfg or SearchConfig()
    return _defect_at(g, region, y, cfg, _triple_pool(g, region, cfg))
