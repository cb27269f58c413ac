"""Variation, bounded variation, absolute continuity, monotone-on-subdivision
classification, and the four positive/negative variations.

The variation of g over a region is the norm-limit of the sums of |g|; it
is estimated with the same candidate machinery as the plain limits, so the
bound Var >= max(|upper|, |lower|) holds level by level.  Pack searches
(absolute continuity, variation splits) are greedy over a pool built from
special points and dyadic cells, capped in size; reported pack values are
lower bounds on the true suprema.
"""

from __future__ import annotations

import random
from bisect import bisect_left, insort
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .catalog import INF, IntervalFunction, abs_fn
from .core import Dyadic, Interval, Region, dmax, dmin
from .errors import BracketDependent
from .integrator import (
    LimitReport,
    SearchConfig,
    _extremal_spans,
    _fill,
    _growth_diverging,
    _scan_candidates,
    estimate_norm_limits,
)

AC_THRESHOLD = 1e-3          # pack value below this at mu = 2^-12 passes AC


@dataclass
class VariationReport:
    levels: list[tuple[Dyadic, float]]     # per-e Var estimates
    verdict: str                           # "finite" | "infinite"
    total: float                           # finest Var estimate (inf if not)
    a_bound: float                         # A(R): max |norm-limit| estimate
    j_table: list[tuple[Dyadic, float]]
    abs_report: LimitReport
    base_report: LimitReport


@dataclass
class VariationSplit:
    p_upper: float
    n_upper: float
    p_lower: float
    n_lower: float

    def to_json(self) -> str:
        import json
        return json.dumps({"p_upper": self.p_upper, "n_upper": self.n_upper,
                           "p_lower": self.p_lower, "n_lower": self.n_lower})


def variation(
    g: IntervalFunction,
    region: Region,
    cfg: Optional[SearchConfig] = None,
    scan_j: bool = True,
) -> VariationReport:
    """Estimate Var(g; region) as the upper norm-limit of |g|."""
    cfg = cfg or SearchConfig()
    abs_report = estimate_norm_limits(abs_fn(g), region, cfg)
    base_report = estimate_norm_limits(g, region, cfg)
    levels = [(lv.e, lv.upper) for lv in abs_report.levels]
    raw = [lv.upper if lv.raw_upper is None else lv.raw_upper
           for lv in abs_report.levels]
    infinite = (raw[-1] == INF
                or _growth_diverging(raw, cfg.divergence_threshold))
    a_bound = max(abs(base_report.upper), abs(base_report.lower))
    j_table = []
    if scan_j:
        for y in _scan_candidates(g, region, cfg)[:8]:
            j_table.append((y, j_singularity(g, region, y, cfg)))
    return VariationReport(
        levels=levels,
        verdict="infinite" if infinite else "finite",
        total=INF if infinite else levels[-1][1],
        a_bound=a_bound,
        j_table=j_table,
        abs_report=abs_report,
        base_report=base_report,
    )


def _window(region: Region, y: Dyadic, e: Dyadic) -> Optional[Region]:
    a, b = y - e, y + e
    spans = []
    for lo, hi in region.components:
        w_lo, w_hi = dmax(lo, a), dmin(hi, b)
        if w_lo < w_hi:
            spans.append((w_lo, w_hi))
    return Region(spans) if spans else None


def j_singularity(
    g: IntervalFunction,
    region: Region,
    y: Dyadic,
    cfg: Optional[SearchConfig] = None,
) -> float:
    """Limit of the variation over shrinking windows around y.

    Returns +inf when the window traces keep growing instead of settling;
    a continuous function of bounded variation gives 0.
    """
    cfg = cfg or SearchConfig()
    if not any(lo < y < hi for lo, hi in region.components):
        raise ValueError(f"{y} is not interior to {region}")
    ag = abs_fn(g)
    # carry y and the defect scan's nearest anchor points, so any split the
    # defect estimate sees is available here (c <= 2j stays checkable)
    from bisect import bisect_left
    from .integrator import _triple_pool
    pool = _triple_pool(g, region, cfg)
    keys = [p.as_fraction() for p in pool]
    idx = bisect_left(keys, y.as_fraction())
    anchors = pool[max(0, idx - 4):idx + 5]
    trace = []
    for e in cfg.e_schedule:
        window = _window(region, y, e)
        if window is None:
            trace.append(0.0)
            continue
        fine = e.half().half()
        near = [p for p in anchors if window.contains_point(p)]
        base = window.endpoints() + near + ag.special_points(window, fine)
        # one candidate splits at y, one straddles it
        with_y = _fill(base + [y], window, fine, cfg.max_points)
        without_y = _fill([p for p in base if p != y], window, fine,
                          cfg.max_points)
        val = max(_extremal_spans(ag, with_y, window, "max")[0],
                  _extremal_spans(ag, without_y, window, "max")[0])
        trace.append(val)
    if trace[-1] == INF or _growth_diverging(trace, cfg.divergence_threshold):
        return INF
    return trace[-1]


# ---------------------------------------------------------------------------
# Pack search: absolute continuity and variation splits
# ---------------------------------------------------------------------------

def _pack_pool(g: IntervalFunction, region: Region, cfg: SearchConfig,
               pool_cap: int = 1 << 13) -> list[Interval]:
    """Candidate pack intervals: special-point gaps plus dyadic cells."""
    pool: list[Interval] = []
    specials = g.special_points(region, cfg.finest())
    for lo, hi in region.components:
        run = [p for p in specials if lo <= p <= hi]
        for a, b in zip(run, run[1:]):
            if a < b:
                pool.append(Interval(a, b, True, True))
        for depth in (4, 6, 8, 10, 12):
            h = (hi - lo) * Dyadic(1, depth)
            p = lo
            while p < hi:
                q = dmin(p + h, hi)
                pool.append(Interval(p, q, True, True))
                p = q
    if len(pool) > pool_cap:
        scored = sorted(
            pool,
            key=lambda iv: (-abs(_best_value(g, iv, "max")[0]
                                 ) / float(iv.length),
                            iv.lo.as_fraction()),
        )
        pool = scored[:pool_cap]
    return pool


def _best_value(g: IntervalFunction, iv: Interval,
                sense: str) -> tuple[float, Interval]:
    if g.bracket_independent:
        return g(iv), iv
    best, best_iv = None, iv
    for v in iv.variants():
        val = g(v)
        if best is None or (val > best if sense == "max" else val < best):
            best, best_iv = val, v
    return best, best_iv


def pack_search(
    g: IntervalFunction,
    pool: Sequence[Interval],
    mu: Fraction,
    sense: str = "max",
) -> tuple[float, list[Interval]]:
    """Greedy non-overlapping pack of total measure <= mu optimizing sum g.

    Intervals are ranked by value density; the result is a lower bound on
    the true supremum of |sum g| over packs of that measure.
    """
    scored = []
    for iv in pool:
        val, biv = _best_value(g, iv, sense)
        if (sense == "max" and val <= 0) or (sense == "min" and val >= 0):
            continue
        density = abs(val) / float(iv.length)
        scored.append((-density, iv.lo.as_fraction(),
                       iv.hi.as_fraction(), val, biv))
    scored.sort(key=lambda t: (t[0], t[1], t[2]))
    taken_spans: list[tuple[Fraction, Fraction]] = []
    total_measure = Fraction(0)
    total_value = 0.0
    chosen: list[Interval] = []
    for _, lof, hif, val, biv in scored:
        m = hif - lof
        if total_measure + m > mu:
            continue
        pos = bisect_left(taken_spans, (lof, hif))
        if pos > 0 and taken_spans[pos - 1][1] > lof:
            continue
        if pos < len(taken_spans) and taken_spans[pos][0] < hif:
            continue
        insort(taken_spans, (lof, hif))
        total_measure += m
        total_value += val
        chosen.append(biv)
    return total_value, chosen


def is_absolutely_continuous(
    g: IntervalFunction,
    region: Region,
    cfg: Optional[SearchConfig] = None,
) -> tuple[bool, list[tuple[Fraction, float]]]:
    """Probe whether pack sums vanish with the packs' total measure.

    Over shrinking measure budgets the greedy maximizer of |sum g| is run
    on the candidate pool; AC is declared when the finest budget's maximum
    stays below the fixed threshold.
    """
    cfg = cfg or SearchConfig()
    pool = _pack_pool(g, region, cfg)
    trace: list[tuple[Fraction, float]] = []
    for k in range(5, 13):
        mu = Fraction(1, 1 << k)
        pos, _ = pack_search(g, pool, mu, "max")
        neg, _ = pack_search(g, pool, mu, "min")
        trace.append((mu, max(abs(pos), abs(neg))))
    verdict = trace[-1][1] < AC_THRESHOLD
    return verdict, trace


def is_absolutely_semicontinuous(
    g: IntervalFunction,
    region: Region,
    side: str = "upper",
    cfg: Optional[SearchConfig] = None,
) -> bool:
    """One-sided absolute continuity probe.

    Upper: pack sums stay below epsilon as the packs' measure shrinks
    (negative mass may persist); lower is the mirrored statement.
    """
    if side not in ("upper", "lower"):
        raise ValueError("side must be 'upper' or 'lower'")
    cfg = cfg or SearchConfig()
    pool = _pack_pool(g, region, cfg)
    val, _ = pack_search(g, pool, Fraction(1, 1 << 12),
                         "max" if side == "upper" else "min")
    return abs(val) < AC_THRESHOLD


def monotone_on_subdivision(
    g: IntervalFunction,
    region: Region,
    samples: int = 200,
    seed: int = 7,
) -> str:
    """Classify g under splitting: increases, decreases, both or neither.

    Samples random dyadic triples x < y < z inside one component and tests
    g(I1) + g(I2) against g(I3) over all bracket choices honoring the
    closure split.
    """
    rng = random.Random(seed)
    eps = 1e-12
    always_ge = always_le = True
    for _ in range(samples):
        lo, hi = region.components[rng.randrange(len(region.components))]
        span = hi - lo
        raw = sorted(rng.sample(range(1, (1 << 12) - 1), 3))
        x = lo + span * Dyadic(raw[0], 12)
        y = lo + span * Dyadic(raw[1], 12)
        z = lo + span * Dyadic(raw[2], 12)
        for whole in Interval(x, z).variants():
            g3 = g(whole)
            for left in Interval(x, y).variants():
                for right in Interval(y, z).variants():
                    s = g(left) + g(right)
                    if s < g3 - eps:
                        always_ge = False
                    if s > g3 + eps:
                        always_le = False
        if not (always_ge or always_le):
            return "neither"
    if always_ge and always_le:
        return "both"
    return "increases" if always_ge else "decreases"


def variation_split(
    g: IntervalFunction,
    J: Interval,
    cfg: Optional[SearchConfig] = None,
) -> VariationSplit:
    """Upper/lower positive and negative variations of g inside J.

    Requires a bracket-independent g.  The upper positive variation is the
    greedy supremum of pack sums; the two derived variations are defined
    so that g(J) = p_upper - n_upper = p_lower - n_lower exactly.
    """
    if not g.bracket_independent:
        raise BracketDependent(f"{g.name} depends on bracket conventions")
    cfg = cfg or SearchConfig()
    sub = Region.interval(J.lo, J.hi)
    e = cfg.finest()
    cand = _fill(sub.endpoints() + g.special_points(sub, e), sub, e,
                 cfg.max_points)
    p_up = 0.0
    n_low = 0.0
    for a, b in cand.spans:
        v = g(Interval(a, b, True, True))
        if v > 0:
            p_up += v
        elif v < 0:
            n_low -= v
    gj = g(J)
    return VariationSplit(
        p_upper=p_up,
        n_upper=p_up - gj,
        p_lower=n_low + gj,
        n_lower=n_low,
    )
