"""Cutoff rules for placing a split between two projected groups.

Eight rules, numbered 1-8. Rules 1-4 combine group means, rules 5-8 group
medians. The weighted rules attach each group's center to the *other*
group's size or dispersion share, so the group with the larger spread (or
smaller standard error) is given more room:

    1  c = (m1 + m2) / 2
    2  c = n2/(n1+n2) m1 + n1/(n1+n2) m2
    3  c = s2/(s1+s2) m1 + s1/(s1+s2) m2
    4  like 3 with s_g replaced by the standard error s_g/sqrt(n_g)
    5  c = (med1 + med2) / 2
    6  c = n2/(n1+n2) med1 + n1/(n1+n2) med2
    7  c = IQR2/(IQR1+IQR2) med1 + IQR1/(IQR1+IQR2) med2
    8  like 7 with IQR_g replaced by IQR_g/sqrt(n_g)

Callers orient the groups so g1 has the smaller mean (ties broken by the
smaller class id). When the dispersion denominator of rule 3 or 4 vanishes
the rule falls back to rule 1; rules 7 and 8 fall back to rule 5. Fallbacks
emit a SplitFallbackWarning.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGroupingError, SplitFallbackWarning

VALID_RULES = tuple(range(1, 9))


@dataclass(frozen=True)
class GroupStats:
    """Summary statistics of one group's projected values."""

    mean: float
    median: float
    sd: float
    iqr: float
    count: int


def summarize_group(z) -> GroupStats:
    """Location/spread summary of a projected sample.

    sd uses the n-1 denominator; quartiles use linear interpolation. A
    singleton group has sd = 0 and iqr = 0 by convention.
    """
    z = np.asarray(z, dtype=np.float64)
    if z.ndim != 1 or z.size == 0:
        raise DegenerateGroupingError("group is empty")
    n = z.size
    if n == 1:
        v = float(z[0])
        return GroupStats(mean=v, median=v, sd=0.0, iqr=0.0, count=1)
    q25, q75 = np.percentile(z, [25.0, 75.0])
    return GroupStats(
        mean=float(z.mean()),
        median=float(np.median(z)),
        sd=float(z.std(ddof=1)),
        iqr=float(q75 - q25),
        count=n,
    )


def _mix(w1: float, w2: float, a: float, b: float) -> float:
    # weight of a is w1's share, of b is w2's share
    return (w1 / (w1 + w2)) * a + (w2 / (w1 + w2)) * b


def split_value(rule: int, g1: GroupStats, g2: GroupStats) -> float:
    """Cutoff between two oriented groups under the given rule (1-8).

    The result always lies between the two centers the rule combines.
    """
    if rule not in VALID_RULES:
        raise ValueError(f"rule must be in 1..8, got {rule}")
    n1, n2 = g1.count, g2.count
    if rule == 1:
        return 0.5 * g1.mean + 0.5 * g2.mean
    if rule == 2:
        return _mix(n2, n1, g1.mean, g2.mean)
    if rule == 3:
        if g1.sd + g2.sd == 0.0:
            warnings.warn(
                "rule 3: zero spread in both groups, falling back to rule 1",
                SplitFallbackWarning,
                stacklevel=2,
            )
            return split_value(1, g1, g2)
        return _mix(g2.sd, g1.sd, g1.mean, g2.mean)
    if rule == 4:
        se1 = g1.sd / math.sqrt(n1)
        se2 = g2.sd / math.sqrt(n2)
        if se1 + se2 == 0.0:
            warnings.warn(
                "rule 4: zero standard error in both groups, falling back to rule 1",
                SplitFallbackWarning,
                stacklevel=2,
            )
            return split_value(1, g1, g2)
        return _mix(se2, se1, g1.mean, g2.mean)
    if rule == 5:
        return 0.5 * g1.median + 0.5 * g2.median
    if rule == 6:
        return _mix(n2, n1, g1.median, g2.median)
    if rule == 7:
        if g1.iqr + g2.iqr == 0.0:
            warnings.warn(
                "rule 7: zero IQR in both groups, falling back to rule 5",
                SplitFallbackWarning,
                stacklevel=2,
            )
            return split_value(5, g1, g2)
        return _mix(g2.iqr, g1.iqr, g1.median, g2.median)
    # rule 8
    q1 = g1.iqr / math.sqrt(n1)
    q2 = g2.iqr / math.sqrt(n2)
    if q1 + q2 == 0.0:
        warnings.warn(
            "rule 8: zero scaled IQR in both groups, falling back to rule 5",
            SplitFallbackWarning,
            stacklevel=2,
        )
        return split_value(5, g1, g2)
    return _mix(q2, q1, g1.median, g2.median)
