"""Alignment-feasibility conditions on offsets and group profiles.

The governing condition for K users is sum(s) <= (K+1) * min(s) on the
circular gap vector s, equivalently: every gap >= ceil(N / (K+1)). The
functions here are three views of that one condition plus region/subset
enumeration built on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .pattern import ChannelConfig, GroupProfile, group_profile

__all__ = [
    "check_weak",
    "check_feasible",
    "FeasibilityReport",
    "check_config",
    "circular_gap_check",
    "FeasibleRegion",
    "feasible_region",
    "find_feasible_subset",
]


def check_weak(s) -> bool:
    """Necessary 3-user condition: max gap at most twice the min gap.

    Weaker than :func:`check_feasible`; exposed as a quick diagnostic only.
    """
    s = tuple(s)
    if len(s) != 3:
        raise ValueError("weak condition is defined for 3-user profiles only")
    return max(s) <= 2 * min(s)


def check_feasible(s) -> bool:
    """Necessary and sufficient condition: sum(s) <= (K+1) * min(s).

    Equals infinite-horizon alignment feasibility of the channel whose
    circular gap vector is ``s`` (K = len(s)).
    """
    s = tuple(s)
    K = len(s)
    if K < 2:
        raise ValueError("need at least 2 users")
    return sum(s) <= (K + 1) * min(s)


def _min_circular_gap(offsets, N: int) -> int:
    rel = sorted(int(o) % N for o in offsets)
    gaps = [rel[k + 1] - rel[k] for k in range(len(rel) - 1)]
    gaps.append(N - rel[-1] + rel[0])
    return min(gaps)


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    s: GroupProfile
    min_gap: int
    threshold: Fraction  # N / (K+1); min_gap must reach it

    @property
    def min_gap_required(self) -> int:
        """Integer form of the threshold: ceil(N / (K+1))."""
        return -(-self.threshold.numerator // self.threshold.denominator)


def check_config(cfg: ChannelConfig) -> FeasibilityReport:
    """Full feasibility verdict for a channel config.

    Feasible iff every circular offset gap is at least N/(K+1); duplicated
    offsets produce a zero gap and are therefore always infeasible.
    """
    s = group_profile(cfg)
    min_gap = min(s)
    threshold = Fraction(cfg.N, cfg.K + 1)
    return FeasibilityReport(
        feasible=min_gap >= threshold,
        s=s,
        min_gap=min_gap,
        threshold=threshold,
    )


def circular_gap_check(offsets, N: int) -> bool:
    """True iff all circular gaps of the offset multiset reach ceil(N/(K+1)).

    Agrees with :func:`check_config` on every input: an integer gap g
    satisfies g >= N/(K+1) exactly when g >= ceil(N/(K+1)).
    """
    offsets = tuple(offsets)
    K = len(offsets)
    if K < 2:
        raise ValueError("need at least 2 offsets")
    if N < 1:
        raise ValueError("N must be >= 1")
    need = -(-N // (K + 1))
    return _min_circular_gap(offsets, N) >= need


@dataclass(frozen=True)
class FeasibleRegion:
    """All feasible (offset_2, offset_3) pairs for a 3-user channel, benchmark at 0."""

    N: int
    points: tuple[tuple[int, int], ...]

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def ratio(self) -> float:
        return self.count / self.N**2

    def __contains__(self, pair) -> bool:
        return tuple(pair) in set(self.points)


def feasible_region(N: int) -> FeasibleRegion:
    """Enumerate the feasible (n2, n3) grid for 3 users with benchmark offset 0."""
    if N < 1:
        raise ValueError("N must be >= 1")
    need = -(-N // 4)
    pts = []
    for n2 in range(N):
        for n3 in range(N):
            lo, hi = (n2, n3) if n2 <= n3 else (n3, n2)
            if lo >= need and hi - lo >= need and N - hi >= need:
                pts.append((n2, n3))
    return FeasibleRegion(N=N, points=tuple(pts))


def find_feasible_subset(offsets, N: int, k_target: int):
    """First (lexicographically smallest) k_target-user subset that is feasible.

    Returns a tuple of 1-based user indices, or None when no subset of that
    size has all circular gaps >= ceil(N/(k_target+1)).
    """
    offsets = tuple(offsets)
    K = len(offsets)
    if not 2 <= k_target <= K:
        raise ValueError(f"k_target must be in 2..{K}")
    need = -(-N // (k_target + 1))
    for users in combinations(range(1, K + 1), k_target):
        sub = [offsets[u - 1] for u in users]
        if _min_circular_gap(sub, N) >= need:
            return users
    return None
